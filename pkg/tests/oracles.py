"""Slow, obviously-correct reference computations used only by the tests."""

from __future__ import annotations

import itertools
import math
from fractions import Fraction


def det_by_permutations(rows):
    n = len(rows)
    total = 0
    for perm in itertools.permutations(range(n)):
        sign = 1
        for i in range(n):
            for j in range(i + 1, n):
                if perm[i] > perm[j]:
                    sign = -sign
        total += sign * math.prod(rows[i][perm[i]] for i in range(n))
    return total


def determinantal_divisors(rows, ncols):
    """``d_k`` = gcd of all ``k x k`` minors; Smith entries are ``d_k / d_{k-1}``."""
    nrows = len(rows)
    out = []
    for k in range(1, min(nrows, ncols) + 1):
        g = 0
        for rs in itertools.combinations(range(nrows), k):
            for cs in itertools.combinations(range(ncols), k):
                g = math.gcd(g, det_by_permutations([[rows[r][c] for c in cs] for r in rs]))
        out.append(g)
    return out


def smith_diagonal_oracle(rows, ncols):
    divs = determinantal_divisors(rows, ncols)
    diag, prev = [], 1
    for d in divs:
        if d == 0:
            diag.append(0)
            prev = 0
            continue
        diag.append(d // prev)
        prev = d
    return diag


def rank_fraction(rows, ncols, p=None):
    """Gaussian elimination over Q (``p=None``) or F_p, written independently."""
    if p is None:
        m = [[Fraction(x) for x in r] for r in rows]
    else:
        m = [[x % p for x in r] for r in rows]
    rank = 0
    for c in range(ncols):
        piv = next((i for i in range(rank, len(m)) if m[i][c] != 0), None)
        if piv is None:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        for i in range(len(m)):
            if i != rank and m[i][c] != 0:
                if p is None:
                    f = m[i][c] / m[rank][c]
                    m[i] = [a - f * b for a, b in zip(m[i], m[rank])]
                else:
                    f = m[i][c] * pow(m[rank][c], -1, p) % p
                    m[i] = [(a - f * b) % p for a, b in zip(m[i], m[rank])]
        rank += 1
    return rank


def crt_brute(primes, residues):
    """Scan ``0..P-1`` per coordinate."""
    P = math.prod(primes)
    out = []
    for j in range(len(residues[0]) if residues else 0):
        hits = [x for x in range(P) if all(x % q == r[j] % q for q, r in zip(primes, residues))]
        assert len(hits) == 1
        out.append(hits[0])
    return tuple(out)


def in_hull_caratheodory(points, target):
    """Hull membership by trying every affinely independent subset (Carathéodory).

    For each subset of at most ``dim + 1`` points solve the barycentric system
    exactly; the target is in the hull iff some solution is nonnegative.
    """
    dim = len(target)
    pts = [tuple(p) for p in set(map(tuple, points))]
    for k in range(1, min(len(pts), dim + 1) + 1):
        for sub in itertools.combinations(pts, k):
            lam = _barycentric(sub, target)
            if lam is not None and all(x >= 0 for x in lam):
                return True
    return False


def _barycentric(sub, target):
    k, dim = len(sub), len(target)
    # unknowns λ_1..λ_k; equations: Σ λ_i p_i = t, Σ λ_i = 1
    A = [[Fraction(sub[i][r]) for i in range(k)] + [Fraction(target[r])] for r in range(dim)]
    A.append([Fraction(1)] * k + [Fraction(1)])
    rows = len(A)
    piv_cols, r = [], 0
    for c in range(k):
        piv = next((i for i in range(r, rows) if A[i][c] != 0), None)
        if piv is None:
            return None  # dependent subset; a smaller subset covers it
        A[r], A[piv] = A[piv], A[r]
        A[r] = [x / A[r][c] for x in A[r]]
        for i in range(rows):
            if i != r and A[i][c] != 0:
                f = A[i][c]
                A[i] = [a - f * b for a, b in zip(A[i], A[r])]
        piv_cols.append(c)
        r += 1
    if any(A[i][k] != 0 for i in range(r, rows)):
        return None
    return [A[i][k] for i in range(k)]
