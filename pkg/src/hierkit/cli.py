"""Command-line front end.

Each subcommand reads a JSON case file, runs one operation and prints a
canonical JSON report (sorted keys, every integer as a decimal string).  The
report holds the result and a ``verification`` section recomputed by a
separate route.  Exit codes: 0 verified, 1 property violated, 2 invalid input.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from typing import Any, Callable

import jsonschema

from . import __version__, schemas
from .boundary_homology import (
    BoundaryPresentation,
    InvalidPresentationError,
    SurfaceHomology,
    boundary_kernel,
    projections_and_verticals,
    upsilon,
    verify_lagrangian,
)
from .exact_linalg import (
    RATIONALS,
    IntegerMatrix,
    check_field,
    cokernel,
    element_order,
    in_span,
    rank_over,
    smith_normal_form,
)
from .floer_simplicity import (
    InvalidInputError,
    KnotRankTable,
    SpincRankTable,
    bundle_unknot_obstruction,
    check_extreme_classes,
    is_bottommostly_simple,
    is_floer_simple,
    tower_homology,
)
from .norm_calculus import (
    BasicClassSet,
    NormOracle,
    bottommost,
    check_h1h2_part1,
    check_h1h2_part2,
    check_successor_condition,
    chi_minus,
    default_probes,
    pairing,
    stabilization_report,
    validate_adjunction,
)
from .primitive_pair import (
    a_p_subspace,
    crt_lift,
    excluded_primes,
    find_primitive_homologous_pair,
    verify_pair,
)
from .surface_calculus import (
    SurfaceClass,
    classify_annulus,
    cut_paste_class,
    lower_sub_threshold,
    verify_lower_sub,
)

EXIT_OK, EXIT_VIOLATED, EXIT_INVALID = 0, 1, 2


class CaseError(Exception):
    """Invalid case file; reported with exit code 2."""


# ---------------------------------------------------------------------------
# serialisation


def canonical(obj: Any) -> Any:
    """Integers become decimal strings; tuples become lists; keys are strings."""
    if isinstance(obj, bool) or obj is None:
        return obj
    if isinstance(obj, int):
        return str(obj)
    if isinstance(obj, str):
        return obj
    if isinstance(obj, dict):
        return {str(k): canonical(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [canonical(v) for v in obj]
    if isinstance(obj, (set, frozenset, BasicClassSet)):
        return [canonical(v) for v in sorted(obj)]
    raise TypeError(f"cannot serialise {type(obj).__name__}")


def dumps(report: dict) -> str:
    return json.dumps(canonical(report), sort_keys=True, indent=2, ensure_ascii=True) + "\n"


def _int(x) -> int:
    return int(x)


def _vec(xs) -> tuple[int, ...]:
    return tuple(int(x) for x in xs)


def _mat(rows, ncols: int | None = None) -> IntegerMatrix:
    return IntegerMatrix.from_rows([_vec(r) for r in rows], ncols)


def load_case(path: str, schema: dict, strict: bool) -> dict:
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise CaseError(f"cannot read {path}: {exc.strerror}") from None
    if not text.strip():
        raise CaseError(f"{path}: empty input")
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise CaseError(f"{path}: malformed JSON at line {exc.lineno}, column {exc.colno}: {exc.msg}") from None
    try:
        jsonschema.validate(data, schemas.strict(schema) if strict else schema)
    except jsonschema.ValidationError as exc:
        where = "/".join(str(p) for p in exc.absolute_path) or "<root>"
        raise CaseError(f"{path}: schema violation at {where}: {exc.message}") from None
    return data


# ---------------------------------------------------------------------------
# case decoding


def presentation_from(data: dict) -> BoundaryPresentation:
    comps = tuple((SurfaceHomology(_int(c["genus"])), _int(c["sign"])) for c in data["components"])
    width = sum(s.rank for s, _ in comps)
    rel = data.get("relations")
    relations = _mat(rel, len(rel[0]) if rel else 0) if rel is not None else None
    try:
        return BoundaryPresentation(comps, _int(data["ambient_rank"]), _mat(data["inclusion"], width), relations)
    except ValueError as exc:
        raise CaseError(str(exc)) from None


def norm_from(data: dict) -> NormOracle:
    try:
        return NormOracle(_int(data["rank"]), tuple(_vec(f) for f in data["functionals"]))
    except ValueError as exc:
        raise CaseError(f"norm: {exc}") from None


def classes_from(rows, rank: int) -> BasicClassSet:
    B = BasicClassSet.of(rows)
    if any(len(a) != rank for a in B.classes):
        raise CaseError(f"basic classes must have length {rank}")
    return B


def vector_arg(data: dict, key: str, rank: int) -> tuple[int, ...]:
    if key not in data:
        raise CaseError(f"case file lacks {key!r}")
    v = _vec(data[key])
    if len(v) != rank:
        raise CaseError(f"{key!r} must have length {rank}")
    return v


def table_from(data: dict) -> dict:
    if len(data["classes"]) != len(data["ranks"]):
        raise CaseError("classes and ranks differ in length")
    return {_vec(c): _int(r) for c, r in zip(data["classes"], data["ranks"])}


# ---------------------------------------------------------------------------
# independent re-checks


def _omega_direct(p: BoundaryPresentation, u, v) -> int:
    total, k = 0, 0
    for surface, sign in p.components:
        for i in range(surface.genus):
            a, b = k + 2 * i, k + 2 * i + 1
            total += sign * (u[a] * v[b] - u[b] * v[a])
        k += surface.rank
    return total


def _maps_to_zero(p: BoundaryPresentation, v, field: int) -> bool:
    image = p.inclusion.apply(v)
    if field == RATIONALS:
        if not any(image):
            return True
        return p.relations is not None and element_order(p.relations, image) is not None
    if all(x % field == 0 for x in image):
        return True
    if p.relations is None:
        return False
    return in_span(p.relations.columns(), image, p.ambient_rank, field)


# ---------------------------------------------------------------------------
# subcommands; each returns (exit code, report)


def cmd_lagrangian_check(args):
    data = load_case(args.case, schemas.PRESENTATION, args.strict)
    p = presentation_from(data)
    field = check_field(args.field)
    k = boundary_kernel(p, field)
    rep = verify_lagrangian(k, p)
    result = {
        "field": field,
        "kernel_basis": k.basis,
        "dimension": rep.dimension,
        "expected_dimension": rep.expected_dimension,
        "isotropic": rep.isotropic,
        "half_dimensional": rep.half_dimensional,
    }
    ok = rep.valid
    if len(p.components) == 2:
        vd = projections_and_verticals(p, field)
        result["vertical"] = {
            "dim_plus": len(vd.vertical_plus),
            "dim_minus": len(vd.vertical_minus),
            "plus_is_perp": vd.plus_is_perp,
            "minus_is_perp": vd.minus_is_perp,
        }
        ok = ok and vd.valid
    reduce = (lambda x: x) if field == RATIONALS else (lambda x: x % field)
    verification = {
        "annihilated": all(_maps_to_zero(p, v, field) for v in k.basis),
        "pairwise_omega_zero": all(
            reduce(_omega_direct(p, u, v)) == 0 for u in k.basis for v in k.basis
        ),
        "rank": rank_over(k.basis, p.boundary_rank, field),
    }
    ok = ok and verification["annihilated"] and verification["pairwise_omega_zero"]
    return ok, result, verification


def cmd_find_primitive_pair(args):
    data = load_case(args.case, schemas.PRESENTATION, args.strict)
    p = presentation_from(data)
    pair = find_primitive_homologous_pair(p, seed=args.seed)
    chk = verify_pair(p, pair)
    result = {
        "c_plus": pair.c_plus,
        "c_minus": pair.c_minus,
        "multiplier": pair.multiplier,
        "branch": pair.branch,
        "transcript": pair.transcript,
    }
    verification = {
        "content_plus_is_one": chk.primitive_plus,
        "content_minus_is_one": chk.primitive_minus,
        "homologous_after_multiplier": chk.homologous,
    }
    return chk.ok, result, verification


def cmd_excluded_primes(args):
    data = load_case(args.case, schemas.PRESENTATION, args.strict)
    p = presentation_from(data)
    ex = excluded_primes(p)
    result = {
        "primes": ex.primes,
        "inclusion_primes": ex.inclusion_primes,
        "projection_primes": ex.projection_primes,
    }
    clean = p.normalized()
    verification: dict = {
        "cokernel_plus": str(cokernel(clean.iota(0))),
        "cokernel_minus": str(cokernel(clean.iota(1))),
    }
    ok = True
    if upsilon(clean) == 0 and p.genus == p.components[1][0].genus and p.genus > 0:
        dims = {}
        for q in args.check_primes or ex.primes:
            try:
                dims[q] = {s: a_p_subspace(p, q, s).dimension for s in "+-"}
            except InvalidPresentationError:
                dims[q] = {"error": "dimension exceeds genus"}
                ok = False
        verification["a_q_dimensions"] = dims
        verification["genus"] = p.genus
    return ok, result, verification


def cmd_crt_lift(args):
    data = load_case(args.case, schemas.CRT_CASE, args.strict)
    primes = _vec(data["primes"])
    residues = [_vec(r) for r in data["residues"]]
    try:
        x = crt_lift(primes, residues)
    except ValueError as exc:
        raise CaseError(str(exc)) from None
    P = math.prod(primes)
    verification = {
        "modulus": P,
        "residues_match": all(
            all((a - b) % q == 0 for a, b in zip(x, r)) for q, r in zip(primes, residues)
        ),
        "in_range": all(0 <= a < P for a in x),
    }
    return verification["residues_match"] and verification["in_range"], {"lift": x}, verification


def _norm_case(args):
    data = load_case(args.case, schemas.NORM_CASE, args.strict)
    norm = norm_from(data["norm"])
    return data, norm, classes_from(data["classes"], norm.rank)


def _require_consistent(B, norm):
    rep = validate_adjunction(B, norm)
    if not rep.consistent:
        raise CaseError(f"basic classes violate adjunction: {list(rep.violations)}")
    return rep


def cmd_bottommost(args):
    data, norm, B = _norm_case(args)
    h = vector_arg(data, "h", norm.rank)
    bot = bottommost(B, norm, h)
    chi = chi_minus(norm, h)
    brute = max(pairing(f, h) for f in norm.functionals)
    listed = {",".join(map(str, a)): pairing(a, h) for a in B}
    verification = {
        "chi_minus_recomputed": brute,
        "pairings": listed,
        "bottommost_recomputed": sorted(a for a in B if pairing(a, h) == -brute),
    }
    ok = verification["bottommost_recomputed"] == bot.sorted() and brute == chi
    return ok, {"chi_minus": chi, "bottommost": bot.sorted()}, verification


def _sets_for(B, norm, *hs):
    out = []
    for h in hs:
        c = max(pairing(f, h) for f in norm.functionals)
        out.append((c, {a for a in B.classes if pairing(a, h) == -c}))
    return out


def cmd_h1h2_check(args):
    data, norm, B = _norm_case(args)
    part = args.part if args.part is not None else _int(data.get("part", 1))
    h1, h2 = vector_arg(data, "h1", norm.rank), vector_arg(data, "h2", norm.rank)
    _require_consistent(B, norm)
    s = tuple(x + y for x, y in zip(h1, h2))
    (c1, b1), (c2, b2), (cs, bs) = _sets_for(B, norm, h1, h2, s)
    if part == 1:
        rep = check_h1h2_part1(B, norm, h1, h2)
        result = {
            "part": 1,
            "additive": rep.additive,
            "bottom_sum": rep.data.bottom_sum.sorted(),
            "intersection": rep.data.intersection.sorted(),
            "holds": rep.holds,
        }
        again = cs != c1 + c2 or bs == (b1 & b2)
        return rep.holds and again, result, {"chi": [c1, c2, cs], "holds_recomputed": again}
    if part == 2:
        rep = check_h1h2_part2(B, norm, h1, h2)
        result = {
            "part": 2,
            "precondition_met": rep.precondition_met,
            "status": "checked" if rep.precondition_met else "precondition fails",
            "triple_intersection": rep.data.triple_intersection.sorted(),
            "holds": rep.holds,
        }
        again = not cs < c1 + c2 or not (b1 & b2 & bs)
        return rep.holds and again, result, {"chi": [c1, c2, cs], "holds_recomputed": again}
    if part == 3:
        st = stabilization_report(B, norm, h1, h2)
        bad = []
        diffs = set()
        for m in range(st.bound, 3 * st.bound + 1):
            hm = tuple(m * x + y for x, y in zip(h1, h2))
            (cm, bm), = _sets_for(B, norm, hm)
            if not bm <= b1:
                bad.append(m)
            diffs.add(cm - m * c1)
        result = {
            "part": 3,
            "m0": st.bound,
            "inclusion_threshold": st.inclusion_threshold,
            "linearity_threshold": st.linearity_threshold,
            "constant": st.constant,
        }
        verification = {"window": [st.bound, 3 * st.bound], "failing_m": bad, "linear_on_window": len(diffs) == 1}
        return not bad and len(diffs) == 1, result, verification
    raise CaseError(f"part must be 1, 2 or 3, got {part}")


def cmd_successor_check(args):
    data, norm, B = _norm_case(args)
    gp, gn = vector_arg(data, "g_prev", norm.rank), vector_arg(data, "g_next", norm.rank)
    ok = check_successor_condition(B, norm, gp, gn)
    (_, bp), (_, bn) = _sets_for(B, norm, gp, gn)
    verification = {"bottom_prev": sorted(bp), "bottom_next": sorted(bn), "subset_recomputed": bn <= bp}
    return ok and bn <= bp, {"successor": ok}, verification


def cmd_adjunction_check(args):
    data, norm, B = _norm_case(args)
    probes = [_vec(p) for p in data["probes"]] if "probes" in data else None
    rep = validate_adjunction(B, norm, probes)
    check_probes = probes if probes is not None else default_probes(norm.rank)
    probe_bad = sorted(
        a for a in B if any(abs(pairing(a, h)) > chi_minus(norm, h) for h in check_probes)
    )
    result = {"mode": rep.mode, "consistent": rep.consistent, "violations": rep.violations}
    verification = {"probe_count": len(check_probes), "probe_violations": probe_bad}
    # probe failures are genuine violations, so they must be among the reported ones
    agree = set(probe_bad) <= set(rep.violations)
    return rep.consistent and agree, result, verification


def _knot_from(data) -> KnotRankTable:
    pull = data["pullback"]
    mp = _int(data["meridian_pairing"]) if "meridian_pairing" in data else None
    push = _mat(data["pushforward"]) if "pushforward" in data else None
    return KnotRankTable(table_from(data["knot"]), _mat(pull, len(pull[0]) if pull else 0), mp, push)


def cmd_floer_simple_check(args):
    data = load_case(args.case, schemas.RANK_CASE, args.strict)
    if "ambient" not in data:
        raise CaseError("case file lacks 'ambient'")
    k = _knot_from(data)
    t = SpincRankTable(table_from(data["ambient"]))
    simple = is_floer_simple(k, t)
    result = {"floer_simple": simple, "knot_total": k.total, "ambient_total": t.total}
    ok = simple
    verification = {"totals_equal": sum(k.entries.values()) == sum(t.entries.values())}
    if "norm" in data:
        norm = norm_from(data["norm"])
        h = vector_arg(data, "h", norm.rank)
        bs = is_bottommostly_simple(k, t, norm, h)
        result["bottommostly_simple"] = bs
        ok = bs
    return ok and verification["totals_equal"] == simple, result, verification


def cmd_extreme_class_check(args):
    data = load_case(args.case, schemas.RANK_CASE, args.strict)
    k = _knot_from(data)
    F = vector_arg(data, "F_class", k.pullback.ncols)
    if "chi_F" not in data:
        raise CaseError("case file lacks 'chi_F'")
    rep = check_extreme_classes(k, F, _int(data["chi_F"]))
    result = {
        "minimum": rep.minimum,
        "maximum": rep.maximum,
        "expected_minimum": rep.expected_minimum,
        "expected_maximum": rep.expected_maximum,
        "min_ok": rep.min_ok,
        "max_ok": rep.max_ok,
    }
    values = sorted({pairing(xi, F) for xi in k.entries})
    return rep.ok, result, {"pairings": values}


def cmd_tower(args):
    if args.f is not None:
        f = [int(x) for x in args.f.split(",") if x.strip()]
        depth = args.depth if args.depth is not None else 5
        const = 0
    else:
        if args.case is None:
            raise CaseError("tower needs a case file or --f")
        data = load_case(args.case, schemas.TOWER_CASE, args.strict)
        f = list(_vec(data["f"]))
        depth = args.depth if args.depth is not None else _int(data["depth"])
        const = _int(data.get("constant_term", 0))
    rep = tower_homology(f, depth, const)
    result = {
        "f": f,
        "depth": depth,
        "kernel_rank": rep.kernel_rank,
        "cokernel": str(rep.cokernel_structure),
        "homology": str(rep.homology),
        "per_depth": [{"kernel_rank": k, "cokernel": str(c)} for k, c in rep.per_depth],
        "stable": rep.stable,
        "hfplus_is_Z": rep.hfplus_is_Z,
    }
    lead = next((c for c in f if c), 0)
    verification = {"leading_coefficient": lead, "unit_U_coefficient": bool(f) and abs(f[0]) == 1}
    return True, result, verification


def cmd_bundle_obstruction(args):
    data = load_case(args.case, schemas.BUNDLE_CASE, args.strict)
    mer = data.get("meridian_term", True)
    v = bundle_unknot_obstruction(
        _int(data["chi_G"]), _int(data["n"]), _int(data["chi_plus"]),
        _int(data["chi_minus"]), _int(data["chi_double"]), mer,
    )
    result = {
        "verdict": v.verdict,
        "lhs": v.lhs,
        "required": v.required,
        "bound": v.bound,
        "chain_consistent": v.chain_consistent,
        "subadditive": v.subadditive,
    }
    shift = 2 if mer else 0
    again = -2 * _int(data["n"]) * _int(data["chi_G"]) > -_int(data["chi_double"]) - shift
    return True, result, {"contradiction_recomputed": again}


def cmd_annulus_type(args):
    data = load_case(args.case, schemas.ANNULUS_CASE, args.strict)
    cm, cp = _vec(data["c_minus"]), _vec(data["c_plus"])
    t = classify_annulus(cm, cp)
    return True, {"type": t.value}, {"minus_zero": not any(cm), "plus_zero": not any(cp)}


def _surface_from(d) -> SurfaceClass:
    pairings = None
    if "pairings" in d:
        pairings = table_from({"classes": d["pairings"]["classes"], "ranks": d["pairings"]["values"]})
    return SurfaceClass(_vec(d["homology"]), _int(d["euler"]), pairings)


def cmd_lower_sub(args):
    data = load_case(args.case, schemas.SURFACE_CASE, args.strict)
    S, G = _surface_from(data["S"]), _surface_from(data["G"])
    B = BasicClassSet.of(data["classes"])
    try:
        m0 = lower_sub_threshold(B, S)
        if "m" in data:
            ms = [_int(data["m"])]
        else:
            ms = list(range(m0, m0 + _int(data.get("window", 20)) + 1))
        verdicts = {m: verify_lower_sub(B, S, G, m) for m in ms}
        recheck = {}
        for m in ms:
            gm = cut_paste_class(S, G, m)
            recheck[m] = all(
                G.pair(a) <= G.euler for a in B if S.pair(a) + m * G.pair(a) <= gm.euler
            )
    except KeyError as exc:
        raise CaseError(f"missing pairing data: {exc}") from None
    result = {"m0": m0, "checked": {str(m): v for m, v in verdicts.items()}}
    ok = all(verdicts.values())
    return ok and verdicts == recheck, result, {"recomputed": {str(m): v for m, v in recheck.items()}}


COMMANDS: dict[str, Callable] = {
    "lagrangian-check": cmd_lagrangian_check,
    "find-primitive-pair": cmd_find_primitive_pair,
    "excluded-primes": cmd_excluded_primes,
    "crt-lift": cmd_crt_lift,
    "bottommost": cmd_bottommost,
    "h1h2-check": cmd_h1h2_check,
    "successor-check": cmd_successor_check,
    "adjunction-check": cmd_adjunction_check,
    "floer-simple-check": cmd_floer_simple_check,
    "extreme-class-check": cmd_extreme_class_check,
    "tower": cmd_tower,
    "bundle-obstruction": cmd_bundle_obstruction,
    "annulus-type": cmd_annulus_type,
    "lower-sub": cmd_lower_sub,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="hierkit", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"hierkit {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        sp = sub.add_parser(name)
        sp.add_argument("case", nargs="?" if name == "tower" else None)
        sp.add_argument("--strict", action="store_true", help="reject unknown fields")
        if name == "lagrangian-check":
            sp.add_argument("--field", type=int, default=RATIONALS, help="prime p, or 0 for the rationals")
        if name == "find-primitive-pair":
            sp.add_argument("--seed", type=int, default=0)
        if name == "excluded-primes":
            sp.add_argument("--check-primes", type=int, nargs="*", default=None)
        if name == "h1h2-check":
            sp.add_argument("--part", type=int, choices=(1, 2, 3), default=None)
        if name == "tower":
            sp.add_argument("--f", default=None, help="comma-separated coefficients of U, U^2, ...")
            sp.add_argument("--depth", type=int, default=None)
    return parser


def run(argv: list[str] | None = None, out=None) -> int:
    out = out or sys.stdout
    args = build_parser().parse_args(argv)
    handler = COMMANDS[args.command]
    try:
        ok, result, verification = handler(args)
    except (CaseError, InvalidPresentationError, InvalidInputError, ValueError) as exc:
        report = {"command": args.command, "status": "invalid-input", "error": str(exc)}
        out.write(dumps(report))
        print(f"hierkit: {exc}", file=sys.stderr)
        return EXIT_INVALID
    report = {
        "command": args.command,
        "format": schemas.CASE_VERSION,
        "status": "verified" if ok else "violated",
        "result": result,
        "verification": verification,
    }
    out.write(dumps(report))
    return EXIT_OK if ok else EXIT_VIOLATED


def main() -> None:
    sys.exit(run())
