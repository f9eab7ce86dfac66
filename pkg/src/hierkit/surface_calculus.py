"""Homology-level arithmetic of surfaces obtained by cut-and-paste.

Only the class, the Euler characteristic and the pairings with basic classes
are tracked; the geometric surgery itself is not modelled.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Mapping, Sequence

from .norm_calculus import BasicClassSet, pairing

Vector = tuple[int, ...]


class AnnulusType(str, Enum):
    NN = "NN"
    NS = "NS"
    SN = "SN"
    SS = "SS"


def classify_annulus(c_minus: Sequence[int], c_plus: Sequence[int]) -> AnnulusType:
    """Type of a product annulus from the classes of its two boundary curves.

    A simple closed curve separates exactly when its class vanishes.  The
    first letter refers to the ``-`` side.
    """
    n = "N" if any(c_minus) else "S"
    p = "N" if any(c_plus) else "S"
    return AnnulusType(n + p)


@dataclass(frozen=True)
class SurfaceClass:
    homology: Vector
    euler: int  # χ, not χ_-
    pairings: Mapping[Vector, int] | None = None

    def __post_init__(self):
        object.__setattr__(self, "homology", tuple(int(x) for x in self.homology))
        if self.pairings is not None:
            object.__setattr__(
                self, "pairings", {tuple(int(x) for x in k): int(v) for k, v in self.pairings.items()}
            )

    @property
    def euler_neg(self) -> int:
        return max(0, -self.euler)

    def pair(self, alpha: Sequence[int]) -> int:
        """``<α, class>``: declared value if present, else the dot product."""
        alpha = tuple(alpha)
        if self.pairings is not None:
            if alpha not in self.pairings:
                raise KeyError(f"no pairing data for {alpha}")
            return self.pairings[alpha]
        if len(alpha) != len(self.homology):
            raise KeyError(f"no pairing data for {alpha} and class has rank {len(self.homology)}")
        return pairing(alpha, self.homology)


def cut_paste_class(s: SurfaceClass, g: SurfaceClass, m: int) -> SurfaceClass:
    """The surface built from ``s`` and ``m`` parallel copies of ``g``."""
    if m < 0:
        raise ValueError("m must be nonnegative")
    if len(s.homology) != len(g.homology):
        raise ValueError("classes live in different H_2 ranks")
    pairings = None
    if s.pairings is not None and g.pairings is not None:
        pairings = {a: v + m * g.pairings[a] for a, v in s.pairings.items() if a in g.pairings}
    return SurfaceClass(
        tuple(x + m * y for x, y in zip(s.homology, g.homology)),
        s.euler + m * g.euler,
        pairings,
    )


def lower_sub_threshold(B: BasicClassSet, s: SurfaceClass) -> int:
    """``1 + max_α |<α, S> - χ(S)|``; 1 for empty ``B``."""
    gaps = [abs(s.pair(a) - s.euler) for a in B]
    return 1 + max(gaps, default=0)


def lower_set(B: BasicClassSet, surface: SurfaceClass) -> BasicClassSet:
    return BasicClassSet(frozenset(a for a in B.classes if surface.pair(a) <= surface.euler))


def verify_lower_sub(B: BasicClassSet, s: SurfaceClass, g: SurfaceClass, m: int) -> bool:
    """``{α : <α,G^(m)> <= χ(G^(m))} ⊆ {α : <α,G> <= χ(G)}`` by enumeration over ``B``."""
    gm = cut_paste_class(s, g, m)
    return lower_set(B, gm) <= lower_set(B, g)
