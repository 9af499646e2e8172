"""Points of the projective line, the right action of SL2, and A_k orbits.

Points are row vectors [alpha : beta] acted on from the right, so a matrix h
sends [alpha : beta] to (alpha, beta) * h.  An A_k orbit of points (a
"spoke") is identified by its smallest member in a fixed total order.
"""
from __future__ import annotations

import enum
import functools
from dataclasses import dataclass
from fractions import Fraction

from .cyclotomic import (
    ONE,
    ZERO,
    Cyc,
    Matrix2,
    cyclic_group,
    format_cyclo,
    in_cyclic_group,
    parse_cyclo,
)


@dataclass(frozen=True, slots=True)
class ProjPoint:
    """[alpha : beta], normalised so the first nonzero coordinate is 1."""

    alpha: Cyc
    beta: Cyc

    def __post_init__(self):
        a, b = self.alpha, self.beta
        if a.is_zero() and b.is_zero():
            raise ValueError("[0:0] is not a point")
        if not a.is_zero():
            if a != ONE:
                object.__setattr__(self, "beta", b / a)
                object.__setattr__(self, "alpha", ONE)
        elif b != ONE:
            object.__setattr__(self, "beta", ONE)

    @classmethod
    def of(cls, alpha, beta) -> "ProjPoint":
        def c(x):
            if isinstance(x, Cyc):
                return x
            if isinstance(x, str):
                return parse_cyclo(x)
            return Cyc.rational(x)

        return cls(c(alpha), c(beta))

    def order(self) -> int:
        return max(self.alpha.order, self.beta.order)

    def sort_key(self):
        return (self.order(), self.alpha.sort_key(), self.beta.sort_key())

    def __lt__(self, other: "ProjPoint") -> bool:
        return self.sort_key() < other.sort_key()

    def is_pole(self) -> bool:
        return self.alpha.is_zero() or self.beta.is_zero()

    def to_json(self) -> list[str]:
        return [format_cyclo(self.alpha), format_cyclo(self.beta)]

    @classmethod
    def from_json(cls, pair) -> "ProjPoint":
        return cls(parse_cyclo(pair[0]), parse_cyclo(pair[1]))

    def __str__(self) -> str:
        return f"[{format_cyclo(self.alpha)}:{format_cyclo(self.beta)}]"


ZERO_POLE = ProjPoint(ZERO, ONE)  # [0:1]
INF_POLE = ProjPoint(ONE, ZERO)  # [1:0]


def right_act(p: ProjPoint, h: Matrix2) -> ProjPoint:
    return ProjPoint(p.alpha * h.a + p.beta * h.c, p.alpha * h.b + p.beta * h.d)


@dataclass(frozen=True, slots=True)
class SpokeOrbit:
    """An orbit of A_k on the projective line, stored by its minimal member."""

    k: int
    rep: ProjPoint

    def __lt__(self, other: "SpokeOrbit") -> bool:
        return (self.k, self.rep.sort_key()) < (other.k, other.rep.sort_key())

    def is_pole(self) -> bool:
        return self.rep.is_pole()

    def to_json(self) -> dict:
        return {"k": self.k, "rep": self.rep.to_json()}

    @classmethod
    def from_json(cls, obj) -> "SpokeOrbit":
        return orbit_canonical(ProjPoint.from_json(obj["rep"]), int(obj["k"]))

    def __str__(self) -> str:
        return str(self.rep)


def orbit_points(p: ProjPoint, k: int) -> list[ProjPoint]:
    seen = []
    for h in cyclic_group(k):
        q = right_act(p, h)
        if q not in seen:
            seen.append(q)
    return seen


@functools.lru_cache(maxsize=4096)
def orbit_canonical(p: ProjPoint, k: int) -> SpokeOrbit:
    return SpokeOrbit(k, min(orbit_points(p, k), key=ProjPoint.sort_key))


def spoke(alpha, beta, k: int) -> SpokeOrbit:
    return orbit_canonical(ProjPoint.of(alpha, beta), k)


def pole_zero(k: int) -> SpokeOrbit:
    return SpokeOrbit(k, ZERO_POLE)


def pole_inf(k: int) -> SpokeOrbit:
    return SpokeOrbit(k, INF_POLE)


def b_max(j: SpokeOrbit) -> Fraction:
    """Upper end of the valuation range along a spoke: 1 at the poles, else 4/m - 1."""
    if j.is_pole():
        return Fraction(1)
    m = j.k if j.k % 2 == 0 else 2 * j.k
    return Fraction(4, m) - 1


class NormalizerKind(enum.Enum):
    FULL_SL2 = "full_SL2"
    PGL2 = "PGL2"
    DIAG_UNION_ANTIDIAG = "diag_union_antidiag"


@dataclass(frozen=True)
class NormalizerDescriptor:
    k: int
    kind: NormalizerKind

    def contains(self, n: Matrix2) -> bool:
        if self.kind is not NormalizerKind.DIAG_UNION_ANTIDIAG:
            return True
        return n.is_diagonal() or n.is_antidiagonal()


def normalizer_info(k: int) -> NormalizerDescriptor:
    """Normalizer of A_k in SL2 (its quotient by A_k is what acts on colors)."""
    if k < 1:
        raise ValueError("k must be positive")
    if k == 1:
        return NormalizerDescriptor(k, NormalizerKind.FULL_SL2)
    if k == 2:
        return NormalizerDescriptor(k, NormalizerKind.PGL2)
    return NormalizerDescriptor(k, NormalizerKind.DIAG_UNION_ANTIDIAG)


def normalizes(n: Matrix2, k: int) -> bool:
    """Exact check that n A_k n^-1 = A_k."""
    if k <= 2:
        return True
    ninv = n.inverse()
    return all(in_cyclic_group(n @ h @ ninv, k) for h in cyclic_group(k)[1:2])
