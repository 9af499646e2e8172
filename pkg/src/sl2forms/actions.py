"""The Galois action induced by a cocycle and the automorphism action on diagrams.

A real structure mu_t(gH) = sigma(g) t H acts on colors by
[a:b] -> [conj a : conj b] t (split) or [-conj b : conj a] t (compact),
keeping radii.  An automorphism phi_n(gH) = g n^-1 H acts by j -> j n^-1.
"""
from __future__ import annotations

import enum
import functools
import itertools
from dataclasses import dataclass, field
from typing import Callable, Iterable, Sequence

from .cyclotomic import (
    ONE,
    ZERO,
    Cyc,
    E,
    I,
    IDENTITY,
    Matrix2,
    SigmaKind,
    apply_sigma,
    cyclic_group,
    diag,
    antidiag,
    in_cyclic_group,
    is_root_of_unity,
    rational_sqrt_exact,
    sqrt_rational,
    sqrt_root_of_unity,
)
from .equipment import Diagram, GenericFamily, OrbitRecord, RecordKind, Valuation
from .moebius import ProjPoint, SpokeOrbit, normalizes, orbit_canonical, pole_inf, pole_zero, right_act


class NotACocycle(ValueError):
    pass


@functools.lru_cache(maxsize=1 << 16)
def is_cocycle(sigma: SigmaKind, t: Matrix2, k: int) -> bool:
    """t normalizes A_k and t * sigma(t) lies in A_k."""
    if not normalizes(t, k):
        return False
    return in_cyclic_group(t @ apply_sigma(sigma, t), k)


def _check_cocycle(sigma: SigmaKind, t: Matrix2, k: int) -> None:
    if not is_cocycle(sigma, t, k):
        raise NotACocycle(f"{t} is not a {sigma} cocycle modulo A_{k}")


def _twist_point(sigma: SigmaKind, p: ProjPoint) -> ProjPoint:
    if sigma is SigmaKind.SPLIT:
        return ProjPoint(p.alpha.conj(), p.beta.conj())
    return ProjPoint(-p.beta.conj(), p.alpha.conj())


def gamma_point(sigma: SigmaKind, t: Matrix2, p: ProjPoint) -> ProjPoint:
    return right_act(_twist_point(sigma, p), t)


def gamma_color(sigma: SigmaKind, t: Matrix2, j: SpokeOrbit, *, checked: bool = True) -> SpokeOrbit:
    if checked:
        _check_cocycle(sigma, t, j.k)
    return _gamma_color(sigma, t, j)


@functools.lru_cache(maxsize=1 << 16)
def _gamma_color(sigma: SigmaKind, t: Matrix2, j: SpokeOrbit) -> SpokeOrbit:
    return orbit_canonical(gamma_point(sigma, t, j.rep), j.k)


def gamma_valuation(sigma: SigmaKind, t: Matrix2, v: Valuation) -> Valuation:
    if v.is_center():
        return v
    return Valuation(gamma_color(sigma, t, v.spoke), v.r)


def _map_record(rec, f: Callable[[SpokeOrbit], SpokeOrbit]):
    if isinstance(rec, GenericFamily):
        return GenericFamily(rec.kind, rec.radius, frozenset(f(s) for s in rec.excluded))
    return OrbitRecord(rec.kind, tuple(f(s) for s in rec.spokes), rec.radii)


def gamma_record(sigma: SigmaKind, t: Matrix2, rec, k: int):
    _check_cocycle(sigma, t, k)
    cache: dict[SpokeOrbit, SpokeOrbit] = {}

    def f(s: SpokeOrbit) -> SpokeOrbit:
        if s not in cache:
            cache[s] = gamma_color(sigma, t, s, checked=False)
        return cache[s]

    return _map_record(rec, f)


@dataclass
class ExtensionVerdict:
    ok: bool
    images: list[tuple[str, str, bool]] = field(default_factory=list)
    failure: str | None = None

    def __bool__(self) -> bool:
        return self.ok

    def to_json(self) -> dict:
        return {
            "extends": self.ok,
            "failure": self.failure,
            "images": [{"record": a, "image": b, "ok": c} for a, b, c in self.images],
        }


def _preserves(d: Diagram, f: Callable[[SpokeOrbit], SpokeOrbit], fix_b: bool) -> ExtensionVerdict:
    records = set(d.records)
    families = set(d.families)
    out = ExtensionVerdict(True)
    for rec in list(d.records) + list(d.families):
        img = _map_record(rec, f)
        if isinstance(rec, GenericFamily):
            good = img in families
            why = "family not preserved"
        else:
            good = img in records
            why = "image is not an orbit of the model"
            if good and fix_b and rec.kind in (RecordKind.B_MINUS, RecordKind.B_ZERO) and img != rec:
                good, why = False, f"{rec.kind} orbit is moved"
        out.images.append((str(rec), str(img), good))
        if not good and out.ok:
            out.ok = False
            out.failure = f"{rec}: {why} ({img})"
    return out


def extends_effectively(sigma: SigmaKind, t: Matrix2, d: Diagram) -> ExtensionVerdict:
    """Whether mu_t extends to an effective real structure on the model d."""
    if not is_cocycle(sigma, t, d.k):
        return ExtensionVerdict(False, failure=f"{t} is not a cocycle")
    cache: dict[SpokeOrbit, SpokeOrbit] = {}

    def f(s: SpokeOrbit) -> SpokeOrbit:
        if s not in cache:
            cache[s] = gamma_color(sigma, t, s, checked=False)
        return cache[s]

    return _preserves(d, f, fix_b=True)


# ---------------------------------------------------------------- automorphisms


def aut_color(n: Matrix2, j: SpokeOrbit, *, checked: bool = True) -> SpokeOrbit:
    if checked and not normalizes(n, j.k):
        raise ValueError(f"{n} does not normalize A_{j.k}")
    return orbit_canonical(right_act(j.rep, n.inverse()), j.k)


def aut_preserves(n: Matrix2, d: Diagram) -> bool:
    if not normalizes(n, d.k):
        raise ValueError(f"{n} does not normalize A_{d.k}")
    cache: dict[SpokeOrbit, SpokeOrbit] = {}

    def f(s: SpokeOrbit) -> SpokeOrbit:
        if s not in cache:
            cache[s] = aut_color(n, s, checked=False)
        return cache[s]

    return _preserves(d, f, fix_b=False).ok


class AutKind(enum.Enum):
    SL2 = "SL2"
    PGL2 = "PGL2"
    BOREL = "Borel_mod_H"
    TORUS = "Torus_mod_H"
    TORUS_ANTIDIAG = "TorusUnionAntidiag_mod_H"
    S3 = "S3"
    Z2 = "Z2"
    TRIVIAL = "Trivial"
    FINITE = "Finite_mod_H"

    def __str__(self) -> str:
        return self.value

    @property
    def finite(self) -> bool:
        return self in (AutKind.S3, AutKind.Z2, AutKind.TRIVIAL, AutKind.FINITE)


@dataclass(frozen=True)
class AutDescriptor:
    """Aut^G of a model as a subgroup of N(A_k)/A_k.

    Finite kinds list coset representatives.  For the Borel kind,
    ``fixed_pole`` says which pole the triangular group fixes.
    """

    kind: AutKind
    k: int
    reps: tuple[Matrix2, ...] = ()
    fixed_pole: str | None = None

    def contains(self, n: Matrix2) -> bool:
        if not normalizes(n, self.k):
            return False
        kind = self.kind
        if kind in (AutKind.SL2, AutKind.PGL2):
            return True
        if kind is AutKind.BOREL:
            return n.c.is_zero() if self.fixed_pole == "zero" else n.b.is_zero()
        if kind is AutKind.TORUS:
            return n.is_diagonal()
        if kind is AutKind.TORUS_ANTIDIAG:
            return n.is_diagonal() or n.is_antidiagonal()
        return any(same_coset(n, r, self.k) for r in self.reps)

    def order(self) -> int | None:
        return len(self.reps) if self.kind.finite else None

    def to_json(self) -> dict:
        out: dict = {"kind": self.kind.value, "k": self.k}
        if self.kind.finite:
            out["representatives"] = [r.to_json() for r in self.reps]
        if self.fixed_pole:
            out["fixed_pole"] = self.fixed_pole
        return out


def same_coset(n: Matrix2, m: Matrix2, k: int) -> bool:
    return in_cyclic_group(m.inverse() @ n, k)


def cyc_sqrt(x: Cyc) -> Cyc | None:
    """A square root of x when x is a root of unity times a rational, else None."""
    if x.is_zero():
        return ZERO
    norm = x.abs2()
    if not norm.is_rational():
        return None
    q = rational_sqrt_exact(norm.as_fraction())
    if q is None:
        return None
    u = x * Cyc.rational(1 / q)
    if not is_root_of_unity(u):
        return None
    return sqrt_root_of_unity(u) * sqrt_rational(q)


def _gl2_to_sl2(a: Cyc, b: Cyc, c: Cyc, d: Cyc) -> Matrix2 | None:
    det = a * d - b * c
    if det.is_zero():
        return None
    lam = cyc_sqrt(det)
    if lam is None:
        return None
    inv = lam.inverse()
    return Matrix2(a * inv, b * inv, c * inv, d * inv)


def _frame(p1: ProjPoint, p2: ProjPoint, p3: ProjPoint):
    """GL2 matrix (rows) sending [1:0], [0:1], [1:1] to p1, p2, p3 under the right action."""
    # solve p3 = l1 p1 + l2 p2
    det = p1.alpha * p2.beta - p1.beta * p2.alpha
    l1 = (p3.alpha * p2.beta - p3.beta * p2.alpha) / det
    l2 = (p1.alpha * p3.beta - p1.beta * p3.alpha) / det
    return (l1 * p1.alpha, l1 * p1.beta, l2 * p2.alpha, l2 * p2.beta)


def _gl2_inv(m):
    a, b, c, d = m
    det = a * d - b * c
    inv = det.inverse()
    return (d * inv, -b * inv, -c * inv, a * inv)


def _gl2_mul(m, n):
    a, b, c, d = m
    e, f, g, h = n
    return (a * e + b * g, a * f + b * h, c * e + d * g, c * f + d * h)


def _dedupe(mats: Iterable[Matrix2], k: int) -> list[Matrix2]:
    out: list[Matrix2] = []
    for n in mats:
        if not any(same_coset(n, m, k) for m in out):
            out.append(n)
    return out


def _finite_candidates(d: Diagram) -> list[Matrix2]:
    k = d.k
    marked = d.marked_spokes()
    cands: list[Matrix2] = [IDENTITY]
    if k <= 2 and len(marked) >= 3:
        pts = [s.rep for s in marked]
        src = _frame(*pts[:3])
        for q in itertools.permutations(pts, 3):
            m = _gl2_mul(_gl2_inv(src), _frame(*q))
            n = _gl2_to_sl2(*_gl2_inv(m))
            if n is not None:
                cands.append(n)
                cands.append(-n)
        return cands
    if k <= 2:
        vals = [ZERO, ONE, -ONE, I, -I]
        for a, b, c, dd in itertools.product(vals, repeat=4):
            n = _gl2_to_sl2(a, b, c, dd)
            if n is not None:
                cands.append(n)
        return cands
    # k >= 3: the normalizer is diagonal union antidiagonal
    nonpole = [s.rep.beta for s in marked if not s.is_pole()]
    for alpha in nonpole:
        for beta in nonpole:
            for j in range(k):
                z = Cyc.root_of_unity(k, 2 * j)
                a = cyc_sqrt(beta / alpha * z)
                if a is not None:
                    cands.append(diag(a))
                b = cyc_sqrt(alpha * beta * z)
                if b is not None:
                    cands.append(antidiag(I * b))
    return cands


def _finite_kind(reps: Sequence[Matrix2], k: int) -> AutKind:
    if len(reps) == 1:
        return AutKind.TRIVIAL
    if len(reps) == 2:
        return AutKind.Z2
    if len(reps) == 6:
        abelian = all(same_coset(a @ b, b @ a, k) for a in reps for b in reps)
        if not abelian:
            return AutKind.S3
    return AutKind.FINITE


def compute_aut(d: Diagram) -> AutDescriptor:
    k = d.k
    marked = d.marked_spokes()
    nonpole = [s for s in marked if not s.is_pole()]
    probe_torus = diag(Cyc.rational(2)) @ diag(Cyc.root_of_unity(4 * k))
    if not marked:
        if k == 1:
            return AutDescriptor(AutKind.SL2, k)
        if k == 2:
            return AutDescriptor(AutKind.PGL2, k)
    if not nonpole:
        zero_in = pole_zero(k) in marked
        inf_in = pole_inf(k) in marked
        if k <= 2 and zero_in != inf_in:
            pole = "zero" if zero_in else "inf"
            unip = Matrix2.of(1, 1, 0, 1) if zero_in else Matrix2.of(1, 0, 1, 1)
            if aut_preserves(unip, d) and aut_preserves(probe_torus, d):
                return AutDescriptor(AutKind.BOREL, k, fixed_pole=pole)
        assert aut_preserves(probe_torus, d), "torus must preserve a diagram marked only at poles"
        if aut_preserves(E, d):
            return AutDescriptor(AutKind.TORUS_ANTIDIAG, k)
        return AutDescriptor(AutKind.TORUS, k)
    reps = _dedupe((n for n in _finite_candidates(d) if aut_preserves(n, d)), k)
    for a in reps:
        for b in reps:
            assert any(same_coset(a @ b, r, k) for r in reps), "automorphism list not closed"
    return AutDescriptor(_finite_kind(reps, k), k, tuple(reps))
