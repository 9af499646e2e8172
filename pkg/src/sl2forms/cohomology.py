"""Cocycle families, equivalence of real structures, and per-model classification.

A real structure on SL2/A_k compatible with sigma has the form
mu_t(gH) = sigma(g) t H for a cocycle t of N(A_k)/A_k.  Conjugating mu_t by
the automorphism phi_n(gH) = g n^-1 H gives mu_t' with t' = sigma(n) t n^-1,
so two structures are equivalent when some n in Aut^G(X) relates their
cocycles modulo A_k.

Classes are only ever merged through an explicit witness n, and only ever
kept apart by an exhaustive search or by an invariant that differs.
"""
from __future__ import annotations

import enum
import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable

from .actions import (
    AutDescriptor,
    AutKind,
    ExtensionVerdict,
    compute_aut,
    cyc_sqrt,
    extends_effectively,
    gamma_record,
    is_cocycle,
)
from .cyclotomic import (
    E,
    F,
    I,
    IDENTITY,
    ONE,
    ZERO,
    Cyc,
    Matrix2,
    SigmaKind,
    antidiag,
    apply_sigma,
    cyclic_group,
    diag,
    in_cyclic_group,
    is_positive_real,
    _prime_factors,
    _squarefree_split,
    is_root_of_unity,
    omega,
    rational_sqrt_exact,
    real_sign,
    sqrt_rational,
    sqrt_root_of_unity,
)
from .equipment import Diagram
from .moebius import ProjPoint

__all__ = [
    "ClassificationError",
    "CocycleFamily",
    "FamilyShape",
    "RealStructureClass",
    "classify_structures",
    "cocycle_families",
    "equivalent",
    "fixed_lift",
    "is_cocycle",
    "twist",
]


class ClassificationError(RuntimeError):
    """Two candidate classes could be neither merged nor told apart."""


class FamilyShape(enum.Enum):
    DIAG_UNIT = "diag_unit"
    DIAG_REAL = "diag_real"
    ANTIDIAG_I_REAL = "antidiag_i_real"
    ANTIDIAG_I_REAL_ZETA = "antidiag_i_real_zeta"
    ANTIDIAG_UNIT = "antidiag_unit"
    DIAG_REAL_ZETA = "diag_real_zeta"
    GENERAL_SL2_S = "general_sl2_s"
    GENERAL_SL2_C = "general_sl2_c"
    GENERAL_PGL2_S_PLUS = "general_pgl2_s_plus"
    GENERAL_PGL2_C_PLUS = "general_pgl2_c_plus"
    GENERAL_PGL2_S_MINUS = "general_pgl2_s_minus"
    GENERAL_PGL2_C_MINUS = "general_pgl2_c_minus"

    def __str__(self) -> str:
        return self.value


_DESCRIPTIONS = {
    FamilyShape.DIAG_UNIT: "diag(a, 1/a), |a| = 1",
    FamilyShape.DIAG_REAL: "diag(x, 1/x), x real nonzero",
    FamilyShape.ANTIDIAG_I_REAL: "[[0, ix], [i/x, 0]], x real nonzero",
    FamilyShape.ANTIDIAG_I_REAL_ZETA: "[[0, ix z], [i/(x z), 0]], z = zeta_2k, x real nonzero",
    FamilyShape.ANTIDIAG_UNIT: "[[0, b], [-1/b, 0]], |b| = 1",
    FamilyShape.DIAG_REAL_ZETA: "diag(x z, 1/(x z)), z = zeta_2k, x real nonzero",
    FamilyShape.GENERAL_SL2_S: "[[a, ix], [iy, conj a]], x, y real",
    FamilyShape.GENERAL_SL2_C: "[[a, b], [conj b, d]], a, d real",
    FamilyShape.GENERAL_PGL2_S_PLUS: "[[a, ix], [iy, conj a]] mod +-1, x, y real",
    FamilyShape.GENERAL_PGL2_S_MINUS: "[[a, b], [c, -conj a]] mod +-1, b, c real",
    FamilyShape.GENERAL_PGL2_C_PLUS: "[[a, b], [conj b, d]] mod +-1, a, d real",
    FamilyShape.GENERAL_PGL2_C_MINUS: "[[ix, b], [-conj b, iy]] mod +-1, x, y real",
}


def _c(x) -> Cyc:
    return x if isinstance(x, Cyc) else Cyc.rational(x)


def _zeta(n: int, j: int = 1) -> Cyc:
    return Cyc.root_of_unity(n, j)


def _m(a, b, c, d) -> Matrix2 | None:
    a, b, c, d = _c(a), _c(b), _c(c), _c(d)
    if a * d - b * c != ONE:
        return None
    return Matrix2._trusted(a, b, c, d)


# ---------------------------------------------------------------- families


def _shape_holds(shape: FamilyShape, t: Matrix2, sigma: SigmaKind, k: int) -> bool:
    """Membership of a single matrix (not its A_k coset) in a family."""
    z = _zeta(2 * k)
    if shape is FamilyShape.DIAG_UNIT:
        return t.is_diagonal() and t.a.abs2() == ONE
    if shape is FamilyShape.DIAG_REAL:
        return t.is_diagonal() and t.a.is_real()
    if shape is FamilyShape.DIAG_REAL_ZETA:
        return t.is_diagonal() and (t.a / z).is_real()
    if shape is FamilyShape.ANTIDIAG_I_REAL:
        return t.is_antidiagonal() and (t.b / I).is_real()
    if shape is FamilyShape.ANTIDIAG_I_REAL_ZETA:
        return t.is_antidiagonal() and (t.b / (I * z)).is_real()
    if shape is FamilyShape.ANTIDIAG_UNIT:
        return t.is_antidiagonal() and t.b.abs2() == ONE
    prod = t @ apply_sigma(sigma, t)
    sign = -1 if shape in (FamilyShape.GENERAL_PGL2_S_MINUS, FamilyShape.GENERAL_PGL2_C_MINUS) else 1
    return prod == IDENTITY.scaled(Cyc.rational(sign))


@dataclass(frozen=True)
class CocycleFamily:
    """One component of the cocycle set for (sigma, k)."""

    sigma: SigmaKind
    k: int
    shape: FamilyShape
    sample: Matrix2

    @property
    def description(self) -> str:
        return _DESCRIPTIONS[self.shape]

    def contains(self, t: Matrix2) -> bool:
        """Whether some lift t h, h in A_k, lies in the family."""
        if not is_cocycle(self.sigma, t, self.k):
            return False
        return any(_shape_holds(self.shape, t @ h, self.sigma, self.k) for h in cyclic_group(self.k))

    def members(self, units: Iterable[Cyc] = (), reals: Iterable[Cyc] = ()) -> list[Matrix2]:
        """Concrete members: the sample, then one per supplied parameter."""
        units = _dedup_values([*_BASE_UNITS(self.k), *units])
        reals = _dedup_values([*_BASE_REALS(), *reals])
        out = [self.sample, *_family_members(self.shape, self.k, units, reals)]
        return [t for t in out if t is not None and is_cocycle(self.sigma, t, self.k)]

    def to_json(self) -> dict:
        return {
            "sigma": self.sigma.value,
            "k": self.k,
            "shape": self.shape.value,
            "description": self.description,
            "sample": self.sample.to_json(),
        }


def _BASE_UNITS(k: int) -> list[Cyc]:
    return [ONE, -ONE, I, _zeta(8), _zeta(8, 3), _zeta(2 * k), _zeta(4 * k)]


def _BASE_REALS() -> list[Cyc]:
    return [_c(q) for q in (1, -1, 2, -2, Fraction(1, 2), Fraction(-1, 2))]


def _dedup_values(xs: Iterable[Cyc]) -> list[Cyc]:
    out: list[Cyc] = []
    for x in xs:
        if x not in out:
            out.append(x)
    return out


def _family_members(shape: FamilyShape, k: int, units: list[Cyc], reals: list[Cyc]) -> list[Matrix2 | None]:
    z = _zeta(2 * k)
    S = FamilyShape
    if shape is S.DIAG_UNIT:
        return [diag(u) for u in units]
    if shape is S.DIAG_REAL:
        return [diag(x) for x in reals]
    if shape is S.DIAG_REAL_ZETA:
        return [diag(x * z) for x in reals]
    if shape is S.ANTIDIAG_I_REAL:
        return [antidiag(I * x) for x in reals]
    if shape is S.ANTIDIAG_I_REAL_ZETA:
        return [antidiag(I * x * z) for x in reals]
    if shape is S.ANTIDIAG_UNIT:
        return [antidiag(u) for u in units]
    if shape in (S.GENERAL_SL2_S, S.GENERAL_PGL2_S_PLUS):
        out = [diag(u) for u in units] + [antidiag(I * x) for x in reals]
        for u in units[:4]:
            for x in (1, -1):
                out.append(_m(u, I * x, 0, u.conj()))
                out.append(_m(u, 0, I * x, u.conj()))
        out.append(_m(ONE + I, I, -I, ONE - I))
        out.append(_m(2, I, I * -3, 2))
        return out
    if shape is S.GENERAL_PGL2_S_MINUS:
        z8 = _zeta(8)
        out = [antidiag(x) for x in reals]
        out.append(_m(I, 1, -2, I))
        out.append(_m(z8, 1, -2, -z8.conj()))
        return out
    if shape in (S.GENERAL_SL2_C, S.GENERAL_PGL2_C_PLUS):
        z8 = _zeta(8)
        out = [diag(x) for x in reals]
        out += [_m(2, 1, 1, 1), _m(2, I, -I, 1), _m(-2, 1, 1, -1), _m(1, z8, z8.conj(), 2),
                _m(-1, z8, z8.conj(), -2)]
        return out
    if shape is S.GENERAL_PGL2_C_MINUS:
        out = [antidiag(u) for u in units] + [diag(I * x) for x in reals]
        for u in units[:3]:
            for y in (1, -1):
                out.append(_m(0, u, -u.conj(), I * y))
                out.append(_m(I * y, u, -u.conj(), 0))
        out.append(_m(I, 1, -1, 0))
        return out
    raise ValueError(shape)


def _shapes_for(sigma: SigmaKind, k: int) -> list[FamilyShape]:
    S = FamilyShape
    split = sigma is SigmaKind.SPLIT
    if k == 1:
        return [S.GENERAL_SL2_S] if split else [S.GENERAL_SL2_C]
    if k == 2:
        if split:
            return [S.GENERAL_PGL2_S_PLUS, S.GENERAL_PGL2_S_MINUS]
        return [S.GENERAL_PGL2_C_PLUS, S.GENERAL_PGL2_C_MINUS]
    if k % 2 == 1:
        return [S.DIAG_UNIT, S.ANTIDIAG_I_REAL] if split else [S.DIAG_REAL]
    if split:
        return [S.DIAG_UNIT, S.ANTIDIAG_I_REAL, S.ANTIDIAG_I_REAL_ZETA]
    return [S.DIAG_REAL, S.DIAG_REAL_ZETA, S.ANTIDIAG_UNIT]


def _canonical_sample(shape: FamilyShape, k: int) -> Matrix2:
    S = FamilyShape
    z = _zeta(2 * k)
    if shape in (S.DIAG_UNIT, S.DIAG_REAL, S.GENERAL_SL2_S, S.GENERAL_SL2_C, S.GENERAL_PGL2_S_PLUS,
                 S.GENERAL_PGL2_C_PLUS):
        return IDENTITY
    if shape is S.ANTIDIAG_I_REAL:
        return F
    if shape is S.ANTIDIAG_I_REAL_ZETA:
        return antidiag(I * z)
    if shape is S.DIAG_REAL_ZETA:
        return diag(z)
    return E  # antidiag_unit and both minus components


def cocycle_families(sigma: SigmaKind, k: int) -> list[CocycleFamily]:
    """The components of the cocycle set for (sigma, k), each with a checked sample."""
    if k < 1:
        raise ValueError("k must be positive")
    out = []
    for shape in _shapes_for(sigma, k):
        fam = CocycleFamily(sigma, k, shape, _canonical_sample(shape, k))
        assert is_cocycle(sigma, fam.sample, k) and _shape_holds(shape, fam.sample, sigma, k)
        out.append(fam)
    return out


# ---------------------------------------------------------------- equivalence


def twist(sigma: SigmaKind, n: Matrix2, t: Matrix2) -> Matrix2:
    """The cocycle sigma(n) t n^-1 of the structure phi_n mu_t phi_n^-1."""
    return apply_sigma(sigma, n) @ t @ n.inverse()


def _is_witness(sigma: SigmaKind, n: Matrix2, t1: Matrix2, t2: Matrix2, k: int) -> bool:
    return in_cyclic_group(twist(sigma, n, t1) @ t2.inverse(), k)


class _Undecided(Exception):
    """A solution exists over C but no cyclotomic witness was produced."""


def _pos_sqrt(rho: Cyc) -> Cyc:
    if _sqrt_cost(rho) is None:
        raise _Undecided(f"square root of {rho} not attempted")
    if rho.is_rational():
        return sqrt_rational(rho.as_fraction())
    r = cyc_sqrt(rho)
    if r is None:
        raise _Undecided(f"no cyclotomic square root of {rho}")
    return r if real_sign(r) > 0 else -r


def _unit_sqrt(v: Cyc) -> Cyc:
    if is_root_of_unity(v):
        return sqrt_root_of_unity(v)
    w = cyc_sqrt(v)
    if w is None:
        raise _Undecided(f"no cyclotomic square root of {v}")
    return w


def _solve_diag(sigma: SigmaKind, t1: Matrix2, target: Matrix2) -> Matrix2 | None:
    """n = diag(x, 1/x) with sigma(n) t1 n^-1 = target, or None if there is none.

    Writing rho = |x|^2 and v = conj(x)/x, the split twist scales the diagonal
    of t1 by v, 1/v and the off-diagonal by rho, 1/rho; the compact twist
    swaps the roles.
    """
    src, dst = t1.entries(), target.entries()
    if any(s.is_zero() != d.is_zero() for s, d in zip(src, dst)):
        return None
    r = [None if s.is_zero() else d / s for s, d in zip(src, dst)]
    if sigma is SigmaKind.SPLIT:
        v_opts = [r[0], None if r[3] is None else r[3].inverse()]
        rho_opts = [r[1], None if r[2] is None else r[2].inverse()]
    else:
        v_opts = [None if r[1] is None else r[1].inverse(), r[2]]
        rho_opts = [None if r[0] is None else r[0].inverse(), r[3]]
    v = next((x for x in v_opts if x is not None), ONE)
    rho = next((x for x in rho_opts if x is not None), ONE)
    if v.abs2() != ONE or not is_positive_real(rho):
        return None
    x = _pos_sqrt(rho) * _unit_sqrt(v).conj()
    n = diag(x)
    return n if twist(sigma, n, t1) == target else None


def _gl2(m: Matrix2) -> tuple[Cyc, Cyc, Cyc, Cyc]:
    return m.entries()


def _mul(m, n):
    a, b, c, d = m
    e, f, g, h = n
    return (a * e + b * g, a * f + b * h, c * e + d * g, c * f + d * h)


def _add(m, n, s: int = 1):
    sc = Cyc.rational(s)
    return tuple(x + sc * y for x, y in zip(m, n))


def _conj4(m):
    return tuple(x.conj() for x in m)


def _is_scalar(m, value: Cyc) -> bool:
    return m[1].is_zero() and m[2].is_zero() and m[0] == value and m[3] == value


_BASIS = [(1, 0, 0, 0), (0, 1, 0, 0), (0, 0, 1, 0), (0, 0, 0, 1), (1, 0, 0, 1)]

# entries forced to vanish for each shape
_ZERO_ENTRIES = {"general": (), "upper": (2,), "lower": (1,)}


# square roots needing primes with a larger product are not attempted; they blow up the field
_SQRT_LIMIT = 210


def _sqrt_cost(det: Cyc) -> int | None:
    """Product of the primes a square root of det brings in; None when unusable or too costly."""
    if det.is_zero():
        return None
    norm = det.abs2()
    if not norm.is_rational():
        return None
    q = rational_sqrt_exact(norm.as_fraction())
    if q is None:
        return None
    _, free = _squarefree_split(q.numerator * q.denominator)
    return free if free <= _SQRT_LIMIT else None


def _nullspace(rows: list[list[Cyc]], width: int) -> list[list[Cyc]]:
    """A basis of the right kernel of a matrix over the cyclotomic numbers."""
    rows = [r[:] for r in rows]
    pivots: list[int] = []
    r = 0
    for col in range(width):
        piv = next((i for i in range(r, len(rows)) if not rows[i][col].is_zero()), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = rows[r][col].inverse()
        rows[r] = [x * inv for x in rows[r]]
        for i in range(len(rows)):
            if i != r and not rows[i][col].is_zero():
                f = rows[i][col]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        pivots.append(col)
        r += 1
    out = []
    for free in (c for c in range(width) if c not in pivots):
        v = [ZERO] * width
        v[free] = ONE
        for i, col in enumerate(pivots):
            v[col] = -rows[i][free]
        out.append(v)
    return out


def _real_solutions(gens: list, zero_entries: tuple[int, ...]) -> list:
    """Real combinations of gens whose listed entries vanish, as a spanning list of matrices.

    A real vector r solves sum r_i g_i[e] = 0 exactly when it also solves the
    conjugate equation, so the kernel of both together is stable under
    conjugation and its real and imaginary parts span the real solutions.
    """
    if not zero_entries:
        return list(gens)
    rows = []
    for e in zero_entries:
        rows.append([g[e] for g in gens])
        rows.append([g[e].conj() for g in gens])
    out = []
    for v in _nullspace(rows, len(gens)):
        vc = [x.conj() for x in v]
        for r in ([x + y for x, y in zip(v, vc)], [I * (x - y) for x, y in zip(v, vc)]):
            if all(x.is_zero() for x in r):
                continue
            n = (ZERO, ZERO, ZERO, ZERO)
            for c, g in zip(r, gens):
                if not c.is_zero():
                    n = tuple(x + c * y for x, y in zip(n, g))
            if any(not x.is_zero() for x in n) and n not in out:
                out.append(n)
    return out


def _real_coords(m) -> list[Cyc]:
    half = Cyc.rational(Fraction(1, 2))
    out = []
    for x in m:
        xc = x.conj()
        out += [(x + xc) * half, (x - xc) * (-I) * half]
    return out


def _real_echelon(mats: list) -> list:
    """A reduced basis of the real span of mats, pivots scaled to 1.

    Only real scalars are used, so matrices fixed by an antilinear map stay fixed.
    """
    rows = [(_real_coords(m), m) for m in mats]
    basis: list[tuple[list[Cyc], tuple, int]] = []
    for coords, m in rows:
        for bc, bm, piv in basis:
            f = coords[piv]
            if not f.is_zero():
                coords = [x - f * y for x, y in zip(coords, bc)]
                m = tuple(x - f * y for x, y in zip(m, bm))
        piv = next((i for i, x in enumerate(coords) if not x.is_zero()), None)
        if piv is None:
            continue
        inv = coords[piv].inverse()
        coords = [x * inv for x in coords]
        m = tuple(x * inv for x in m)
        for idx, (bc, bm, bp) in enumerate(basis):
            f = bc[piv]
            if not f.is_zero():
                basis[idx] = ([x - f * y for x, y in zip(bc, coords)], tuple(x - f * y for x, y in zip(bm, m)), bp)
        basis.append((coords, m, piv))
    return [m for _, m, _ in sorted(basis, key=lambda b: b[2])]


def _solve_linear(sigma: SigmaKind, t1: Matrix2, target: Matrix2, shape: str, k: int = 1) -> Matrix2 | None:
    """Search n of the given shape with sigma(n) t1 n^-1 = target.

    sigma(n) = P conj(n) P^-1 with P = 1 or e, so the condition reads
    n = J(n) for the antilinear map J(M) = conj(A M B).  When J is an
    involution its fixed matrices form a real form spanned by the M + J(M);
    the shape is then imposed by real linear algebra and a nonzero
    determinant is scaled away by a square root.
    """
    p = (ONE, ZERO, ZERO, ONE) if sigma is SigmaKind.SPLIT else _gl2(E)
    p_inv = (ONE, ZERO, ZERO, ONE) if sigma is SigmaKind.SPLIT else _gl2(E.inverse())
    A = _mul(p_inv, _gl2(target))
    B = _mul(_gl2(t1.inverse()), p)
    aa = _mul(_conj4(A), A)
    bb = _mul(B, _conj4(B))
    if not (aa[1].is_zero() and aa[2].is_zero() and aa[0] == aa[3]):
        return None
    if not _is_scalar(bb, aa[0].inverse()):
        return None  # J squares to -1 here, so it fixes nothing but 0

    def J(M):
        return _conj4(_mul(_mul(A, M), B))

    n = _solve_fixed(sigma, t1, target, shape, k, J, (ONE, I), combine=True)
    if n is None:
        # entries of the form w + conj(a w) need w^2 close to conj(a); try finer unit scales
        order = 2 * _lcm_orders([*A, *B])
        scales = [Cyc.root_of_unity(order, j) for j in range(order)]
        n = _solve_fixed(sigma, t1, target, shape, k, J, scales, combine=False)
    return n


def _monomial(x: Cyc) -> bool:
    """Whether x is zero or a root of unity times a rational."""
    if x.is_zero():
        return True
    norm = x.abs2()
    if not norm.is_rational():
        return False
    q = rational_sqrt_exact(norm.as_fraction())
    return q is not None and is_root_of_unity(x * Cyc.rational(1 / q))


def _lcm_orders(xs) -> int:
    out = 4
    for x in xs:
        out = out * x.order // math.gcd(out, x.order)
    return out


def _det4(n) -> Cyc:
    return n[0] * n[3] - n[1] * n[2]


def _small_vectors(dim: int, bound: int):
    """Integer vectors with entries in [-bound, bound], smallest first, up to sign."""
    vecs = [v for v in itertools.product(range(-bound, bound + 1), repeat=dim) if any(v)]
    vecs = [v for v in vecs if next(x for x in v if x) > 0]
    return sorted(vecs, key=lambda v: (sum(map(abs, v)), max(map(abs, v)), [-x for x in v]))


_SEARCH_BOUND = {1: 1, 2: 3, 3: 2, 4: 2}


def _solve_fixed(sigma, t1, target, shape, k, J, scales, combine: bool) -> Matrix2 | None:
    gens = []
    for base in _BASIS:
        for scale in scales:
            M = tuple(scale * Cyc.rational(x) for x in base)
            n = _add(M, J(M))
            if any(not x.is_zero() for x in n) and n not in gens:
                gens.append(n)
    gens = _real_echelon(_real_solutions(gens, _ZERO_ENTRIES[shape]))
    if not combine:
        gens = [g for g in gens if all(_monomial(x) for x in g)]

    def attempt(n) -> Matrix2 | None:
        lam = cyc_sqrt(_det4(n))
        if lam is None:
            return None
        inv = lam.inverse()
        cand = Matrix2(*(x * inv for x in n))
        got = twist(sigma, cand, t1)
        # an imaginary scale flips the sign, which only an even A_k absorbs
        if got == target or (k % 2 == 0 and got == -target):
            return cand
        return None

    if not combine or len(gens) > 4:
        tries = list(gens)
        if len(gens) <= 40:
            for a, b in itertools.combinations(gens, 2):
                tries += [_add(a, b), _add(a, b, -1), _add(a, b, 2)]
        ranked = sorted((c, i) for i, n in enumerate(tries) if (c := _sqrt_cost(_det4(n))) is not None)
        for _, i in ranked:
            got = attempt(tries[i])
            if got is not None:
                return got
        return None

    # det is a quadratic form on the real span; look for small integer points where it
    # takes a value with a cyclotomic square root, cheapest roots first
    dim = len(gens)
    if dim == 0:
        return None
    diag_terms = [_det4(g) for g in gens]
    cross = {(i, j): _det4(_add(gens[i], gens[j])) - diag_terms[i] - diag_terms[j]
             for i in range(dim) for j in range(i + 1, dim)}
    found = []
    for v in _small_vectors(dim, _SEARCH_BOUND[dim]):
        q = ZERO
        for i, x in enumerate(v):
            if x:
                q = q + Cyc.rational(x * x) * diag_terms[i]
        for (i, j), c in cross.items():
            if v[i] and v[j]:
                q = q + Cyc.rational(v[i] * v[j]) * c
        cost = _sqrt_cost(q)
        if cost is None:
            continue
        found.append((cost, len(found), v))
        if cost == 0:
            break
    for _, _, v in sorted(found):
        n = (ZERO, ZERO, ZERO, ZERO)
        for x, g in zip(v, gens):
            if x:
                n = _add(n, g, x)
        got = attempt(n)
        if got is not None:
            return got
    return None


_PROBE_VECTORS = [
    (1, 0), (0, 1), (1, 1), (1, -1), (1, "i"), (1, "-i"), (2, 1), (1, 2), (2, -1), (1, -2),
    (2, "i"), ("i", 2), (1, 3), (3, 1), (3, -1), (1, -3), (2, 3), (3, 2),
]


def _probe(x) -> Cyc:
    if x == "i":
        return I
    if x == "-i":
        return -I
    return Cyc.rational(x)


def _ray_key(x: Cyc) -> tuple:
    """Equal for two nonzero numbers exactly when their ratio is a positive rational."""
    c = next(c for c in x.coeffs() if c)
    return x.order, tuple(Fraction(v) / c for v in x.coeffs()), c > 0


def _adj(m):
    a, b, c, d = m
    return (a.conj(), c.conj(), b.conj(), d.conj())


def _form_values(h) -> dict:
    """Values v* h v on a few small vectors, keyed by ray; each with its vector."""
    out: dict = {}
    for x, y in _PROBE_VECTORS:
        v = (_probe(x), _probe(y))
        val = v[0].conj() * (h[0] * v[0] + h[1] * v[1]) + v[1].conj() * (h[2] * v[0] + h[3] * v[1])
        if not val.is_zero():
            out.setdefault(_ray_key(val), (val, v))
    return out


def _diagonalizer(h, v, scale: Cyc) -> Matrix2:
    """Q in SL2 with first column scale*v and Q* h Q diagonal."""
    x, y = v[0] * scale, v[1] * scale
    P = Matrix2(x, ZERO, y, x.inverse()) if not x.is_zero() else Matrix2(ZERO, -y.inverse(), y, ZERO)
    hp = _mul(_mul(_gl2(P.conj_transpose()), h), _gl2(P))
    return P @ Matrix2(ONE, -hp[1] / hp[0], ZERO, ONE)


def _hermitian_congruence(h1, h2) -> Matrix2 | None:
    """m in SL2 with m* h2 m = h1 for binary Hermitian forms of equal determinant.

    Both forms are brought to diag(c, det/c) for a value c they share up to a
    positive rational factor, whose square root is always cyclotomic.
    """
    v1, v2 = _form_values(h1), _form_values(h2)
    shared = []
    for key in v1:
        if key in v2:
            ratio = v1[key][0] / v2[key][0]
            cost = _sqrt_cost(ratio)
            if cost is not None:
                shared.append((cost, len(shared), key, ratio))
    if not shared:
        return None
    _, _, key, ratio = min(shared)
    lam = sqrt_rational(ratio.as_fraction())
    q1 = _diagonalizer(h1, v1[key][1], ONE)
    q2 = _diagonalizer(h2, v2[key][1], lam)
    return q2 @ q1.inverse()


def _hermitian_part(t: Matrix2):
    """(t or i t as a Hermitian 4-tuple, which one) for t with t* = +-t, else None."""
    m = _gl2(t)
    adj = _adj(m)
    if adj == m:
        return m, 1
    if adj == tuple(-x for x in m):
        return tuple(I * x for x in m), -1
    return None


def _split_fixed_point(s: Matrix2) -> Matrix2 | None:
    """g in SL2 with conj(g) s = g, given s conj(s) = 1.

    M -> conj(M) s is an antilinear involution, so M + conj(M) s is fixed;
    its determinant is real and a real diagonal factor removes it.
    """
    for base in ((1, 0, 0, 1), (1, 0, 0, 0), (0, 1, 0, 0), (0, 0, 1, 0), (0, 0, 0, 1)):
        for scale in (ONE, I):
            M = tuple(scale * Cyc.rational(x) for x in base)
            fixed = _add(M, _mul(_conj4(M), s.entries()))
            det = fixed[0] * fixed[3] - fixed[1] * fixed[2]
            if det.is_zero():
                continue
            inv = det.inverse()
            return Matrix2(fixed[0] * inv, fixed[1] * inv, fixed[2], fixed[3])
    return None


def _congruence_witness(sigma: SigmaKind, t1: Matrix2, t2: Matrix2, k: int) -> Matrix2 | None:
    """Witness for k <= 2 by reduction to congruence of Hermitian forms.

    A compact cocycle t has t* = +-t, so t or i t is Hermitian, and
    sigma_c(n) t n^-1 = n^-* t n^-1 is a congruence.  The split case reduces
    to the compact one through t -> t e^-1, n -> e n e^-1.
    """
    if k > 2:
        return None
    if sigma is SigmaKind.SPLIT:
        s1, s2 = fixed_lift(sigma, t1, k), fixed_lift(sigma, t2, k)
        if s1 is not None and s2 is not None:
            # t = sigma(g)^-1 g for the fixed points, so g2^-1 g1 carries t1 to t2
            g1, g2 = _split_fixed_point(s1), _split_fixed_point(s2)
            if g1 is not None and g2 is not None:
                return g2.inverse() @ g1
        m = _congruence_witness(SigmaKind.COMPACT, t1 @ E.inverse(), t2 @ E.inverse(), k)
        return None if m is None else E.inverse() @ m @ E
    first = _hermitian_part(t1)
    if first is None:
        return None
    for target in ([t2, -t2] if k == 2 else [t2]):
        second = _hermitian_part(target)
        if second is None or second[1] != first[1]:
            continue
        # m* t2 m = t1 says exactly that m twists t1 into t2
        m = _hermitian_congruence(first[0], second[0])
        if m is not None:
            return m
    return None


def _witness_search(sigma: SigmaKind, t1: Matrix2, t2: Matrix2, aut: AutDescriptor, k: int):
    """(witness or None, whether a None answer is conclusive)."""
    if in_cyclic_group(t1.inverse() @ t2, k):
        return IDENTITY, True
    kind = aut.kind
    if kind.finite:
        for n in aut.reps:
            if _is_witness(sigma, n, t1, t2, k):
                return n, True
        return None, True
    conclusive = kind in (AutKind.TORUS, AutKind.TORUS_ANTIDIAG)
    with_antidiag = kind in (AutKind.SL2, AutKind.PGL2, AutKind.TORUS_ANTIDIAG)
    e_t1 = E @ t1 @ E.inverse()
    for h in cyclic_group(k):
        target = h @ t2
        try:
            n = _solve_diag(sigma, t1, target)
            if n is None and with_antidiag:
                d = _solve_diag(sigma, e_t1, target)
                n = None if d is None else d @ E
        except _Undecided:
            n, conclusive = None, False
        if n is not None and aut.contains(n) and _is_witness(sigma, n, t1, t2, k):
            return n, True
    if kind in (AutKind.SL2, AutKind.PGL2):
        n = _congruence_witness(sigma, t1, t2, k)
        if n is not None and _is_witness(sigma, n, t1, t2, k):
            return n, True
    if kind in (AutKind.SL2, AutKind.PGL2, AutKind.BOREL):
        shape = "general"
        if kind is AutKind.BOREL:
            shape = "upper" if aut.fixed_pole == "zero" else "lower"
        for h in cyclic_group(k):
            n = _solve_linear(sigma, t1, h @ t2, shape, k)
            if n is not None and aut.contains(n) and _is_witness(sigma, n, t1, t2, k):
                return n, True
    return None, conclusive


def equivalent(sigma: SigmaKind, t1: Matrix2, t2: Matrix2, aut: AutDescriptor, k: int | None = None) -> Matrix2 | None:
    """An automorphism n with sigma(n) t1 n^-1 t2^-1 in A_k, or None.

    Every returned n has been checked by exact multiplication.
    """
    k = aut.k if k is None else k
    n, _ = _witness_search(sigma, t1, t2, aut, k)
    return n


# ---------------------------------------------------------------- invariants


def fixed_lift(sigma: SigmaKind, t: Matrix2, k: int) -> Matrix2 | None:
    """A lift s = t h (h in A_k) that is a cocycle of SL2 itself with real points.

    Split: s sigma_s(s) = 1.  Compact: s Hermitian with positive diagonal.
    The open orbit of mu_t has a real point exactly when such a lift exists.
    """
    for h in cyclic_group(k):
        s = t @ h
        if sigma is SigmaKind.SPLIT:
            if s @ s.conj() == IDENTITY:
                return s
        elif s.conj_transpose() == s and real_sign(s.a) > 0:
            return s
    return None


def _lift_products(sigma: SigmaKind, t: Matrix2, k: int) -> tuple[str, ...]:
    vals = set()
    for h in cyclic_group(k):
        s = t @ h
        p = s @ apply_sigma(sigma, s)
        vals.add(str(p))
        vals.add(str(p.inverse()))
    return tuple(sorted(vals))


def _gamma_pattern(sigma: SigmaKind, t: Matrix2, d: Diagram) -> tuple:
    out = []
    for rec in d.records:
        img = gamma_record(sigma, t, rec, d.k)
        out.append((str(rec.signature()), str(img.signature()), img == rec))
    return tuple(sorted(out))


def class_invariants(sigma: SigmaKind, t: Matrix2, d: Diagram) -> dict[str, object]:
    """Quantities unchanged under twisting by an automorphism of d."""
    return {
        "real_points": fixed_lift(sigma, t, d.k) is not None,
        "lift_products": _lift_products(sigma, t, d.k),
        "gamma_pattern": _gamma_pattern(sigma, t, d),
    }


@dataclass
class EquivalenceVerdict:
    """Outcome of deciding whether two cocycles give equivalent structures.

    ``equivalent`` is None only when neither a witness nor a separating
    invariant was found.
    """

    equivalent: bool | None
    witness: Matrix2 | None
    reason: str


def decide_equivalence(sigma: SigmaKind, t1: Matrix2, t2: Matrix2, d: Diagram,
                       aut: AutDescriptor | None = None) -> EquivalenceVerdict:
    """Decide equivalence of mu_t1 and mu_t2 on the model d.

    A witness settles it positively.  Otherwise a conclusive search or a
    differing invariant settles it negatively.  For the full groups SL2 and
    PGL2 the classes are determined by real points and lift products, so
    equal invariants settle it positively there without a witness.
    """
    aut = compute_aut(d) if aut is None else aut
    n, conclusive = _witness_search(sigma, t1, t2, aut, d.k)
    if n is not None:
        return EquivalenceVerdict(True, n, "witness")
    if conclusive:
        return EquivalenceVerdict(False, None, "exhaustive search")
    inv1, inv2 = class_invariants(sigma, t1, d), class_invariants(sigma, t2, d)
    diff = [name for name in inv1 if inv1[name] != inv2[name]]
    if diff:
        return EquivalenceVerdict(False, None, diff[0])
    if aut.kind in (AutKind.SL2, AutKind.PGL2):
        return EquivalenceVerdict(True, None, "complete invariants")
    return EquivalenceVerdict(None, None, "undecided")


# ---------------------------------------------------------------- classification


@dataclass
class RealStructureClass:
    sigma: SigmaKind
    representative: Matrix2
    shapes: tuple[str, ...]
    extension: ExtensionVerdict
    notes: str = ""
    members: list[tuple[Matrix2, Matrix2]] = field(default_factory=list)
    separated_from: list[tuple[int, str]] = field(default_factory=list)

    def to_json(self) -> dict:
        return {
            "sigma": self.sigma.value,
            "representative": self.representative.to_json(),
            "shapes": list(self.shapes),
            "notes": self.notes,
            "extends": self.extension.ok,
            "members": [{"cocycle": t.to_json(), "witness": n.to_json()} for t, n in self.members],
            "separated_from": [{"class": i, "by": why} for i, why in self.separated_from],
        }


def _nonpole_alphas(d: Diagram) -> list[Cyc]:
    return [s.rep.beta for s in d.marked_spokes() if not s.is_pole()]


def _abs(x: Cyc) -> Cyc | None:
    n2 = x.abs2()
    if n2.is_rational():
        return sqrt_rational(n2.as_fraction())
    return None


def _named(sigma: SigmaKind, k: int, d: Diagram) -> list[tuple[str, Matrix2]]:
    w = omega(2 * k)
    out = [("Id", IDENTITY), ("-Id", -IDENTITY), ("e", E), ("f", F), ("ef", E @ F),
           ("e*omega_2k", E @ w), ("omega_2k", w)]
    for alpha in _nonpole_alphas(d)[:1]:
        r = _abs(alpha)
        if r is None:
            continue
        u = alpha / r
        out += [("diag(conj u)", diag(u.conj())), ("-diag(conj u)", -diag(u.conj())),
                ("antidiag(u)", antidiag(u)), ("antidiag(i|alpha|)", antidiag(I * r)),
                ("diag(i/|alpha|)", diag(I / r))]
    return out


def _twist_point(sigma: SigmaKind, p: ProjPoint) -> ProjPoint:
    if sigma is SigmaKind.SPLIT:
        return ProjPoint(p.alpha.conj(), p.beta.conj())
    return ProjPoint(-p.beta.conj(), p.alpha.conj())


def _frame(p1: ProjPoint, p2: ProjPoint, p3: ProjPoint):
    det = p1.alpha * p2.beta - p1.beta * p2.alpha
    l1 = (p3.alpha * p2.beta - p3.beta * p2.alpha) / det
    l2 = (p1.alpha * p3.beta - p1.beta * p3.alpha) / det
    return (l1 * p1.alpha, l1 * p1.beta, l2 * p2.alpha, l2 * p2.beta)


def _inv4(m):
    a, b, c, d = m
    inv = (a * d - b * c).inverse()
    return (d * inv, -b * inv, -c * inv, a * inv)


def _normalized(m) -> Matrix2 | None:
    det = m[0] * m[3] - m[1] * m[2]
    if det.is_zero():
        return None
    lam = cyc_sqrt(det)
    if lam is None:
        return None
    inv = lam.inverse()
    return Matrix2(*(x * inv for x in m))


def _adapted_candidates(sigma: SigmaKind, d: Diagram) -> list[Matrix2]:
    """Cocycle candidates pinned down by the marked spokes of d."""
    k = d.k
    marked = [s.rep for s in d.marked_spokes()]
    out: list[Matrix2] = []
    if k <= 2 and len(marked) >= 3:
        src = [_twist_point(sigma, p) for p in marked[:3]]
        f_src = _inv4(_frame(*src))
        for q in itertools.permutations(marked, 3):
            t = _normalized(_mul(f_src, _frame(*q)))
            if t is not None:
                out.append(t)
        return out
    if k >= 3:
        alphas = _nonpole_alphas(d)
        for alpha in alphas:
            tw = _twist_point(sigma, ProjPoint(ONE, alpha))
            g = tw.beta
            for beta in alphas:
                for j in range(k):
                    z = _zeta(k, j)
                    a = cyc_sqrt(g / (beta * z))
                    if a is not None and not a.is_zero():
                        out += [diag(a), diag(-a)]
                    b = cyc_sqrt(-g * beta * z)
                    if b is not None and not b.is_zero():
                        out += [antidiag(b), antidiag(-b)]
    return out


def _model_params(d: Diagram) -> tuple[list[Cyc], list[Cyc]]:
    units, reals = [], []
    for alpha in _nonpole_alphas(d):
        r = _abs(alpha)
        if r is None:
            continue
        u = alpha / r
        units += [u, u.conj()]
        reals += [r, -r, r.inverse(), -r.inverse()]
    return units, reals


def _dedupe_cosets(items: Iterable[tuple[str, Matrix2]], k: int) -> list[tuple[str, Matrix2]]:
    out: list[tuple[str, Matrix2]] = []
    for label, t in items:
        if not any(in_cyclic_group(s.inverse() @ t, k) for _, s in out):
            out.append((label, t))
    return out


def candidate_cocycles(sigma: SigmaKind, d: Diagram) -> list[tuple[str, Matrix2]]:
    """Labelled cocycles sampled from every family, deduplicated modulo A_k."""
    k = d.k
    units, reals = _model_params(d)
    items: list[tuple[str, Matrix2]] = [(lbl, t) for lbl, t in _named(sigma, k, d)]
    for fam in cocycle_families(sigma, k):
        items += [("", t) for t in fam.members(units, reals)]
    items += [("", t) for t in _adapted_candidates(sigma, d)]
    items = [(lbl, t) for lbl, t in items if is_cocycle(sigma, t, k)]
    return _dedupe_cosets(items, k)


_CACHE: dict = {}


def classify_structures(model: Diagram, aut: AutDescriptor | None = None) -> dict[SigmaKind, list[RealStructureClass]]:
    """Equivalence classes of effective real structures on the model, per sigma."""
    key = model.content_key()
    if key in _CACHE:
        return _CACHE[key]
    aut = compute_aut(model) if aut is None else aut
    result = {sigma: _classify(sigma, model, aut) for sigma in SigmaKind}
    _CACHE[key] = result
    return result


def _classify(sigma: SigmaKind, d: Diagram, aut: AutDescriptor) -> list[RealStructureClass]:
    k = d.k
    fams = cocycle_families(sigma, k)
    classes: list[RealStructureClass] = []
    conclusive_gap: dict[tuple[int, int], bool] = {}
    for label, t in candidate_cocycles(sigma, d):
        verdict = extends_effectively(sigma, t, d)
        if not verdict:
            continue
        shapes = tuple(f.shape.value for f in fams if f.contains(t))
        placed = False
        misses = []
        for idx, cls in enumerate(classes):
            n, conclusive = _witness_search(sigma, cls.representative, t, aut, k)
            if n is not None:
                cls.members.append((t, n))
                cls.shapes = tuple(sorted(set(cls.shapes) | set(shapes)))
                placed = True
                break
            misses.append((idx, conclusive))
        if placed:
            continue
        new = len(classes)
        for idx, conclusive in misses:
            conclusive_gap[(idx, new)] = conclusive
        classes.append(
            RealStructureClass(
                sigma, t, tuple(sorted(shapes)), verdict, notes=f"mu_{label}" if label else "",
                members=[(t, IDENTITY)],
            )
        )
    invariants = [class_invariants(sigma, c.representative, d) for c in classes]
    for (i, j), conclusive in sorted(conclusive_gap.items()):
        if conclusive:
            why = "exhaustive search"
        else:
            diff = [name for name in invariants[i] if invariants[i][name] != invariants[j][name]]
            if not diff:
                raise ClassificationError(
                    f"{d.label()}: cannot separate {classes[i].representative} from {classes[j].representative}"
                )
            why = diff[0]
        classes[j].separated_from.append((i, why))
    return classes
