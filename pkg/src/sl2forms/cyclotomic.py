"""Exact arithmetic in cyclotomic fields and on SL2 matrices over them.

An element lives in Q(zeta_N) for the smallest possible N; every constructor
and arithmetic result is reduced to that minimal order, so two equal values
always have identical (order, coefficients) and compare and hash as such.
Coefficients are stored against the power basis 1, z, ..., z^(phi(N)-1) as
integer numerators over one positive common denominator.
"""
from __future__ import annotations

import enum
import functools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

RationalLike = int | Fraction


# ---------------------------------------------------------------- number theory


def _prime_factors(n: int) -> list[int]:
    out = []
    p = 2
    while p * p <= n:
        if n % p == 0:
            out.append(p)
            while n % p == 0:
                n //= p
        p += 1
    if n > 1:
        out.append(n)
    return out


def _canonical_order(n: int) -> int:
    # Q(zeta_2m) = Q(zeta_m) for odd m.
    return n // 2 if n % 4 == 2 else n


def _lcm(a: int, b: int) -> int:
    return a * b // math.gcd(a, b)


@functools.lru_cache(maxsize=None)
def cyclotomic_polynomial(n: int) -> tuple[int, ...]:
    """Integer coefficients of Phi_n, constant term first."""
    num = [-1] + [0] * (n - 1) + [1]
    for d in range(1, n):
        if n % d == 0:
            num = _poly_divexact(num, list(cyclotomic_polynomial(d)))
    return tuple(num)


def _poly_divexact(num: list[int], den: list[int]) -> list[int]:
    num = list(num)
    q = [0] * (len(num) - len(den) + 1)
    lead = den[-1]
    for i in range(len(q) - 1, -1, -1):
        c = num[i + len(den) - 1] // lead
        q[i] = c
        if c:
            for j, dj in enumerate(den):
                num[i + j] -= c * dj
    assert not any(num[: len(den) - 1]), "inexact polynomial division"
    return q


@functools.lru_cache(maxsize=None)
def _phi(n: int) -> int:
    return len(cyclotomic_polynomial(n)) - 1


@functools.lru_cache(maxsize=None)
def _power_table(n: int) -> tuple[tuple[int, ...], ...]:
    """Row j holds zeta_n^j in the power basis, for 0 <= j < 2n."""
    deg = _phi(n)
    phi_n = cyclotomic_polynomial(n)
    rows = []
    cur = [0] * deg
    cur[0] = 1
    for _ in range(2 * n):
        rows.append(tuple(cur))
        top = cur[-1]
        cur = [0] + cur[:-1]
        if top:
            for i in range(deg):
                cur[i] -= top * phi_n[i]
    return tuple(rows)


@functools.lru_cache(maxsize=None)
def _lift_matrix(small: int, big: int) -> tuple[tuple[int, ...], ...]:
    """Columns express zeta_small^i, i < phi(small), in the basis of order big."""
    step = big // small
    table = _power_table(big)
    return tuple(table[(i * step) % big] for i in range(_phi(small)))


@functools.lru_cache(maxsize=None)
def _descent_data(small: int, big: int):
    """Row selection and a rational inverse used to pull elements down to Q(zeta_small)."""
    cols = _lift_matrix(small, big)
    m, n = _phi(big), _phi(small)
    rows = [[Fraction(cols[j][i]) for j in range(n)] for i in range(m)]
    chosen: list[int] = []
    basis: list[list[Fraction]] = []
    for i in range(m):
        vec = rows[i][:]
        for b, piv in basis_pivots(basis):
            if vec[piv]:
                f = vec[piv] / b[piv]
                vec = [x - f * y for x, y in zip(vec, b)]
        if any(vec):
            chosen.append(i)
            basis.append(vec)
        if len(chosen) == n:
            break
    sq = [rows[i] for i in chosen]
    inv = _mat_inverse_fraction(sq)
    denom = 1
    for row in inv:
        for x in row:
            denom = _lcm(denom, x.denominator)
    inv_int = tuple(tuple(int(x * denom) for x in row) for row in inv)
    return tuple(chosen), inv_int, denom


def basis_pivots(basis: list[list[Fraction]]):
    for b in basis:
        piv = next(i for i, x in enumerate(b) if x)
        yield b, piv


def _mat_inverse_fraction(a: list[list[Fraction]]) -> list[list[Fraction]]:
    n = len(a)
    aug = [row[:] + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(a)]
    for col in range(n):
        piv = next(r for r in range(col, n) if aug[r][col])
        aug[col], aug[piv] = aug[piv], aug[col]
        p = aug[col][col]
        aug[col] = [x / p for x in aug[col]]
        for r in range(n):
            if r != col and aug[r][col]:
                f = aug[r][col]
                aug[r] = [x - f * y for x, y in zip(aug[r], aug[col])]
    return [row[n:] for row in aug]


def _normalize(num: Sequence[int], den: int) -> tuple[tuple[int, ...], int]:
    if den < 0:
        num, den = [-x for x in num], -den
    g = den
    for x in num:
        if x:
            g = math.gcd(g, x)
            if g == 1:
                break
    if not any(num):
        return tuple(0 for _ in num), 1
    return tuple(x // g for x in num), den // g


def _try_descend(order: int, num: tuple[int, ...], small: int):
    rows, inv, d = _descent_data(small, order)
    sel = [num[r] for r in rows]
    y = [sum(c * s for c, s in zip(row, sel)) for row in inv]
    cols = _lift_matrix(small, order)
    for i in range(len(num)):
        if sum(cols[j][i] * y[j] for j in range(len(y))) != d * num[i]:
            return None
    return y, d


def _reduce(order: int, num: Sequence[int], den: int) -> "Cyc":
    num, den = _normalize(num, den)
    while order > 1:
        if not any(num[1:]):
            return Cyc._raw(1, (num[0],), den)
        for p in _prime_factors(order):
            small = _canonical_order(order // p)
            got = _try_descend(order, num, small)
            if got is not None:
                y, d = got
                num, den = _normalize(y, den * d)
                order = small
                break
        else:
            break
    return Cyc._raw(order, num, den)


# ---------------------------------------------------------------- field elements


class Cyc:
    """An element of a cyclotomic field, always stored at its minimal order."""

    __slots__ = ("order", "num", "den", "_hash")

    order: int
    num: tuple[int, ...]
    den: int

    @classmethod
    def _raw(cls, order: int, num: tuple[int, ...], den: int) -> "Cyc":
        obj = object.__new__(cls)
        obj.order, obj.num, obj.den = order, num, den
        obj._hash = None
        return obj

    # construction ---------------------------------------------------------

    @classmethod
    def rational(cls, q: RationalLike) -> "Cyc":
        q = Fraction(q)
        return cls._raw(1, (q.numerator,), q.denominator)

    @classmethod
    def from_exponents(cls, order: int, coeffs: Iterable[RationalLike]) -> "Cyc":
        """Value of sum c_j zeta_order^j; any number of coefficients is accepted."""
        if order < 1:
            raise ValueError("order must be a positive integer")
        fr = [Fraction(c) for c in coeffs]
        if order % 4 == 2:
            # zeta_2m = -zeta_m^((m+1)/2) for odd m
            m = order // 2
            half = (m + 1) // 2
            moved: dict[int, Fraction] = {}
            for j, c in enumerate(fr):
                if c:
                    e = (j * half) % m
                    moved[e] = moved.get(e, Fraction(0)) + (-c if j % 2 else c)
            order, fr = m, [moved.get(j, Fraction(0)) for j in range(m)]
        den = 1
        for c in fr:
            den = _lcm(den, c.denominator)
        table = _power_table(order)
        acc = [0] * _phi(order)
        for j, c in enumerate(fr):
            if c:
                cn = int(c * den)
                for i, t in enumerate(table[j % order]):
                    if t:
                        acc[i] += cn * t
        return _reduce(order, acc, den)

    @classmethod
    def root_of_unity(cls, n: int, j: int = 1) -> "Cyc":
        return _root_of_unity(n, j % n)

    # basic predicates -------------------------------------------------------

    def is_zero(self) -> bool:
        return self.order == 1 and self.num[0] == 0

    def is_rational(self) -> bool:
        return self.order == 1

    def as_fraction(self) -> Fraction:
        if self.order != 1:
            raise ValueError(f"{self} is not rational")
        return Fraction(self.num[0], self.den)

    def coeffs(self) -> tuple[Fraction, ...]:
        return tuple(Fraction(x, self.den) for x in self.num)

    def is_real(self) -> bool:
        return self == self.conj()

    # arithmetic -------------------------------------------------------------

    def _at(self, order: int) -> list[int]:
        if order == self.order:
            return list(self.num)
        cols = _lift_matrix(self.order, order)
        out = [0] * _phi(order)
        for j, c in enumerate(self.num):
            if c:
                for i, t in enumerate(cols[j]):
                    if t:
                        out[i] += c * t
        return out

    def __add__(self, other) -> "Cyc":
        other = _coerce(other)
        if other is NotImplemented:
            return other
        order = _lcm(self.order, other.order)
        a, b = self._at(order), other._at(order)
        den = _lcm(self.den, other.den)
        fa, fb = den // self.den, den // other.den
        return _reduce(order, [x * fa + y * fb for x, y in zip(a, b)], den)

    __radd__ = __add__

    def __neg__(self) -> "Cyc":
        return Cyc._raw(self.order, tuple(-x for x in self.num), self.den)

    def __sub__(self, other) -> "Cyc":
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other) -> "Cyc":
        return _coerce(other) - self

    def __mul__(self, other) -> "Cyc":
        other = _coerce(other)
        if other is NotImplemented:
            return other
        if other.order == 1 or self.order == 1:
            r, x = (other, self) if other.order == 1 else (self, other)
            num, den = _normalize([c * r.num[0] for c in x.num], x.den * r.den)
            if not any(num):
                return ZERO
            return Cyc._raw(x.order, num, den)
        order = _lcm(self.order, other.order)
        a, b = self._at(order), other._at(order)
        prod = [0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    if y:
                        prod[i + j] += x * y
        deg = _phi(order)
        table = _power_table(order)
        acc = prod[:deg]
        for e in range(deg, len(prod)):
            c = prod[e]
            if c:
                for i, t in enumerate(table[e]):
                    if t:
                        acc[i] += c * t
        return _reduce(order, acc, self.den * other.den)

    __rmul__ = __mul__

    def conj(self) -> "Cyc":
        """Complex conjugate, i.e. zeta -> zeta^-1."""
        if self.order == 1:
            return self
        n = self.order
        table = _power_table(n)
        acc = [0] * len(self.num)
        for j, c in enumerate(self.num):
            if c:
                for i, t in enumerate(table[(n - j) % n]):
                    if t:
                        acc[i] += c * t
        return Cyc._raw(n, tuple(acc), self.den)

    def inverse(self) -> "Cyc":
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero")
        if self.order == 1:
            return Cyc.rational(1 / self.as_fraction())
        norm = self * self.conj()
        if norm.order == 1:
            return self.conj() * Cyc.rational(1 / norm.as_fraction())
        return _general_inverse(self)

    def __truediv__(self, other) -> "Cyc":
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def __rtruediv__(self, other) -> "Cyc":
        return _coerce(other) * self.inverse()

    def __pow__(self, e: int) -> "Cyc":
        if e < 0:
            return self.inverse() ** (-e)
        out, base = ONE, self
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    def abs2(self) -> "Cyc":
        return self * self.conj()

    # comparison and display -----------------------------------------------

    def _key(self):
        return (self.order, self.num, self.den)

    def __eq__(self, other) -> bool:
        other = _coerce(other)
        if other is NotImplemented:
            return False
        return self._key() == other._key()

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(self._key())
        return self._hash

    def sort_key(self):
        return (self.order, self.coeffs())

    def __str__(self) -> str:
        return format_cyclo(self)

    def __repr__(self) -> str:
        return f"Cyc('{format_cyclo(self)}')"


def _coerce(x) -> Cyc:
    if isinstance(x, Cyc):
        return x
    if isinstance(x, (int, Fraction)):
        return Cyc.rational(x)
    return NotImplemented


def _general_inverse(x: Cyc) -> Cyc:
    n, deg = x.order, _phi(x.order)
    table = _power_table(n)
    # column i of the multiplication matrix is x * zeta^i
    cols = []
    for i in range(deg):
        acc = [Fraction(0)] * deg
        for j, c in enumerate(x.num):
            if c:
                for r, t in enumerate(table[i + j]):
                    if t:
                        acc[r] += Fraction(c * t, x.den)
        cols.append(acc)
    mat = [[cols[j][i] for j in range(deg)] for i in range(deg)]
    inv = _mat_inverse_fraction(mat)
    return Cyc.from_exponents(n, [row[0] for row in inv])


ZERO = Cyc._raw(1, (0,), 1)
ONE = Cyc._raw(1, (1,), 1)


@functools.lru_cache(maxsize=None)
def _root_of_unity(n: int, j: int) -> Cyc:
    g = math.gcd(n, j) if j else n
    n, j = n // g, j // g
    return Cyc.from_exponents(n, [0] * j + [1])


I = Cyc.root_of_unity(4)


def cyclo_make(order: int, coeffs: Sequence[RationalLike]) -> Cyc:
    """Build sum coeffs[j] * zeta_order^j reduced to its minimal order."""
    return Cyc.from_exponents(order, coeffs)


def conj(x: Cyc) -> Cyc:
    return x.conj()


def _fmt_q(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def format_cyclo(x: Cyc) -> str:
    """Text form: a plain rational, or ``z[N]:c0,c1,...`` in the power basis."""
    if x.order == 1:
        return _fmt_q(Fraction(x.num[0], x.den))
    return f"z[{x.order}]:" + ",".join(_fmt_q(c) for c in x.coeffs())


def parse_cyclo(text: str) -> Cyc:
    text = text.strip()
    if text.startswith("z["):
        head, _, body = text.partition(":")
        if not head.endswith("]"):
            raise ValueError(f"malformed cyclotomic literal {text!r}")
        order = int(head[2:-1])
        coeffs = [Fraction(c) for c in body.split(",")] if body else []
        return Cyc.from_exponents(order, coeffs)
    return Cyc.rational(Fraction(text))


# ---------------------------------------------------------------- roots and signs


def root_of_unity_exponent(x: Cyc) -> tuple[int, int] | None:
    """Return (n, j) with x = zeta_n^j and n the exact multiplicative order, or None."""
    if x.is_zero() or x.abs2() != ONE:
        return None
    n = x.order if x.order % 2 == 0 else 2 * x.order
    for j in range(n):
        if Cyc.root_of_unity(n, j) == x:
            g = math.gcd(n, j) if j else n
            return n // g, j // g
    return None


def is_root_of_unity(x: Cyc) -> bool:
    return root_of_unity_exponent(x) is not None


def sqrt_root_of_unity(x: Cyc) -> Cyc:
    """The square root of a root of unity with argument in (-pi/2, pi/2]."""
    got = root_of_unity_exponent(x)
    if got is None:
        raise ValueError(f"{x} is not a root of unity")
    n, j = got
    if 2 * j > n:
        j -= n  # principal root, argument in (-pi/2, pi/2]
    return Cyc.root_of_unity(2 * n, j)


def _squarefree_split(n: int) -> tuple[int, int]:
    """n = s^2 * f with f squarefree."""
    s, f = 1, 1
    for p in _prime_factors(n):
        e = 0
        while n % p == 0:
            n //= p
            e += 1
        s *= p ** (e // 2)
        if e % 2:
            f *= p
    return s, f


@functools.lru_cache(maxsize=None)
def sqrt_prime(p: int) -> Cyc:
    """Positive square root of a prime, written with roots of unity."""
    if p == 2:
        z = Cyc.root_of_unity(8)
        return z + z.conj()
    # quadratic Gauss sum: g^2 = (-1)^((p-1)/2) p
    coeffs = [0] * p
    for a in range(1, p):
        coeffs[a] = 1 if pow(a, (p - 1) // 2, p) == 1 else -1
    g = Cyc.from_exponents(p, coeffs)
    return g if p % 4 == 1 else -I * g


def sqrt_rational(q: RationalLike) -> Cyc:
    """Positive square root of a positive rational, as a cyclotomic number."""
    q = Fraction(q)
    if q <= 0:
        raise ValueError("square root needs a positive rational")
    num = q.numerator * q.denominator
    s, f = _squarefree_split(num)
    out = Cyc.rational(Fraction(s, q.denominator))
    for p in _prime_factors(f):
        out = out * sqrt_prime(p)
    return out


def rational_sqrt_exact(q: Fraction) -> Fraction | None:
    """The rational square root of q if there is one."""
    if q < 0:
        return None
    a, b = math.isqrt(q.numerator), math.isqrt(q.denominator)
    if a * a == q.numerator and b * b == q.denominator:
        return Fraction(a, b)
    return None


def _pi_interval(bits: int) -> tuple[Fraction, Fraction]:
    # Machin: pi = 16 atan(1/5) - 4 atan(1/239); alternating series bounds.
    def atan_inv(x: int) -> tuple[Fraction, Fraction]:
        s, k, term = Fraction(0), 0, Fraction(1, x)
        eps = Fraction(1, 2 ** (bits + 8))
        while term > eps:
            s += term / (2 * k + 1) * (-1) ** k
            k += 1
            term = Fraction(1, x ** (2 * k + 1))
        return s - term, s + term

    a_lo, a_hi = atan_inv(5)
    b_lo, b_hi = atan_inv(239)
    return 16 * a_lo - 4 * b_hi, 16 * a_hi - 4 * b_lo


def _cos_interval(lo: Fraction, hi: Fraction, bits: int) -> tuple[Fraction, Fraction]:
    """Bounds for cos over an angle interval of small width, via Taylor with remainder."""
    eps = Fraction(1, 2 ** (bits + 8))

    def taylor(x: Fraction) -> tuple[Fraction, Fraction]:
        s, term, k = Fraction(0), Fraction(1), 0
        while True:
            s += term
            k += 2
            term = -term * x * x / ((k - 1) * k)
            if abs(term) < eps and k > abs(x) + 2:
                break
        return s - abs(term), s + abs(term)

    a_lo, a_hi = taylor(lo)
    b_lo, b_hi = taylor(hi)
    # |cos'| <= 1, so the whole interval sits within width of the endpoints
    w = hi - lo
    return min(a_lo, b_lo) - w, max(a_hi, b_hi) + w


def real_sign(x: Cyc) -> int:
    """Sign of a real cyclotomic number, decided with rational interval arithmetic."""
    if x.is_zero():
        return 0
    if x.order == 1:
        return 1 if x.num[0] > 0 else -1
    if not x.is_real():
        raise ValueError(f"{x} is not real")
    n = x.order
    bits = 40
    while True:
        p_lo, p_hi = _pi_interval(bits)
        lo_sum, hi_sum = Fraction(0), Fraction(0)
        for j, c in enumerate(x.num):
            if not c:
                continue
            j_mod = j if 2 * j <= n else j - n
            a_lo, a_hi = sorted((2 * p_lo * j_mod / n, 2 * p_hi * j_mod / n))
            c_lo, c_hi = _cos_interval(a_lo, a_hi, bits)
            c_lo, c_hi = max(c_lo, Fraction(-1)), min(c_hi, Fraction(1))
            if c > 0:
                lo_sum += c * c_lo
                hi_sum += c * c_hi
            else:
                lo_sum += c * c_hi
                hi_sum += c * c_lo
        if lo_sum > 0:
            return 1
        if hi_sum < 0:
            return -1
        bits *= 2
        if bits > 1 << 14:
            raise ArithmeticError("sign not resolved")


def is_positive_real(x: Cyc) -> bool:
    return x.is_real() and real_sign(x) > 0


# ---------------------------------------------------------------- matrices


@dataclass(frozen=True, slots=True)
class Matrix2:
    """A 2x2 matrix of determinant one over a cyclotomic field."""

    a: Cyc
    b: Cyc
    c: Cyc
    d: Cyc

    def __post_init__(self):
        for name in "abcd":
            v = getattr(self, name)
            if not isinstance(v, Cyc):
                object.__setattr__(self, name, _coerce(v))
        if self.a * self.d - self.b * self.c != ONE:
            raise ValueError(f"determinant of {self} is not 1")

    @classmethod
    def of(cls, a, b, c, d) -> "Matrix2":
        return cls(_as_cyc(a), _as_cyc(b), _as_cyc(c), _as_cyc(d))

    def entries(self) -> tuple[Cyc, Cyc, Cyc, Cyc]:
        return (self.a, self.b, self.c, self.d)

    def __matmul__(self, o: "Matrix2") -> "Matrix2":
        return Matrix2._trusted(
            self.a * o.a + self.b * o.c,
            self.a * o.b + self.b * o.d,
            self.c * o.a + self.d * o.c,
            self.c * o.b + self.d * o.d,
        )

    @classmethod
    def _trusted(cls, a, b, c, d) -> "Matrix2":
        obj = object.__new__(cls)
        object.__setattr__(obj, "a", a)
        object.__setattr__(obj, "b", b)
        object.__setattr__(obj, "c", c)
        object.__setattr__(obj, "d", d)
        return obj

    def inverse(self) -> "Matrix2":
        return Matrix2._trusted(self.d, -self.b, -self.c, self.a)

    def __neg__(self) -> "Matrix2":
        return Matrix2._trusted(-self.a, -self.b, -self.c, -self.d)

    def scaled(self, lam: Cyc) -> "Matrix2":
        """lam * M; lam must satisfy lam^2 = 1/det scaling, checked at construction."""
        return Matrix2(lam * self.a, lam * self.b, lam * self.c, lam * self.d)

    def conj(self) -> "Matrix2":
        return Matrix2._trusted(self.a.conj(), self.b.conj(), self.c.conj(), self.d.conj())

    def conj_transpose(self) -> "Matrix2":
        return Matrix2._trusted(self.a.conj(), self.c.conj(), self.b.conj(), self.d.conj())

    def is_diagonal(self) -> bool:
        return self.b.is_zero() and self.c.is_zero()

    def is_antidiagonal(self) -> bool:
        return self.a.is_zero() and self.d.is_zero()

    def trace(self) -> Cyc:
        return self.a + self.d

    def __str__(self) -> str:
        e = [format_cyclo(x) for x in self.entries()]
        return f"[[{e[0]},{e[1]}],[{e[2]},{e[3]}]]"

    def to_json(self) -> list[list[str]]:
        e = [format_cyclo(x) for x in self.entries()]
        return [[e[0], e[1]], [e[2], e[3]]]

    @classmethod
    def from_json(cls, rows) -> "Matrix2":
        (a, b), (c, d) = rows
        return cls(parse_cyclo(a), parse_cyclo(b), parse_cyclo(c), parse_cyclo(d))


def _as_cyc(x) -> Cyc:
    if isinstance(x, Cyc):
        return x
    if isinstance(x, str):
        return parse_cyclo(x)
    return Cyc.rational(x)


def mat_mul(m: Matrix2, n: Matrix2) -> Matrix2:
    return m @ n


def mat_inv(m: Matrix2) -> Matrix2:
    return m.inverse()


def diag(x: Cyc) -> Matrix2:
    """diag(x, 1/x)."""
    x = _as_cyc(x)
    return Matrix2._trusted(x, ZERO, ZERO, x.inverse())


def antidiag(x: Cyc) -> Matrix2:
    """[[0, x], [-1/x, 0]]."""
    x = _as_cyc(x)
    return Matrix2._trusted(ZERO, x, -x.inverse(), ZERO)


IDENTITY = Matrix2.of(1, 0, 0, 1)
E = Matrix2.of(0, 1, -1, 0)
F = Matrix2._trusted(ZERO, I, I, ZERO)


def omega(k: int) -> Matrix2:
    """diag(zeta_k, zeta_k^-1)."""
    return diag(Cyc.root_of_unity(k))


@functools.lru_cache(maxsize=None)
def cyclic_group(k: int) -> tuple[Matrix2, ...]:
    """The k elements diag(zeta_k^j, zeta_k^-j) of the cyclic subgroup A_k."""
    return tuple(diag(Cyc.root_of_unity(k, j)) for j in range(k))


@functools.lru_cache(maxsize=None)
def _roots_set(k: int) -> frozenset:
    return frozenset(Cyc.root_of_unity(k, j) for j in range(k))


def in_cyclic_group(m: Matrix2, k: int) -> bool:
    return m.b.is_zero() and m.c.is_zero() and m.a in _roots_set(k)


class SigmaKind(enum.Enum):
    """The two real structures on SL2: split (entrywise conjugation) and compact."""

    SPLIT = "sigma_s"
    COMPACT = "sigma_c"

    def __str__(self) -> str:
        return self.value


def apply_sigma(kind: SigmaKind, m: Matrix2) -> Matrix2:
    if kind is SigmaKind.SPLIT:
        return m.conj()
    # (M*)^-1, which on SL2 equals e * conj(M) * e^-1
    return Matrix2._trusted(m.d.conj(), -m.c.conj(), -m.b.conj(), m.a.conj())
