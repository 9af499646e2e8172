import cmath
import math
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from oracles import close, cmul, cyc, mat_complex, mat_close, root_of_unity, sigma_float, small_q, to_complex
from sl2forms.cyclotomic import (
    E,
    F,
    I,
    IDENTITY,
    ONE,
    ZERO,
    Cyc,
    Matrix2,
    SigmaKind,
    apply_sigma,
    cyclic_group,
    cyclotomic_polynomial,
    format_cyclo,
    in_cyclic_group,
    is_root_of_unity,
    omega,
    parse_cyclo,
    real_sign,
    root_of_unity_exponent,
    sqrt_prime,
    sqrt_rational,
    sqrt_root_of_unity,
)


@given(cyc(), cyc())
def test_ring_operations_match_float(x, y):
    fx, fy = to_complex(x), to_complex(y)
    assert close(to_complex(x + y), fx + fy)
    assert close(to_complex(x - y), fx - fy)
    assert close(to_complex(x * y), fx * fy)
    assert close(to_complex(x.conj()), fx.conjugate())
    if not y.is_zero():
        assert close(to_complex(x / y), fx / fy, 1e-7)


@given(cyc(), cyc())
def test_equality_is_canonical(x, y):
    # equal values have one representation, whatever the order they were built at
    assert (x == y) == (x - y).is_zero()
    assert x + y - y == x
    if x == y:
        assert hash(x) == hash(y)
    assert (abs(to_complex(x) - to_complex(y)) < 1e-9) == (x == y)


@given(cyc(nonzero=True))
def test_inverse(x):
    assert x * x.inverse() == ONE


@given(cyc())
def test_text_round_trip(x):
    assert parse_cyclo(format_cyclo(x)) == x


@given(cyc())
def test_real_sign_matches_float(x):
    r = x + x.conj()
    val = to_complex(r).real
    if abs(val) > 1e-9:
        assert real_sign(r) == (1 if val > 0 else -1)
    else:
        assert r.is_zero() or real_sign(r) in (-1, 1)


@given(root_of_unity())
def test_principal_square_root_of_unity(z):
    w = sqrt_root_of_unity(z)
    assert w * w == z
    arg = cmath.phase(to_complex(w))
    assert -math.pi / 2 < arg <= math.pi / 2 + 1e-12


@given(st.integers(1, 12), st.integers(1, 12), st.sets(st.sampled_from((2, 3, 5, 7)), max_size=2))
def test_sqrt_rational(a, b, primes):
    # the field grows with every odd prime in the squarefree part, so keep it small
    q = Fraction(a * a * math.prod(primes), b * b)
    r = sqrt_rational(q)
    assert r * r == Cyc.rational(q)
    assert real_sign(r) == 1
    assert close(to_complex(r), math.sqrt(q))


@pytest.mark.parametrize("p", [2, 3, 5, 7, 11, 13])
def test_sqrt_prime(p):
    assert sqrt_prime(p) * sqrt_prime(p) == Cyc.rational(p)
    assert close(to_complex(sqrt_prime(p)), math.sqrt(p))


@pytest.mark.parametrize(
    "n, coeffs",
    [(1, (-1, 1)), (2, (1, 1)), (4, (1, 0, 1)), (6, (1, -1, 1)), (8, (1, 0, 0, 0, 1)), (12, (1, 0, -1, 0, 1))],
)
def test_cyclotomic_polynomials(n, coeffs):
    assert cyclotomic_polynomial(n) == coeffs


def test_root_of_unity_exponent_finds_exact_order():
    assert root_of_unity_exponent(Cyc.root_of_unity(12, 4)) == (3, 1)
    assert root_of_unity_exponent(-ONE) == (2, 1)
    assert root_of_unity_exponent(Cyc.rational(2)) is None
    assert is_root_of_unity(I) and not is_root_of_unity(ONE + I)


# ---------------------------------------------------------------- matrices


@st.composite
def sl2(draw):
    """Random SL2 elements as products of elementary, diagonal and Weyl matrices."""
    m = IDENTITY
    for _ in range(draw(st.integers(1, 4))):
        kind = draw(st.sampled_from(("upper", "lower", "diag", "e")))
        if kind == "upper":
            g = Matrix2(ONE, draw(cyc()), ZERO, ONE)
        elif kind == "lower":
            g = Matrix2(ONE, ZERO, draw(cyc()), ONE)
        elif kind == "diag":
            x = draw(cyc(nonzero=True))
            g = Matrix2(x, ZERO, ZERO, x.inverse())
        else:
            g = E
        m = m @ g
    return m


@given(sl2(), sl2())
def test_matrix_product_and_inverse(m, n):
    assert mat_close(mat_complex(m @ n), cmul(mat_complex(m), mat_complex(n)), 1e-6)
    assert m @ m.inverse() == IDENTITY
    assert (m @ n).inverse() == n.inverse() @ m.inverse()


@given(sl2(), sl2(), st.sampled_from(list(SigmaKind)))
def test_sigma_is_an_involutive_antiholomorphic_homomorphism(m, n, sigma):
    assert apply_sigma(sigma, apply_sigma(sigma, m)) == m
    assert apply_sigma(sigma, m @ n) == apply_sigma(sigma, m) @ apply_sigma(sigma, n)
    assert mat_close(mat_complex(apply_sigma(sigma, m)), sigma_float(sigma.value, mat_complex(m)), 1e-6)


@given(sl2())
def test_compact_sigma_is_conjugation_by_e(m):
    assert apply_sigma(SigmaKind.COMPACT, m) == E @ m.conj() @ E.inverse()


def test_determinant_enforced():
    with pytest.raises(ValueError):
        Matrix2.of(1, 1, 1, 1)


@pytest.mark.parametrize("k", range(1, 9))
def test_cyclic_group(k):
    group = cyclic_group(k)
    assert len(set(group)) == k
    assert all(in_cyclic_group(g @ h, k) for g in group for h in group)
    assert in_cyclic_group(omega(k), k)
    w = omega(2 * k)
    assert not in_cyclic_group(w, k)


def test_named_matrices():
    assert E @ E == -IDENTITY
    assert F @ F == -IDENTITY
    assert not in_cyclic_group(-IDENTITY, 1) and in_cyclic_group(-IDENTITY, 2)


def test_json_round_trip():
    m = Matrix2(I, ZERO, ZERO, -I)
    assert Matrix2.from_json(m.to_json()) == m
