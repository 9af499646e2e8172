from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import brute_orbit, cyc, normalizer_element, same_proj, scalar, sl2, to_complex
from sl2forms.cyclotomic import E, IDENTITY, ONE, ZERO, Cyc, Matrix2, diag
from sl2forms.moebius import (
    INF_POLE,
    ZERO_POLE,
    NormalizerKind,
    ProjPoint,
    SpokeOrbit,
    b_max,
    normalizer_info,
    normalizes,
    orbit_canonical,
    orbit_points,
    pole_inf,
    pole_zero,
    right_act,
    spoke,
)

points = st.one_of(
    st.builds(lambda b: ProjPoint(ONE, b), cyc()),
    st.just(ZERO_POLE),
)


@settings(max_examples=1000)
@given(points, sl2(), sl2())
def test_right_action_law(p, g, h):
    assert right_act(right_act(p, g), h) == right_act(p, g @ h)
    assert right_act(p, IDENTITY) == p


@given(points, st.integers(1, 8))
def test_orbit_matches_brute_force(p, k):
    pts = orbit_points(p, k)
    brute = brute_orbit((to_complex(p.alpha), to_complex(p.beta)), k)
    # every exact point appears in the float orbit and the sizes agree
    distinct = []
    for q in brute:
        if not any(same_proj(q, r) for r in distinct):
            distinct.append(q)
    assert len(pts) == len(distinct)
    for q in pts:
        assert any(same_proj((to_complex(q.alpha), to_complex(q.beta)), r) for r in distinct)


@given(points, st.integers(1, 8), st.integers(0, 15))
def test_canonical_representative_is_orbit_invariant(p, k, j):
    h = diag(Cyc.root_of_unity(k, j))
    assert orbit_canonical(right_act(p, h), k) == orbit_canonical(p, k)


def test_point_normalisation():
    assert ProjPoint.of(2, 4) == ProjPoint.of(1, 2)
    assert ProjPoint.of(0, 5) == ZERO_POLE
    with pytest.raises(ValueError):
        ProjPoint.of(0, 0)


@pytest.mark.parametrize(
    "k, pole, generic",
    [(1, 1, 1), (2, 1, 1), (3, 1, Fraction(-1, 3)), (4, 1, 0), (5, 1, Fraction(-3, 5)), (6, 1, Fraction(-1, 3)),
     (8, 1, Fraction(-1, 2))],
)
def test_b_max(k, pole, generic):
    # 1 on the poles, 4/m - 1 elsewhere with m = k (even) or 2k (odd)
    assert b_max(pole_zero(k)) == pole and b_max(pole_inf(k)) == pole
    assert b_max(spoke(1, 1, k)) == generic


def test_poles_are_fixed_orbits():
    for k in range(1, 9):
        assert orbit_points(ZERO_POLE, k) == [ZERO_POLE]
        assert orbit_points(INF_POLE, k) == [INF_POLE]


@pytest.mark.parametrize("k", range(1, 9))
def test_normalizer(k):
    info = normalizer_info(k)
    expected = {1: NormalizerKind.FULL_SL2, 2: NormalizerKind.PGL2}.get(k, NormalizerKind.DIAG_UNION_ANTIDIAG)
    assert info.kind is expected
    assert normalizes(E, k) and normalizes(diag(Cyc.root_of_unity(7)), k)
    upper = Matrix2(ONE, ONE, ZERO, ONE)
    assert normalizes(upper, k) == (k <= 2)


@given(st.integers(3, 8).flatmap(lambda k: st.tuples(st.just(k), normalizer_element(k))))
def test_normalizer_elements_permute_orbits(args):
    k, n = args
    assert normalizes(n, k)
    j = spoke(1, 2, k)
    img = orbit_canonical(right_act(j.rep, n), k)
    assert isinstance(img, SpokeOrbit) and img.k == k


def test_spoke_json_round_trip():
    j = spoke(1, Cyc.root_of_unity(8), 4)
    assert SpokeOrbit.from_json(j.to_json()) == j
