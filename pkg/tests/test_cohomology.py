import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from expected import published_reps
from oracles import cinv, cmul, in_cyclic_float, mat_complex, sampled_catalog, scalar, sigma_float, sl2
from sl2forms.actions import AutKind, compute_aut, extends_effectively, is_cocycle
from sl2forms.catalog import build_model
from sl2forms.classify import has_real_points
from sl2forms.cohomology import (
    ClassificationError,
    FamilyShape,
    candidate_cocycles,
    decide_equivalence,
    classify_structures,
    cocycle_families,
    equivalent,
    twist,
)
from sl2forms.cyclotomic import (
    E, F, I, IDENTITY, ONE, ZERO, Cyc, Matrix2, SigmaKind, diag, in_cyclic_group, sqrt_rational,
)

S, Cc = SigmaKind.SPLIT, SigmaKind.COMPACT


def certified(sigma, n, t1, t2, k):
    return n is not None and in_cyclic_group(twist(sigma, n, t1) @ t2.inverse(), k)


# ---------------------------------------------------------------- families


@pytest.mark.parametrize(
    "sigma, k, shapes",
    [
        (S, 1, ["general_sl2_s"]), (Cc, 1, ["general_sl2_c"]),
        (S, 2, ["general_pgl2_s_plus", "general_pgl2_s_minus"]),
        (Cc, 2, ["general_pgl2_c_plus", "general_pgl2_c_minus"]),
        (S, 3, ["diag_unit", "antidiag_i_real"]), (Cc, 5, ["diag_real"]),
        (S, 4, ["diag_unit", "antidiag_i_real", "antidiag_i_real_zeta"]),
        (Cc, 6, ["diag_real", "diag_real_zeta", "antidiag_unit"]),
    ],
)
def test_family_shapes(sigma, k, shapes):
    fams = cocycle_families(sigma, k)
    assert [f.shape.value for f in fams] == shapes
    for f in fams:
        members = f.members()
        assert members and all(is_cocycle(sigma, t, k) and f.contains(t) for t in members)


@pytest.mark.parametrize("k", range(1, 9))
@pytest.mark.parametrize("sigma", list(SigmaKind))
def test_brute_force_cocycles_lie_in_families(sigma, k):
    # every cocycle among small diagonal and antidiagonal matrices is covered by some family
    vals = [Cyc.root_of_unity(n, j) * Cyc.rational(q) for n in (1, 4, 8, 2 * k, 4 * k) for j in range(n)
            for q in (1, 2)]
    fams = cocycle_families(sigma, k)
    for x in vals:
        for t in (diag(x), Matrix2(ZERO, x, -x.inverse(), ZERO)):
            if is_cocycle(sigma, t, k):
                assert any(f.contains(t) for f in fams), (sigma, k, t)


def test_printed_g2_compact_representative_is_not_in_sl2():
    # the printed second representative has determinant -1; e f is the intended class
    a, b, c, d = ZERO, I, -I, I
    assert a * d - b * c == -ONE
    assert E @ F == diag(I)


# ---------------------------------------------------------------- published classification tables


def _generic(label, params):
    # the b1 row assumes only the generic automorphisms; equal n_i add more (see below)
    return not (label == "b1" and "ns" not in params)


SAMPLES = [s for s in sampled_catalog() if _generic(s[0], s[1])]


@pytest.mark.parametrize("label, params, d", SAMPLES, ids=[f"{x[0]}{x[1]}" for x in SAMPLES])
def test_classes_match_published_representatives(label, params, d):
    aut = compute_aut(d)
    classes = classify_structures(d, aut)
    expected = published_reps(label, params, d.k)
    for sigma in SigmaKind:
        got = [c.representative for c in classes[sigma]]
        assert len(got) == len(expected[sigma])
        for t in expected[sigma]:
            assert is_cocycle(sigma, t, d.k) and extends_effectively(sigma, t, d)
            assert any(certified(sigma, equivalent(sigma, g, t, aut), g, t, d.k) for g in got)
        for c in classes[sigma]:
            for t, n in c.members:
                assert certified(sigma, n, c.representative, t, d.k)


def test_symmetric_b1_merges_the_sign():
    # with n_1 = n_2 = n_3 the diagram has S3 symmetry; an imaginary automorphism joins Id and -Id
    d = build_model("b1")
    aut = compute_aut(d)
    n = equivalent(S, IDENTITY, -IDENTITY, aut)
    assert certified(S, n, IDENTITY, -IDENTITY, 1)
    assert len(classify_structures(d)[S]) == 1
    d = build_model("b1", ns=[2, 3, 4])
    assert len(classify_structures(d)[S]) == 2


@pytest.mark.parametrize("alpha", ["1", "z[4]:0,1", "z[8]:0,1"])
@pytest.mark.parametrize("label, k", [("g4", 6), ("g4", 8), ("g4p", None)])
def test_g4_counts_do_not_depend_on_alpha(label, k, alpha):
    params = {"alpha": alpha} if k is None else {"k": k, "alpha": alpha}
    classes = classify_structures(build_model(label, **params))
    counts = {s: len(classes[s]) for s in SigmaKind}
    assert counts == ({S: 2, Cc: 2} if label == "g4" else {S: 1, Cc: 1})


def test_odd_k_has_no_compact_structures():
    for k in (3, 5, 7):
        d = build_model("a3", k=k)
        assert classify_structures(d)[Cc] == []
        assert [c.representative for c in classify_structures(d)[S]] == [IDENTITY]


def test_classification_is_deterministic():
    d = build_model("h4", k=6)
    a = [c.to_json() for s in SigmaKind for c in classify_structures(d)[s]]
    from sl2forms.cohomology import _CACHE
    _CACHE.clear()
    b = [c.to_json() for s in SigmaKind for c in classify_structures(d)[s]]
    assert a == b


def test_separation_reasons_recorded():
    classes = classify_structures(build_model("h4", k=4))[S]
    assert all(c.separated_from for c in classes[1:])


# ---------------------------------------------------------------- equivalence laws

POOL = [build_model(label, **params) for label, params in [
    ("a1", {}), ("e1", {}), ("d1", {"n": 2}), ("c1", {"n": 2, "m": 3}), ("a2", {}), ("c2", {"n": 1, "m": 1}),
    ("g2", {}), ("a3", {"k": 3}), ("e2", {"n": 2}), ("h4", {"k": 4}), ("h4", {"k": 6}), ("g4", {"k": 6}),
    ("g4p", {}), ("i4", {"k": 4, "n": 1, "m": 1}), ("b2", {"ns": [1, 2, 3]}),
]]
AUTS = [compute_aut(d) for d in POOL]
CANDS = {(i, s): [t for _, t in candidate_cocycles(s, d)] for i, d in enumerate(POOL) for s in SigmaKind}


@st.composite
def aut_element(draw, aut):
    kind = aut.kind
    if kind.finite:
        return draw(st.sampled_from(aut.reps))
    if kind in (AutKind.SL2, AutKind.PGL2):
        return draw(sl2(max_factors=2))
    if kind is AutKind.BOREL:
        x, y = draw(scalar()), draw(scalar())
        m = Matrix2(x, y, ZERO, x.inverse())
        return m if aut.fixed_pole == "zero" else Matrix2(x, ZERO, y, x.inverse())
    g = diag(draw(scalar()))
    if kind is AutKind.TORUS_ANTIDIAG and draw(st.booleans()):
        g = g @ E
    return g


@st.composite
def model_case(draw):
    i = draw(st.integers(0, len(POOL) - 1))
    sigma = draw(st.sampled_from(list(SigmaKind)))
    cands = CANDS[(i, sigma)]
    if not cands:
        sigma = S if sigma is Cc else Cc
        cands = CANDS[(i, sigma)]
    t = draw(st.sampled_from(cands))
    return POOL[i], AUTS[i], sigma, t


def settled_equal(v, aut) -> bool:
    # only the triangular group may leave a twisted pair without witness or invariant
    return v.equivalent is True or (v.equivalent is None and aut.kind is AutKind.BOREL)


@settings(max_examples=1000)
@given(model_case(), st.data())
def test_equivalence_relation_laws(case, data):
    d, aut, sigma, t1 = case
    k = d.k
    n1 = data.draw(aut_element(aut))
    n2 = data.draw(aut_element(aut))
    t2 = twist(sigma, n1, t1)
    t3 = twist(sigma, n2, t2)
    # reflexive, with the identity as witness
    v = decide_equivalence(sigma, t1, t1, d, aut)
    assert v.equivalent and certified(sigma, v.witness, t1, t1, k)
    # every returned witness is certified and lies in the automorphism group
    verdicts = {}
    for name, (a, b) in {"12": (t1, t2), "21": (t2, t1), "23": (t2, t3), "13": (t1, t3)}.items():
        v = decide_equivalence(sigma, a, b, d, aut)
        assert settled_equal(v, aut), (name, v.reason)
        if v.witness is not None:
            assert certified(sigma, v.witness, a, b, k) and aut.contains(v.witness)
        verdicts[name] = v
    # symmetric: an inverse witness works backwards
    w12 = verdicts["12"].witness
    if w12 is not None:
        assert certified(sigma, w12.inverse(), t2, t1, k)
    # transitive: composed witnesses work, checked numerically since the product
    # may live in a large compositum
    w23 = verdicts["23"].witness
    if w12 is not None and w23 is not None:
        w = cmul(mat_complex(w23), mat_complex(w12))
        lhs = cmul(cmul(sigma_float(sigma.value, w), mat_complex(t1)), cinv(w))
        assert in_cyclic_float(cmul(lhs, cinv(mat_complex(t3))), k)


@settings(max_examples=1000)
@given(model_case(), st.data())
def test_equivalent_structures_share_verdicts(case, data):
    d, aut, sigma, t1 = case
    n = data.draw(aut_element(aut))
    t2 = twist(sigma, n, t1)
    assert bool(extends_effectively(sigma, t1, d)) == bool(extends_effectively(sigma, t2, d))
    assert has_real_points(sigma, t1, d.k).has_points == has_real_points(sigma, t2, d.k).has_points


def test_inequivalent_classes_stay_apart():
    # distinct classes of one model never admit a witness between them
    for d, aut in zip(POOL, AUTS):
        for sigma, classes in classify_structures(d, aut).items():
            reps = [c.representative for c in classes]
            for i in range(len(reps)):
                for j in range(i + 1, len(reps)):
                    assert equivalent(sigma, reps[i], reps[j], aut) is None


def test_classification_error_is_raised_when_undecidable(monkeypatch):
    import sl2forms.cohomology as coh

    d = build_model("h4", k=4)
    monkeypatch.setattr(coh, "_witness_search", lambda *a, **kw: (None, False))
    monkeypatch.setattr(coh, "class_invariants", lambda sigma, t, d: {"x": 0})
    coh._CACHE.clear()
    with pytest.raises(ClassificationError):
        coh.classify_structures(d)
    coh._CACHE.clear()


def test_decision_reasons():
    z = Cyc.root_of_unity(8)
    p3 = build_model("a1")
    v = decide_equivalence(Cc, IDENTITY, -IDENTITY, p3)
    assert (v.equivalent, v.reason) == (False, "real_points")
    n = Matrix2(ONE, z + ONE, ZERO, ONE)
    v = decide_equivalence(S, IDENTITY, twist(S, n, IDENTITY), p3)
    assert v.equivalent and certified(S, v.witness, IDENTITY, twist(S, n, IDENTITY), 1)
    w3 = build_model("d1", n=2)
    t = twist(Cc, Matrix2.of(1, 2, 0, 1), IDENTITY)
    v = decide_equivalence(Cc, IDENTITY, t, w3)
    assert v.equivalent and v.witness.c.is_zero() and certified(Cc, v.witness, IDENTITY, t, 1)
    h4 = build_model("h4", k=4)
    reps = [c.representative for c in classify_structures(h4)[S]]
    v = decide_equivalence(S, reps[0], reps[1], h4)
    assert v.equivalent is False and v.reason in ("exhaustive search", "real_points", "lift_products", "gamma_pattern")


def test_definite_forms_need_a_noncyclotomic_witness_or_none():
    # I and diag(x, 1/x) with x = 1 + sqrt 2 are congruent over C only through sqrt(x),
    # which no cyclotomic field contains; the search must not claim a witness
    x = ONE + sqrt_rational(2)
    t = diag(x)
    p3 = build_model("a1")
    assert is_cocycle(Cc, t, 1)
    v = decide_equivalence(Cc, IDENTITY, t, p3)
    assert v.witness is None and v.equivalent is True and v.reason == "complete invariants"
