import pytest

from oracles import sampled_catalog
from sl2forms import catalog
from sl2forms.catalog import FIGURE_PARAMS, ROWS, CatalogError, build_model, default_instances, grid_instances
from sl2forms.equipment import RecordKind, coverage_gaps, facets_disjoint, validate_diagram
from sl2forms.moebius import b_max

SAMPLES = sampled_catalog()


def test_every_figure_code_is_sampled():
    assert {label for label, _, _ in SAMPLES} == set(FIGURE_PARAMS)
    assert len(SAMPLES) > 300


@pytest.mark.parametrize("label, params, d", SAMPLES, ids=[f"{x[0]}{x[1]}" for x in SAMPLES])
def test_catalog_diagram_is_valid(label, params, d):
    assert validate_diagram(d) == []
    assert facets_disjoint(d) is None
    assert coverage_gaps(d) == []
    for rec in d.records:
        for s, r in zip(rec.spokes, rec.radii):
            assert -1 <= r <= b_max(s)


def test_grid_models_are_projective_and_valid():
    models = list(grid_instances())
    assert len(models) == 131
    assert all(m.meta["projective"] for m in models)
    assert all(validate_diagram(m) == [] for m in models)
    assert {m.meta["row"] for m in models} == {r.key for r in ROWS}


@pytest.mark.parametrize(
    "family, params, message",
    [
        ("c1", {"n": 1, "m": 3}, "needs n, m >= 2"),
        ("g4", {"k": 3}, "even k >= 4"),
        ("Z", {"r": 1}, "minimal iff r != 1"),
        ("a1", {"k": 3}, "does not take parameter"),
        ("nope", {}, "unknown model"),
    ],
)
def test_parameter_errors(family, params, message):
    with pytest.raises(CatalogError, match=message):
        build_model(family, **params)


@pytest.mark.parametrize(
    "family, params, label",
    [
        ("P3", {}, "a1"), ("Q3", {}, "a2"), ("P2xP1", {}, "g4p"), ("W", {"k": 1}, "e1"), ("W", {"k": 3}, "d1"), ("Y0", {"k": 2}, "g2"),
        ("Y0", {"k": 6}, "g4"), ("Z", {"r": 0}, "h1"), ("Z", {"r": 2}, "i1"), ("Z", {"r": 3}, "d2"),
        ("Y", {"a": 2, "b": -2}, "h4"),
    ],
)
def test_geometric_names(family, params, label):
    assert build_model(family, **params).meta["label"] == label


def test_x_k_label_convention():
    # the figure's (n, m) label the bundle X_k(n, n+m)
    d = build_model("X_k", k=3, n=1, m=2)
    assert d.meta["name"] == "X_3(1,3)"


def test_default_instances_build():
    for label, params in default_instances():
        assert build_model(label, **params).meta["label"] == label


def test_external_catalog(tmp_path, monkeypatch):
    (tmp_path / "mine.json").write_text(build_model("e1").dumps().replace('"e1"', '"mine"'), encoding="utf-8")
    monkeypatch.setenv("REALFORM_CATALOG", str(tmp_path))
    d = build_model("mine")
    assert d.records == build_model("e1").records
    assert any(m["label"] == "mine" for m in catalog.list_models())


def test_nonprojective_models_flagged():
    for label in ("b1", "c1", "b2", "g3"):
        params = dict(default_instances())[label]
        assert build_model(label, **params).meta["projective"] is False


def test_families_only_b_plus():
    for _, _, d in SAMPLES:
        assert all(f.kind is RecordKind.B_PLUS for f in d.families)
