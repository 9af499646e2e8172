"""Skeleton diagram rendering."""
from __future__ import annotations

import xml.etree.ElementTree as ET

import pytest

from oracles import sampled_catalog
from sl2forms.catalog import build_model
from sl2forms.render import render_ascii, render_svg

SVG = "{http://www.w3.org/2000/svg}"
CASES = sampled_catalog(kmax=4, nmax=2)


@pytest.mark.parametrize("label,params,d", CASES, ids=[f"{c[0]}-{i}" for i, c in enumerate(CASES)])
def test_svg_is_well_formed_and_deterministic(label, params, d):
    text = render_svg(d)
    assert text == render_svg(build_model(label, **params))
    root = ET.fromstring(text)
    assert root.tag == f"{SVG}svg"
    spokes = [e for e in root.iter(f"{SVG}line") if e.get("stroke-width") == "2"]
    dashed = [e for e in root.iter(f"{SVG}line") if e.get("stroke-dasharray")]
    marked = {r.spoke for r in d.records if hasattr(r, "spoke") and r.spoke is not None}
    assert len(dashed) == len(d.families)
    assert len(spokes) >= min(len(marked), 1)


def test_ascii_lists_every_mark():
    d = build_model("W", k=1)
    text = render_ascii(d)
    assert text == render_ascii(build_model("W", k=1))
    assert text.startswith("k=1  e1 W(1)\ncenter: -1\n")
    assert "+@" in text


def test_generic_family_drawn_dashed():
    d = build_model("P3")
    assert d.families
    assert "stroke-dasharray" in render_svg(d)
    assert "other spokes" in render_ascii(d)
