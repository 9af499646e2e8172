"""The minimal smooth completions of SL2/A_k as explicit diagrams.

Each figure code (a1 ... k1, a2 ... g2, a3 ... g3, a4 ... i4, g4p) has a
builder taking the parameters printed under its picture.  Geometric names
(X, W, Y, Y0, Z, P3, Q3, P2xP1) take the geometric parameters and dispatch to
the matching figure.

Reading of a picture: every tick on a spoke is a C orbit, consecutive ticks
bound an AB orbit, and a sign after the last tick is a B orbit at that
radius.  Without a generic "+" family the region between the center and the
first ticks is one A_N orbit over all marked spokes; with it, each marked
spoke instead gets AB(-1, first tick) and the family covers the rest.
"""
from __future__ import annotations

import json
import os
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Any, Callable, Iterator, Sequence

from .cyclotomic import Cyc, format_cyclo, parse_cyclo
from .equipment import (
    AB,
    A_N,
    C,
    B_minus,
    B_plus,
    B_zero,
    Diagram,
    GenericFamily,
    OrbitRecord,
    RecordKind,
    diagram_loads,
)
from .moebius import SpokeOrbit, b_max, pole_inf, pole_zero, spoke

F = Fraction


class CatalogError(ValueError):
    """Parameters outside the catalog: non-minimal, out of range, or no diagram."""


# ---------------------------------------------------------------- table rows


@dataclass(frozen=True)
class RowInfo:
    """Imported facts about the plain real forms of one table row.

    total: number of plain real forms that are (rational, pointless).
    merges: how many SL2R/Spin3R class pairs are stated to give the same plain form.
    """

    key: str
    total: tuple[int, int]
    merges: tuple[int, int] = (0, 0)


ROWS: tuple[RowInfo, ...] = (
    RowInfo("Z(1-k),X_k(n,m), k even", (1, 1)),
    RowInfo("Z(1-k),X_k(n,m), k odd", (1, 0)),
    RowInfo("Y(a,-a)", (2, 3)),
    RowInfo("Y(a,b), a+b!=0 even", (1, 2)),
    RowInfo("Y(a,b), a+b odd", (1, 2)),
    RowInfo("Y_0(2)", (2, 4)),
    RowInfo("Y_0(k)", (2, 2)),
    RowInfo("W(1)", (2, 1), merges=(1, 0)),
    RowInfo("W(n+1), n>=2", (1, 0)),
    RowInfo("Q_3", (2, 1), merges=(0, 1)),
    RowInfo("P^3", (1, 1), merges=(1, 1)),
    RowInfo("P(R_2)xP(R_1)", (1, 1), merges=(1, 0)),
)
ROW_BY_KEY = {r.key: r for r in ROWS}


# ---------------------------------------------------------------- assembly


Mark = tuple[SpokeOrbit, Sequence[Fraction], str | None]


def _assemble(k: int, marks: Sequence[Mark], generic: bool) -> tuple[list[OrbitRecord], list[GenericFamily]]:
    records: list[OrbitRecord] = []
    sign_kind = {"+": B_plus, "-": B_minus, "0": B_zero}
    for j, ticks, sign in marks:
        ticks = [F(t) for t in ticks]
        for t in ticks:
            records.append(C(j, t))
        for lo, hi in zip(ticks, ticks[1:]):
            records.append(AB(j, lo, hi))
        if sign is not None:
            records.append(sign_kind[sign](j, ticks[-1]))
    families: list[GenericFamily] = []
    if generic:
        for j, ticks, _ in marks:
            records.append(AB(j, -1, ticks[0]))
        families.append(GenericFamily(RecordKind.B_PLUS, F(-1), frozenset(j for j, _, _ in marks)))
    elif marks:
        records.append(A_N([j for j, _, _ in marks], [F(t[0]) for _, t, _ in marks]))
    return records, families


def _diagram(
    k: int,
    marks: Sequence[Mark],
    *,
    generic: bool = False,
    label: str,
    name: str,
    params: dict[str, Any],
    projective: bool = True,
    row: str | None = None,
    notes: Sequence[str] = (),
) -> Diagram:
    records, families = _assemble(k, marks, generic)
    meta = {
        "label": label,
        "name": name,
        "params": {p: (format_cyclo(v) if isinstance(v, Cyc) else v) for p, v in params.items()},
        "projective": projective,
        "row": row,
        "notes": list(notes),
    }
    return Diagram(k, tuple(records), tuple(families), meta)


def _require(cond: bool, message: str) -> None:
    if not cond:
        raise CatalogError(message)


def _int(params: dict, name: str, default: int | None = None) -> int:
    if name not in params or params[name] is None:
        if default is None:
            raise CatalogError(f"missing parameter {name}")
        return default
    v = params[name]
    if isinstance(v, bool) or not isinstance(v, int):
        try:
            v = int(str(v))
        except ValueError as exc:
            raise CatalogError(f"parameter {name} must be an integer") from exc
    return v


def _cyc(v) -> Cyc:
    if isinstance(v, Cyc):
        return v
    if isinstance(v, (int, Fraction)):
        return Cyc.rational(v)
    return parse_cyclo(str(v))


def _parity_row(k: int) -> str:
    return "Z(1-k),X_k(n,m), k even" if k % 2 == 0 else "Z(1-k),X_k(n,m), k odd"


def _y_row(a: int, b: int) -> str:
    if a + b == 0:
        return "Y(a,-a)"
    return "Y(a,b), a+b!=0 even" if (a + b) % 2 == 0 else "Y(a,b), a+b odd"


# ---------------------------------------------------------------- figure 1 (k = 1)


def fig_a1(**p) -> Diagram:
    return _diagram(1, [], generic=True, label="a1", name="P3", params={}, row="P^3")


def _b_spokes(k: int, alphas: Sequence[Cyc], m: int) -> list[SpokeOrbit]:
    if m == 1:
        return [pole_zero(k)]
    _require(len(alphas) == m - 2, f"model b{k} with m={m} needs {m - 2} values alpha_i")
    out = [pole_zero(k)] + [spoke(1, a, k) for a in alphas] + [pole_inf(k)]
    for a in alphas:
        _require(not a.is_zero(), "alpha_i must be nonzero")
    _require(len(set(out)) == len(out), "the spokes omega_i must be distinct")
    return out


def _b_params(p: dict, k: int) -> tuple[list[int], list[Cyc]]:
    ns = p.get("ns")
    alphas = p.get("alphas")
    lo = 2 if k == 1 else 1
    m = _int(p, "m", 3 if ns is None else len(ns))
    if ns is None:
        ns = [lo] * m
    ns = [int(x) for x in ns]
    if alphas is None:
        # distinct default spokes [1:1], [1:2], ...
        alphas = [Cyc.rational(i + 1) for i in range(max(m - 2, 0))]
    alphas = [_cyc(a) for a in alphas]
    _require(len(ns) == m, f"need exactly m={m} values n_i")
    return ns, alphas


def fig_b1(**p) -> Diagram:
    ns, alphas = _b_params(p, 1)
    m = len(ns)
    _require(m >= 3, "model b1 needs m >= 3")
    _require(all(n >= 2 for n in ns), "model b1 needs n_i >= 2")
    spokes = _b_spokes(1, alphas, m)
    marks = [(j, [F(0), F(1, n)], "-") for j, n in zip(spokes, ns)]
    return _diagram(
        1, marks, generic=True, label="b1", name="b1",
        params={"m": m, "ns": ns, "alphas": [format_cyclo(a) for a in alphas]}, projective=False,
    )


def fig_c1(**p) -> Diagram:
    n, m = _int(p, "n"), _int(p, "m")
    _require(n >= 2 and m >= 2, "model c1 needs n, m >= 2")
    marks = [(pole_zero(1), [F(0), F(1, n)], "-"), (pole_inf(1), [F(0), F(1, m)], "-")]
    return _diagram(1, marks, label="c1", name="c1", params={"n": n, "m": m}, projective=False)


def fig_d1(**p) -> Diagram:
    n = _int(p, "n")
    _require(n >= 2, "model d1 = W(n+1) needs n >= 2")
    marks = [(pole_zero(1), [F(-1, n), F(0)], "+")]
    return _diagram(1, marks, label="d1", name=f"W({n + 1})", params={"n": n}, row="W(n+1), n>=2")


def fig_e1(**p) -> Diagram:
    marks = [(pole_zero(1), [F(0)], "+"), (pole_inf(1), [F(0)], "+")]
    return _diagram(1, marks, label="e1", name="W(1)", params={}, row="W(1)")


def fig_f1(**p) -> Diagram:
    n, m = _int(p, "n"), _int(p, "m")
    # the picture allows n = 1, but then its first tick would sit at radius -1
    _require(n >= 2 and m >= 2, "model f1 needs n >= 2 and m >= 2")
    marks = [(pole_zero(1), [F(-1, n), F(0), F(1, m)], "-")]
    return _diagram(
        1, marks, label="f1", name=f"X_1({n + 1},{n + m})", params={"n": n, "m": m}, row=_parity_row(1)
    )


def fig_g1(**p) -> Diagram:
    m = _int(p, "m")
    _require(m >= 2, "model g1 needs m >= 2")
    marks = [(pole_zero(1), [F(0), F(1, m)], "-"), (pole_inf(1), [F(0)], "+")]
    return _diagram(1, marks, label="g1", name=f"X_1(1,{m})", params={"m": m}, row=_parity_row(1))


def fig_h1(**p) -> Diagram:
    marks = [(pole_zero(1), [F(0)], "+"), (pole_inf(1), [F(1)], None)]
    return _diagram(
        1, marks, label="h1", name="Z(0)", params={}, row=_parity_row(1),
        notes=["tick at radius 1 on [1:0] read as a C orbit"],
    )


def fig_i1(**p) -> Diagram:
    marks = [(pole_zero(1), [F(1, 2)], "-"), (pole_inf(1), [F(1)], None)]
    return _diagram(1, marks, label="i1", name="Z(2)", params={}, row=_parity_row(1))


def fig_j1(**p) -> Diagram:
    n = _int(p, "n")
    _require(n >= 3, "model j1 needs n >= 3")
    marks = [(pole_zero(1), [F(1)], None), (pole_inf(1), [F(n - 1, n), F(1)], None)]
    return _diagram(
        1, marks, label="j1", name=f"Y({1 - n},{-n})", params={"n": n}, row=_y_row(1 - n, -n)
    )


def fig_k1(**p) -> Diagram:
    n = _int(p, "n")
    _require(n >= 3, "model k1 needs n >= 3")
    marks = [(pole_zero(1), [F(1)], None), (pole_inf(1), [F(0), F(1, n)], "-")]
    return _diagram(1, marks, label="k1", name=f"X_1(0,{n - 1})", params={"n": n}, row=_parity_row(1))


# ---------------------------------------------------------------- figure 2 (k = 2)


def fig_a2(**p) -> Diagram:
    return _diagram(2, [], generic=True, label="a2", name="Q3", params={}, row="Q_3")


def fig_b2(**p) -> Diagram:
    ns, alphas = _b_params(p, 2)
    m = len(ns)
    _require(m >= 1, "model b2 needs m >= 1")
    _require(all(n >= 1 for n in ns), "model b2 needs n_i >= 1")
    spokes = _b_spokes(2, alphas, m)
    marks = [(j, [F(0), F(1, 2 * n + 1)], "-") for j, n in zip(spokes, ns)]
    return _diagram(
        2, marks, generic=True, label="b2", name="b2",
        params={"m": m, "ns": ns, "alphas": [format_cyclo(a) for a in alphas]}, projective=False,
    )


def fig_c2(**p) -> Diagram:
    n, m = _int(p, "n"), _int(p, "m")
    _require(n >= 1 and m >= 0, "model c2 needs n >= 1 and m >= 0")
    ticks = [F(-1, 2 * n + 1), F(0), F(1, 2 * m + 1)]
    # m = 0 puts the last tick at b = 1, leaving no room for a B orbit
    marks = [(pole_zero(2), ticks, "-" if m > 0 else None)]
    return _diagram(
        2, marks, label="c2", name=f"X_2({n + 1},{n + m + 1})", params={"n": n, "m": m}, row=_parity_row(2)
    )


def fig_d2(**p) -> Diagram:
    marks = [(pole_zero(2), [F(1, 3)], "-"), (pole_inf(2), [F(1)], None)]
    return _diagram(2, marks, label="d2", name="Z(3)", params={}, row=_parity_row(2))


def fig_e2(**p) -> Diagram:
    n = _int(p, "n")
    _require(n == 2 or n >= 4, "model e2 needs n = 2 or n >= 4")
    marks = [(pole_zero(2), [F(1)], None), (pole_inf(2), [F(n - 2, n), F(1)], None)]
    return _diagram(
        2, marks, label="e2", name=f"Y({2 - n},{-n})", params={"n": n}, row=_y_row(2 - n, -n)
    )


def fig_f2(**p) -> Diagram:
    n = _int(p, "n")
    _require(n >= 2, "model f2 needs n >= 2")
    marks = [(pole_zero(2), [F(1)], None), (pole_inf(2), [F(0), F(1, 2 * n + 1)], "-")]
    return _diagram(2, marks, label="f2", name=f"X_2(0,{n})", params={"n": n}, row=_parity_row(2))


def fig_g2(**p) -> Diagram:
    marks = [(pole_zero(2), [F(1)], None), (pole_inf(2), [F(1)], None), (spoke(1, 1, 2), [F(1)], None)]
    return _diagram(2, marks, label="g2", name="Y_0(2)", params={}, row="Y_0(2)")


# ---------------------------------------------------------------- figures 3 and 4 (k >= 3)


def _k_ge3(p: dict, label: str, parity: int) -> int:
    k = _int(p, "k")
    if parity == 1:
        _require(k >= 3 and k % 2 == 1, f"model {label} needs odd k >= 3")
    else:
        _require(k >= 4 and k % 2 == 0, f"model {label} needs even k >= 4")
    return k


def _fig_a(parity: int):
    def build(**p) -> Diagram:
        label = f"a{3 + (parity == 0)}"
        k = _k_ge3(p, label, parity)
        marks = [(pole_zero(k), [F(-1, k - 1), F(1)], None)]
        return _diagram(k, marks, label=label, name=f"Z({1 - k})", params={"k": k}, row=_parity_row(k))

    return build


def _fig_b(parity: int):
    def build(**p) -> Diagram:
        label = f"b{3 + (parity == 0)}"
        k = _k_ge3(p, label, parity)
        n = _int(p, "n")
        _require(n >= 2, f"model {label} needs n >= 2")
        marks = [(pole_zero(k), [F(-1, k * n - 1), F(0), F(1)], None)]
        return _diagram(
            k, marks, label=label, name=f"X_{k}({n},{n})", params={"k": k, "n": n}, row=_parity_row(k)
        )

    return build


def _fig_c(parity: int):
    def build(**p) -> Diagram:
        label = f"c{3 + (parity == 0)}"
        k = _k_ge3(p, label, parity)
        n, m = _int(p, "n"), _int(p, "m")
        _require(n >= 1 and m >= 1, f"model {label} needs n, m >= 1")
        marks = [(pole_zero(k), [F(-1, k * n - 1), F(0), F(1, k * m + 1)], "-")]
        return _diagram(
            k, marks, label=label, name=f"X_{k}({n},{n + m})", params={"k": k, "n": n, "m": m},
            row=_parity_row(k),
        )

    return build


def _fig_d(parity: int):
    def build(**p) -> Diagram:
        label = f"d{3 + (parity == 0)}"
        k = _k_ge3(p, label, parity)
        n = _int(p, "n")
        _require(2 * n >= 1 - k and n not in (-1, 1), f"model {label} needs n >= (1-k)/2 and n != +-1")
        marks = [(pole_zero(k), [F(n, n + k), F(1)], None), (pole_inf(k), [F(1)], None)]
        return _diagram(
            k, marks, label=label, name=f"Y({-n},{-n - k})", params={"k": k, "n": n},
            row=_y_row(-n, -n - k),
        )

    return build


def _fig_e(parity: int):
    def build(**p) -> Diagram:
        label = f"e{3 + (parity == 0)}"
        k = _k_ge3(p, label, parity)
        marks = [(pole_zero(k), [F(1, 1 + k)], "-"), (pole_inf(k), [F(1)], None)]
        return _diagram(
            k, marks, label=label, name=f"Z({1 + k})", params={"k": k}, row=_parity_row(k),
            notes=["Z(1+k) grouped with the Z(1-k) row: same open orbit and the same parity class"],
        )

    return build


def _fig_f(parity: int):
    def build(**p) -> Diagram:
        label = f"f{3 + (parity == 0)}"
        k = _k_ge3(p, label, parity)
        n = _int(p, "n")
        _require(n >= 2, f"model {label} needs n >= 2")
        marks = [(pole_zero(k), [F(0), F(1, 1 + n * k)], "-"), (pole_inf(k), [F(1)], None)]
        return _diagram(
            k, marks, label=label, name=f"X_{k}(0,{n})", params={"k": k, "n": n}, row=_parity_row(k)
        )

    return build


def _fig_nonproj(parity: int):
    def build(**p) -> Diagram:
        label = "g3" if parity == 1 else "i4"
        k = _k_ge3(p, label, parity)
        n, m = _int(p, "n"), _int(p, "m")
        _require(n >= 1 and m >= 1, f"model {label} needs n, m >= 1")
        first = (1 - k) // 2 if parity == 1 else 1 - k // 2
        base = [F(i, i + k) for i in range(first, 1)]
        marks = [
            (pole_zero(k), base + [F(1, 1 + n * k)], "-"),
            (pole_inf(k), base + [F(1, 1 + m * k)], "-"),
        ]
        return _diagram(
            k, marks, label=label, name=label, params={"k": k, "n": n, "m": m}, projective=False
        )

    return build


def fig_g4(**p) -> Diagram:
    k = _k_ge3(p, "g4", 0)
    _require(k >= 6, "model g4 = Y_0(k) needs k >= 6")
    alpha = _cyc(p.get("alpha", 1))
    _require(not alpha.is_zero(), "alpha must be nonzero")
    w = spoke(1, alpha, k)
    marks = [(pole_zero(k), [F(1)], None), (pole_inf(k), [F(1)], None), (w, [b_max(w)], None)]
    return _diagram(
        k, marks, label="g4", name=f"Y_0({k})", params={"k": k, "alpha": alpha}, row="Y_0(k)"
    )


def fig_g4p(**p) -> Diagram:
    k = 4
    alpha = _cyc(p.get("alpha", 1))
    _require(not alpha.is_zero(), "alpha must be nonzero")
    w = spoke(1, alpha, k)
    marks = [(pole_zero(k), [F(1)], None), (w, [F(0)], None)]
    return _diagram(k, marks, label="g4p", name="P2xP1", params={"alpha": alpha}, row="P(R_2)xP(R_1)")


def fig_h4(**p) -> Diagram:
    k = _k_ge3(p, "h4", 0)
    a = k // 2
    marks = [(pole_zero(k), [F(1)], None), (pole_inf(k), [F(1)], None)]
    return _diagram(
        k, marks, generic=True, label="h4", name=f"Y({a},{-a})", params={"k": k}, row="Y(a,-a)"
    )


FIGURES: dict[str, Callable[..., Diagram]] = {
    "a1": fig_a1, "b1": fig_b1, "c1": fig_c1, "d1": fig_d1, "e1": fig_e1, "f1": fig_f1,
    "g1": fig_g1, "h1": fig_h1, "i1": fig_i1, "j1": fig_j1, "k1": fig_k1,
    "a2": fig_a2, "b2": fig_b2, "c2": fig_c2, "d2": fig_d2, "e2": fig_e2, "f2": fig_f2, "g2": fig_g2,
    "a3": _fig_a(1), "b3": _fig_b(1), "c3": _fig_c(1), "d3": _fig_d(1), "e3": _fig_e(1),
    "f3": _fig_f(1), "g3": _fig_nonproj(1),
    "a4": _fig_a(0), "b4": _fig_b(0), "c4": _fig_c(0), "d4": _fig_d(0), "e4": _fig_e(0),
    "f4": _fig_f(0), "g4": fig_g4, "g4p": fig_g4p, "h4": fig_h4, "i4": _fig_nonproj(0),
}

FIGURE_PARAMS: dict[str, tuple[str, ...]] = {
    "a1": (), "b1": ("m", "ns", "alphas"), "c1": ("n", "m"), "d1": ("n",), "e1": (), "f1": ("n", "m"),
    "g1": ("m",), "h1": (), "i1": (), "j1": ("n",), "k1": ("n",),
    "a2": (), "b2": ("m", "ns", "alphas"), "c2": ("n", "m"), "d2": (), "e2": ("n",), "f2": ("n",),
    "g2": (),
    "a3": ("k",), "b3": ("k", "n"), "c3": ("k", "n", "m"), "d3": ("k", "n"), "e3": ("k",),
    "f3": ("k", "n"), "g3": ("k", "n", "m"),
    "a4": ("k",), "b4": ("k", "n"), "c4": ("k", "n", "m"), "d4": ("k", "n"), "e4": ("k",),
    "f4": ("k", "n"), "g4": ("k", "alpha"), "g4p": ("alpha",), "h4": ("k",), "i4": ("k", "n", "m"),
}


# ---------------------------------------------------------------- geometric names


def _odd_even(k: int) -> str:
    return "3" if k % 2 else "4"


def geom_X(k: int, n: int, m: int) -> Diagram:
    _require(k >= 1, "X_k(n,m) needs k >= 1")
    _require(n >= 0 and m >= 0, "X_k(n,m) needs n, m >= 0")
    _require(m != 1, "X_k(n,m) is minimal iff m != 1")
    _require(not (k == 1 and n == m), "X_1(n,m) is minimal iff n != m")
    missing = f"X_{k}({n},{m}) has no catalog diagram"
    if k == 1:
        if n == 0:
            return fig_k1(n=m + 1)
        _require(m > n and n != 2, missing)
        return fig_g1(m=m) if n == 1 else fig_f1(n=n - 1, m=m - n + 1)
    if k == 2:
        _require(m >= n and m >= 2 and n != 1, missing)
        return fig_f2(n=m) if n == 0 else fig_c2(n=n - 1, m=m - n)
    _require(m >= n and m >= 2, missing)
    s = _odd_even(k)
    if n == 0:
        return FIGURES["f" + s](k=k, n=m)
    if n == m:
        return FIGURES["b" + s](k=k, n=n)
    return FIGURES["c" + s](k=k, n=n, m=m - n)


def geom_W(k: int) -> Diagram:
    _require(k >= 0, "W(k) needs k >= 0")
    _require(k != 2, "W(k) is minimal iff k != 2")
    if k == 0:
        return fig_h1()
    if k == 1:
        return fig_e1()
    return fig_d1(n=k - 1)


def geom_Y(a: int, b: int) -> Diagram:
    _require(a > b, "Y(a,b) needs a > b")
    _require(a + b <= 0, "Y(a,b) needs a + b <= 0")
    _require(a not in (1, -1) and b not in (1, -1), "Y(a,b) is minimal iff a != +-1 and b != +-1")
    k = a - b
    if a + b == 0:
        return fig_h4(k=k)
    if k == 1:
        return fig_j1(n=-b)
    if k == 2:
        return fig_e2(n=-b)
    return FIGURES["d" + _odd_even(k)](k=k, n=-a)


def geom_Y0(k: int, alpha=1) -> Diagram:
    _require(k != 4, "Y_0(k) is minimal iff k != 4")
    _require(k >= 2 and k % 2 == 0, "Y_0(k) needs an even k >= 2")
    return fig_g2() if k == 2 else fig_g4(k=k, alpha=alpha)


def geom_Z(r: int) -> Diagram:
    _require(r != 1, "Z(r) is minimal iff r != 1")
    k = abs(r - 1)
    if r == 0:
        return fig_h1()
    if r == 2:
        return fig_i1()
    if r == 3:
        return fig_d2()
    _require(k >= 3, f"Z({r}) has no catalog diagram")
    return FIGURES[("a" if r < 1 else "e") + _odd_even(k)](k=k)


def _geom(family: str, p: dict) -> Diagram | None:
    if family == "X":
        return geom_X(_int(p, "k"), _int(p, "n"), _int(p, "m"))
    if family in ("X_k", "X_k(n,m)"):
        # the label printed under the figure, X_k(n, n+m), with the figure's n and m
        n, m = _int(p, "n"), _int(p, "m")
        return geom_X(_int(p, "k"), n, n + m)
    if family == "W":
        return geom_W(_int(p, "k"))
    if family == "Y":
        return geom_Y(_int(p, "a"), _int(p, "b"))
    if family in ("Y0", "Y_0"):
        return geom_Y0(_int(p, "k"), p.get("alpha", 1))
    if family == "Z":
        return geom_Z(_int(p, "r"))
    if family == "P3":
        return fig_a1()
    if family == "Q3":
        return fig_a2()
    if family in ("P2xP1", "P(R2)xP(R1)"):
        return fig_g4p(alpha=p.get("alpha", 1))
    return None


GEOMETRIC_FAMILIES = ("X", "X_k(n,m)", "W", "Y", "Y0", "Z", "P3", "Q3", "P2xP1")


# ---------------------------------------------------------------- external catalog


def external_catalog() -> dict[str, Diagram]:
    """Diagrams from the JSON files in the directory named by REALFORM_CATALOG."""
    root = os.environ.get("REALFORM_CATALOG")
    if not root:
        return {}
    out: dict[str, Diagram] = {}
    for path in sorted(Path(root).glob("*.json")):
        d = diagram_loads(path.read_text(encoding="utf-8"))
        d.meta.setdefault("label", path.stem)
        d.meta.setdefault("name", path.stem)
        d.meta.setdefault("row", None)
        d.meta.setdefault("projective", True)
        d.meta.setdefault("notes", [])
        d.meta.setdefault("params", {})
        out[str(d.meta["label"])] = d
    return out


def build_model(family: str, **params) -> Diagram:
    """Diagram for a figure code or a geometric family name."""
    params = {k: v for k, v in params.items() if v is not None}
    key = family.replace("'", "p")
    if key in FIGURES:
        allowed = FIGURE_PARAMS[key]
        extra = sorted(set(params) - set(allowed))
        _require(not extra, f"model {key} does not take parameter(s) {', '.join(extra)}")
        return FIGURES[key](**params)
    got = _geom(family, params)
    if got is not None:
        return got
    ext = external_catalog()
    if family in ext:
        return ext[family]
    raise CatalogError(f"unknown model {family!r}")


# ---------------------------------------------------------------- enumeration


def default_instances() -> list[tuple[str, dict]]:
    """One representative parameter choice per figure code."""
    return [
        ("a1", {}), ("b1", {}), ("c1", {"n": 2, "m": 3}), ("d1", {"n": 2}), ("e1", {}),
        ("f1", {"n": 2, "m": 2}), ("g1", {"m": 2}), ("h1", {}), ("i1", {}), ("j1", {"n": 3}),
        ("k1", {"n": 3}),
        ("a2", {}), ("b2", {}), ("c2", {"n": 1, "m": 1}), ("d2", {}), ("e2", {"n": 2}),
        ("f2", {"n": 2}), ("g2", {}),
        ("a3", {"k": 3}), ("b3", {"k": 3, "n": 2}), ("c3", {"k": 3, "n": 1, "m": 2}),
        ("d3", {"k": 3, "n": 0}), ("e3", {"k": 3}), ("f3", {"k": 3, "n": 2}),
        ("g3", {"k": 3, "n": 1, "m": 1}),
        ("a4", {"k": 4}), ("b4", {"k": 4, "n": 2}), ("c4", {"k": 4, "n": 1, "m": 1}),
        ("d4", {"k": 4, "n": 0}), ("e4", {"k": 4}), ("f4", {"k": 4, "n": 2}),
        ("g4", {"k": 6}), ("g4p", {}), ("h4", {"k": 4}), ("i4", {"k": 4, "n": 1, "m": 1}),
    ]


def grid_instances(kmax: int = 8, nmax: int = 4, abmax: int = 5) -> Iterator[Diagram]:
    """Every projective catalog model with parameters in the grid, each diagram once."""
    seen: set = set()

    def emit(build: Callable[[], Diagram]) -> Iterator[Diagram]:
        try:
            d = build()
        except CatalogError:
            return
        key = (d.meta["label"], json.dumps(d.meta["params"], sort_keys=True))
        if key not in seen and d.meta["projective"]:
            seen.add(key)
            yield d

    yield from emit(fig_a1)
    yield from emit(fig_a2)
    yield from emit(fig_g4p)
    for k in range(1, kmax + 1):
        for n in range(nmax + 1):
            for m in range(nmax + 1):
                yield from emit(lambda: geom_X(k, n, m))
    for r in range(1 - kmax, kmax + 2):
        yield from emit(lambda: geom_Z(r))
    for w in range(0, nmax + 2):
        yield from emit(lambda: geom_W(w))
    for a in range(-abmax, abmax + 1):
        for b in range(-abmax, abmax + 1):
            if 0 < a - b <= kmax:
                yield from emit(lambda: geom_Y(a, b))
    for k in range(2, kmax + 1, 2):
        yield from emit(lambda: geom_Y0(k))


def list_models() -> list[dict]:
    out = []
    for label, params in default_instances():
        d = build_model(label, **params)
        out.append(
            {
                "label": label,
                "name": d.meta["name"],
                "k": d.k,
                "params": list(FIGURE_PARAMS[label]),
                "projective": d.meta["projective"],
                "row": d.meta["row"],
            }
        )
    for label, d in external_catalog().items():
        out.append(
            {"label": label, "name": d.meta.get("name", label), "k": d.k, "params": [],
             "projective": d.meta.get("projective", True), "row": d.meta.get("row")}
        )
    return out
