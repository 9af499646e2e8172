"""Skeleton diagrams as SVG or plain text.

Each marked spoke is drawn as a ray from the common center (radius -1) out
to b(j); orbits sit at their radii: a single tick for C, a double tick for
AB, a small circle for A_N, and the signs +, -, 0 for the B kinds.  A
generic family is drawn as one dashed spoke labelled with its radius.
"""
from __future__ import annotations

import math
from fractions import Fraction

from .equipment import Diagram, OrbitRecord, RecordKind
from .moebius import SpokeOrbit, b_max

SIZE = 320
CENTER = SIZE / 2
INNER = 14.0
OUTER = 120.0

_SIGN = {RecordKind.B_PLUS: "+", RecordKind.B_MINUS: "-", RecordKind.B_ZERO: "0"}


def _fmt(r: Fraction) -> str:
    r = Fraction(r)
    return str(r.numerator) if r.denominator == 1 else f"{r.numerator}/{r.denominator}"


def _num(x: float) -> str:
    s = f"{x:.2f}".rstrip("0").rstrip(".")
    return "0" if s == "-0" else s


def _marks(d: Diagram) -> dict[SpokeOrbit, list[tuple[str, Fraction]]]:
    """For each marked spoke, the (mark, radius) pairs along it, sorted by radius."""
    out: dict[SpokeOrbit, list[tuple[str, Fraction]]] = {}
    for rec in d.records:
        for j, r in _positions(rec):
            out.setdefault(j, []).append((_mark(rec), r))
    for j in out:
        out[j].sort(key=lambda p: (p[1], p[0]))
    return dict(sorted(out.items(), key=lambda kv: kv[0].rep.sort_key()))


def _positions(rec: OrbitRecord):
    if rec.kind is RecordKind.A_N:
        return list(zip(rec.spokes, rec.radii))
    if rec.kind is RecordKind.AB:
        return [(rec.spoke, rec.radii[0])]
    return [(rec.spoke, rec.r)]


def _mark(rec: OrbitRecord) -> str:
    if rec.kind is RecordKind.C:
        return "C"
    if rec.kind is RecordKind.AB:
        return "AB"
    if rec.kind is RecordKind.A_N:
        return f"A{len(rec.spokes)}"
    return _SIGN[rec.kind]


def _scale(r: Fraction, j: SpokeOrbit) -> float:
    top = float(b_max(j))
    return INNER + (OUTER - INNER) * (float(r) + 1.0) / (top + 1.0)


def render_ascii(d: Diagram) -> str:
    lines = [f"k={d.k}  {d.meta.get('label', '')} {d.meta.get('name', '')}".rstrip(), "center: -1"]
    for j, marks in _marks(d).items():
        body = "  ".join(f"{m}@{_fmt(r)}" for m, r in marks)
        lines.append(f"{str(j):>12} (b={_fmt(b_max(j))}): {body}")
    for fam in d.families:
        excl = ",".join(str(s) for s in sorted(fam.excluded)) or "none"
        lines.append(f"{'other spokes':>12}: {_SIGN.get(fam.kind, fam.kind.value)}@{_fmt(fam.radius)}"
                     f" (excluding {excl})")
    return "\n".join(lines) + "\n"


def render_svg(d: Diagram) -> str:
    spokes = list(_marks(d).items())
    rays = len(spokes) + len(d.families)
    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{SIZE}" height="{SIZE}" '
        f'viewBox="0 0 {SIZE} {SIZE}" font-family="sans-serif" font-size="10">',
        f'<title>{_esc(str(d.meta.get("label", "")))} {_esc(str(d.meta.get("name", "")))}</title>',
    ]

    def at(angle: float, rad: float) -> tuple[float, float]:
        return CENTER + rad * math.cos(angle), CENTER - rad * math.sin(angle)

    for idx, (j, marks) in enumerate(spokes):
        angle = math.pi / 2 - 2 * math.pi * idx / max(rays, 1)
        x0, y0 = at(angle, INNER)
        x1, y1 = at(angle, OUTER)
        parts.append(f'<line x1="{_num(x0)}" y1="{_num(y0)}" x2="{_num(x1)}" y2="{_num(y1)}" '
                     f'stroke="black" stroke-width="2"/>')
        lx, ly = at(angle, OUTER + 16)
        parts.append(f'<text x="{_num(lx)}" y="{_num(ly)}" text-anchor="middle">{_esc(str(j))}</text>')
        labelled: set[Fraction] = set()
        for mark, r in marks:
            parts.extend(_draw_mark(mark, r, j, angle, at, r not in labelled))
            labelled.add(r)
    for n, fam in enumerate(d.families):
        angle = math.pi / 2 - 2 * math.pi * (len(spokes) + n) / max(rays, 1)
        x0, y0 = at(angle, INNER)
        x1, y1 = at(angle, OUTER)
        parts.append(f'<line x1="{_num(x0)}" y1="{_num(y0)}" x2="{_num(x1)}" y2="{_num(y1)}" '
                     f'stroke="black" stroke-width="1" stroke-dasharray="4 3"/>')
        lx, ly = at(angle, OUTER + 16)
        sign = _SIGN.get(fam.kind, fam.kind.value)
        parts.append(f'<text x="{_num(lx)}" y="{_num(ly)}" text-anchor="middle">'
                     f'{_esc(sign)} at {_fmt(fam.radius)} elsewhere</text>')
    parts.append(f'<circle cx="{_num(CENTER)}" cy="{_num(CENTER)}" r="4" fill="white" stroke="black"/>')
    parts.append(f'<text x="{_num(CENTER + 6)}" y="{_num(CENTER + 14)}">-1</text>')
    parts.append(f'<text x="8" y="16">k={d.k}</text>')
    parts.append("</svg>")
    return "\n".join(parts) + "\n"


def _draw_mark(mark: str, r: Fraction, j: SpokeOrbit, angle: float, at, label: bool) -> list[str]:
    rad = _scale(r, j)
    x, y = at(angle, rad)
    nx, ny = -math.sin(angle) * 6, -math.cos(angle) * 6
    out = []
    if mark in ("C", "AB"):
        offsets = (0.0,) if mark == "C" else (-2.5, 2.5)
        for off in offsets:
            cx, cy = at(angle, rad + off)
            out.append(f'<line x1="{_num(cx - nx)}" y1="{_num(cy - ny)}" x2="{_num(cx + nx)}" '
                       f'y2="{_num(cy + ny)}" stroke="black" stroke-width="1.5"/>')
    elif mark.startswith("A"):
        out.append(f'<circle cx="{_num(x)}" cy="{_num(y)}" r="3" fill="black"/>')
    else:
        out.append(f'<text x="{_num(x + 2 * nx)}" y="{_num(y + 2 * ny + 3)}" text-anchor="middle" '
                   f'font-size="13">{_esc(mark)}</text>')
    if label:
        out.append(f'<text x="{_num(x - 2.6 * nx)}" y="{_num(y - 2.6 * ny + 3)}" text-anchor="middle" '
                   f'font-size="8">{_fmt(r)}</text>')
    return out


def _esc(s: str) -> str:
    return s.replace("&", "&amp;").replace("<", "&lt;").replace(">", "&gt;")
