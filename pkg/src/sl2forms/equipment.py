"""Colored equipment of SL2/A_k embeddings: valuations, orbit records, facets, diagrams.

A valuation is either the center nu0 or nu(j, r) for a spoke j and a radius
r in (-1, b(j)].  Each non-open orbit of an embedding is one of six kinds and
is drawn on the skeleton diagram by its facet, a set of valuations.
"""
from __future__ import annotations

import enum
import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Iterable, Union

from .moebius import SpokeOrbit, b_max

SCHEMA_VERSION = 1


class RecordKind(enum.Enum):
    C = "C"
    A_N = "A_N"
    AB = "AB"
    B_PLUS = "B_plus"
    B_MINUS = "B_minus"
    B_ZERO = "B_zero"

    def __str__(self) -> str:
        return self.value


_KIND_ORDER = {k: i for i, k in enumerate(RecordKind)}


@dataclass(frozen=True)
class Valuation:
    """nu0 when spoke is None, else nu(spoke, r)."""

    spoke: SpokeOrbit | None = None
    r: Fraction | None = None

    @classmethod
    def center(cls) -> "Valuation":
        return cls()

    def is_center(self) -> bool:
        return self.spoke is None

    def __post_init__(self):
        if self.spoke is None:
            if self.r is not None:
                raise ValueError("the center carries no radius")
            return
        r = Fraction(self.r)
        object.__setattr__(self, "r", r)
        if not (-1 < r <= b_max(self.spoke)):
            raise ValueError(f"radius {r} outside (-1, {b_max(self.spoke)}]")

    def __str__(self) -> str:
        return "nu0" if self.spoke is None else f"nu({self.spoke},{self.r})"


@dataclass(frozen=True)
class OrbitRecord:
    """One non-open orbit: kind, its spokes and radii.

    A_N lists parallel spokes and radii; AB has one spoke and radii (r1, r2);
    the other kinds have one spoke and one radius.
    """

    kind: RecordKind
    spokes: tuple[SpokeOrbit, ...]
    radii: tuple[Fraction, ...]

    def __post_init__(self):
        radii = tuple(Fraction(r) for r in self.radii)
        spokes = tuple(self.spokes)
        if self.kind is RecordKind.A_N:
            pairs = sorted(zip(spokes, radii), key=lambda p: (p[0].rep.sort_key(), p[1]))
            spokes = tuple(p[0] for p in pairs)
            radii = tuple(p[1] for p in pairs)
        object.__setattr__(self, "spokes", spokes)
        object.__setattr__(self, "radii", radii)

    @property
    def spoke(self) -> SpokeOrbit:
        return self.spokes[0]

    @property
    def r(self) -> Fraction:
        return self.radii[0]

    def sort_key(self):
        return (
            _KIND_ORDER[self.kind],
            tuple(s.rep.sort_key() for s in self.spokes),
            self.radii,
        )

    def signature(self) -> tuple:
        """Spoke-free description; automorphisms and Gamma preserve it."""
        return (self.kind.value, tuple(sorted(self.radii)))

    def with_spokes(self, spokes: Iterable[SpokeOrbit]) -> "OrbitRecord":
        return OrbitRecord(self.kind, tuple(spokes), self.radii)

    def to_json(self) -> dict:
        if self.kind is RecordKind.A_N:
            return {
                "kind": self.kind.value,
                "spokes": [s.to_json() for s in self.spokes],
                "radii": [_fmt(r) for r in self.radii],
            }
        if self.kind is RecordKind.AB:
            return {
                "kind": self.kind.value,
                "spoke": self.spoke.to_json(),
                "r1": _fmt(self.radii[0]),
                "r2": _fmt(self.radii[1]),
            }
        return {"kind": self.kind.value, "spoke": self.spoke.to_json(), "r": _fmt(self.r)}

    def __str__(self) -> str:
        if self.kind is RecordKind.A_N:
            inner = ",".join(str(s) for s in self.spokes) + ";" + ",".join(_fmt(r) for r in self.radii)
            return f"A_{len(self.spokes)}({inner})"
        return f"{self.kind.value}({self.spoke};{','.join(_fmt(r) for r in self.radii)})"


def C(j: SpokeOrbit, r) -> OrbitRecord:
    return OrbitRecord(RecordKind.C, (j,), (Fraction(r),))


def A_N(spokes: Iterable[SpokeOrbit], radii: Iterable) -> OrbitRecord:
    return OrbitRecord(RecordKind.A_N, tuple(spokes), tuple(Fraction(r) for r in radii))


def AB(j: SpokeOrbit, r1, r2) -> OrbitRecord:
    return OrbitRecord(RecordKind.AB, (j,), (Fraction(r1), Fraction(r2)))


def B_plus(j: SpokeOrbit, r) -> OrbitRecord:
    return OrbitRecord(RecordKind.B_PLUS, (j,), (Fraction(r),))


def B_minus(j: SpokeOrbit, r) -> OrbitRecord:
    return OrbitRecord(RecordKind.B_MINUS, (j,), (Fraction(r),))


def B_zero(j: SpokeOrbit, r) -> OrbitRecord:
    return OrbitRecord(RecordKind.B_ZERO, (j,), (Fraction(r),))


@dataclass(frozen=True)
class GenericFamily:
    """Records of one kind at one radius on every spoke except the excluded ones."""

    kind: RecordKind
    radius: Fraction
    excluded: frozenset[SpokeOrbit] = frozenset()

    def __post_init__(self):
        object.__setattr__(self, "radius", Fraction(self.radius))
        object.__setattr__(self, "excluded", frozenset(self.excluded))

    def to_json(self) -> dict:
        return {
            "kind": self.kind.value,
            "r": _fmt(self.radius),
            "excluded": [s.to_json() for s in sorted(self.excluded)],
        }

    def __str__(self) -> str:
        ex = ",".join(str(s) for s in sorted(self.excluded))
        return f"{self.kind.value}(*;{_fmt(self.radius)}) except {{{ex}}}"


Record = Union[OrbitRecord, GenericFamily]


@dataclass
class Diagram:
    """The colored equipment of one model, fully expanded."""

    k: int
    records: tuple[OrbitRecord, ...]
    families: tuple[GenericFamily, ...] = ()
    meta: dict[str, Any] = field(default_factory=dict)

    def __post_init__(self):
        self.records = tuple(sorted(self.records, key=OrbitRecord.sort_key))
        self.families = tuple(self.families)

    def content_key(self) -> tuple:
        return (self.k, frozenset(self.records), frozenset(self.families))

    def marked_spokes(self) -> list[SpokeOrbit]:
        seen: set[SpokeOrbit] = set()
        for rec in self.records:
            seen.update(rec.spokes)
        return sorted(seen)

    def label(self) -> str:
        return str(self.meta.get("label", "?"))

    def to_json(self) -> dict:
        return {
            "schema": SCHEMA_VERSION,
            "k": self.k,
            "records": [r.to_json() for r in self.records],
            "families": [f.to_json() for f in self.families],
            "meta": self.meta,
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True, indent=2)


def _fmt(r: Fraction) -> str:
    r = Fraction(r)
    return str(r.numerator) if r.denominator == 1 else f"{r.numerator}/{r.denominator}"


# ---------------------------------------------------------------- JSON input


class DiagramFormatError(ValueError):
    pass


def _parse_fraction(text, where: str) -> Fraction:
    try:
        return Fraction(str(text))
    except (ValueError, ZeroDivisionError) as exc:
        raise DiagramFormatError(f"{where}: bad rational {text!r}") from exc


def _parse_spoke(obj, k: int, where: str) -> SpokeOrbit:
    try:
        s = SpokeOrbit.from_json(obj)
    except (KeyError, TypeError, ValueError, IndexError) as exc:
        raise DiagramFormatError(f"{where}: bad spoke {obj!r}") from exc
    if s.k != k:
        raise DiagramFormatError(f"{where}: spoke has k={s.k}, diagram has k={k}")
    return s


def record_from_json(obj: dict, k: int, where: str = "record") -> OrbitRecord:
    try:
        kind = RecordKind(obj["kind"])
    except (KeyError, ValueError) as exc:
        raise DiagramFormatError(f"{where}: unknown kind {obj.get('kind')!r}") from exc
    try:
        if kind is RecordKind.A_N:
            spokes = [_parse_spoke(s, k, f"{where}.spokes[{i}]") for i, s in enumerate(obj["spokes"])]
            radii = [_parse_fraction(r, f"{where}.radii[{i}]") for i, r in enumerate(obj["radii"])]
            if len(spokes) != len(radii):
                raise DiagramFormatError(f"{where}: spokes and radii differ in length")
            return OrbitRecord(kind, tuple(spokes), tuple(radii))
        spoke = _parse_spoke(obj["spoke"], k, f"{where}.spoke")
        if kind is RecordKind.AB:
            return OrbitRecord(
                kind,
                (spoke,),
                (_parse_fraction(obj["r1"], f"{where}.r1"), _parse_fraction(obj["r2"], f"{where}.r2")),
            )
        return OrbitRecord(kind, (spoke,), (_parse_fraction(obj["r"], f"{where}.r"),))
    except KeyError as exc:
        raise DiagramFormatError(f"{where}: missing field {exc.args[0]!r}") from exc


def diagram_from_json(obj: dict) -> Diagram:
    if not isinstance(obj, dict) or "k" not in obj:
        raise DiagramFormatError("diagram: expected an object with field 'k'")
    k = obj["k"]
    if not isinstance(k, int) or k < 1:
        raise DiagramFormatError(f"diagram.k: expected a positive integer, got {k!r}")
    records = [record_from_json(r, k, f"records[{i}]") for i, r in enumerate(obj.get("records", []))]
    families = []
    for i, fam in enumerate(obj.get("families", [])):
        where = f"families[{i}]"
        try:
            kind = RecordKind(fam["kind"])
        except (KeyError, ValueError) as exc:
            raise DiagramFormatError(f"{where}: unknown kind") from exc
        excluded = [_parse_spoke(s, k, f"{where}.excluded[{j}]") for j, s in enumerate(fam.get("excluded", []))]
        families.append(GenericFamily(kind, _parse_fraction(fam.get("r"), f"{where}.r"), frozenset(excluded)))
    return Diagram(k, tuple(records), tuple(families), dict(obj.get("meta", {})))


def diagram_loads(text: str) -> Diagram:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise DiagramFormatError(f"JSON parse error at line {exc.lineno} column {exc.colno}: {exc.msg}") from exc
    return diagram_from_json(obj)


# ---------------------------------------------------------------- validation


def validate_orbit_record(rec: Record, k: int) -> list[str]:
    """Every violated type constraint, named; an empty list means valid."""
    out: list[str] = []
    if isinstance(rec, GenericFamily):
        # the family lives on generic spokes, where b = b_max of a non-pole orbit
        generic_b = Fraction(4, k if k % 2 == 0 else 2 * k) - 1
        if rec.kind is not RecordKind.B_PLUS:
            out.append(f"family kind {rec.kind} unsupported")
        elif not (-1 <= rec.radius < generic_b):
            out.append(f"B_plus radius {_fmt(rec.radius)} must lie in [-1, {_fmt(generic_b)})")
        for s in rec.excluded:
            if s.k != k:
                out.append(f"excluded spoke {s} has k={s.k}, expected {k}")
        return out
    for s in rec.spokes:
        if s.k != k:
            out.append(f"spoke {s} has k={s.k}, expected {k}")
    if out:
        return out
    kind = rec.kind
    if kind is RecordKind.A_N:
        if not rec.spokes:
            return ["A_N needs at least one spoke"]
        if len(set(rec.spokes)) != len(rec.spokes):
            out.append("A_N spokes must be pairwise distinct")
        for s, r in zip(rec.spokes, rec.radii):
            if not (-1 < r <= b_max(s)):
                out.append(f"A_N radius {_fmt(r)} on {s} must lie in (-1, {_fmt(b_max(s))}]")
        if all(r > -1 for r in rec.radii):
            total = sum((1 / (1 + r) for r in rec.radii), Fraction(0))
            if total < 1:
                out.append(f"A_N sum {_fmt(total)} < 1")
        return out
    expected = 2 if kind is RecordKind.AB else 1
    if len(rec.spokes) != 1 or len(rec.radii) != expected:
        return [f"{kind} takes one spoke and {expected} radius value(s)"]
    b = b_max(rec.spoke)
    if kind is RecordKind.C:
        if not (-1 < rec.r <= b):
            out.append(f"C radius {_fmt(rec.r)} must lie in (-1, {_fmt(b)}]")
    elif kind is RecordKind.AB:
        r1, r2 = rec.radii
        if r1 < -1:
            out.append(f"AB r1 {_fmt(r1)} must be at least -1")
        if not r1 < r2:
            out.append(f"AB needs r1 < r2, got {_fmt(r1)} >= {_fmt(r2)}")
        if r2 > b:
            out.append(f"AB r2 {_fmt(r2)} must not exceed {_fmt(b)}")
    elif kind is RecordKind.B_PLUS:
        if not (-1 <= rec.r < b):
            out.append(f"B_plus radius {_fmt(rec.r)} must lie in [-1, {_fmt(b)})")
    else:
        if rec.r <= 0:
            out.append("r must exceed 0")
        if rec.r >= b:
            out.append(f"r must be below {_fmt(b)}")
    return out


@dataclass(frozen=True)
class Interval:
    lo: Fraction
    hi: Fraction
    lo_closed: bool
    hi_closed: bool

    def is_empty(self) -> bool:
        return self.lo > self.hi or (self.lo == self.hi and not (self.lo_closed and self.hi_closed))

    def intersect(self, other: "Interval") -> "Interval":
        if self.lo > other.lo or (self.lo == other.lo and not self.lo_closed):
            lo, lc = self.lo, self.lo_closed
        else:
            lo, lc = other.lo, other.lo_closed
        if self.hi < other.hi or (self.hi == other.hi and not self.hi_closed):
            hi, hc = self.hi, self.hi_closed
        else:
            hi, hc = other.hi, other.hi_closed
        return Interval(lo, hi, lc, hc)

    def sample(self) -> Fraction:
        return self.lo if self.lo == self.hi else (self.lo + self.hi) / 2

    def __str__(self) -> str:
        return f"{'[' if self.lo_closed else '('}{_fmt(self.lo)}, {_fmt(self.hi)}{']' if self.hi_closed else ')'}"


@dataclass(frozen=True)
class FacetSet:
    """Per-spoke intervals plus an optional default (lo, b(j)] on every unlisted spoke.

    The default lower end is open; ``default_lo`` None means no default part.
    """

    parts: tuple[tuple[SpokeOrbit, Interval], ...]
    default_lo: Fraction | None = None
    listed: frozenset[SpokeOrbit] = frozenset()

    def on(self, j: SpokeOrbit) -> list[Interval]:
        got = [iv for s, iv in self.parts if s == j]
        if not got and self.default_lo is not None and j not in self.listed:
            got = [Interval(self.default_lo, b_max(j), False, True)]
        return got


def facet_of(rec: Record, k: int) -> FacetSet:
    problems = validate_orbit_record(rec, k)
    if problems:
        raise ValueError("; ".join(problems))
    if isinstance(rec, GenericFamily):
        return FacetSet((), rec.radius, frozenset(rec.excluded))
    kind = rec.kind
    if kind is RecordKind.C:
        return FacetSet(((rec.spoke, Interval(rec.r, rec.r, True, True)),))
    if kind is RecordKind.A_N:
        parts = tuple((s, Interval(Fraction(-1), r, False, False)) for s, r in zip(rec.spokes, rec.radii))
        return FacetSet(parts, Fraction(-1), frozenset(rec.spokes))
    if kind is RecordKind.AB:
        r1, r2 = rec.radii
        return FacetSet(((rec.spoke, Interval(r1, r2, False, False)),))
    return FacetSet(((rec.spoke, Interval(rec.r, b_max(rec.spoke), False, True)),))


def _all_items(d: Diagram) -> list[Record]:
    return list(d.records) + list(d.families)


def facets_disjoint(d: Diagram) -> str | None:
    """None when all facets are pairwise disjoint, else a description of the first overlap."""
    items = _all_items(d)
    facets = [facet_of(x, d.k) for x in items]
    spokes = d.marked_spokes()
    for fam in d.families:
        spokes.extend(s for s in fam.excluded if s not in spokes)
    for i in range(len(items)):
        for j in range(i + 1, len(items)):
            fi, fj = facets[i], facets[j]
            for s in spokes:
                for a in fi.on(s):
                    for b in fj.on(s):
                        meet = a.intersect(b)
                        if not meet.is_empty():
                            return f"{items[i]} and {items[j]} overlap at nu({s},{_fmt(meet.sample())})"
            if fi.default_lo is not None and fj.default_lo is not None:
                return f"{items[i]} and {items[j]} overlap on every unmarked spoke"
    return None


def coverage_gaps(d: Diagram) -> list[str]:
    """Points of (-1, b(j)] on marked spokes, or of generic spokes, not covered by any facet.

    A complete embedding covers every valuation except the center, so the
    catalog diagrams must come back with no gaps.
    """
    facets = [facet_of(x, d.k) for x in _all_items(d)]
    gaps = []
    spokes = d.marked_spokes()
    for s in spokes:
        ivs = sorted((iv for f in facets for iv in f.on(s)), key=lambda iv: (iv.lo, not iv.lo_closed))
        pos, pos_closed = Fraction(-1), True  # everything <= -1 is taken care of
        for iv in ivs:
            if iv.lo > pos or (iv.lo == pos and not iv.lo_closed and not pos_closed):
                break
            if iv.hi > pos or (iv.hi == pos and iv.hi_closed):
                pos, pos_closed = iv.hi, iv.hi_closed
        if pos < b_max(s) or not pos_closed:
            gaps.append(f"spoke {s} uncovered beyond {_fmt(pos)}")
    if not any(f.default_lo == -1 for f in facets):
        gaps.append("unmarked spokes are not covered")
    return gaps


def validate_diagram(d: Diagram) -> list[str]:
    out = []
    for rec in _all_items(d):
        for problem in validate_orbit_record(rec, d.k):
            out.append(f"{rec}: {problem}")
    if not out:
        overlap = facets_disjoint(d)
        if overlap:
            out.append(overlap)
    return out


def build_model(family: str, **params) -> Diagram:
    from .catalog import build_model as _build

    return _build(family, **params)
