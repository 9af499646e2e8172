"""Real points, rationality, per-model reports and the summary table.

The real locus of a real form is either dense or empty, so it is enough to
look for a point of the open orbit fixed by mu_t: that is a g with
g^-1 sigma(g) t in A_k.  Such a g exists exactly when some lift t h is
itself a cocycle of SL2 with trivial class, which for the split structure
means (th) conj(th) = 1 and for the compact one means th is positive
definite Hermitian.  Every positive verdict carries an explicit g.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .actions import AutDescriptor, compute_aut, cyc_sqrt
from .catalog import ROW_BY_KEY, ROWS, grid_instances
from .cohomology import (
    RealStructureClass,
    _gl2,
    _hermitian_congruence,
    _sqrt_cost,
    _split_fixed_point,
    classify_structures,
    fixed_lift,
)
from .cyclotomic import (
    IDENTITY,
    ZERO,
    Cyc,
    Matrix2,
    SigmaKind,
    apply_sigma,
    cyclic_group,
    in_cyclic_group,
    real_sign,
    sqrt_rational,
)
from .equipment import Diagram

BLOCKS = ("rational", "pointless")
COLUMNS = ("i", "ii", "iii", "iv")


@dataclass
class RealPointsVerdict:
    has_points: bool
    witness: Matrix2 | None = None
    lift: Matrix2 | None = None
    failed_lifts: list[str] = field(default_factory=list)

    def __bool__(self) -> bool:
        return self.has_points

    def to_json(self) -> dict:
        out: dict = {"has_real_points": self.has_points}
        if self.has_points:
            out["fixed_point"] = self.witness.to_json()
            out["lift"] = self.lift.to_json()
        else:
            out["failed_lifts"] = list(self.failed_lifts)
        return out


def is_fixed_point(sigma: SigmaKind, t: Matrix2, g: Matrix2, k: int) -> bool:
    """Whether gH is fixed by mu_t, i.e. g^-1 sigma(g) t lies in A_k."""
    return in_cyclic_group(g.inverse() @ apply_sigma(sigma, g) @ t, k)


def _positive_sqrt(x: Cyc) -> Cyc | None:
    if _sqrt_cost(x) is None:
        return None
    if x.is_rational():
        return sqrt_rational(x.as_fraction())
    r = cyc_sqrt(x)
    if r is None:
        return None
    return r if real_sign(r) > 0 else -r


def _cholesky(s: Matrix2) -> Matrix2 | None:
    """g with g* g = s for a positive definite Hermitian s of determinant one."""
    ra = _positive_sqrt(s.a)
    if ra is not None:
        return Matrix2(ra, s.b / ra, ZERO, ra.inverse())
    rd = _positive_sqrt(s.d)
    if rd is not None:
        return Matrix2(rd.inverse(), ZERO, s.c / rd, rd)
    return None


def has_real_points(sigma: SigmaKind, t: Matrix2, k: int) -> RealPointsVerdict:
    """Decide whether the open orbit of mu_t has a real point.

    A positive answer comes with a g fixed by mu_t, checked exactly; a
    negative one lists every lift that failed the test.
    """
    s = fixed_lift(sigma, t, k)
    if s is None:
        why = "(th) conj(th) != 1" if sigma is SigmaKind.SPLIT else "not positive definite Hermitian"
        return RealPointsVerdict(False, failed_lifts=[f"{t @ h}: {why}" for h in cyclic_group(k)])
    if sigma is SigmaKind.COMPACT:
        g = _cholesky(s)
        if g is None:
            g = _hermitian_congruence(_gl2(s), _gl2(IDENTITY))
    else:
        g = _split_fixed_point(s)
    if g is None or not is_fixed_point(sigma, t, g, k):
        raise ArithmeticError(f"no exact fixed point produced for {sigma} {t}")
    return RealPointsVerdict(True, witness=g, lift=s)


# ---------------------------------------------------------------- reports


_Q3_NAMES = {
    (SigmaKind.SPLIT, True): "Q^{3,2}",
    (SigmaKind.COMPACT, True): "Q^{4,1}",
    (SigmaKind.SPLIT, False): "Q^{5,0}",
    (SigmaKind.COMPACT, False): "Q^{5,0}",
}


@dataclass
class FormEntry:
    cls: RealStructureClass
    real_points: RealPointsVerdict
    name: str | None = None

    @property
    def rational(self) -> bool:
        # rational exactly when the real locus is nonempty
        return self.real_points.has_points

    def to_json(self) -> dict:
        out = self.cls.to_json()
        out["real_points"] = self.real_points.to_json()
        out["rational"] = self.rational
        if self.name:
            out["name"] = self.name
        return out


@dataclass
class RealFormReport:
    meta: dict
    aut: AutDescriptor
    forms: dict[SigmaKind, list[FormEntry]]
    counts: dict[str, dict[str, int | None]]

    def column_ii_iii(self) -> tuple[int, int]:
        return len(self.forms[SigmaKind.SPLIT]), len(self.forms[SigmaKind.COMPACT])

    def to_json(self) -> dict:
        return {
            "model": self.meta,
            "aut": self.aut.to_json(),
            "structures": {s.value: [f.to_json() for f in self.forms[s]] for s in SigmaKind},
            "counts": self.counts,
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True, indent=2)

    def text(self) -> str:
        lines = [f"model {self.meta.get('label')} {self.meta.get('name', '')} (k={self.meta.get('k')})",
                 f"automorphisms: {self.aut.kind.value}"]
        for s in SigmaKind:
            entries = self.forms[s]
            lines.append(f"{s.value}: {len(entries)} class(es)")
            for e in entries:
                pts = "real points" if e.rational else "no real points"
                name = f" {e.name}" if e.name else ""
                lines.append(f"  {e.cls.representative}  {e.cls.notes or '-'}  {pts}{name}")
        for block in BLOCKS:
            cells = " ".join(f"({c})={_cell(self.counts[block][c])}" for c in COLUMNS)
            lines.append(f"{block}: {cells}")
        return "\n".join(lines) + "\n"


def _cell(v) -> str:
    return "-" if v is None else str(v)


def _counts(meta: dict, forms: dict[SigmaKind, list[FormEntry]]) -> dict[str, dict[str, int | None]]:
    row = ROW_BY_KEY.get(meta.get("row") or "")
    out: dict[str, dict[str, int | None]] = {}
    for idx, block in enumerate(BLOCKS):
        want = block == "rational"
        ii = sum(1 for e in forms[SigmaKind.SPLIT] if e.rational == want)
        iii = sum(1 for e in forms[SigmaKind.COMPACT] if e.rational == want)
        total = iv = None
        if row is not None:
            total = row.total[idx]
            # a stated coincidence needs a class on each side; never more forms than the total
            iv = min(ii + iii - min(row.merges[idx], ii, iii), total)
        out[block] = {"i": total, "ii": ii, "iii": iii, "iv": iv}
    return out


def report(model: Diagram) -> RealFormReport:
    aut = compute_aut(model)
    classes = classify_structures(model, aut)
    row = model.meta.get("row")
    forms: dict[SigmaKind, list[FormEntry]] = {}
    for sigma in SigmaKind:
        entries = []
        for cls in classes[sigma]:
            rp = has_real_points(sigma, cls.representative, model.k)
            name = _Q3_NAMES[(sigma, rp.has_points)] if row == "Q_3" else None
            entries.append(FormEntry(cls, rp, name))
        forms[sigma] = entries
    meta = dict(model.meta)
    meta["k"] = model.k
    return RealFormReport(meta, aut, forms, _counts(meta, forms))


# ---------------------------------------------------------------- table


@dataclass
class TableRow:
    key: str
    variants: dict[tuple, list[str]]

    @property
    def consistent(self) -> bool:
        return len(self.variants) == 1

    def counts(self) -> tuple | None:
        """The eight counts when every instance agrees."""
        if not self.consistent:
            return None
        return next(iter(self.variants))


def _flat(counts: dict) -> tuple:
    return tuple(counts[b][c] for b in BLOCKS for c in COLUMNS)


def main_table(models: Iterable[Diagram] | None = None) -> list[TableRow]:
    """One row per table family, in catalog order; disagreeing instances are kept apart."""
    if models is None:
        models = grid_instances()
    by_row: dict[str, dict[tuple, list[str]]] = {r.key: {} for r in ROWS}
    for d in models:
        key = d.meta.get("row")
        if key not in by_row:
            continue
        rep = report(d)
        name = f"{d.meta.get('name')}"
        by_row[key].setdefault(_flat(rep.counts), []).append(name)
    return [TableRow(key, variants) for key, variants in by_row.items() if variants]


def table_tsv(rows: Sequence[TableRow]) -> str:
    head = ["model"] + [f"{b}_{c}" for b in BLOCKS for c in COLUMNS] + ["instances", "status"]
    lines = ["\t".join(head)]
    for row in rows:
        variants = sorted(row.variants.items(), key=lambda kv: (-len(kv[1]), kv[0]))
        n = sum(len(v) for _, v in variants)
        if row.consistent:
            cells = [_cell(x) for x in variants[0][0]]
            status = "ok"
        else:
            cells = ["|".join(_cell(v[0][i]) for v in variants) for i in range(8)]
            status = "disagree:" + ";".join(f"{'/'.join(map(_cell, c))}={','.join(sorted(v))}" for c, v in variants)
        lines.append("\t".join([row.key, *cells, str(n), status]))
    return "\n".join(lines) + "\n"
