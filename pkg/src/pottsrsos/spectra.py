"""Exact diagonalization, free-energy/multiplicity tables, cross-rep merging."""
from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass, field

import numpy as np

from .errors import DiagonalizationFailure, InconsistentMetadata
from .transfer import (dual_spin_transfer, rsos_transfer, spin_transfer)

ZERO_CUTOFF = 1e-12  # |eigenvalue| below cutoff * |max| goes to the zero bucket

__all__ = [
    "MergedTable",
    "SpectrumEntry",
    "SpectrumTable",
    "compare_tables",
    "merged_to_csv",
    "merged_to_json",
    "spectrum",
    "table1_operators",
    "table1_report",
    "table_to_csv",
    "table_to_json",
]


@dataclass(frozen=True)
class SpectrumEntry:
    f: float                 # -log|eigenvalue| / L
    multiplicity: int
    is_real: bool
    real_positive: bool


@dataclass(frozen=True)
class SpectrumTable:
    entries: tuple
    meta: dict = field(compare=False)

    @property
    def dim(self):
        return sum(e.multiplicity for e in self.entries) + self.meta.get("zero_modes", 0)


def spectrum(op, group_tol=1e-9):
    """Free energies with multiplicities, eigenvalues grouped within group_tol.

    Near-zero eigenvalues (|v| <= 1e-12 |v_max|) are reported in a separate
    zero bucket since rank-deficient matrices have no finite free energy.
    """
    if group_tol <= 0:
        raise ValueError("group_tol must be positive")
    try:
        eig = np.linalg.eigvals(op.matrix)
    except np.linalg.LinAlgError as exc:  # pragma: no cover - numerics
        raise DiagonalizationFailure(str(exc)) from exc
    mags = np.abs(eig)
    vmax = mags.max() if len(mags) else 0.0
    live = mags > ZERO_CUTOFF * vmax
    zero_modes = int((~live).sum())
    entries = []
    order = np.argsort(-mags[live])
    lam = eig[live][order]
    fs = -np.log(np.abs(lam)) / op.L
    i = 0
    while i < len(lam):
        j = i
        while j + 1 < len(lam) and fs[j + 1] - fs[i] <= group_tol:
            j += 1
        group = lam[i:j + 1]
        is_real = bool(np.all(np.abs(group.imag) <= 1e-9 * (1.0 + np.abs(group))))
        real_positive = bool(is_real and np.all(group.real > 0))
        entries.append(SpectrumEntry(
            f=float(np.mean(fs[i:j + 1])), multiplicity=j - i + 1,
            is_real=is_real, real_positive=real_positive))
        i = j + 1
    meta = {"rep": op.rep, "sector": op.sector, "twist": op.twist,
            "L": op.L, "x": op.x, "q": op.q, "p": op.p,
            "dim": op.dim, "zero_modes": zero_modes, "label": op.label()}
    return SpectrumTable(entries=tuple(entries), meta=meta)


@dataclass(frozen=True)
class MergedTable:
    """Union of free energies with one multiplicity column per input table."""

    rows: tuple               # (f, (m_1, ..., m_k))
    labels: tuple
    meta: dict = field(compare=False)

    def column_sums(self):
        return tuple(sum(r[1][c] for r in self.rows) for c in range(len(self.labels)))


def compare_tables(tables, align_tol=1e-9):
    """Align several spectrum tables on a common free-energy column."""
    if not tables:
        return MergedTable(rows=(), labels=(), meta={})
    l0 = tables[0].meta["L"]
    x0 = tables[0].meta["x"]
    for t in tables:
        if t.meta["L"] != l0 or t.meta["x"] != x0:
            raise InconsistentMetadata("tables differ in L or x")
    events = []
    for ti, t in enumerate(tables):
        for entry in t.entries:
            events.append((entry.f, ti, entry.multiplicity))
    events.sort()
    rows = []
    i = 0
    while i < len(events):
        j = i
        while j + 1 < len(events) and events[j + 1][0] - events[i][0] <= align_tol:
            j += 1
        mults = [0] * len(tables)
        fsum = 0.0
        for f, ti, m in events[i:j + 1]:
            mults[ti] += m
            fsum += f * m
        total = sum(mults)
        rows.append((fsum / total, tuple(mults)))
        i = j + 1
    labels = tuple(t.meta["label"] for t in tables)
    meta = {"L": l0, "x": x0, "align_tol": align_tol}
    return MergedTable(rows=tuple(rows), labels=labels, meta=meta)


# -- the canonical ten-column report -------------------------------------------


def table1_operators(L=2, x=5.0):
    """The ten Q=3 transfer matrices in canonical column order."""
    return [
        rsos_transfer(L, 6, "even", x),
        rsos_transfer(L, 6, "even", x, "z2"),
        rsos_transfer(L, 6, "odd", x),
        rsos_transfer(L, 6, "odd", x, "z2"),
        spin_transfer(L, 3, x),
        spin_transfer(L, 3, x, "z2_swap"),
        spin_transfer(L, 3, x, "z3_cycle"),
        dual_spin_transfer(L, 3, x),
        dual_spin_transfer(L, 3, x, "z2_swap"),
        dual_spin_transfer(L, 3, x, "z3_cycle"),
    ]


def table1_report(L=2, x=5.0, group_tol=1e-9, align_tol=1e-9):
    """Merged multiplicity table over all ten Q=3 sectors and twists."""
    tables = [spectrum(op, group_tol) for op in table1_operators(L, x)]
    return compare_tables(tables, align_tol)


# -- serialization ------------------------------------------------------------


def table_to_csv(table):
    buf = io.StringIO()
    w = csv.writer(buf)
    w.writerow(["f", "multiplicity", "is_real"])
    for e in table.entries:
        w.writerow([f"{e.f:.12f}", e.multiplicity, int(e.is_real)])
    return buf.getvalue()


def table_to_json(table):
    return json.dumps({
        "meta": table.meta,
        "entries": [{"f": round(e.f, 12), "multiplicity": e.multiplicity,
                     "is_real": e.is_real, "real_positive": e.real_positive}
                    for e in table.entries],
    }, sort_keys=True)


def merged_to_csv(merged):
    buf = io.StringIO()
    w = csv.writer(buf)
    w.writerow(["f"] + list(merged.labels))
    for f, mults in merged.rows:
        w.writerow([f"{f:.12f}"] + list(mults))
    return buf.getvalue()


def merged_to_json(merged):
    return json.dumps({
        "labels": list(merged.labels),
        "meta": merged.meta,
        "rows": [{"f": round(f, 12), "multiplicities": list(m)}
                 for f, m in merged.rows],
    }, sort_keys=True)


def merged_to_text(merged):
    lines = []
    head = "f".ljust(18) + "  ".join(lbl.rjust(14) for lbl in merged.labels)
    lines.append(head)
    for f, mults in merged.rows:
        lines.append(f"{f:.12f}".ljust(18)
                     + "  ".join(str(m).rjust(14) for m in mults))
    return "\n".join(lines) + "\n"
