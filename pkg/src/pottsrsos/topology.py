"""Edge colourings and their topological invariants.

A colouring is a bitmask over direct edges (bit set = direct edge coloured;
the crossing dual edge is then uncoloured, and vice versa).  ``analyze``
extracts cluster counts, boundary loops, windings, the Pasquier cycle order n,
degeneracy and eta for a single colouring; ``summary_rows`` runs the bulk
kernel (compiled when available) over a mask range; ``signature_counts``
aggregates a whole lattice into distinct topological signatures, which is
what the weight machinery consumes.
"""
from __future__ import annotations

import json
from dataclasses import dataclass

import numpy as np

from . import _topology_py
from .errors import EnumerationTooLarge
from .lattice import TorusLattice

try:
    from . import _topology_core as _compiled
except ImportError:  # pragma: no cover - depends on build environment
    _compiled = None

DEFAULT_ENUM_CAP = 24
DEGENERATE_LABELS = ("none", "direct", "dual")

__all__ = [
    "EdgeColoring",
    "LoopRecord",
    "TopologySummary",
    "analyze",
    "dump_jsonl",
    "iter_colorings",
    "kernel_name",
    "shift_configuration",
    "signature_counts",
    "summary_rows",
    "trace_loops",
]


@dataclass(frozen=True)
class EdgeColoring:
    """Subset of coloured direct edges, stored as a bitmask."""

    mask: int

    def e(self):
        return bin(self.mask).count("1")


@dataclass(frozen=True)
class LoopRecord:
    """One cluster-boundary loop: medial step count and signed winding."""

    length: int
    winding: tuple


@dataclass(frozen=True)
class TopologySummary:
    """Topological invariants of one colouring."""

    e: int
    c: int
    c_dual: int
    l: int
    n: int
    homotopy: tuple
    degenerate: str
    eta: int


def kernel_name():
    """Which bulk kernel is active: 'compiled' or 'python'."""
    return "compiled" if _compiled is not None else "python"


def _mask_of(coloring):
    return coloring.mask if isinstance(coloring, EdgeColoring) else int(coloring)


def _kernel_for(lat, kernel="auto"):
    if kernel == "python" or (kernel == "auto" and _compiled is None):
        return _topology_py.Kernel(lat)
    if kernel in ("auto", "compiled"):
        if _compiled is None:
            raise RuntimeError("compiled topology kernel is not available")
        return _compiled.Kernel(
            lat.L, lat.N,
            lat.edge_tail, lat.edge_head, lat.edge_dx, lat.edge_dy,
            lat.dual_tail, lat.dual_head, lat.dual_dx, lat.dual_dy,
            np.ascontiguousarray(lat.med_nbr))
    raise ValueError(f"unknown kernel {kernel!r}")


def iter_colorings(lat, cap=DEFAULT_ENUM_CAP):
    """Yield all 2^E colourings in increasing mask order."""
    if lat.E > cap:
        raise EnumerationTooLarge(
            f"2^{lat.E} colourings exceed cap 2^{cap}")
    for mask in range(1 << lat.E):
        yield EdgeColoring(mask)


def trace_loops(lat, coloring):
    """Cluster-boundary loops of one colouring, with signed windings."""
    kern = _topology_py.Kernel(lat)
    return [LoopRecord(length, (wx, wy))
            for length, wx, wy in kern.loops(_mask_of(coloring))]


def _row_to_summary(row):
    return TopologySummary(
        e=int(row[0]), c=int(row[1]), c_dual=int(row[2]), l=int(row[3]),
        n=int(row[4]), homotopy=(int(row[5]), int(row[6])),
        degenerate=DEGENERATE_LABELS[int(row[7])], eta=int(row[8]))


def analyze(lat, coloring):
    """Full topological summary of one colouring (pure-Python path)."""
    kern = _topology_py.Kernel(lat)
    return _row_to_summary(kern.analyze_mask(_mask_of(coloring)))


def shift_configuration(lat, coloring):
    """Colouring whose coloured direct edges occupy the former coloured dual
    edges (half-step lattice shift); e -> E - e, l and n invariant."""
    mask = _mask_of(coloring)
    sigma = lat.shift_map()
    out = 0
    for k in range(lat.E):
        if not (mask >> k) & 1:
            out |= 1 << int(sigma[k])
    return EdgeColoring(out)


def summary_rows(lat, lo=0, hi=None, kernel="auto", cap=DEFAULT_ENUM_CAP):
    """Bulk per-mask summaries for masks in [lo, hi) as an int8 array."""
    if hi is None:
        if lat.E > cap:
            raise EnumerationTooLarge(
                f"2^{lat.E} colourings exceed cap 2^{cap}")
        hi = 1 << lat.E
    out = np.empty((hi - lo, 9), dtype=np.int8)
    _kernel_for(lat, kernel).rows(lo, hi, out)
    return out


_signature_cache = {}


def signature_counts(lat, kernel="auto", cap=DEFAULT_ENUM_CAP):
    """Distinct topological signatures of a lattice with multiplicities.

    One enumeration pass per lattice; every partition function is then a
    small sum over (summary, count) pairs.
    """
    key = (lat.L, lat.N)
    hit = _signature_cache.get(key)
    if hit is not None:
        return hit
    rows = summary_rows(lat, kernel=kernel, cap=cap)
    uniq, counts = np.unique(rows, axis=0, return_counts=True)
    result = tuple((_row_to_summary(r), int(cnt)) for r, cnt in zip(uniq, counts))
    _signature_cache[key] = result
    return result


def dump_jsonl(lat, fh, kernel="auto", cap=DEFAULT_ENUM_CAP):
    """Write one JSON record per colouring (regression fixture format)."""
    rows = summary_rows(lat, kernel=kernel, cap=cap)
    digits = (lat.E + 3) // 4
    for mask, row in enumerate(rows):
        rec = {
            "mask": format(mask, f"0{digits}x"),
            "e": int(row[0]), "c": int(row[1]), "c_dual": int(row[2]),
            "l": int(row[3]), "n": int(row[4]),
            "i1": int(row[5]), "i2": int(row[6]),
            "degenerate": DEGENERATE_LABELS[int(row[7])], "eta": int(row[8]),
        }
        fh.write(json.dumps(rec, sort_keys=True) + "\n")
