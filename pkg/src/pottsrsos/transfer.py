"""Temperley-Lieb transfer matrices in the spin and RSOS representations.

The column transfer matrix is T = Q^(L/2) H_L..H_1 V_L..V_1 with
H_i = x I + e_(2i-1) and V_i = I + x e_(2i).  Odd generators act on
horizontal-edge faces (direct sites of the vertical ring), even generators on
vertical-edge faces.  A horizontal seam twists the delta-constraints that span
one marked bond of the vertical ring (the ring closure by default); for the
RSOS model the twist also restricts the basis adjacency at that bond.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import product

import numpy as np

from .errors import TwistIncompatible, ZeroTemperatureVariable
from .weights import _spin_twist_map, q_of_p

__all__ = [
    "TransferOperator",
    "dual_spin_transfer",
    "rsos_basis",
    "rsos_tl_generators",
    "rsos_transfer",
    "spin_tl_generators",
    "spin_transfer",
    "trace_power",
]


@dataclass(frozen=True)
class TransferOperator:
    """Dense transfer matrix plus the metadata that identifies its sector."""

    rep: str                  # spin | spin_dual | rsos
    L: int
    x: float
    q: float
    matrix: np.ndarray = field(compare=False)
    basis: tuple = field(compare=False)
    p: int = None
    sector: str = None        # rsos: even | odd
    twist: str = "none"
    seam_bond: int = None

    @property
    def dim(self):
        return self.matrix.shape[0]

    def label(self):
        parts = [self.rep]
        if self.sector:
            parts.append(self.sector)
        parts.append({"none": "I", "z2": "Z2", "z2_swap": "Z2",
                      "z3_cycle": "Z3"}[self.twist])
        return "_".join(parts)


def trace_power(op, n_cols):
    """Trace of the n-th matrix power (partition function on N columns)."""
    if n_cols < 1:
        raise ValueError("need N >= 1")
    mat = op.matrix if isinstance(op, TransferOperator) else op
    return float(np.trace(np.linalg.matrix_power(mat, n_cols)))


# -- spin representation -------------------------------------------------------


def _spin_basis(L, q_states):
    return tuple(product(range(q_states), repeat=L))


def spin_tl_generators(L, q_states, twist="none", seam_bond=None):
    """Temperley-Lieb generators e_1..e_2L on the Q^L spin basis.

    Even generators are the vertical bonds (i, i+1 mod L); the seam bond
    (default: the ring closure (L, 1)) compares s_i with the twisted s_(i+1).
    """
    if q_states < 2:
        raise TwistIncompatible("spin representation needs Q >= 2")
    tau = _spin_twist_map(q_states, twist)
    if seam_bond is None:
        seam_bond = L
    basis = _spin_basis(L, q_states)
    index = {s: k for k, s in enumerate(basis)}
    dim = len(basis)
    sq = math.sqrt(q_states)
    gens = []
    for j in range(1, 2 * L + 1):
        mat = np.zeros((dim, dim))
        if j % 2 == 0:
            i = j // 2                       # vertical bond (i, i+1 mod L)
            a, b = i - 1, i % L
            twisted = twist != "none" and i == seam_bond
            for k, s in enumerate(basis):
                sb = tau[s[b]] if twisted else s[b]
                if s[a] == sb:
                    mat[k, k] = sq
        else:
            i = (j + 1) // 2                 # horizontal face at site i
            for k, s in enumerate(basis):
                for v in range(q_states):
                    s2 = s[:i - 1] + (v,) + s[i:]
                    mat[index[s2], k] = 1.0 / sq
        gens.append(mat)
    return gens


def spin_transfer(L, q_states, x, twist="none", seam_bond=None):
    """Column transfer matrix in the spin representation; Tr T^N = Z_spin."""
    gens = spin_tl_generators(L, q_states, twist, seam_bond)
    basis = _spin_basis(L, q_states)
    dim = len(basis)
    ident = np.eye(dim)
    h_prod = ident
    v_prod = ident
    for i in range(1, L + 1):
        h_prod = (x * ident + gens[2 * i - 2]) @ h_prod
        v_prod = (ident + x * gens[2 * i - 1]) @ v_prod
    mat = q_states ** (L / 2.0) * (h_prod @ v_prod)
    return TransferOperator(rep="spin", L=L, x=x, q=float(q_states),
                            matrix=mat, basis=basis, twist=twist,
                            seam_bond=seam_bond if seam_bond is not None else L)


def dual_spin_transfer(L, q_states, x, twist="none", seam_bond=None):
    """x^(2L) T_spin(1/x): the dual-temperature companion matrix."""
    if not x:
        raise ZeroTemperatureVariable("dual transfer needs x != 0")
    base = spin_transfer(L, q_states, 1.0 / x, twist, seam_bond)
    mat = x ** (2 * L) * base.matrix
    return TransferOperator(rep="spin_dual", L=L, x=x, q=float(q_states),
                            matrix=mat, basis=base.basis, twist=twist,
                            seam_bond=base.seam_bond)


# -- RSOS representation ------------------------------------------------------


def _adjacent(a, b, p, twisted):
    if twisted:
        b = p - b
    return abs(a - b) == 1


@lru_cache(maxsize=None)
def rsos_basis(L, p, parity, twist="none", seam_bond=None):
    """Height states (h_1..h_2L) on the vertical ring, lexicographic.

    Even sector: h_j = j (mod 2), so heights at odd (direct) positions are
    odd.  The seam bond (default (2L, 1)) uses the twisted adjacency
    |h_b - (p - h_b+1)| = 1 when twist is active.
    """
    if parity not in ("even", "odd"):
        raise ValueError(f"bad parity {parity!r}")
    if twist not in ("none", "z2"):
        raise TwistIncompatible(f"bad rsos twist {twist!r}")
    if twist == "z2" and p % 2:
        raise TwistIncompatible("Z2 twist is only defined for even p")
    if seam_bond is None:
        seam_bond = 2 * L
    want = 0 if parity == "even" else 1
    ring = 2 * L
    states = []

    def extend(prefix):
        j = len(prefix) + 1
        if j > ring:
            bond = ring  # closure bond (2L, 1)
            tw = twist != "none" and seam_bond == bond
            if _adjacent(prefix[-1], prefix[0], p, tw):
                states.append(tuple(prefix))
            return
        for h in range(1, p):
            if (h + j) % 2 != want:
                continue
            if prefix:
                bond = j - 1
                tw = twist != "none" and seam_bond == bond
                if not _adjacent(prefix[-1], h, p, tw):
                    continue
            prefix.append(h)
            extend(prefix)
            prefix.pop()

    extend([])
    return tuple(sorted(states))


def rsos_tl_generators(L, p, parity, twist="none", seam_bond=None):
    """Generators e_1..e_2L on the (possibly twisted) height basis."""
    if seam_bond is None:
        seam_bond = 2 * L
    basis = rsos_basis(L, p, parity, twist, seam_bond)
    index = {h: k for k, h in enumerate(basis)}
    dim = len(basis)
    ring = 2 * L
    s = [math.sin(math.pi * h / p) for h in range(p)]  # s[h], h = 1..p-1
    gens = []
    for j in range(1, ring + 1):
        mat = np.zeros((dim, dim))
        jm = j - 2 if j >= 2 else ring - 1      # tuple index of h_(j-1)
        jp = j % ring                           # tuple index of h_(j+1)
        prev_bond = j - 1 if j >= 2 else ring
        next_bond = j if j < ring else ring
        crosses = twist != "none" and seam_bond in (prev_bond, next_bond)
        for k, h in enumerate(basis):
            a, b = h[jm], h[jp]
            if crosses:
                a = p - a
            if a != b:
                continue
            for hv in range(1, p):
                h2 = h[:j - 1] + (hv,) + h[j:]
                k2 = index.get(h2)
                if k2 is None:
                    continue
                mat[k2, k] = math.sqrt(s[h[j - 1]] * s[hv]) / s[h[jm]]
        gens.append(mat)
    return gens


def rsos_transfer(L, p, parity, x, twist="none", seam_bond=None):
    """RSOS column transfer matrix; Tr T^N = Z_RSOS in the given sector."""
    gens = rsos_tl_generators(L, p, parity, twist, seam_bond)
    basis = rsos_basis(L, p, parity, twist,
                       seam_bond if seam_bond is not None else 2 * L)
    dim = len(basis)
    ident = np.eye(dim)
    h_prod = ident
    v_prod = ident
    for i in range(1, L + 1):
        h_prod = (x * ident + gens[2 * i - 2]) @ h_prod
        v_prod = (ident + x * gens[2 * i - 1]) @ v_prod
    mat = q_of_p(p) ** (L / 2.0) * (h_prod @ v_prod)
    return TransferOperator(rep="rsos", L=L, x=x, q=q_of_p(p), matrix=mat,
                            basis=basis, p=p, sector=parity, twist=twist,
                            seam_bond=seam_bond if seam_bond is not None else 2 * L)
