"""Per-configuration statistical weights and partition functions by enumeration.

Model families:
  * cluster          v^e Q^c with v = sqrt(Q) x
  * loop_form        Q^(V/2) x^e Q^(l/2 + eta)   (equivalent to cluster)
  * rsos             Q^(V/2) x^e Q^((l-n)/2) w_c(p, parity, twist, n, degeneracy)
  * twisted_cluster  cluster weights with special direct-cluster weights across
                     a horizontal seam (q0_mode 'one' or 'zero')

Exact partition functions are Laurent polynomials in x over the quadratic
ring; the float backend produces float coefficients.  Everything is assembled
from the per-lattice topological signature table, so one enumeration pass
serves all models.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import product

from .algebra import LaurentPoly, NumericPolicy, QuadValue, q_power_half
from .errors import (BackendMismatch, EnumerationTooLarge,
                     InvalidParityCombination, TwistIncompatible,
                     ZeroPartitionFunction)
from .topology import DEFAULT_ENUM_CAP, signature_counts

FAMILIES = ("cluster", "loop_form", "rsos", "twisted_cluster")
RSOS_INT_Q = {3: 1, 4: 2, 6: 3}

__all__ = [
    "ModelSpec",
    "config_weight",
    "cycle_weight",
    "cycle_weight_eigensum",
    "expectation_e",
    "g_matrix",
    "j_matrix",
    "partition_by_enumeration",
    "q_of_p",
    "spin_partition_by_enumeration",
]


def q_of_p(p):
    """Q = (2 cos(pi/p))^2."""
    return (2.0 * math.cos(math.pi / p)) ** 2


@dataclass(frozen=True)
class ModelSpec:
    """Which model and sector a weight belongs to."""

    family: str
    q: object = None          # integer (exact) or float; derived from p for rsos
    p: int = None
    parity: str = "both"      # rsos only: even | odd | both
    twist: str = "none"       # rsos only: none | z2
    q0_mode: str = None       # twisted_cluster only: one | zero

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise ValueError(f"unknown family {self.family!r}")
        if self.family == "rsos":
            if self.p is None or self.p < 3:
                raise ValueError("rsos needs p >= 3")
            if self.parity not in ("even", "odd", "both"):
                raise InvalidParityCombination(f"bad parity {self.parity!r}")
            if self.twist not in ("none", "z2"):
                raise TwistIncompatible(f"bad rsos twist {self.twist!r}")
            if self.twist == "z2" and self.p % 2:
                raise TwistIncompatible("Z2 twist is only defined for even p")
            if self.q is not None:
                qq = RSOS_INT_Q.get(self.p, q_of_p(self.p))
                if abs(float(self.q) - float(qq)) > 1e-9:
                    raise ValueError("rsos requires Q = (2 cos(pi/p))^2")
        else:
            if self.q is None:
                raise ValueError(f"{self.family} needs Q")
            if self.family == "twisted_cluster" and self.q0_mode not in ("one", "zero"):
                raise ValueError("twisted_cluster needs q0_mode 'one' or 'zero'")

    def q_value(self, policy):
        """Radicand (exact backend) or float Q."""
        if self.family == "rsos":
            if policy.exact:
                if self.p not in RSOS_INT_Q:
                    raise BackendMismatch(
                        f"exact backend needs p in {{3,4,6}}, got p={self.p}")
                return RSOS_INT_Q[self.p]
            return q_of_p(self.p)
        if policy.exact:
            policy.require_exact_radicand(self.q)
            return int(self.q)
        return float(self.q)


# -- Dynkin-diagram cycle weights ---------------------------------------------


def g_matrix(p):
    """Incidence matrix of the path with p-1 sites (heights 1..p-1)."""
    d = p - 1
    return [[1 if abs(i - j) == 1 else 0 for j in range(d)] for i in range(d)]


def j_matrix(p):
    """Height reflection h -> p-h as a permutation matrix."""
    d = p - 1
    return [[1 if i + j == d - 1 else 0 for j in range(d)] for i in range(d)]


def _mat_mul(a, b):
    n = len(a)
    return [[sum(a[i][k] * b[k][j] for k in range(n)) for j in range(n)]
            for i in range(n)]


@lru_cache(maxsize=None)
def _g_power(p, n):
    d = p - 1
    out = [[1 if i == j else 0 for j in range(d)] for i in range(d)]
    base = g_matrix(p)
    for _ in range(n):
        out = _mat_mul(out, base)
    return tuple(tuple(r) for r in out)


@lru_cache(maxsize=None)
def cycle_weight(p, n, parity="total", twist="none", degenerate_sublattice="none"):
    """Weight w_c of the Pasquier-graph cycle, by integer matrix power.

    n > 0: trace of G^n (twisted: of G^n J), halved for a single parity.
    n = 0: height counting on the spanning cluster of the named sublattice.
    """
    if parity not in ("even", "odd", "total"):
        raise InvalidParityCombination(f"bad parity {parity!r}")
    if twist not in ("none", "z2"):
        raise InvalidParityCombination(f"bad twist {twist!r}")
    if twist == "z2" and p % 2:
        raise InvalidParityCombination("Z2 twist needs even p")
    if n < 0 or n % 2:
        raise InvalidParityCombination("cycle order n must be even and >= 0")
    if n == 0:
        if degenerate_sublattice not in ("direct", "dual"):
            raise InvalidParityCombination("n = 0 needs a spanning sublattice")
        if twist == "none":
            even_direct, odd_direct = p // 2, (p - 1) // 2
        else:
            even_direct = (p // 2) % 2
            odd_direct = 1 - (p // 2) % 2
        if degenerate_sublattice == "dual":
            even_direct, odd_direct = odd_direct, even_direct
        if parity == "even":
            return even_direct
        if parity == "odd":
            return odd_direct
        return even_direct + odd_direct
    m = _g_power(p, n)
    d = p - 1
    if twist == "none":
        tr = sum(m[i][i] for i in range(d))
    else:
        tr = sum(m[i][d - 1 - i] for i in range(d))
    if parity == "total":
        return tr
    if tr % 2:
        raise InvalidParityCombination("parity-resolved trace is not even")
    return tr // 2


def cycle_weight_eigensum(p, n, twist="none"):
    """Floating eigenvalue cross-check of cycle_weight (total parity)."""
    sign = (lambda k: (-1) ** (k + 1)) if twist == "z2" else (lambda k: 1)
    return sum(sign(k) * (2.0 * math.cos(k * math.pi / p)) ** n
               for k in range(1, p))


# -- per-configuration weights ---------------------------------------------


def _q_half_power(qv, m, exact):
    # Q^(m/2) in the active backend
    if exact:
        return q_power_half(qv, m)
    return float(qv) ** (m / 2.0)


def _rsos_sector_weight(summary, p, parity, twist):
    """w_c factor for one parity sector, including the twisted class rules."""
    n = summary.n
    if n == 0:
        return cycle_weight(p, 0, parity, twist, summary.degenerate)
    if twist == "z2" and summary.homotopy[1] % 2:
        return 0  # height fixed to p/2 on both sublattices is inconsistent
    return cycle_weight(p, n, parity, twist, "none")


def config_weight(summary, spec, V, policy=NumericPolicy("exact"), x=None):
    """Weight of one colouring as a Laurent monomial in x (or its value)."""
    qv = spec.q_value(policy)
    exact = policy.exact
    e = summary.e
    if spec.family == "cluster":
        coeff = _q_half_power(qv, e + 2 * summary.c, exact)
    elif spec.family == "loop_form":
        coeff = _q_half_power(qv, V + summary.l + 2 * summary.eta, exact)
    elif spec.family == "rsos":
        if spec.parity == "both":
            w = (_rsos_sector_weight(summary, spec.p, "even", spec.twist)
                 + _rsos_sector_weight(summary, spec.p, "odd", spec.twist))
        else:
            w = _rsos_sector_weight(summary, spec.p, spec.parity, spec.twist)
        coeff = _q_half_power(qv, V + summary.l - summary.n, exact) * w
    else:  # twisted_cluster
        n, i2 = summary.n, summary.homotopy[1]
        if spec.q0_mode == "one":
            if summary.degenerate == "direct":
                m = e + 2 * (summary.c - 1)
            elif n and i2 % 2:
                m = e + 2 * summary.c - n
            else:
                m = e + 2 * summary.c
            coeff = _q_half_power(qv, m, exact)
        else:
            if summary.degenerate == "direct" or (n and i2 % 3):
                coeff = 0
            else:
                coeff = _q_half_power(qv, e + 2 * summary.c, exact)
    poly = LaurentPoly({e: coeff})
    return poly if x is None else poly.eval_at(x)


def partition_by_enumeration(lat, spec, policy=NumericPolicy("exact"), x=None,
                             cap=DEFAULT_ENUM_CAP, kernel="auto"):
    """Sum of config_weight over all colourings, via the signature table."""
    if lat.E > cap:
        raise EnumerationTooLarge(f"2^{lat.E} colourings exceed cap 2^{cap}")
    total = LaurentPoly.zero()
    for summary, count in signature_counts(lat, kernel=kernel, cap=cap):
        total = total + config_weight(summary, spec, lat.V, policy) * count
    return total if x is None else total.eval_at(x)


def expectation_e(lat, spec, x0, policy=NumericPolicy("exact"), cap=DEFAULT_ENUM_CAP):
    """<e> = x Z'(x)/Z(x) at x0."""
    z = partition_by_enumeration(lat, spec, policy, cap=cap)
    denom = z.eval_at(x0)
    if not denom:
        raise ZeroPartitionFunction(f"Z({x0}) = 0 for {spec}")
    num = z.derivative().eval_at(x0)
    if isinstance(x0, float):
        return x0 * num / denom

    def as_quad(v):
        return v if isinstance(v, QuadValue) else QuadValue._coerce(v)

    return as_quad(x0) * as_quad(num) / as_quad(denom)


# -- independent spin-sum oracle ---------------------------------------------

_SPIN_TWISTS = ("none", "z2_swap", "z3_cycle")


def _spin_twist_map(q_states, twist):
    if twist == "none":
        return tuple(range(q_states))
    if twist == "z2_swap":
        if q_states < 2:
            raise TwistIncompatible("z2_swap needs Q >= 2")
        tau = list(range(q_states))
        tau[0], tau[1] = tau[1], tau[0]
        return tuple(tau)
    if twist == "z3_cycle":
        if q_states != 3:
            raise TwistIncompatible("z3_cycle is defined for Q = 3")
        return (1, 2, 0)
    raise TwistIncompatible(f"unknown spin twist {twist!r}")


def spin_partition_by_enumeration(lat, q_states, twist="none",
                                  policy=NumericPolicy("exact"), seam_row=0,
                                  x=None):
    """Brute-force spin sum over Q^V states; independent of the cluster path.

    Each edge weight is 1 + sqrt(Q) x delta; across the horizontal seam the
    delta compares the lower spin with the twisted upper spin.
    """
    tau = _spin_twist_map(q_states, twist)
    seam = set(lat.seam_vertical_edges(seam_row)) if twist != "none" else set()
    edges = []
    for k in range(lat.E):
        a, b = lat.edge_endpoints(k)
        edges.append((a, b, k in seam))
    hist = [0] * (lat.E + 1)
    for state in product(range(q_states), repeat=lat.V):
        sat = 0
        for a, b, crosses in edges:
            sb = tau[state[b]] if crosses else state[b]
            if state[a] == sb:
                sat += 1
        hist[sat] += 1
    if policy.exact:
        policy.require_exact_radicand(q_states)
    total = LaurentPoly.zero()
    base = LaurentPoly({0: QuadValue(1), 1: QuadValue.sqrt_of(q_states)}) \
        if policy.exact else LaurentPoly({0: 1.0, 1: math.sqrt(q_states)})
    for k, cnt in enumerate(hist):
        if cnt:
            total = total + (base ** k) * cnt
    return total if x is None else total.eval_at(x)
