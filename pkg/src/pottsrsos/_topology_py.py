"""Pure-Python per-colouring topology kernel.

Fallback twin of the compiled extension ``_topology_core``: identical
semantics, selected at import time by :mod:`pottsrsos.topology`.  For each
edge-colouring bitmask it computes

    (e, c, c_dual, l, n, i1, i2, degenerate, eta)

via union-find with displacement offsets (cluster counts, wrapping) and a
medial-lattice loop walk (boundary loops, windings).  The two algorithms are
cross-checked against each other and the torus Euler relation on every mask.
"""
from __future__ import annotations

from math import gcd

from .errors import InternalTopologyError
from .lattice import PAIR_ALONG, PAIR_ACROSS, PORT_DIRS, PORT_RECIP

KERNEL_NAME = "python"


class Kernel:
    """Per-lattice state reused across masks."""

    def __init__(self, lat):
        self.L = lat.L
        self.N = lat.N
        self.V = lat.V
        self.E = lat.E
        self.etail = lat.edge_tail.tolist()
        self.ehead = lat.edge_head.tolist()
        self.edx = lat.edge_dx.tolist()
        self.edy = lat.edge_dy.tolist()
        self.dtail = lat.dual_tail.tolist()
        self.dhead = lat.dual_head.tolist()
        self.ddx = lat.dual_dx.tolist()
        self.ddy = lat.dual_dy.tolist()
        self.mnbr = [list(r) for r in lat.med_nbr]

    # -- union-find with displacement offsets --------------------------------

    def _scan_clusters(self, mask, dual):
        """Cluster count, per-root primitive winding, and rank-2 flags for
        one sublattice.  Returns (c, nontrivial_dirs, rank2_count)."""
        V, L, N, E = self.V, self.L, self.N, self.E
        parent = list(range(V))
        ox = [0] * V
        oy = [0] * V
        dirx = [0] * V
        diry = [0] * V
        hasdir = [0] * V
        rank2 = [0] * V
        if dual:
            tails, heads, dxs, dys = self.dtail, self.dhead, self.ddx, self.ddy
        else:
            tails, heads, dxs, dys = self.etail, self.ehead, self.edx, self.edy

        def find(v):
            chain = []
            while parent[v] != v:
                chain.append(v)
                v = parent[v]
            sx = sy = 0
            for u in reversed(chain):
                sx += ox[u]
                sy += oy[u]
                parent[u] = v
                ox[u] = sx
                oy[u] = sy
            if chain:
                w = chain[0]
                return v, ox[w], oy[w]
            return v, 0, 0

        def add_cycle(root, mx, my):
            if mx % N or my % L:
                raise InternalTopologyError("cycle displacement not a lattice period")
            wx, wy = mx // N, my // L
            g = gcd(abs(wx), abs(wy))
            ux, uy = wx // g, wy // g
            if ux < 0 or (ux == 0 and uy < 0):
                ux, uy = -ux, -uy
            if rank2[root]:
                return
            if not hasdir[root]:
                hasdir[root] = 1
                dirx[root], diry[root] = ux, uy
            elif (dirx[root], diry[root]) != (ux, uy):
                rank2[root] = 1

        for k in range(E):
            if ((mask >> k) & 1) == dual:
                continue
            a, b, dx, dy = tails[k], heads[k], dxs[k], dys[k]
            ra, ax, ay = find(a)
            rb, bx, by = find(b)
            if ra == rb:
                mx, my = ax + dx - bx, ay + dy - by
                if mx or my:
                    add_cycle(ra, mx, my)
            else:
                parent[rb] = ra
                ox[rb] = ax + dx - bx
                oy[rb] = ay + dy - by
                if rank2[rb]:
                    rank2[ra] = 1
                    hasdir[ra] = 1
                elif hasdir[rb]:
                    add_cycle(ra, dirx[rb] * N, diry[rb] * L)

        c = 0
        dirs = []
        nrank2 = 0
        for v in range(V):
            if parent[v] == v:
                c += 1
                if rank2[v]:
                    nrank2 += 1
                elif hasdir[v]:
                    dirs.append((dirx[v], diry[v]))
        return c, dirs, nrank2

    # -- medial loop walk -----------------------------------------------------

    def loops(self, mask):
        """All boundary loops as (length, wx, wy) with signed windings."""
        V, E, L, N = self.V, self.E, self.L, self.N
        mnbr = self.mnbr
        visited = bytearray(4 * E)
        out = []
        for m0 in range(E):
            for p0 in range(4):
                if visited[4 * m0 + p0]:
                    continue
                m, p = m0, p0
                length = dxt = dyt = 0
                while True:
                    visited[4 * m + p] = 1
                    d = PORT_DIRS[p]
                    dxt += d[0]
                    dyt += d[1]
                    length += 1
                    m2 = mnbr[m][p]
                    pin = PORT_RECIP[p]
                    visited[4 * m2 + pin] = 1
                    coloured = (mask >> m2) & 1
                    along = (m2 >= V) == bool(coloured)
                    p = PAIR_ALONG[pin] if along else PAIR_ACROSS[pin]
                    m = m2
                    if m == m0 and p == p0:
                        break
                if dxt % (2 * N) or dyt % (2 * L):
                    raise InternalTopologyError("loop winding not integral")
                out.append((length, dxt // (2 * N), dyt // (2 * L)))
        return out

    # -- per-mask summary ------------------------------------------------------

    def analyze_mask(self, mask):
        V, E = self.V, self.E
        e = bin(mask & ((1 << E) - 1)).count("1")
        c, dirs_d, r2_d = self._scan_clusters(mask, dual=0)
        c_dual, dirs_u, r2_u = self._scan_clusters(mask, dual=1)
        loops = self.loops(mask)
        l = len(loops)
        if sum(rec[0] for rec in loops) != 2 * E:
            raise InternalTopologyError("loops do not cover the medial lattice")

        wind = [(wx, wy) for (_, wx, wy) in loops if wx or wy]
        n = len(wind)
        if r2_d and r2_u:
            raise InternalTopologyError("both sublattices claim a spanning cluster")
        deg = 1 if r2_d else (2 if r2_u else 0)

        i1 = i2 = 0
        if deg:
            if n or r2_d + r2_u != 1 or dirs_d or dirs_u:
                raise InternalTopologyError("degenerate colouring with leftover windings")
        elif n:
            if n % 2:
                raise InternalTopologyError("odd number of non-trivial loops")
            norm = []
            for wx, wy in wind:
                if wx < 0 or (wx == 0 and wy < 0):
                    wx, wy = -wx, -wy
                norm.append((wx, wy))
            cls = norm[0]
            if any(w != cls for w in norm) or gcd(cls[0], abs(cls[1])) != 1:
                raise InternalTopologyError("non-trivial loops disagree on homotopy class")
            if len(dirs_d) != n // 2 or len(dirs_u) != n // 2:
                raise InternalTopologyError("cluster/loop non-trivial counts differ")
            if any(d != cls for d in dirs_d + dirs_u):
                raise InternalTopologyError("cluster winding differs from loop class")
            i1, i2 = cls[0], abs(cls[1])
        elif dirs_d or dirs_u:
            raise InternalTopologyError("wrapping clusters without winding loops")

        eta = 1 if deg == 1 else 0
        if (2 if deg == 1 else 0) + l + V != 2 * c + e:
            raise InternalTopologyError("direct Euler relation violated")
        if (2 if deg == 2 else 0) + l + V != 2 * c_dual + (E - e):
            raise InternalTopologyError("dual Euler relation violated")
        return e, c, c_dual, l, n, i1, i2, deg, eta

    def rows(self, lo, hi, out):
        """Fill out[r] with the summary of mask lo + r, for r in [0, hi-lo)."""
        for r in range(hi - lo):
            out[r] = self.analyze_mask(lo + r)
