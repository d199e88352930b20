"""Torus geometry: direct/dual vertices and edges, medial adjacency, seams.

Conventions (fixed so that colouring bitmasks are portable):
  * vertex (i, j) has column i in [0, N) and row j in [0, L); index i*L + j
  * vertical edges come first, column-major: edge i*L + j joins (i, j) to
    (i, j+1 mod L) with displacement (0, 1)
  * horizontal edges follow: edge V + i*L + j joins (i, j) to (i+1 mod N, j)
    with displacement (1, 0)
  * the dual vertex (i, j) sits at (i + 1/2, j + 1/2); each dual edge crosses
    exactly one direct edge and shares its index
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DimensionTooSmall

# Medial ports at each edge midpoint, in half-lattice steps.
PORT_DIRS = ((-1, 1), (1, 1), (-1, -1), (1, -1))  # UL, UR, DL, DR
PORT_RECIP = (3, 2, 1, 0)
# Boundary-arc pairings inside a medial vertex: along pairs {UL,UR},{DL,DR},
# across pairs {UL,DL},{UR,DR}.  A horizontal coloured edge (and a vertical
# uncoloured one) uses "along"; the other two cases use "across".
PAIR_ALONG = (1, 0, 3, 2)
PAIR_ACROSS = (2, 3, 0, 1)


@dataclass(frozen=True)
class SeamSpec:
    """Horizontal seam between rows row-1 and row (homotopic to the
    horizontal principal cycle); results must not depend on row."""

    kind: str = "horizontal"
    row: int = 0

    def __post_init__(self):
        if self.kind not in ("none", "horizontal"):
            raise ValueError(f"unknown seam kind {self.kind!r}")


class TorusLattice:
    """Immutable L x N square-lattice torus with the indexing above."""

    def __init__(self, L, N):
        if L < 2 or N < 2:
            raise DimensionTooSmall(f"need L >= 2 and N >= 2, got {L}x{N}")
        self.L = L
        self.N = N
        self.V = L * N
        self.E = 2 * L * N
        self._build_edges()
        self._build_medial()

    def _build_edges(self):
        L, N, V = self.L, self.N, self.V
        tail = np.empty(self.E, dtype=np.int32)
        head = np.empty(self.E, dtype=np.int32)
        dx = np.empty(self.E, dtype=np.int32)
        dy = np.empty(self.E, dtype=np.int32)
        dtail = np.empty(self.E, dtype=np.int32)
        dhead = np.empty(self.E, dtype=np.int32)
        ddx = np.empty(self.E, dtype=np.int32)
        ddy = np.empty(self.E, dtype=np.int32)
        for i in range(N):
            for j in range(L):
                k = i * L + j
                tail[k] = k
                head[k] = i * L + (j + 1) % L
                dx[k], dy[k] = 0, 1
                # dual edge crossing a vertical direct edge runs horizontally
                dtail[k] = ((i - 1) % N) * L + j
                dhead[k] = k
                ddx[k], ddy[k] = 1, 0
                kh = V + k
                tail[kh] = k
                head[kh] = ((i + 1) % N) * L + j
                dx[kh], dy[kh] = 1, 0
                # dual edge crossing a horizontal direct edge runs vertically
                dtail[kh] = i * L + (j - 1) % L
                dhead[kh] = k
                ddx[kh], ddy[kh] = 0, 1
        self.edge_tail, self.edge_head = tail, head
        self.edge_dx, self.edge_dy = dx, dy
        self.dual_tail, self.dual_head = dtail, dhead
        self.dual_dx, self.dual_dy = ddx, ddy

    def _build_medial(self):
        # Medial vertex k = midpoint of direct edge k; four diagonal
        # neighbours each at the reciprocal port.
        L, N, V = self.L, self.N, self.V
        nbr = np.empty((self.E, 4), dtype=np.int32)
        port = np.empty((self.E, 4), dtype=np.int32)
        for i in range(N):
            for j in range(L):
                mv = i * L + j            # vertical edge midpoint (i, j+1/2)
                nbr[mv, 0] = V + ((i - 1) % N) * L + (j + 1) % L
                nbr[mv, 1] = V + i * L + (j + 1) % L
                nbr[mv, 2] = V + ((i - 1) % N) * L + j
                nbr[mv, 3] = V + i * L + j
                mh = V + i * L + j        # horizontal edge midpoint (i+1/2, j)
                nbr[mh, 0] = i * L + j
                nbr[mh, 1] = ((i + 1) % N) * L + j
                nbr[mh, 2] = i * L + (j - 1) % L
                nbr[mh, 3] = ((i + 1) % N) * L + (j - 1) % L
        for m in range(self.E):
            for p in range(4):
                port[m, p] = PORT_RECIP[p]
        self.med_nbr, self.med_port = nbr, port

    # -- index helpers -------------------------------------------------------

    def vertex(self, i, j):
        return (i % self.N) * self.L + (j % self.L)

    def vertical_edge(self, i, j):
        return (i % self.N) * self.L + (j % self.L)

    def horizontal_edge(self, i, j):
        return self.V + (i % self.N) * self.L + (j % self.L)

    def is_horizontal_edge(self, k):
        return k >= self.V

    def edge_endpoints(self, k):
        return int(self.edge_tail[k]), int(self.edge_head[k])

    def shift_map(self):
        """Edge bijection induced by shifting the lattice by (+1/2, +1/2):
        each direct edge lands on the position of its crossing dual edge."""
        L, N, V = self.L, self.N, self.V
        sigma = np.empty(self.E, dtype=np.int32)
        for i in range(N):
            for j in range(L):
                sigma[i * L + j] = self.horizontal_edge(i, j + 1)
                sigma[V + i * L + j] = self.vertical_edge(i + 1, j)
        return sigma

    def seam_vertical_edges(self, row=0):
        """Vertical direct edges crossed by a horizontal seam between rows
        row-1 and row."""
        return [self.vertical_edge(i, row - 1) for i in range(self.N)]

    # -- comparison ----------------------------------------------------------

    def __eq__(self, other):
        return isinstance(other, TorusLattice) and (self.L, self.N) == (other.L, other.N)

    def __hash__(self):
        return hash((self.L, self.N))

    def __repr__(self):
        return f"TorusLattice(L={self.L}, N={self.N})"


def build_torus(L, N):
    """Construct the L x N torus; raises DimensionTooSmall below 2 x 2."""
    return TorusLattice(L, N)
