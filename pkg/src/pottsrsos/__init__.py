"""Exact Potts/RSOS partition functions on square-lattice tori.

Two independent computation paths (topological enumeration over edge
colourings; Temperley-Lieb transfer matrices) plus a verification suite for
the partition-function identities and transfer-spectrum relations that link
them.
"""

from .algebra import (EXACT, FLOAT, LaurentPoly, NumericPolicy, QuadValue,
                      approx_equal, dual_transform, eval_at)
from .lattice import SeamSpec, TorusLattice, build_torus
from .topology import (EdgeColoring, LoopRecord, TopologySummary, analyze,
                       iter_colorings, kernel_name, shift_configuration,
                       signature_counts, trace_loops)

__version__ = "0.1.0"
