"""Exception types raised by the engine."""


class PottsRsosError(Exception):
    """Base class for all engine errors."""


class DimensionTooSmall(PottsRsosError, ValueError):
    """Lattice dimension below the supported minimum (L, N >= 2)."""


class EnumerationTooLarge(PottsRsosError, ValueError):
    """2^E colourings exceed the configured enumeration cap."""


class ZeroEvaluation(PottsRsosError, ZeroDivisionError):
    """Laurent polynomial with negative exponents evaluated at x = 0."""


class InvalidParityCombination(PottsRsosError, ValueError):
    """Cycle-weight request with an inconsistent parity/twist/degeneracy combo."""


class BackendMismatch(PottsRsosError, ValueError):
    """Exact backend requested where sqrt(Q) is not representable."""


class ZeroPartitionFunction(PottsRsosError, ZeroDivisionError):
    """Expectation value requested at a point where Z vanishes."""


class TwistIncompatible(PottsRsosError, ValueError):
    """Twist not defined for the given Q or p."""


class InapplicableParameters(PottsRsosError, ValueError):
    """Identity evaluated outside its applicability predicate."""


class InternalTopologyError(PottsRsosError, AssertionError):
    """Internal cross-check (Euler relation, winding consistency) failed.

    Signals an implementation bug, never expected on valid input.
    """


class DiagonalizationFailure(PottsRsosError, RuntimeError):
    """Eigenvalue computation did not converge."""


class InconsistentMetadata(PottsRsosError, ValueError):
    """Spectrum tables with different L or x cannot be merged."""


class ZeroTemperatureVariable(PottsRsosError, ValueError):
    """Dual transfer matrix requires x != 0."""
