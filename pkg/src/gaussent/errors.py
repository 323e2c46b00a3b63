"""Exception types raised across the package."""


class GaussentError(Exception):
    """Base class for all errors raised by this package."""


class SymmetryViolation(GaussentError):
    """A matrix that must be hermitian or symmetric is not, beyond tolerance."""


class NonPhysical(GaussentError):
    """A state or spectrum violates a physicality bound (f >= 0, radicand >= 0, ...)."""


class NumericalFailure(GaussentError):
    """An eigensolve produced results outside the accepted numerical tolerances."""


class WrongKind(GaussentError):
    """An operation received a spectrum or matrix of the wrong kind."""


class UnsupportedNorm(GaussentError):
    """matrix_norm was asked for a norm other than 1, 2 or inf."""


class OverlappingRegions(GaussentError):
    """Two regions that must be disjoint share at least one site."""


# Some call sites read more naturally with the short name.
OverlapError = OverlappingRegions


class OutOfBounds(GaussentError):
    """A site or region does not fit inside its parent lattice."""


class Unstable(GaussentError):
    """The quadratic Hamiltonian is not positive definite (no stable ground state)."""


class UnequalLocalEnergies(GaussentError):
    """A perturbative expansion requires all local energies to be equal."""


class CouplingTooStrong(GaussentError):
    """Coupling-to-gap ratio too large for the perturbative expansion."""


class NoCriticalPoint(GaussentError):
    """The lowest mode frequency does not vanish inside the search bracket."""


class NotWeaklyCorrelated(GaussentError):
    """A single-mode symplectic eigenvalue exceeds the weak-correlation gate."""


class InvalidSeparation(GaussentError):
    """Pair separation outside the supported range."""


class ConfigError(GaussentError):
    """A scenario configuration file is malformed."""


class MemoryCapExceeded(GaussentError):
    """Estimated working-set size exceeds the configured memory cap."""
