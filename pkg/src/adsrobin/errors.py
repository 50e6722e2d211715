"""Exception types shared across the library.

Numerical-convergence failures and configuration errors are kept distinct so
the CLI can map them to its documented exit codes (3 and 2 respectively).
"""


class AdsRobinError(Exception):
    """Base class for all library errors."""


class ConfigError(AdsRobinError):
    """Invalid run configuration (CLI exit code 2)."""


class ConvergenceError(AdsRobinError):
    """A numerical procedure failed to converge (CLI exit code 3)."""


class DomainError(AdsRobinError):
    """Input outside the mathematical domain of an operation."""


class PoleError(DomainError):
    """Evaluation exactly at a pole; carries the pole location."""

    def __init__(self, message, location=None):
        super().__init__(message)
        self.location = location


class SingularPointError(DomainError):
    """Kernel or special function requested at a non-removable singular point."""


class NotSquareIntegrableError(DomainError):
    """Second radial solution requested where only the first exists (nu >= 1)."""


class ImaginaryOrderError(DomainError):
    """Effective mass below the unitarity bound: nu would be imaginary."""


class GroundStateAbsentError(DomainError):
    """Boundary condition lies in the bound-state regime; no ground state."""


class NormalizationSingularityError(DomainError):
    """cos(alpha) + sin(alpha) = 0: the closed-form normalization is undefined."""


class ExtrapolationError(ConvergenceError):
    """A ladder extrapolation did not converge."""


class QuadratureError(ConvergenceError):
    """A quadrature failed its self-convergence check; carries diagnostics."""

    def __init__(self, message, diagnostics=None):
        super().__init__(message)
        self.diagnostics = diagnostics or {}


class StencilError(DomainError):
    """A finite-difference stencil left the valid domain (z <= 0)."""


class ResolutionError(ConvergenceError):
    """Interpolation grid too coarse for the requested evaluation."""


class RegionError(DomainError):
    """Region violates a geometric precondition (e.g. contains reflected pairs)."""


class BasisConstructionError(AdsRobinError):
    """Generator-basis invariants violated beyond tolerance."""


class DegreeError(AdsRobinError):
    """Polynomial functional degree above the configured maximum."""


class FitError(ConvergenceError):
    """Singularity fit quality below the acceptance threshold."""
