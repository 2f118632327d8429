"""Exception hierarchy shared by every dynsolve module."""


class DynsolveError(Exception):
    """Base class for all errors raised by this package."""


class ParseError(DynsolveError):
    """Robot description is not well-formed XML (message carries line info)."""


class UnsupportedJointError(DynsolveError):
    """Joint type outside the supported revolute/continuous/prismatic/fixed set."""


class ModelError(DynsolveError):
    """Structurally invalid robot model (dangling references, cycles, bad chain)."""


class EmptyChainError(ModelError):
    """Requested chain has no extent (root equals tip)."""


class DimensionError(DynsolveError):
    """Vector or matrix size does not match the chain's degrees of freedom."""


class InputError(DynsolveError):
    """Non-finite numeric input."""


class AsymmetryError(DynsolveError):
    """Computed inertia matrix failed the symmetry check before symmetrization."""


class SingularInertiaError(DynsolveError):
    """Inertia matrix could not be Cholesky-factorized."""


class UnknownPluginError(DynsolveError):
    """Solver plugin name not present in the registry."""


class MissingParamError(DynsolveError):
    """Solver plugin requires a configuration parameter that was not supplied."""


class ConfigError(DynsolveError):
    """Solver configuration document is invalid."""


class UnsupportedOperationError(DynsolveError):
    """Method not provided by the selected solver plugin."""


class FormatError(DynsolveError):
    """Trajectory file violates the CSV format (message carries the row)."""


class NonMonotonicTimeError(FormatError):
    """Trajectory timestamps are not strictly increasing."""


class MissingMeasurementError(DynsolveError):
    """Comparison requested but the trajectory carries no measured torques."""


class IoError(DynsolveError):
    """Report or trajectory file could not be read or written."""
