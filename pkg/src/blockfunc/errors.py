"""Exception hierarchy.

Everything raised on purpose by the package derives from ``BlockFuncError``.
``PreconditionError`` marks a violated mathematical assumption (the CLI maps
it to exit code 3); ``ConfigError`` marks bad user input (exit code 2).
"""


class BlockFuncError(Exception):
    pass


class ConfigError(BlockFuncError, ValueError):
    pass


class DimensionError(BlockFuncError, ValueError):
    pass


class CapacityError(BlockFuncError, ValueError):
    """A construction would exceed the simulated-qubit cap."""


class PreconditionError(BlockFuncError, ValueError):
    pass


class NotUnitaryError(PreconditionError):
    pass


class NotHermitianError(PreconditionError):
    pass


class NormError(PreconditionError):
    pass


class SpectrumError(PreconditionError):
    """Eigenvalues fall outside the range an operation requires."""


class SpectrumEnclosureError(PreconditionError):
    """The contour does not enclose the spectrum with the required margin."""


class SingularMatrixError(PreconditionError):
    pass


class BranchCutError(PreconditionError):
    pass
