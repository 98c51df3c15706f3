"""Steenrod operations theta_n, canonical ideals, and gamma-filtered representation rings over F2."""

from .errors import (IntegralityError, InvalidGroupError, ModelInconsistencyError, ResourceCapError,
                     SwGammaError, UnsupportedCaseError)

__version__ = "0.1.0"

__all__ = ["SwGammaError", "ResourceCapError", "InvalidGroupError", "IntegralityError",
           "UnsupportedCaseError", "ModelInconsistencyError", "__version__"]
