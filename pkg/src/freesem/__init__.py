"""Finite-model workbench for convolution semantics: finite categories,
Day convolution, Yoneda triangles, powerset frame semantics and
semantic consequence."""

from .errors import (CapacityExceeded, Caps, DEFAULT_CAPS, DialectError, EnumerationCapExceeded,
                     FormulaSyntaxError, FreesemError, InternalLawViolation, InvalidFrame,
                     MalformedTable, Report, UnknownName, ValuationNotUpClosed)

__all__ = ["CapacityExceeded", "Caps", "DEFAULT_CAPS", "DialectError", "EnumerationCapExceeded",
           "FormulaSyntaxError", "FreesemError", "InternalLawViolation", "InvalidFrame",
           "MalformedTable", "Report", "UnknownName", "ValuationNotUpClosed"]

__version__ = "0.1.0"
