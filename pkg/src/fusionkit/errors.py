"""Exception hierarchy.

The CLI maps these onto exit codes: structural and axiom problems are the
caller's fault (1/2), invariant violations mean a theorem check failed (3).
"""


class FusionKitError(Exception):
    pass


class StructuralError(FusionKitError, ValueError):
    """Malformed input: indices out of range, negative constants, bad shapes."""


class SchemaError(StructuralError):
    """A data file does not follow the expected JSON schema."""

    def __init__(self, message, field=None, line=None):
        self.field = field
        self.line = line
        where = []
        if line is not None:
            where.append(f"line {line}")
        if field is not None:
            where.append(f"field {field!r}")
        prefix = f"[{', '.join(where)}] " if where else ""
        super().__init__(prefix + message)


class PreconditionError(FusionKitError, ValueError):
    pass


class NotModularError(FusionKitError, ValueError):
    """S-matrix data that does not produce nonnegative integer fusion rules."""

    def __init__(self, message, witness=None):
        self.witness = witness
        super().__init__(message)


class ConvergenceError(FusionKitError, RuntimeError):
    def __init__(self, message, residual):
        self.residual = residual
        super().__init__(f"{message} (residual {residual:.3e})")


class InvariantViolation(FusionKitError, RuntimeError):
    """An internal consistency check or theorem check failed."""
