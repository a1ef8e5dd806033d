"""Exception hierarchy shared by every hodgering module."""


class HodgeRingError(Exception):
    """Base class for all errors raised by hodgering."""


# exact linear algebra
class AmbientMismatch(HodgeRingError, ValueError):
    pass


class NotContained(HodgeRingError, ValueError):
    pass


# ring model
class DimensionMismatch(HodgeRingError, ValueError):
    pass


# filtrations
class NotDegreeTwo(HodgeRingError, ValueError):
    pass


class ShapeMismatch(HodgeRingError, ValueError):
    pass


# Lefschetz-type checks
class NotInF2H2(HodgeRingError, ValueError):
    """The candidate symplectic element has support outside the pieces (2, q, 2)."""


class NotSymplectic(HodgeRingError, ValueError):
    pass


class NotPureWeight(HodgeRingError, ValueError):
    pass


class NotPureWeight1(NotPureWeight):
    pass


class NoConjugation(HodgeRingError, ValueError):
    pass


class NotGeometric(HodgeRingError, ValueError):
    pass


class TheoremContradiction(HodgeRingError):
    """A ring satisfied the hypotheses of a proven statement but violated its conclusion.

    This never happens for correct data and code; it signals a bug in one or
    the other.
    """


# constructors
class NotAlternating(HodgeRingError, ValueError):
    pass


class OddSize(HodgeRingError, ValueError):
    pass


class InvalidFactor(HodgeRingError, ValueError):
    pass


# serialization
class ParseError(HodgeRingError, ValueError):
    def __init__(self, message, field=None, line=None):
        self.field = field
        self.line = line
        where = []
        if line is not None:
            where.append(f"line {line}")
        if field is not None:
            where.append(f"field {field}")
        prefix = f"[{', '.join(where)}] " if where else ""
        super().__init__(prefix + message)


class SchemaVersionMismatch(ParseError):
    pass


class ValidationFailed(HodgeRingError):
    def __init__(self, report):
        self.report = report
        lines = [f"{v.check}: {v.message} (witness {v.witness})" for v in report.violations[:10]]
        more = len(report.violations) - len(lines)
        if more > 0:
            lines.append(f"... and {more} more")
        super().__init__("ring failed validation:\n  " + "\n  ".join(lines))
