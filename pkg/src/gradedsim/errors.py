"""Exception hierarchy shared by every module."""


class GradedSimError(Exception):
    """Base class for all errors raised by gradedsim."""


class DomainError(GradedSimError, ValueError):
    """A grade lies outside its grade domain."""


class ShapeError(GradedSimError, ValueError):
    """Carrier sizes or grade domains do not match."""


class SizeError(GradedSimError, ValueError):
    """A carrier exceeds an enumeration guard."""


class ParameterError(GradedSimError, ValueError):
    """Generator parameters are out of their documented caps."""


class PreconditionError(GradedSimError, ValueError):
    """An input violates a documented precondition."""


class ParseError(GradedSimError, ValueError):
    """Syntax error in a JSON document; carries line and column."""

    def __init__(self, message, line=None, column=None):
        self.line = line
        self.column = column
        if line is not None:
            message = f"{message} (line {line}, column {column})"
        super().__init__(message)


class ValidationError(GradedSimError, ValueError):
    """A well-formed document describes an invalid system."""


class FixpointNotConverged(GradedSimError, RuntimeError):
    """The iteration cap fired before the iterates stabilised."""

    def __init__(self, message, last):
        super().__init__(message)
        self.last = last


class CheckFailed(GradedSimError):
    """A component of a glued simulation failed its checker."""

    def __init__(self, component, witness):
        super().__init__(f"{component} component is not a simulation: {witness}")
        self.component = component
        self.witness = witness


class ContainmentError(GradedSimError):
    """The collapse of a graded relation is not contained in the ungraded one."""

    def __init__(self, pair, detail=""):
        msg = f"pair {pair} is in the collapse but not in the ungraded component"
        if detail:
            msg = f"{msg}: {detail}"
        super().__init__(msg)
        self.pair = pair
