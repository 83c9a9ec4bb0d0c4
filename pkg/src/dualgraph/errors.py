"""Exception hierarchy shared by every module of the package."""


class DualGraphError(Exception):
    """Base class for all errors raised by :mod:`dualgraph`."""


# graph construction / lookup

class GraphError(DualGraphError, ValueError):
    pass


class EmptyGraph(GraphError):
    pass


class Disconnected(GraphError):
    pass


class LoopRejected(GraphError):
    pass


class DuplicateVertex(GraphError):
    pass


class UnknownVertex(GraphError, KeyError):
    def __str__(self):
        return Exception.__str__(self)


# rewrite moves

class MoveError(DualGraphError, ValueError):
    pass


class NotMinusOne(MoveError):
    pass


class ValencyTooHigh(MoveError):
    pass


class LoopCreation(MoveError):
    pass


class NoSuchEdge(MoveError):
    pass


class NotZeroVertex(MoveError):
    pass


class BadDirection(MoveError):
    pass


class TraceMismatch(DualGraphError):
    pass


class TraceReplayError(DualGraphError):
    """A move of a trace failed; ``index`` is its position in the trace."""

    def __init__(self, index, cause):
        super().__init__(f"move #{index} failed: {cause}")
        self.index = index
        self.cause = cause


# normal forms

class WrongShape(DualGraphError, ValueError):
    pass


class NotMinimal(DualGraphError, ValueError):
    pass


class NonTermination(DualGraphError, RuntimeError):
    pass


class NotStandardizable(DualGraphError):
    """The graph has no standard representative reachable by the normalizer."""

    def __init__(self, reason, detail=""):
        super().__init__(f"{reason}: {detail}" if detail else reason)
        self.reason = reason
        self.detail = detail


# text input

class DslSyntaxError(DualGraphError, ValueError):
    def __init__(self, message, line=None, column=None):
        where = f" (line {line}, column {column})" if line is not None else ""
        super().__init__(message + where)
        self.line = line
        self.column = column
