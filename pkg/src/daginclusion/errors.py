"""Exception hierarchy shared by every module."""


class DagError(ValueError):
    """Base class for all errors raised by this package.

    ``line`` is set when the error can be traced to a line of a DAG file.
    """

    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class InvalidNodeName(DagError):
    pass


class DuplicateNode(DagError):
    pass


class UnknownNode(DagError):
    pass


class SelfLoop(DagError):
    pass


class DoubleArrow(DagError):
    pass


class CycleDetected(DagError):
    def __init__(self, cycle, line=None):
        self.cycle = tuple(cycle)
        super().__init__("directed cycle " + " -> ".join(self.cycle), line=line)


class EmptyNodeSet(DagError):
    pass


class DagSyntaxError(DagError):
    def __init__(self, message, line, column=1):
        self.column = column
        super().__init__(f"column {column}: {message}", line=line)


class InvalidPath(DagError):
    pass


class TripletNotDisjoint(DagError):
    pass


class NodesAdjacent(DagError):
    pass


class NodeSetMismatch(DagError):
    pass


class IllegalReversal(DagError):
    pass


class IllegalAdd(DagError):
    pass


class NotEquivalent(DagError):
    pass


class SizePreconditionViolated(DagError):
    pass


class PreconditionViolated(DagError):
    pass


class InclusionFails(DagError):
    pass


class InternalInvariantBroken(RuntimeError):
    """A synthesized step failed its own verification; indicates a bug."""


class TooFewNodes(DagError):
    pass


class CapExceeded(DagError):
    pass
