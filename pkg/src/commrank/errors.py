"""Exception hierarchy. Every error is a ValueError so callers can catch broadly."""


class CommrankError(ValueError):
    pass


# graph construction
class SelfLoop(CommrankError):
    pass


class DuplicateEdge(CommrankError):
    pass


class UnknownEndpoint(CommrankError):
    pass


class NonPositiveWeight(CommrankError):
    pass


# partitions / community detection
class EmptyGraph(CommrankError):
    pass


class UniverseMismatch(CommrankError):
    pass


class InvalidPartition(CommrankError):
    pass


class TooLarge(CommrankError):
    pass


# ranking metrics
class NodeSetMismatch(CommrankError):
    pass


class BothEmpty(CommrankError):
    pass


class EmptyUniverse(CommrankError):
    pass


# centrality
class NoReachablePairs(CommrankError):
    pass


class ZeroVariance(CommrankError):
    pass


class Disconnected(CommrankError):
    pass


class DegenerateReference(CommrankError):
    pass


# generators
class TooManyEdges(CommrankError):
    pass


class BadK(CommrankError):
    pass


class BadAttach(CommrankError):
    pass


class NotEnoughNonEdges(CommrankError):
    pass


class BadBlockCount(CommrankError):
    pass


class BadSpec(CommrankError):
    pass


# io
class Malformed(CommrankError):
    def __init__(self, message, line=None, source=None):
        self.line = line
        self.source = source
        where = ""
        if source is not None:
            where += f"{source}:"
        if line is not None:
            where += f"line {line}: "
        elif where:
            where += " "
        super().__init__(where + message)


class NotSquare(CommrankError):
    pass


class NotSymmetric(CommrankError):
    pass


class NonzeroDiagonal(CommrankError):
    pass


class NegativeEntry(CommrankError):
    pass


class MissingNode(CommrankError):
    pass


class EmptyBlock(CommrankError):
    pass
