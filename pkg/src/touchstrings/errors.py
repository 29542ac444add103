"""Exception hierarchy shared by every module."""


class ToolkitError(Exception):
    pass


class GeometryError(ToolkitError):
    pass


class DegenerateEdge(GeometryError):
    def __init__(self, index, name=None):
        self.index = index
        self.name = name
        super().__init__(f"degenerate edge at index {index}" + (f" in string {name!r}" if name else ""))


class SelfIntersecting(GeometryError):
    def __init__(self, witness, name=None):
        self.witness = witness
        self.name = name
        super().__init__(f"segments {witness[0]} and {witness[1]} intersect" + (f" in string {name!r}" if name else ""))


class InvalidString(GeometryError):
    pass


class OverlapDetected(GeometryError):
    def __init__(self, pair):
        self.pair = pair
        super().__init__(f"strings {pair[0]!r} and {pair[1]!r} overlap along a positive length")


class NoHit(GeometryError):
    pass


class NotAFreeEnd(GeometryError):
    pass


class ArrangementError(ToolkitError):
    pass


class UnknownNode(ArrangementError):
    pass


class NotAContactSystem(ArrangementError):
    pass


class BadOrder(ToolkitError):
    pass


class TooLarge(ToolkitError):
    pass


class Infeasible(ToolkitError):
    pass


class BadParam(ToolkitError):
    pass


class UnknownName(ToolkitError):
    pass


class TransformError(ToolkitError):
    pass


class PreconditionEndAtTripleNode(TransformError):
    pass


class PreconditionEndAtNode(TransformError):
    pass


class NotASandwichTriple(TransformError):
    pass


class ParseError(ToolkitError):
    def __init__(self, line, col, message):
        self.line = line
        self.col = col
        super().__init__(f"{line}:{col}: {message}")


class SemanticError(ToolkitError):
    def __init__(self, message, line=None):
        self.line = line
        super().__init__(f"{line}: {message}" if line is not None else message)
