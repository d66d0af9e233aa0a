class LatticeError(ValueError):
    """Base class for every error raised by conlat."""


class NotAPoset(LatticeError):
    pass


class NotALattice(LatticeError):
    def __init__(self, pair, kind):
        self.pair = pair
        self.kind = kind
        super().__init__(f"elements {pair[0]} and {pair[1]} have no {kind}")


class BadIndexing(LatticeError):
    pass


class EmptyInterval(LatticeError):
    pass


class SummandTooSmall(LatticeError):
    pass


class UnknownName(LatticeError):
    pass


class ParseError(LatticeError):
    def __init__(self, message, pos):
        self.pos = pos
        super().__init__(f"{message} at position {pos}")


class NotCompatible(LatticeError):
    def __init__(self, triple, op):
        self.triple = triple
        x, y, c = triple
        self.op = op
        super().__init__(
            f"{x} and {y} share a block but {x} {op} {c} and {y} {op} {c} do not")


class TrivialLattice(LatticeError):
    pass


class SizeBound(LatticeError):
    pass
