"""Exception hierarchy. Every library error derives from ``PolyforgeError``."""


class PolyforgeError(Exception):
    pass


class DuplicateId(PolyforgeError, ValueError):
    pass


class SortViolation(PolyforgeError, ValueError):
    """An incidence pair joins two points or two lines."""


class SelfIncidence(SortViolation):
    """An element declared incident with itself (necessarily a sort violation)."""


class UnknownId(PolyforgeError, LookupError):
    pass


class BadGonality(PolyforgeError, ValueError):
    pass


class NotPartialPolygon(PolyforgeError, ValueError):
    pass


class CharacterizationMismatch(PolyforgeError, RuntimeError):
    """Two equivalent confinedness tests disagreed: an internal bug, not bad input."""


class PatternNotConfined(PolyforgeError, ValueError):
    pass


class NotAGadget(PolyforgeError, ValueError):
    pass


class NotATree(PolyforgeError, ValueError):
    pass


class NotDecodable(PolyforgeError, ValueError):
    pass


class UnknownGenerator(PolyforgeError, LookupError):
    pass


class LengthMismatch(PolyforgeError, ValueError):
    pass


class SphericalRank3Residue(PolyforgeError, ValueError):
    pass


class NoLargeLabel(PolyforgeError, ValueError):
    pass


class UnknownChamber(PolyforgeError, LookupError):
    pass


class BadSize(PolyforgeError, ValueError):
    pass


class ConfigError(PolyforgeError, ValueError):
    pass
