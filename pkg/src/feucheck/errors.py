"""Exception types shared across the package.

Geometric precondition failures derive from :class:`GeometryError`; the CLI
maps those to exit status 2.
"""


class FeucheckError(Exception):
    pass


# field layer

class DivisionByZero(FeucheckError, ZeroDivisionError):
    pass


class CtxMismatch(FeucheckError, ValueError):
    pass


class NegativeRadicand(FeucheckError, ValueError):
    pass


class AlreadySquare(FeucheckError, ValueError):
    pass


class ParseError(FeucheckError, ValueError):
    def __init__(self, message: str, token: str = "", position: int = 0):
        super().__init__(f"{message} at position {position}: {token!r}")
        self.message = message
        self.token = token
        self.position = position


# geometry

class GeometryError(FeucheckError, ValueError):
    pass


class DegenerateTriangle(GeometryError):
    pass


class EquilateralTriangle(GeometryError):
    pass


class IdealPoint(GeometryError):
    pass


class IdenticalArguments(GeometryError):
    pass


class CollinearTriple(GeometryError):
    pass


class CollinearPoints(GeometryError):
    pass


class InadmissiblePoint(GeometryError):
    pass


class OnSideline(GeometryError):
    pass


class PointNotOnConic(GeometryError):
    pass


class CentroidDegenerate(GeometryError):
    pass


class InfiniteFixedSet(GeometryError):
    """The map fixes a whole line of ordinary points."""


class CertificationError(FeucheckError, AssertionError):
    """An internal cross-check disagreed; indicates a bug, never bad input."""
