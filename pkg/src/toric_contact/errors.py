"""Exception hierarchy.

Two families: :class:`InputError` for malformed or inconsistent input
(CLI exit code 1) and :class:`PropertyFailure` for well-formed data that
fails a geometric or lattice certification (CLI exit code 2).
"""


class ToricError(Exception):
    """Base class for every error raised by this package."""

    def __init__(self, message="", witness=None):
        super().__init__(message)
        self.witness = witness


class InputError(ToricError):
    pass


class PropertyFailure(ToricError):
    pass


# exactnum
class ZeroPolynomial(InputError):
    pass


# polytope
class Unbounded(PropertyFailure):
    pass


class Empty(PropertyFailure):
    pass


class DegeneratePolytope(PropertyFailure):
    """Empty interior, or a label that does not cut out a facet."""


class NotSimpleVertex(PropertyFailure):
    pass


class TooManyFacets(InputError):
    pass


# levi
class NotSurjective(InputError):
    pass


class ZeroLambda(PropertyFailure):
    pass


class EmptySlice(PropertyFailure):
    pass


class UnknownFace(InputError):
    pass


# grassmann
class NotInChart(PropertyFailure):
    pass


class Degenerate(PropertyFailure):
    pass


class NotRational(PropertyFailure):
    pass


class NotDelzantVertex(PropertyFailure):
    pass


# pencil
class OddSize(InputError):
    pass


class NotSkew(InputError):
    pass


# construct
class NotSimple(PropertyFailure):
    pass


class InfeasiblePositivity(PropertyFailure):
    pass


class LabelMismatch(InputError):
    pass


class NotLabelled(PropertyFailure):
    pass


class NotDelzant(PropertyFailure):
    pass


class NotReeb(PropertyFailure):
    pass


class NotTransversal(PropertyFailure):
    pass


# cli
class ParseError(InputError):
    pass


class SchemaError(InputError):
    pass
