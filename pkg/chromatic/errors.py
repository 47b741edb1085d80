"""Exceptions raised by the chromatic toolkit."""


class ChromaticError(Exception):
    """Base class for every computation error the toolkit raises."""


class ClosureExceedsBound(ChromaticError):
    """A group closure grew past `settings.max_order`."""


class UnknownSpec(ChromaticError, ValueError):
    """A group-spec or class expression could not be parsed."""


class ElementNotInGroup(ChromaticError, ValueError):
    """A permutation was used as an element of a group that does not contain it."""


class NotPrime(ChromaticError, ValueError):
    """A prime was expected."""


class EvenPrime(ChromaticError, ValueError):
    """An odd prime was expected."""


class CensusTooLarge(ChromaticError):
    """The naive tuple census would materialize more tuples than `settings.census_cap`."""


class InvalidEmbedding(ChromaticError, ValueError):
    """Generator images do not define an injective homomorphism."""


class InvalidGraph(ChromaticError, ValueError):
    """A Coxeter defining graph is malformed (loops, bad vertex labels)."""


class HeightUndefined(ChromaticError):
    """A chromatic height was requested for a target that has no formula at that height."""


class UnavailableConstant(ChromaticError):
    """A bundled number-theoretic constant is not known."""
