"""Pydantic row models for everything the command line prints."""

from fractions import Fraction
from typing import Annotated

from pydantic import BaseModel, BeforeValidator, PlainSerializer


def _to_fraction(value: object) -> Fraction:
    """Accept a `Fraction`, an int, or an `"a/b"` string."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, (int, str)):
        return Fraction(value)
    raise ValueError(f"Expected an exact rational (int or 'a/b' string), got {value!r}.")


# Exact rational, serialized as "a/b" (or "a" when integral)
Rational = Annotated[Fraction, BeforeValidator(_to_fraction), PlainSerializer(str, return_type=str)]


class CensusRow(BaseModel):
    """One census result: the orbit count, with the tuple count when it was enumerated."""

    group: str
    prime: int
    height: int
    orbit_count: int
    tuple_count: int | None = None


class CensusOrbitRow(BaseModel):
    """One orbit of a census with its representative."""

    group: str
    prime: int
    height: int
    representative: str
    orbit_size: int
    centralizer_order: int


class ChiRow(BaseModel):
    """One row of a chromatic sequence: -1 is the orbifold, 0 the rational, n >= 1 the Morava K(n) value."""

    target: str
    prime: int | None
    height: int
    value: Rational


class BurnsideTerm(BaseModel):
    """One serialized term of a Burnside class."""

    group: str
    coefficient: int


class CliqueRow(BaseModel):
    """Number of cliques of one size."""

    size: int
    count: int


class CliqueListRow(BaseModel):
    """One clique, its vertices separated by spaces."""

    size: int
    vertices: str


class CellRow(BaseModel):
    """One orbit type of cells."""

    dim: int
    stabilizer: str
    stabilizer_order: int
    multiplicity: int


class ClosedFormRow(BaseModel):
    """One bundled closed-form entry."""

    key: str
    label: str
    kind: str
    prime: int | None
    available: bool
    provenance: str


class ReportRow(BaseModel):
    """One summand of a character report."""

    target: str
    prime: int
    height: int
    description: str
    count: int
    torus_dim: int


class CheckResult(BaseModel):
    """Outcome of one `verify` check."""

    name: str
    passed: bool
    provenance: str
    detail: str = ""


# Row models by the name `chromatic schema` publishes them under
ROW_MODELS: dict[str, type[BaseModel]] = {
    "census": CensusRow,
    "census-orbit": CensusOrbitRow,
    "chi": ChiRow,
    "burnside-term": BurnsideTerm,
    "clique": CliqueRow,
    "clique-list": CliqueListRow,
    "cell": CellRow,
    "closed-form": ClosedFormRow,
    "report": ReportRow,
    "check": CheckResult,
}
