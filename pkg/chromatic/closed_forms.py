"""
Closed-form chromatic Euler characteristics of arithmetic, crystallographic and mapping class groups.

Number-theoretic quantities (zeta values, class numbers, rational Euler characteristics) are inputs. The bundled
`data/constants.json` records the values used for the standard examples together with where each value comes from.
"""

from fractions import Fraction
from functools import lru_cache, singledispatch
from pathlib import Path
from typing import Literal, NamedTuple

import networkx as nx
from loguru import logger
from pydantic import BaseModel, ConfigDict, Field, model_validator

from chromatic.census import census_naive
from chromatic.coxeter import clique_census
from chromatic.errors import EvenPrime, HeightUndefined, UnavailableConstant, UnknownSpec
from chromatic.groups import FiniteGroup, group_spec
from chromatic.models import Rational
from chromatic.settings import settings
from chromatic.utils import p_part, require_prime


class MaximalSubgroupDatum(BaseModel):
    """One family of conjugacy classes of maximal finite (cyclic) subgroups."""

    order: int = Field(ge=1)
    multiplicity: int = Field(default=1, ge=1)

    def p_part_order(self, p: int) -> int:
        """`|H_(p)|`, the largest power of `p` dividing `|H|`."""
        return p_part(self.order, p)


class TorusSummands(NamedTuple):
    """A Morava value with its count of torsion-free summands and their torus dimension."""

    chi_kn: Fraction
    free_rank: int
    torus_dim: int


def _check_height(n: int) -> None:
    """Closed forms start at height 0."""
    if n < 0:
        raise HeightUndefined(f"Height {n} has no closed form here; heights start at 0.")


def _p_minus_one_step(p: int, n: int) -> int:
    """`(p^n - 1) / (p - 1)`, the number of nontrivial cyclic subgroups of `(Z/p)^n`."""
    return (p**n - 1) // (p - 1)


# ---------------------------------------------------------------------------------------------------------------------
# SL_2 over rings of integers of totally real fields
# ---------------------------------------------------------------------------------------------------------------------


def chi_orb_sl2_ok(zeta: Fraction) -> Fraction:
    """`chi_orb(BSL_2(O_K)) = zeta_K(-1)`."""
    return Fraction(zeta)


def chi_q_sl2_ok(zeta: Fraction, maximal: list[MaximalSubgroupDatum]) -> Fraction:
    """Brown's formula: `2 zeta_K(-1) + sum_(H) (1 - 2/|H|)`."""
    return 2 * Fraction(zeta) + sum(
        (datum.multiplicity * (1 - Fraction(2, datum.order)) for datum in maximal), Fraction(0)
    )


def chi_sl2_ok(p: int, n: int, zeta: Fraction, maximal: list[MaximalSubgroupDatum]) -> Fraction:
    """
    `chi_K(n)(BSL_2(O_K)) = 2 zeta_K(-1) + sum_(H) (|H_(p)|^n - 2/|H|)` at an odd prime.

    Args:
        p: An odd prime.
        n: Height, at least 0.
        zeta: `zeta_K(-1)`.
        maximal: Conjugacy classes of maximal finite subgroups.

    Raises:
        EvenPrime: When `p = 2`; use `chi_sl2_ok_p2`.
    """
    require_prime(p)
    if p == 2:
        raise EvenPrime("The prime 2 has its own formula; use chi_sl2_ok_p2.")
    _check_height(n)
    return 2 * Fraction(zeta) + sum(
        (datum.multiplicity * (datum.p_part_order(p) ** n - Fraction(2, datum.order)) for datum in maximal),
        Fraction(0),
    )


def chi_sl2_ok_p2(n: int, zeta: Fraction, maximal: list[MaximalSubgroupDatum]) -> Fraction:
    """`chi_K(n)(BSL_2(O_K)) = 2^(n+1) zeta_K(-1) + sum_(H) (|H_(2)|^n - 2^(n+1)/|H|)` at the prime 2."""
    _check_height(n)
    scale = 2 ** (n + 1)
    return scale * Fraction(zeta) + sum(
        (datum.multiplicity * (datum.p_part_order(2) ** n - Fraction(scale, datum.order)) for datum in maximal),
        Fraction(0),
    )


# ---------------------------------------------------------------------------------------------------------------------
# crystallographic groups Z^m x| Z/p
# ---------------------------------------------------------------------------------------------------------------------


def chi_crystallographic(p: int, n: int, r: int, free_action: bool, fixed_points: bool = False) -> Fraction:
    """
    `chi_K(n)` of `Z^m x| Z/p`.

    With `Z/p` acting freely on `Z^m - 0` every nontrivial finite subgroup is self-normalizing and the value is
    `r p^n - r/p`, `r` counting conjugacy classes of subgroups of order `p`. With fixed points, or without torsion, it
    is 0. `n = -1` is allowed and gives the orbifold value 0.
    """
    require_prime(p)
    if n < -1:
        raise HeightUndefined(f"Height {n} is below the orbifold height -1.")
    if not free_action or fixed_points or r == 0:
        return Fraction(0)
    return r * Fraction(p) ** n - Fraction(r, p)


def crystallographic_class_count(p: int, m: int) -> int:
    """
    `r` for a free `Z/p`-action on `Z^m - 0`: such actions need `m = k(p - 1)`, and then `r = p^k`.

    Raises:
        ValueError: When no free action on `Z^m - 0` exists.
    """
    require_prime(p)
    if m < 1 or m % (p - 1):
        raise ValueError(f"Z/{p} acts freely on Z^m - 0 only for m a positive multiple of {p - 1}, got m={m}.")
    return p ** (m // (p - 1))


# ---------------------------------------------------------------------------------------------------------------------
# GL, SL and Sp of rank p - 1
# ---------------------------------------------------------------------------------------------------------------------


def _check_p_at_least_five(p: int) -> None:
    """Rank p-1 families need a prime of at least 5."""
    require_prime(p)
    if p < 5:
        raise ValueError(f"The rank p - 1 formulas need p >= 5, got p={p}.")


def gl_orbit_count(p: int, n: int, class_number: int) -> int:
    """`|G \\ G_{n,p}|` for `GL_{p-1}(Z)`: one trivial tuple plus `(p^n - 1)/(p - 1) |Cl(Q(zeta_p))|`."""
    _check_p_at_least_five(p)
    _check_height(n)
    return 1 + _p_minus_one_step(p, n) * class_number


def chi_gl_pminus1(p: int, n: int, chi_q: Fraction, class_number: int) -> TorusSummands:
    """
    `chi_K(n)(BGL_{p-1}(Z)) = chi_Q`, because every nontrivial centralizer is `Z/p x Z/2 x Z^((p-3)/2)`.

    Returns:
        The characteristic, the number of torus summands `(p^n - 1)/(p - 1) |Cl(Q(zeta_p))|` and their dimension.
    """
    _check_p_at_least_five(p)
    _check_height(n)
    return TorusSummands(Fraction(chi_q), _p_minus_one_step(p, n) * class_number, (p - 3) // 2)


def chi_sl_pminus1(p: int, n: int, chi_q: Fraction, class_number: int) -> TorusSummands:
    """As `chi_gl_pminus1`, but every ideal class carries two orientations, doubling the summand count."""
    gl = chi_gl_pminus1(p, n, chi_q, class_number)
    return TorusSummands(gl.chi_kn, 2 * gl.free_rank, gl.torus_dim)


def sp_free_rank(p: int, n: int, h_minus: int) -> int:
    """Number of torsion-free summands for `Sp_{p-1}(Z)`: `2^((p-1)/2) h_p^- (p^n - 1)/(p - 1)`."""
    _check_p_at_least_five(p)
    _check_height(n)
    return 2 ** ((p - 1) // 2) * h_minus * _p_minus_one_step(p, n)


def chi_sp_pminus1(p: int, n: int, chi_q: Fraction, h_minus: int) -> Fraction:
    """`chi_Q(BSp_{p-1}(Z)) + 2^((p-1)/2) h_p^- (p^n - 1)/(p - 1)`; every nontrivial centralizer is `Z/p x Z/2`."""
    return Fraction(chi_q) + sp_free_rank(p, n, h_minus)


# ---------------------------------------------------------------------------------------------------------------------
# mapping class groups of genus (p - 1)/2
# ---------------------------------------------------------------------------------------------------------------------


def mapping_class_orbit_count(p: int, n: int) -> int:
    """
    `|G \\ G_{n,p}|` for the mapping class group of genus `(p-1)/2`, from its `p`-subgroup classes.

    For `p = 6k - 1` there are `(p+1)/6` classes, each with trivial `N(H)/C(H)`. For `p = 6k + 1` there are
    `(p+5)/6`, one of them with `N(H)/C(H)` of order 3.
    """
    _check_p_at_least_five(p)
    _check_height(n)
    nontrivial = p**n - 1
    if p % 6 == 5:
        return (p + 1) // 6 * nontrivial + 1
    return ((p + 5) // 6 - 1) * nontrivial + nontrivial // 3 + 1


def chi_mapping_class(p: int, n: int, chi_q: Fraction) -> Fraction:
    """`chi_Q(BGamma_{(p-1)/2}) + (p^n - 1)(p + 1)/6`."""
    _check_p_at_least_five(p)
    _check_height(n)
    return Fraction(chi_q) + Fraction((p**n - 1) * (p + 1), 6)


def chi_gl2_z_p3(n: int) -> Fraction:
    """`chi_K(n)(BGL_2(Z)) = (3^n + 1)/2` at the prime 3, where all centralizers are finite."""
    _check_height(n)
    return Fraction(3**n + 1, 2)


# ---------------------------------------------------------------------------------------------------------------------
# bundled constants
# ---------------------------------------------------------------------------------------------------------------------

EntryKind = Literal["sl2_ok", "gl_pminus1", "sl_pminus1", "sp_pminus1", "mapping_class", "gl2_z_p3", "crystallographic"]

_REQUIRED_FIELDS: dict[str, tuple[str, ...]] = {
    "sl2_ok": ("zeta_value",),
    "gl_pminus1": ("p", "chi_q", "class_number"),
    "sl_pminus1": ("p", "chi_q", "class_number"),
    "sp_pminus1": ("p", "chi_q", "relative_class_number"),
    "mapping_class": ("p", "chi_q"),
    "gl2_z_p3": ("p",),
    "crystallographic": ("p", "rank"),
}


class NumberTheoryInput(BaseModel):
    """Inputs for one closed-form target, with a plain-words note on where each value comes from."""

    model_config = ConfigDict(frozen=True)

    kind: EntryKind
    label: str
    p: int | None = Field(default=None, description="The prime the formula is stated at, when it is fixed.")
    zeta_value: Rational | None = None
    class_number: int | None = Field(default=None, ge=1)
    relative_class_number: int | None = Field(default=None, ge=1)
    chi_q: Rational | None = None
    maximal_subgroups: tuple[MaximalSubgroupDatum, ...] = ()
    rank: int | None = Field(default=None, ge=0, description="m in Z^m x| Z/p.")
    free_action: bool = False
    fixed_points: bool = False
    available: bool = True
    provenance: str

    @model_validator(mode="after")
    def check_required_fields(self) -> "NumberTheoryInput":
        """Available entries must carry every input their kind needs."""
        if self.available:
            missing = [name for name in _REQUIRED_FIELDS[self.kind] if getattr(self, name) is None]
            if missing:
                raise ValueError(f"{self.kind} entry {self.label!r} is missing {', '.join(missing)}.")
        return self

    @property
    def has_orbifold_form(self) -> bool:
        return self.kind in ("sl2_ok", "crystallographic")


class ConstantsFile(BaseModel):
    """Top level of the bundled constants file."""

    entries: dict[str, NumberTheoryInput]


@lru_cache(maxsize=None)
def _load_constants(path: Path) -> dict[str, NumberTheoryInput]:
    """Parse a constants file once per path."""
    constants = ConstantsFile.model_validate_json(path.read_text())
    logger.debug(f"loaded {len(constants.entries)} closed-form entries from {path}")
    return constants.entries


def load_constants(path: Path | None = None) -> dict[str, NumberTheoryInput]:
    """The closed-form entries keyed by name, from `settings.constants_file` unless `path` is given."""
    return _load_constants(Path(path or settings.constants_file).resolve())


def get_entry(key: str) -> NumberTheoryInput:
    """
    Raises:
        UnknownSpec: When no entry has this key.
    """
    entries = load_constants()
    try:
        return entries[key]
    except KeyError:
        raise UnknownSpec(f"Unknown closed-form entry {key!r}. Known: {', '.join(sorted(entries))}.") from None


def _entry_prime(entry: NumberTheoryInput, p: int | None) -> int:
    """The prime to evaluate `entry` at: its tabulated prime, or `p` when it has none."""
    if entry.p is None:
        if p is None:
            raise ValueError(f"{entry.label} needs a prime.")
        return require_prime(p)
    if p is not None and p != entry.p:
        raise ValueError(f"{entry.label} is tabulated at p={entry.p}, not p={p}.")
    return entry.p


def evaluate_entry(entry: NumberTheoryInput | str, n: int, p: int | None = None) -> Fraction:
    """
    Evaluate a closed-form entry at height `n` (`n = -1` only where an orbifold form exists).

    Raises:
        UnavailableConstant: When the entry's inputs are not known.
        HeightUndefined: When `n = -1` is asked of an entry without an orbifold form.
    """
    if isinstance(entry, str):
        entry = get_entry(entry)
    if not entry.available:
        raise UnavailableConstant(f"{entry.label}: {entry.provenance}")
    if n == -1 and not entry.has_orbifold_form:
        raise HeightUndefined(f"{entry.label} has no orbifold Euler characteristic here.")
    if entry.kind == "sl2_ok" and n <= 0:
        maximal = list(entry.maximal_subgroups)
        return chi_orb_sl2_ok(entry.zeta_value) if n == -1 else chi_q_sl2_ok(entry.zeta_value, maximal)
    prime = _entry_prime(entry, p)

    match entry.kind:
        case "sl2_ok":
            maximal = list(entry.maximal_subgroups)
            if prime == 2:
                return chi_sl2_ok_p2(n, entry.zeta_value, maximal)
            return chi_sl2_ok(prime, n, entry.zeta_value, maximal)
        case "gl_pminus1":
            return chi_gl_pminus1(prime, n, entry.chi_q, entry.class_number).chi_kn
        case "sl_pminus1":
            return chi_sl_pminus1(prime, n, entry.chi_q, entry.class_number).chi_kn
        case "sp_pminus1":
            return chi_sp_pminus1(prime, n, entry.chi_q, entry.relative_class_number)
        case "mapping_class":
            return chi_mapping_class(prime, n, entry.chi_q)
        case "gl2_z_p3":
            return chi_gl2_z_p3(n)
        case "crystallographic":
            r = crystallographic_class_count(prime, entry.rank) if entry.free_action else 0
            return chi_crystallographic(prime, n, r, entry.free_action, entry.fixed_points)
    raise UnknownSpec(f"Unknown entry kind {entry.kind!r}.")


# ---------------------------------------------------------------------------------------------------------------------
# character decomposition reports
# ---------------------------------------------------------------------------------------------------------------------


class Summand(BaseModel):
    """
    `count` summands `(L ⊕ L[1])^(⊗ torus_dim)` of the character decomposition.

    `torus_dim` 0 is a free even module of rank 1.
    """

    description: str
    count: int
    torus_dim: int = 0


class CharacterReport(BaseModel):
    """`chi_K(n)` split into summands, one per class of commuting tuple."""

    target: str
    prime: int
    height: int
    chi_kn: Rational
    rational_part: Rational | None = Field(
        default=None, description="chi_Q of the H*(BG; L) summand, when it is not itself listed."
    )
    summand_count: int
    summands: list[Summand]


def _report(
    target: str, p: int, n: int, summands: list[Summand], rational_part: Fraction | None = None
) -> CharacterReport:
    """Assemble a report, totalling the summands and the rational part."""
    visible = sum(s.count for s in summands if s.torus_dim == 0)
    return CharacterReport(
        target=target,
        prime=p,
        height=n,
        chi_kn=(rational_part or 0) + visible,
        rational_part=rational_part,
        summand_count=sum(s.count for s in summands),
        summands=summands,
    )


@singledispatch
def character_report(target, p: int, n: int) -> CharacterReport:
    """
    The summands of `L ⊗ E^*(BG)` by conjugacy class of commuting `p`-power tuples.

    Dispatches on a `FiniteGroup`, a Coxeter defining graph or a closed-form entry key.
    """
    raise UnknownSpec(f"No character report for {type(target).__name__}.")


@character_report.register
def _(target: FiniteGroup, p: int, n: int) -> CharacterReport:
    """One summand per orbit of commuting p-power tuples."""
    census = census_naive(target, p, n)
    summands = [
        Summand(description=f"C<{', '.join(map(str, rep)) or 'e'}> of order {centralizer.order}", count=1)
        for rep, centralizer in zip(census.orbit_reps, census.centralizers)
    ]
    return _report(group_spec(target), p, n, summands)


@character_report.register
def _(target: nx.Graph, p: int, n: int) -> CharacterReport:
    """One summand per clique size."""
    profile = clique_census(target)
    step = 2**n - 1 if p == 2 else 0
    summands = [
        Summand(description=f"{size}-cliques: (C2)^{size} tuples", count=count * step**size)
        for size, count in enumerate(profile.counts)
        if count * step**size
    ]
    return _report("W_L", p, n, summands)


@character_report.register
def _(target: str, p: int, n: int) -> CharacterReport:
    """Summands of a bundled closed-form entry."""
    entry = get_entry(target)
    if not entry.available:
        raise UnavailableConstant(f"{entry.label}: {entry.provenance}")
    prime = _entry_prime(entry, p)
    _check_height(n)

    match entry.kind:
        case "gl_pminus1" | "sl_pminus1":
            evaluate = chi_gl_pminus1 if entry.kind == "gl_pminus1" else chi_sl_pminus1
            torus = evaluate(prime, n, entry.chi_q, entry.class_number)
            summands = [
                Summand(description="C<A> = Z/p x Z/2 x torus", count=torus.free_rank, torus_dim=torus.torus_dim)
            ]
            return _report(entry.label, prime, n, summands, rational_part=entry.chi_q)
        case "sp_pminus1":
            count = sp_free_rank(prime, n, entry.relative_class_number)
            summands = [Summand(description="C<A> = Z/p x Z/2", count=count)]
            return _report(entry.label, prime, n, summands, rational_part=entry.chi_q)
        case "mapping_class":
            summands = [Summand(description="finite C<A>", count=mapping_class_orbit_count(prime, n) - 1)]
            return _report(entry.label, prime, n, summands, rational_part=entry.chi_q)
        case "sl2_ok":
            maximal = list(entry.maximal_subgroups)
            if prime == 2:
                # -I is central of order 2, so no summand is the rational cohomology of a torsion-free centralizer
                value = chi_sl2_ok_p2(n, entry.zeta_value, maximal)
                return _report(entry.label, prime, n, [Summand(description="2-local centralizers", count=int(value))])
            summands = [
                Summand(
                    description=f"nontrivial tuples in Z/{datum.order}",
                    count=datum.multiplicity * (datum.p_part_order(prime) ** n - 1),
                )
                for datum in maximal
                if datum.p_part_order(prime) > 1
            ]
            return _report(entry.label, prime, n, summands, rational_part=chi_q_sl2_ok(entry.zeta_value, maximal))
        case "gl2_z_p3":
            summands = [Summand(description="finite centralizers", count=int(chi_gl2_z_p3(n)))]
            return _report(entry.label, prime, n, summands)
        case "crystallographic":
            r = crystallographic_class_count(prime, entry.rank) if entry.free_action else 0
            summands = [Summand(description="self-normalizing Z/p", count=r * (prime**n - 1))] if r else []
            rational_part = chi_crystallographic(prime, 0, r, entry.free_action, entry.fixed_points)
            return _report(entry.label, prime, n, summands, rational_part=rational_part)
    raise UnknownSpec(f"Unknown entry kind {entry.kind!r}.")
