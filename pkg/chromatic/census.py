"""Orbit censuses of commuting tuples of prime-power-order elements under simultaneous conjugation."""

from collections.abc import Sequence
from dataclasses import dataclass

from loguru import logger

from chromatic.errors import CensusTooLarge
from chromatic.groups import FiniteGroup, Permutation, centralizer
from chromatic.settings import settings
from chromatic.utils import find_orbits, parallel_sum, require_prime

Tuple = tuple[Permutation, ...]


@dataclass(frozen=True)
class TupleCensus:
    """
    Orbit representatives of `G_{n,p}` under simultaneous conjugation.

    `orbit_reps[i]` is the lexicographically least tuple of its orbit, `orbit_sizes[i]` the orbit length and
    `centralizers[i]` the common centralizer of its entries, so `orbit_sizes[i] == |G| / |centralizers[i]|`.
    """

    group: FiniteGroup
    prime: int
    arity: int
    orbit_reps: tuple[Tuple, ...]
    orbit_sizes: tuple[int, ...]
    centralizers: tuple[FiniteGroup, ...]

    @property
    def orbit_count(self) -> int:
        return len(self.orbit_reps)

    @property
    def tuple_count(self) -> int:
        return sum(self.orbit_sizes)


@dataclass(frozen=True)
class ExtendedTupleCensus(TupleCensus):
    """Like `TupleCensus`, but the first entry of every tuple may have any order (`G_{n,p,+1}`)."""


def is_p_power(k: int, p: int) -> bool:
    """Whether `k` is a power of `p` (`1` included)."""
    while k % p == 0:
        k //= p
    return k == 1


def p_power_elements(group: FiniteGroup, p: int) -> list[Permutation]:
    """
    Elements of `p`-power order (the identity included), in element order.

    Raises:
        NotPrime: When `p` is not a prime.
    """
    require_prime(p)
    return [g for g in group.elements if is_p_power(group.element_order(g), p)]


def _commuting_tuples(pools: Sequence[Sequence[Permutation]]) -> list[Tuple]:
    """Pairwise commuting tuples with entry i drawn from pools[i], in lexicographic order."""
    support = sorted({g for pool in pools for g in pool})
    commuting = {a: frozenset(b for b in support if a.commutes_with(b)) for a in support}
    pool_sets = [frozenset(pool) for pool in pools]

    tuples: list[Tuple] = [()]
    for pool, pool_set in zip(pools, pool_sets):
        extended: list[Tuple] = []
        for prefix in tuples:
            allowed = pool_set.intersection(*(commuting[entry] for entry in prefix)) if prefix else pool_set
            extended.extend(prefix + (g,) for g in sorted(allowed))
            if len(extended) > settings.census_cap:
                raise CensusTooLarge(
                    f"More than {settings.census_cap} commuting tuples; use the recursive census instead."
                )
        tuples = extended
    return tuples


def _orbit_census(group: FiniteGroup, p: int, pools: Sequence[Sequence[Permutation]], extended: bool) -> TupleCensus:
    """Enumerate commuting tuples drawn from `pools` and split them into conjugation orbits."""
    tuples = _commuting_tuples(pools)
    actions = [lambda t, g=generator: tuple(x.conjugate(g) for x in t) for generator in group.generators]
    orbits = find_orbits(actions, tuples)
    logger.debug(f"census of {group} at p={p}, n={len(pools)}: {len(tuples)} tuples in {len(orbits)} orbits")

    census_type = ExtendedTupleCensus if extended else TupleCensus
    return census_type(
        group=group,
        prime=p,
        arity=len(pools) - (1 if extended else 0),
        orbit_reps=tuple(orbit[0] for orbit in orbits),
        orbit_sizes=tuple(len(orbit) for orbit in orbits),
        centralizers=tuple(centralizer(group, orbit[0]) for orbit in orbits),
    )


def _check_arity(n: int) -> None:
    """Reject negative tuple lengths."""
    if n < 0:
        raise ValueError(f"Arity must be non-negative, got {n}.")


def census_naive(group: FiniteGroup, p: int, n: int) -> TupleCensus:
    """
    Enumerate `G_{n,p}` and split it into conjugation orbits.

    Raises:
        NotPrime: When `p` is not a prime.
        CensusTooLarge: When more than `settings.census_cap` tuples would be materialized.
    """
    _check_arity(n)
    pool = p_power_elements(group, p)
    return _orbit_census(group, p, [pool] * n, extended=False)


def census_extended(group: FiniteGroup, p: int, n: int) -> ExtendedTupleCensus:
    """
    Enumerate `G_{n,p,+1}`: a first entry of any order followed by `n` entries of `p`-power order.

    Raises:
        NotPrime: When `p` is not a prime.
        CensusTooLarge: When more than `settings.census_cap` tuples would be materialized.
    """
    _check_arity(n)
    pool = p_power_elements(group, p)
    return _orbit_census(group, p, [group.elements] + [pool] * n, extended=True)


def _count_orbits(group: FiniteGroup, p: int, n: int, threads: int | None = 1) -> int:
    """Orbit count by recursion over centralizers of p-power class representatives."""
    if n == 0:
        return 1
    representatives = [
        r for r in group.conjugacy_classes.representatives if is_p_power(group.element_order(r), p)
    ]
    if n == 1:
        return len(representatives)
    tasks = [lambda r=r: _count_orbits(centralizer(group, [r]), p, n - 1) for r in representatives]
    return parallel_sum(tasks, threads=threads)


def census_recursive(group: FiniteGroup, p: int, n: int) -> int:
    """
    `|G \\ G_{n,p}|` by recursing over centralizers of conjugacy class representatives.

    Never materializes the tuples, so `settings.census_cap` does not apply. The branches of the outermost level
    run on `settings.threads` worker threads. `n = 0` gives 1.

    Raises:
        NotPrime: When `p` is not a prime.
    """
    require_prime(p)
    _check_arity(n)
    return _count_orbits(group, p, n, threads=None)


def chi_kn_finite(group: FiniteGroup, p: int, n: int) -> int:
    """The Morava K(n) Euler characteristic of `BG` at `p`, i.e. `|G \\ G_{n,p}|`; 1 at `n = 0`."""
    return census_recursive(group, p, n)
