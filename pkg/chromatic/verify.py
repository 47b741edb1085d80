"""
The regression suite behind `chromatic verify`: known values and identities, each check tagged with its source.

Checks register themselves with `register_check`; `run_checks` runs them in registration order and turns every
mismatch into an expected-vs-got line instead of stopping at the first one.
"""

import itertools
import random
from collections.abc import Callable
from dataclasses import dataclass
from fractions import Fraction

import networkx as nx
from loguru import logger

from chromatic import burnside, cells, closed_forms, coxeter
from chromatic.census import census_extended, census_naive, census_recursive, chi_kn_finite
from chromatic.errors import ChromaticError
from chromatic.groups import FiniteGroup, center, is_monomorphism_images, monomorphism_classes, standard_group
from chromatic.models import CheckResult
from chromatic.settings import settings

# Pairwise non-isomorphic, sorted by order
CORPUS_SPECS: tuple[str, ...] = (
    "C1",
    "C2",
    "C3",
    "C4",
    "C2xC2",
    "C5",
    "C6",
    "S3",
    "C7",
    "C8",
    "C4xC2",
    "C2xC2xC2",
    "D8",
    "Q8",
    "C9",
    "C3xC3",
    "C10",
    "D10",
    "C12",
    "C6xC2",
    "D12",
    "A4",
    "D16",
    "D8xC2",
    "Q8xC2",
    "C4xC4",
    "S3xC3",
    "D20",
    "S4",
    "A4xC2",
    "D24",
    "S3xS3",
    "S4xC2",
)


def standard_corpus(max_order: int | None = None) -> list[FiniteGroup]:
    """The corpus groups of order at most `max_order`, never beyond `settings.verify_max_corpus_order`."""
    bound = settings.verify_max_corpus_order
    if max_order is not None:
        bound = min(bound, max_order)
    groups = [standard_group(spec) for spec in CORPUS_SPECS]
    return [group for group in groups if group.order <= bound]


@dataclass(frozen=True)
class Check:
    """A registered check."""

    name: str
    provenance: str
    function: Callable[[], list[str]]


registered_checks: dict[str, Check] = {}


def register_check(name: str, provenance: str) -> Callable[[Callable[[], list[str]]], Callable[[], list[str]]]:
    """Register a check; it returns a list of mismatch descriptions, empty when it passes."""

    def decorator(function: Callable[[], list[str]]) -> Callable[[], list[str]]:
        registered_checks[name] = Check(name=name, provenance=provenance, function=function)
        return function

    return decorator


class Mismatches(list[str]):
    def expect(self, label: str, expected: object, got: object) -> None:
        """Record a mismatch when `expected != got`."""
        if expected != got:
            self.append(f"{label}: expected {expected}, got {got}")


# ---------------------------------------------------------------------------------------------------------------------
# finite groups
# ---------------------------------------------------------------------------------------------------------------------

_FINITE_CLOSED_FORMS: tuple[tuple[str, int, Callable[[int], Fraction]], ...] = (
    ("S3", 3, lambda n: Fraction(3**n + 1, 2)),
    ("S4", 3, lambda n: Fraction(3**n + 1, 2)),
    ("D12", 3, lambda n: Fraction(3**n + 1, 2)),
    ("S3", 2, lambda n: Fraction(2**n)),
    ("D12", 2, lambda n: Fraction(4**n)),
    ("D8", 2, lambda n: Fraction(3 * 4**n - 2**n, 2)),
    ("S4", 2, lambda n: Fraction(7 * 4**n - 3 * 2**n + 2, 6)),
)


@register_check("finite-census-closed-forms", "orbit counts of S3, S4, D12 and D8 in closed form")
def check_finite_closed_forms() -> list[str]:
    """Census counts of small groups against their closed forms."""
    failures = Mismatches()
    for spec, p, formula in _FINITE_CLOSED_FORMS:
        group = standard_group(spec)
        for n in range(1, 4):
            failures.expect(f"{spec} p={p} n={n}", formula(n), chi_kn_finite(group, p, n))
    return failures


@register_check("census-oracle", "centralizer recursion agrees with brute-force tuple enumeration")
def check_census_oracle() -> list[str]:
    """Recursive census against brute force, and the class equation."""
    failures = Mismatches()
    for group in standard_corpus():
        for p, n in itertools.product((2, 3, 5), range(0, 4)):
            naive = census_naive(group, p, n)
            failures.expect(f"{group} p={p} n={n}", naive.orbit_count, census_recursive(group, p, n))
            if n <= 2:
                extended = census_extended(group, p, n)
                failures.expect(
                    f"{group} p={p} n={n} class equation", naive.orbit_count * group.order, extended.tuple_count
                )
    return failures


def _brute_force_out_order(group: FiniteGroup) -> int:
    """`|Out(G)| = |Aut(G)| |Z(G)| / |G|`, counting automorphisms by trying every generator image."""
    automorphisms = sum(
        1
        for images in itertools.product(group.elements, repeat=len(group.minimal_generators))
        if is_monomorphism_images(group, group, images)
    )
    return automorphisms * center(group).order // group.order


@register_check("phi-triangular", "the phi-matrix of the first 20 corpus groups is triangular with diagonal |Out(G)|")
def check_phi_triangular() -> list[str]:
    """Triangularity of the phi-matrix with `|Out(G)|` on the diagonal."""
    failures = Mismatches()
    groups = standard_corpus()[:20]
    for (i, source), (j, target) in itertools.product(enumerate(groups), repeat=2):
        count = monomorphism_classes(source, target)
        if i == j:
            failures.expect(f"phi_{source}({source})", _brute_force_out_order(source), count)
        elif i > j:
            failures.expect(f"phi_{source}({target})", 0, count)
    return failures


# ---------------------------------------------------------------------------------------------------------------------
# cell structures
# ---------------------------------------------------------------------------------------------------------------------


@register_check("soule-sl3-p3", "SL3(Z) at the prime 3 is 3^n, also via the 3-torsion split")
def check_soule_p3() -> list[str]:
    """SL3(Z) at the prime 3."""
    failures = Mismatches()
    structure = cells.soule_sl3()
    split = cells.three_torsion_split(structure)
    failures.expect("remainder cells by dimension", {0: 1, 1: 6, 2: 5, 3: 1}, split.remainder_counts)
    for n in range(1, 4):
        failures.expect(f"SL3(Z) p=3 n={n}", 3**n, cells.chi_kn_cells(structure, 3, n))
        failures.expect(f"SL3(Z) split p=3 n={n}", 3**n, split.chi_kn(n))
    return failures


@register_check("soule-sl3-p2", "SL3(Z) at the prime 2 is 2^(2n+1) - 2^(n+1) + 1")
def check_soule_p2() -> list[str]:
    """SL3(Z) at the prime 2."""
    failures = Mismatches()
    structure = cells.soule_sl3()
    for n in range(1, 4):
        failures.expect(f"SL3(Z) p=2 n={n}", 2 ** (2 * n + 1) - 2 ** (n + 1) + 1, cells.chi_kn_cells(structure, 2, n))
    return failures


@register_check("soule-sl3-rational", "SL3(Z) has chi_Q = 1 and chi_orb = zeta(-1) zeta(-2) = 0 on 19 cell orbits")
def check_soule_rational() -> list[str]:
    """Rational and orbifold values of SL3(Z)."""
    failures = Mismatches()
    structure = cells.soule_sl3()
    failures.expect("chi_Q", 1, cells.chi_q_cells(structure))
    failures.expect("chi_orb", Fraction(0), cells.chi_orb_cells(structure))
    failures.expect("cell orbits", 19, structure.cell_count())
    return failures


@register_check("amalgams", "SL2(Z) = C4 *_C2 C6 and D8 *_C4 D8")
def check_amalgams() -> list[str]:
    """Amalgam trees against their known values and class expressions."""
    failures = Mismatches()
    tree = cells.sl2z_tree()
    failures.expect("SL2(Z) chi_orb", Fraction(-1, 12), cells.chi_orb_cells(tree))
    failures.expect("SL2(Z) chi_Q", 1, cells.chi_q_cells(tree))
    for n in range(1, 4):
        failures.expect(f"SL2(Z) p=2 n={n}", 4**n, cells.chi_kn_cells(tree, 2, n))
        failures.expect(f"SL2(Z) p=3 n={n}", 3**n, cells.chi_kn_cells(tree, 3, n))
        failures.expect(f"SL2(Z) closed form p=2 n={n}", 4**n, closed_forms.evaluate_entry("sl2_z", n, 2))
        failures.expect(f"SL2(Z) closed form p=3 n={n}", 3**n, closed_forms.evaluate_entry("sl2_z", n, 3))
    failures.expect("D8 *_C4 D8 p=2 n=1", 6, cells.chi_kn_cells(cells.dihedral_amalgam(), 2, 1))
    pushout = burnside.parse_class_expression("D8 + D8 - C4")
    failures.expect("[D8] + [D8] - [C4] p=2 n=1", 6, burnside.chi_kn(pushout, 2, 1))
    return failures


# ---------------------------------------------------------------------------------------------------------------------
# Burnside ring
# ---------------------------------------------------------------------------------------------------------------------


@register_check("ladder", "chromatic ladder: chi_K(m+n) = chi_K(m) o shift and chi_orb o loop o shift = chi_K(n)")
def check_ladder() -> list[str]:
    """Shift and loop identities over the corpus."""
    failures = Mismatches()
    for group in standard_corpus():
        x = burnside.class_of(group)
        failures.expect(f"{group} chi_orb o loop = chi_Q", burnside.chi_q(x), burnside.chi_orb(burnside.loop(x)))
        for p in (2, 3):
            for n in range(0, 4):
                shifted = burnside.p_shift(x, p, n)
                failures.expect(
                    f"{group} p={p} chi_orb o loop o shift_{n}",
                    burnside.chi_kn(x, p, n),
                    burnside.chi_orb(burnside.loop(shifted)),
                )
                for m in range(0, 4 - n):
                    failures.expect(
                        f"{group} p={p} chi_K({m}) o shift_{n}",
                        burnside.chi_kn(x, p, m + n),
                        burnside.chi_kn(shifted, p, m),
                    )
    return failures


def _random_class(rng: random.Random, pool: list[FiniteGroup]) -> burnside.BurnsideClass:
    """A class with one or two small terms over `pool`."""
    x = burnside.zero_class()
    for _ in range(rng.randint(1, 2)):
        coefficient = rng.choice((-2, -1, 1, 2))
        x = x + coefficient * burnside.class_of(rng.choice(pool))
    return x


@register_check("ring-homomorphisms", "chi_orb, chi_Q and chi_K(n) are ring maps; loop is multiplicative")
def check_ring_homomorphisms() -> list[str]:
    """Ring laws and multiplicativity of the characters on random classes."""
    failures = Mismatches()
    rng = random.Random(settings.verify_seed)
    # triple products have at most 216 elements
    pool = standard_corpus(max_order=6)
    for trial in range(50):
        x, y, z = (_random_class(rng, pool) for _ in range(3))
        xy = x * y
        failures.expect(f"#{trial} commutative", xy, y * x)
        failures.expect(f"#{trial} associative", (x * y) * z, x * (y * z))
        failures.expect(f"#{trial} distributive", x * (y + z), x * y + x * z)
        failures.expect(f"#{trial} unit", x, burnside.unit_class() * x)
        failures.expect(f"#{trial} chi_orb", burnside.chi_orb(x) * burnside.chi_orb(y), burnside.chi_orb(xy))
        failures.expect(f"#{trial} chi_Q", burnside.chi_q(x) * burnside.chi_q(y), burnside.chi_q(xy))
        failures.expect(
            f"#{trial} chi_K(1) p=2", burnside.chi_kn(x, 2, 1) * burnside.chi_kn(y, 2, 1), burnside.chi_kn(xy, 2, 1)
        )
        failures.expect(f"#{trial} loop", burnside.loop(x) * burnside.loop(y), burnside.loop(xy))
    return failures


# ---------------------------------------------------------------------------------------------------------------------
# Coxeter groups
# ---------------------------------------------------------------------------------------------------------------------


def random_triangle_free_graph(rng: random.Random) -> nx.Graph:
    """A graph on 3 to 10 vertices, adding shuffled pairs that close no triangle."""
    size = rng.randint(3, 10)
    graph = nx.empty_graph(size)
    pairs = list(itertools.combinations(range(size), 2))
    rng.shuffle(pairs)
    for u, v in pairs:
        if rng.random() < 0.6 and not set(graph[u]) & set(graph[v]):
            graph.add_edge(u, v)
    return graph


@register_check("coxeter", "clique profiles of right-angled Coxeter groups")
def check_coxeter() -> list[str]:
    """Clique counts against finite censuses, brute force and the triangle-free form."""
    failures = Mismatches()
    for size in range(1, 5):
        graph = nx.complete_graph(size)
        elementary = standard_group("x".join(["C2"] * size))
        for n in range(1, 4):
            failures.expect(f"K{size} n={n}", census_recursive(elementary, 2, n), coxeter.chi_kn_coxeter(graph, n))

    for index in range(20):
        graph = nx.gnp_random_graph(3 + index % 6, 0.5, seed=settings.verify_seed + index)
        failures.expect(f"random graph #{index}", coxeter.subset_profile(graph), coxeter.clique_census(graph))

    rng = random.Random(settings.verify_seed)
    triangle_free = [(f"cycle {size}", nx.cycle_graph(size)) for size in range(4, 9)]
    triangle_free += [(f"triangle-free #{index}", random_triangle_free_graph(rng)) for index in range(10)]
    for label, graph in triangle_free:
        vertices, edges = graph.number_of_nodes(), graph.number_of_edges()
        failures.expect(f"{label} profile", coxeter.subset_profile(graph), coxeter.clique_census(graph))
        for n in range(1, 4):
            step = 2**n - 1
            expected = 1 + vertices * step + edges * step**2
            failures.expect(f"{label} n={n}", expected, coxeter.chi_kn_coxeter(graph, n))
        half = Fraction(-1, 2)
        failures.expect(f"{label} chi_orb", 1 + vertices * half + edges * half**2, coxeter.chi_orb_coxeter(graph))
    return failures


# ---------------------------------------------------------------------------------------------------------------------
# closed forms
# ---------------------------------------------------------------------------------------------------------------------

_CLOSED_FORM_VALUES: tuple[tuple[str, int, Callable[[int], Fraction]], ...] = (
    ("sl2_q_sqrt5", 3, lambda n: Fraction(2 * 3**n + 2)),
    ("sp18_z", 19, lambda n: Fraction(256 * 19**n + 4496, 9)),
    ("gamma15", 31, lambda n: Fraction(16 * 31**n + 2153282, 3)),
    ("gl2_z_p3", 3, lambda n: Fraction(3**n + 1, 2)),
    ("crystallographic_free_p3", 3, lambda n: 3 * Fraction(3) ** n - 1),
    ("sp4_z", 5, lambda n: Fraction(5**n + 1)),
    ("gamma2", 5, lambda n: Fraction(5**n)),
)


@register_check("closed-forms", "closed forms for arithmetic, crystallographic and mapping class groups")
def check_closed_forms() -> list[str]:
    """Bundled closed forms against known values."""
    failures = Mismatches()
    entries = closed_forms.load_constants()
    for key, p, formula in _CLOSED_FORM_VALUES:
        for n in range(1, 4):
            failures.expect(f"{key} p={p} n={n}", formula(n), closed_forms.evaluate_entry(key, n, p))

    for key, entry in entries.items():
        if entry.available and entry.chi_q is not None:
            failures.expect(f"{key} n=0", entry.chi_q, closed_forms.evaluate_entry(key, 0))

    for p in (5, 7, 11, 13, 31):
        for n in range(1, 4):
            via_orbits = closed_forms.mapping_class_orbit_count(p, n) - 1
            failures.expect(f"mapping class p={p} n={n}", closed_forms.chi_mapping_class(p, n, 0), via_orbits)
    return failures


def run_checks(name_filter: str | None = None) -> list[CheckResult]:
    """
    Run every registered check whose name contains `name_filter`.

    A check that raises fails with the exception as its detail; the remaining checks still run.
    """
    results = []
    for check in registered_checks.values():
        if name_filter and name_filter not in check.name:
            continue
        logger.info(f"running check {check.name}")
        try:
            failures = check.function()
        except ChromaticError as e:
            failures = [f"{type(e).__name__}: {e}"]
        except Exception as e:
            logger.exception(f"check {check.name} raised")
            failures = [f"unexpected {type(e).__name__}: {e}"]
        results.append(
            CheckResult(
                name=check.name,
                passed=not failures,
                provenance=check.provenance,
                detail="; ".join(failures[:5]) + (f" (+{len(failures) - 5} more)" if len(failures) > 5 else ""),
            )
        )
    return results
