"""
Concrete finite permutation groups.

Every group is held with its full, lexicographically sorted element list, so all the counting done elsewhere is
exact. Caches (element index, element orders, conjugacy classes, a word tree over a minimal generating sequence and
the isomorphism fingerprint) are filled in when a group is constructed and never change afterwards.
"""

import math
import re
from collections import Counter, deque
from collections.abc import Iterable, Iterator, Sequence
from dataclasses import dataclass

from loguru import logger
from pydantic import BaseModel, ConfigDict

from chromatic.errors import ClosureExceedsBound, ElementNotInGroup, UnknownSpec
from chromatic.settings import settings
from chromatic.utils import find_orbits


class Permutation(tuple):
    """
    A permutation of {0, ..., degree - 1}, stored as its image sequence.

    Products are read left to right: `(p * q)[i] == q[p[i]]`, i.e. `p` is applied first.
    """

    __slots__ = ()

    @classmethod
    def identity(cls, degree: int) -> "Permutation":
        """The identity on `degree` points."""
        return cls(range(degree))

    @classmethod
    def from_cycles(cls, cycles: Iterable[Sequence[int]], degree: int) -> "Permutation":
        """
        Build a permutation from disjoint cycles.

        Args:
            cycles: Cycles such as `[(0, 1, 2), (3, 4)]`.
            degree: Number of points moved or fixed.
        """
        images = list(range(degree))
        seen: set[int] = set()
        for cycle in cycles:
            if seen.intersection(cycle) or len(set(cycle)) != len(cycle):
                raise ValueError(f"Cycles {cycles} are not disjoint.")
            seen.update(cycle)
            for position, point in enumerate(cycle):
                if point >= degree:
                    raise ValueError(f"Point {point} exceeds degree {degree}.")
                images[point] = cycle[(position + 1) % len(cycle)]
        return cls(images)

    @property
    def degree(self) -> int:
        return len(self)

    def __mul__(self, other: "Permutation") -> "Permutation":
        return Permutation(other[i] for i in self)

    def inverse(self) -> "Permutation":
        """The inverse permutation."""
        inverse = [0] * len(self)
        for point, image in enumerate(self):
            inverse[image] = point
        return Permutation(inverse)

    def conjugate(self, by: "Permutation") -> "Permutation":
        """Return `by^-1 * self * by`."""
        result = [0] * len(self)
        for point, image in enumerate(self):
            result[by[point]] = by[image]
        return Permutation(result)

    def commutes_with(self, other: "Permutation") -> bool:
        """Whether `self * other == other * self`."""
        return all(other[self[i]] == self[other[i]] for i in range(len(self)))

    def is_identity(self) -> bool:
        """Whether every point is fixed."""
        return all(image == point for point, image in enumerate(self))

    def cycles(self) -> list[tuple[int, ...]]:
        """Non-trivial cycles, each starting at its least point."""
        seen = [False] * len(self)
        cycles = []
        for start in range(len(self)):
            if seen[start]:
                continue
            cycle = []
            point = start
            while not seen[point]:
                seen[point] = True
                cycle.append(point)
                point = self[point]
            if len(cycle) > 1:
                cycles.append(tuple(cycle))
        return cycles

    def order(self) -> int:
        """The lcm of the cycle lengths."""
        return math.lcm(*(len(cycle) for cycle in self.cycles()))

    def __str__(self) -> str:
        return "".join("(" + " ".join(map(str, cycle)) + ")" for cycle in self.cycles()) or "()"

    def __repr__(self) -> str:
        return f"Permutation({str(self)}, degree={len(self)})"


@dataclass(frozen=True)
class ConjugacyClasses:
    """The partition of a group into conjugacy classes, ordered by representative."""

    classes: tuple[tuple[Permutation, ...], ...]
    representatives: tuple[Permutation, ...]
    class_sizes: tuple[int, ...]

    def __len__(self) -> int:
        return len(self.classes)


class GroupFingerprint(BaseModel):
    """Isomorphism invariants. Unequal fingerprints certify non-isomorphic groups."""

    model_config = ConfigDict(frozen=True)

    order: int
    element_order_histogram: tuple[tuple[int, int], ...]
    class_size_multiset: tuple[int, ...]
    abelian: bool
    center_order: int
    derived_series_orders: tuple[int, ...]


class FiniteGroup:
    """
    A finite permutation group with its elements enumerated.

    Construct instances through `closure`, `standard_group` or the subgroup helpers rather than directly.
    """

    def __init__(
        self,
        degree: int,
        generators: Sequence[Permutation],
        elements: Sequence[Permutation],
        name: str | None = None,
    ):
        self.degree = degree
        self.generators: tuple[Permutation, ...] = tuple(generators)
        self.elements: tuple[Permutation, ...] = tuple(sorted(elements))
        self.name = name
        self.identity = self.elements[0]

        self._index = {element: position for position, element in enumerate(self.elements)}
        self._orders = tuple(element.order() for element in self.elements)
        self.conjugacy_classes = _compute_conjugacy_classes(self)
        self._class_size = {
            element: size
            for members, size in zip(self.conjugacy_classes.classes, self.conjugacy_classes.class_sizes)
            for element in members
        }
        self.minimal_generators: tuple[Permutation, ...] = tuple(_greedy_generators(self.elements, degree))
        self._word_tree = _build_word_tree(self)
        self.fingerprint = _compute_fingerprint(self)

    @property
    def order(self) -> int:
        return len(self.elements)

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self) -> Iterator[Permutation]:
        return iter(self.elements)

    def __contains__(self, element: object) -> bool:
        return element in self._index

    def index(self, element: Permutation) -> int:
        """Position of `element` in `elements`; raises `ElementNotInGroup` for outsiders."""
        try:
            return self._index[element]
        except KeyError:
            raise ElementNotInGroup(f"{element} is not an element of {self}.") from None

    def element_order(self, element: Permutation) -> int:
        """Order of `element` from the cache."""
        return self._orders[self.index(element)]

    def class_size(self, element: Permutation) -> int:
        """Size of the conjugacy class of `element`."""
        self.index(element)
        return self._class_size[element]

    def is_abelian(self) -> bool:
        """Whether all elements commute."""
        return self.fingerprint.abelian

    def __repr__(self) -> str:
        label = self.name or ",".join(map(str, self.generators)) or "1"
        return f"FiniteGroup({label}, order={self.order})"


# ---------------------------------------------------------------------------------------------------------------------
# construction
# ---------------------------------------------------------------------------------------------------------------------


def _closure_elements(generators: Sequence[Permutation], degree: int, bound: int) -> list[Permutation]:
    """Breadth-first closure; `ClosureExceedsBound` once it passes `bound` elements."""
    identity = Permutation.identity(degree)
    seen = {identity}
    queue = deque([identity])
    while queue:
        element = queue.popleft()
        for generator in generators:
            product = element * generator
            if product not in seen:
                seen.add(product)
                if len(seen) > bound:
                    raise ClosureExceedsBound(f"Group generated by {list(map(str, generators))} exceeds order {bound}.")
                queue.append(product)
    return sorted(seen)


def _greedy_generators(elements: Sequence[Permutation], degree: int) -> list[Permutation]:
    """Repeatedly add the least element not yet in the closure."""
    generators: list[Permutation] = []
    reached = {Permutation.identity(degree)}
    for element in elements:
        if element not in reached:
            generators.append(element)
            reached = set(_closure_elements(generators, degree, len(elements)))
            if len(reached) == len(elements):
                break
    return generators


def _build_word_tree(group: FiniteGroup) -> tuple[tuple[int, int, int], ...]:
    """
    Breadth-first spanning tree over the minimal generators.

    Each entry is (element index, parent element index, generator index); the identity comes first with parent -1.
    """
    start = group.index(group.identity)
    tree = [(start, -1, -1)]
    visited = {start}
    queue = deque([start])
    while queue:
        parent = queue.popleft()
        for position, generator in enumerate(group.minimal_generators):
            child = group.index(group.elements[parent] * generator)
            if child not in visited:
                visited.add(child)
                tree.append((child, parent, position))
                queue.append(child)
    return tuple(tree)


def _compute_conjugacy_classes(group: FiniteGroup) -> ConjugacyClasses:
    """Orbits of the conjugation action of the generators."""
    actions = [lambda x, g=generator: x.conjugate(g) for generator in group.generators]
    classes = tuple(tuple(block) for block in find_orbits(actions, group.elements))
    return ConjugacyClasses(
        classes=classes,
        representatives=tuple(members[0] for members in classes),
        class_sizes=tuple(len(members) for members in classes),
    )


def _normal_closure_generators(
    seeds: Iterable[Permutation], generators: Sequence[Permutation], degree: int, bound: int
) -> tuple[list[Permutation], list[Permutation]]:
    """Generators and elements of the smallest subgroup containing `seeds` normalized by `generators`."""
    subgroup_generators = [seed for seed in seeds if not seed.is_identity()]
    elements = set(_closure_elements(subgroup_generators, degree, bound))
    grown = True
    while grown:
        grown = False
        for generator in generators:
            for member in list(subgroup_generators):
                conjugate = member.conjugate(generator)
                if conjugate not in elements:
                    subgroup_generators.append(conjugate)
                    elements = set(_closure_elements(subgroup_generators, degree, bound))
                    grown = True
    return subgroup_generators, sorted(elements)


def _derived_series_orders(group: FiniteGroup) -> tuple[int, ...]:
    """Orders along the derived series, down to where it stabilizes."""
    orders = [group.order]
    generators: list[Permutation] = list(group.generators)
    while orders[-1] > 1:
        commutators = [a.inverse() * b.inverse() * a * b for a in generators for b in generators]
        generators, elements = _normal_closure_generators(commutators, generators, group.degree, group.order)
        if len(elements) == orders[-1]:
            break
        orders.append(len(elements))
    return tuple(orders)


def _compute_fingerprint(group: FiniteGroup) -> GroupFingerprint:
    """Collect the isomorphism invariants of `group`."""
    center_order = sum(
        1 for element in group.elements if all(element.commutes_with(g) for g in group.generators)
    )
    return GroupFingerprint(
        order=group.order,
        element_order_histogram=tuple(sorted(Counter(group._orders).items())),
        class_size_multiset=tuple(sorted(group.conjugacy_classes.class_sizes)),
        abelian=center_order == group.order,
        center_order=center_order,
        derived_series_orders=_derived_series_orders(group),
    )


def _from_elements(degree: int, elements: Sequence[Permutation], name: str | None = None) -> FiniteGroup:
    """A group from a complete element list."""
    elements = sorted(elements)
    return FiniteGroup(degree, _greedy_generators(elements, degree), elements, name)


def closure(generators: Sequence[Permutation], degree: int | None = None, name: str | None = None) -> FiniteGroup:
    """
    The group generated by `generators`.

    Args:
        generators: Permutations of a common degree.
        degree: Required when `generators` is empty; defaults to the generators' degree.
        name: Optional label, kept as the group's name.

    Raises:
        ClosureExceedsBound: When the group order exceeds `settings.max_order`.
    """
    degrees = {g.degree for g in generators}
    if degree is not None:
        degrees.add(degree)
    if len(degrees) > 1:
        raise ValueError(f"Generators do not share a degree: {sorted(degrees)}")
    degree = degrees.pop() if degrees else 1

    elements = _closure_elements(list(generators), degree, settings.max_order)
    logger.debug(f"closure of {len(generators)} generators on {degree} points has order {len(elements)}")
    return FiniteGroup(degree, generators, elements, name)


def trivial_group(degree: int = 1) -> FiniteGroup:
    """The trivial group acting on `degree` points."""
    return closure([], degree=degree, name="C1" if degree == 1 else None)


# ---------------------------------------------------------------------------------------------------------------------
# group-spec grammar
# ---------------------------------------------------------------------------------------------------------------------

_NAMED_SPEC = re.compile(r"^(C|D|S|A)(\d+)$")
_CYCLE = re.compile(r"\(([\d\s]*)\)")
_GENERATOR = re.compile(r"^(\s*\(\s*(\d+\s+)*\d*\s*\))+\s*$")


def _cyclic(n: int) -> FiniteGroup:
    """`C_n` generated by an n-cycle."""
    if n == 1:
        return trivial_group()
    return closure([Permutation.from_cycles([tuple(range(n))], n)], name=f"C{n}")


def _dihedral(n: int) -> FiniteGroup:
    """The dihedral group of order `n`."""
    if n < 2 or n % 2:
        raise UnknownSpec(f"D{n}: dihedral groups are named by their order, which must be even and at least 2.")
    m = n // 2
    if m == 1:
        return closure([Permutation.from_cycles([(0, 1)], 2)], name=f"D{n}")
    if m == 2:
        return closure(
            [Permutation.from_cycles([(0, 1), (2, 3)], 4), Permutation.from_cycles([(0, 2), (1, 3)], 4)],
            name=f"D{n}",
        )
    rotation = Permutation.from_cycles([tuple(range(m))], m)
    reflection = Permutation((-i) % m for i in range(m))
    return closure([rotation, reflection], name=f"D{n}")


def _symmetric(n: int) -> FiniteGroup:
    """`S_n` on `n` points."""
    if n <= 1:
        return trivial_group()
    return closure(
        [Permutation.from_cycles([tuple(range(n))], n), Permutation.from_cycles([(0, 1)], n)], name=f"S{n}"
    )


def _alternating(n: int) -> FiniteGroup:
    """`A_n` generated by 3-cycles."""
    if n <= 2:
        return trivial_group()
    return closure([Permutation.from_cycles([(0, 1, i)], n) for i in range(2, n)], name=f"A{n}")


def _quaternion() -> FiniteGroup:
    """`Q_8` in its regular representation."""
    # right regular action on 1, i, j, k, -1, -i, -j, -k
    i = Permutation.from_cycles([(0, 1, 4, 5), (2, 7, 6, 3)], 8)
    j = Permutation.from_cycles([(0, 2, 4, 6), (1, 3, 5, 7)], 8)
    return closure([i, j], name="Q8")


def _parse_permutation_spec(spec: str) -> FiniteGroup:
    """Parse `perm:` followed by comma-separated products of cycles."""
    body = spec.removeprefix("perm:").strip()
    words = [word.strip() for word in body.split(",")] if body else []
    cycle_lists: list[list[tuple[int, ...]]] = []
    for word in words:
        if not _GENERATOR.match(word):
            raise UnknownSpec(f"Cannot parse generator {word!r} in {spec!r}.")
        cycle_lists.append([tuple(int(point) for point in cycle.split()) for cycle in _CYCLE.findall(word)])

    degree = 1 + max((point for cycles in cycle_lists for cycle in cycles for point in cycle), default=0)
    try:
        generators = [Permutation.from_cycles([c for c in cycles if c], degree) for cycles in cycle_lists]
    except ValueError as e:
        raise UnknownSpec(f"Invalid permutation in {spec!r}: {e}") from None
    return closure(generators, degree=degree, name=spec)


def _parse_factor(spec: str) -> FiniteGroup:
    """Parse one named factor of a product spec."""
    if spec == "Q8":
        return _quaternion()
    match = _NAMED_SPEC.match(spec)
    if not match:
        raise UnknownSpec(f"Unknown group spec {spec!r}.")
    family, n = match.group(1), int(match.group(2))
    if n == 0:
        raise UnknownSpec(f"Unknown group spec {spec!r}.")
    return {"C": _cyclic, "D": _dihedral, "S": _symmetric, "A": _alternating}[family](n)


def standard_group(spec: str) -> FiniteGroup:
    """
    Build a named group.

    Grammar: `Cn` (cyclic), `Dn` (dihedral of order n), `Sn`, `An`, `Q8`, left-associative products joined by
    `x` (e.g. `S3xC2`), or `perm:(0 1 2),(0 1)` (generators separated by commas, each a product of cycles).

    Raises:
        UnknownSpec: When `spec` does not match the grammar.
    """
    spec = spec.strip()
    if spec.startswith("perm:"):
        return _parse_permutation_spec(spec)
    factors = spec.split("x")
    if not all(factors):
        raise UnknownSpec(f"Unknown group spec {spec!r}.")
    group = _parse_factor(factors[0])
    for factor in factors[1:]:
        group = direct_product(group, _parse_factor(factor))
    return group


def group_spec(group: FiniteGroup) -> str:
    """A group-spec string that rebuilds a group isomorphic to `group`."""
    if group.name:
        return group.name
    if not group.minimal_generators:
        return "C1"
    return "perm:" + ",".join(str(g) for g in group.minimal_generators)


# ---------------------------------------------------------------------------------------------------------------------
# subgroups and products
# ---------------------------------------------------------------------------------------------------------------------


def conjugacy_classes(group: FiniteGroup) -> ConjugacyClasses:
    """Conjugacy classes of `group`; each representative is the least member of its class."""
    return group.conjugacy_classes


def fingerprint(group: FiniteGroup) -> GroupFingerprint:
    """The cached isomorphism invariants of `group`."""
    return group.fingerprint


def greedy_generators(group: FiniteGroup) -> tuple[Permutation, ...]:
    """The minimal generating sequence: repeatedly the least element outside the closure so far."""
    return group.minimal_generators


def _check_members(group: FiniteGroup, elements: Iterable[Permutation]) -> list[Permutation]:
    """Materialize `elements`, raising `ElementNotInGroup` for any outsider."""
    elements = list(elements)
    for element in elements:
        group.index(element)
    return elements


def centralizer(group: FiniteGroup, elements: Iterable[Permutation]) -> FiniteGroup:
    """
    The subgroup of `group` commuting with every element of `elements`.

    Raises:
        ElementNotInGroup: When some element does not belong to `group`.
    """
    elements = [e for e in _check_members(group, elements) if not e.is_identity()]
    if not elements:
        return group
    members = [x for x in group.elements if all(x.commutes_with(e) for e in elements)]
    if len(members) == group.order:
        return group
    return _from_elements(group.degree, members)


def center(group: FiniteGroup) -> FiniteGroup:
    """Elements that commute with every generator."""
    return centralizer(group, group.generators)


def subgroup_generated(group: FiniteGroup, elements: Iterable[Permutation]) -> FiniteGroup:
    """
    The subgroup of `group` generated by `elements`.

    Raises:
        ElementNotInGroup: When some element does not belong to `group`.
    """
    elements = _check_members(group, elements)
    return closure(elements, degree=group.degree)


def derived_subgroup(group: FiniteGroup) -> FiniteGroup:
    """The subgroup generated by all commutators."""
    commutators = [a.inverse() * b.inverse() * a * b for a in group.generators for b in group.generators]
    _, elements = _normal_closure_generators(commutators, group.generators, group.degree, group.order)
    return _from_elements(group.degree, elements)


def direct_product(left: FiniteGroup, right: FiniteGroup) -> FiniteGroup:
    """
    The direct product acting on the disjoint union of both point sets.

    Raises:
        ClosureExceedsBound: When `|left| * |right|` exceeds `settings.max_order`.
    """
    if left.order * right.order > settings.max_order:
        raise ClosureExceedsBound(
            f"{left} x {right} has order {left.order * right.order}, exceeding {settings.max_order}."
        )
    shift = left.degree

    def embed(a: Sequence[int], b: Sequence[int]) -> Permutation:
        return Permutation(tuple(a) + tuple(shift + i for i in b))

    generators = [embed(g, right.identity) for g in left.generators]
    generators += [embed(left.identity, h) for h in right.generators]
    elements = [embed(g, h) for g in left.elements for h in right.elements]
    name = f"{left.name}x{right.name}" if left.name and right.name and "perm:" not in left.name + right.name else None
    return FiniteGroup(shift + right.degree, generators, elements, name)


# ---------------------------------------------------------------------------------------------------------------------
# homomorphisms
# ---------------------------------------------------------------------------------------------------------------------


def extend_images(source: FiniteGroup, target: FiniteGroup, images: Sequence[Permutation]) -> list[Permutation] | None:
    """
    Extend images of `source.minimal_generators` to a map on all of `source`.

    Returns:
        The image of every element of `source` (in element order) if the assignment defines a homomorphism into
        `target`, otherwise None.
    """
    if len(images) != len(source.minimal_generators) or any(image not in target for image in images):
        return None

    mapped: list[Permutation | None] = [None] * source.order
    for child, parent, generator in source._word_tree:
        mapped[child] = target.identity if parent < 0 else mapped[parent] * images[generator]

    for position, element in enumerate(source.elements):
        for generator, image in zip(source.minimal_generators, images):
            if mapped[source.index(element * generator)] != mapped[position] * image:
                return None
    return mapped


def is_homomorphism_images(source: FiniteGroup, target: FiniteGroup, images: Sequence[Permutation]) -> bool:
    """Whether `images` of `source.minimal_generators` extend to a homomorphism into `target`."""
    return extend_images(source, target, images) is not None


def is_monomorphism_images(source: FiniteGroup, target: FiniteGroup, images: Sequence[Permutation]) -> bool:
    """Whether `images` of `source.minimal_generators` define an injective homomorphism into `target`."""
    mapped = extend_images(source, target, images)
    return mapped is not None and len(set(mapped)) == source.order


def _injective_image_tuples(
    source: FiniteGroup, target: FiniteGroup, match_class_sizes: bool = False
) -> Iterator[tuple[Permutation, ...]]:
    """Backtracking over generator images pruned by element orders of generators and pairwise products."""
    generators = source.minimal_generators
    if source.order > target.order or target.order % source.order:
        return

    def candidates(generator: Permutation) -> list[Permutation]:
        wanted = source.element_order(generator)
        found = [h for h in target.elements if target.element_order(h) == wanted]
        if match_class_sizes:
            size = source.class_size(generator)
            found = [h for h in found if target.class_size(h) == size]
        return found

    pools = [candidates(g) for g in generators]
    pair_orders = {
        (s, t): source.element_order(generators[s] * generators[t])
        for t in range(len(generators))
        for s in range(t)
    }
    chosen: list[Permutation] = []

    def search(depth: int) -> Iterator[tuple[Permutation, ...]]:
        if depth == len(generators):
            if is_monomorphism_images(source, target, chosen):
                yield tuple(chosen)
            return
        for image in pools[depth]:
            if all(target.element_order(chosen[s] * image) == pair_orders[(s, depth)] for s in range(depth)):
                chosen.append(image)
                yield from search(depth + 1)
                chosen.pop()

    yield from search(0)


def find_embedding(source: FiniteGroup, target: FiniteGroup) -> tuple[Permutation, ...] | None:
    """Images of `source.minimal_generators` for the first monomorphism into `target`, or None."""
    return next(_injective_image_tuples(source, target), None)


def monomorphism_classes(source: FiniteGroup, target: FiniteGroup) -> int:
    """
    Count `target`-conjugacy classes of injective homomorphisms `source -> target`.

    Returns 0 when `|source|` does not divide `|target|`.
    """
    monomorphisms = list(_injective_image_tuples(source, target))
    if not monomorphisms:
        return 0
    actions = [
        lambda images, g=generator: tuple(image.conjugate(g) for image in images) for generator in target.generators
    ]
    return len(find_orbits(actions, monomorphisms))


def is_isomorphic(left: FiniteGroup, right: FiniteGroup) -> bool:
    """Fingerprint filter, then a search for a bijective homomorphism `left -> right`."""
    if left is right:
        return True
    if left.fingerprint != right.fingerprint:
        return False
    return next(_injective_image_tuples(left, right, match_class_sizes=True), None) is not None
