"""
Right-angled Coxeter groups.

The group W_L of a simple graph L has one involution per vertex, with two involutions commuting exactly when their
vertices are adjacent. Its finite subgroups up to conjugacy are the elementary abelian groups spanned by cliques, so
every chromatic Euler characteristic is a polynomial in the clique counts of L.
"""

import itertools
from collections.abc import Iterable
from fractions import Fraction
from math import comb
from pathlib import Path

import networkx as nx
from loguru import logger
from pydantic import BaseModel, Field, ValidationError

from chromatic.errors import InvalidGraph
from chromatic.utils import require_prime


class SphericalProfile(BaseModel):
    """`counts[l]` is the number of l-cliques of the defining graph; `counts[0] == 1` for the empty clique."""

    counts: tuple[int, ...]

    @property
    def clique_number(self) -> int:
        return max(size for size, count in enumerate(self.counts) if count)

    def __getitem__(self, size: int) -> int:
        return self.counts[size] if 0 <= size < len(self.counts) else 0


class CoxeterGraphModel(BaseModel):
    """JSON form of a defining graph: `{"vertices": s, "edges": [[u, v], ...]}` on vertices `0..s-1`."""

    vertices: int = Field(ge=0)
    edges: list[tuple[int, int]] = []


def make_graph(vertex_count: int, edges: Iterable[tuple[int, int]]) -> nx.Graph:
    """
    Build a defining graph on `0..vertex_count-1`.

    Raises:
        InvalidGraph: On loops or vertices outside the range.
    """
    graph = nx.Graph()
    graph.add_nodes_from(range(vertex_count))
    for u, v in edges:
        if u == v:
            raise InvalidGraph(f"Loop at vertex {u}.")
        if not (0 <= u < vertex_count and 0 <= v < vertex_count):
            raise InvalidGraph(f"Edge ({u}, {v}) leaves the vertex range 0..{vertex_count - 1}.")
        graph.add_edge(u, v)
    return graph


def _validate(graph: nx.Graph) -> None:
    """Defining graphs have no loops."""
    if nx.number_of_selfloops(graph):
        raise InvalidGraph(f"Graph has loops at {sorted(v for v, _ in nx.selfloop_edges(graph))}.")


def clique_census(graph: nx.Graph) -> SphericalProfile:
    """
    Count cliques of every size without listing them.

    Pivoting Bron-Kerbosch: each leaf of the recursion tree stands for every clique made of its held vertices plus
    any subset of its pivots, which are counted at once by a binomial expansion.

    Raises:
        InvalidGraph: When the graph has loops.
    """
    _validate(graph)
    adjacency = {v: set(graph[v]) for v in graph}
    counts = [0] * (len(adjacency) + 1)

    def expand(candidates: set, held: int, pivots: int) -> None:
        if not candidates:
            for extra in range(pivots + 1):
                counts[held + extra] += comb(pivots, extra)
            return
        pivot = max(sorted(candidates), key=lambda u: len(adjacency[u] & candidates))
        for v in sorted(candidates - adjacency[pivot]):
            if v == pivot:
                expand(candidates & adjacency[v], held, pivots + 1)
            else:
                expand(candidates & adjacency[v], held + 1, pivots)
            candidates = candidates - {v}

    expand(set(adjacency), 0, 0)
    while len(counts) > 1 and counts[-1] == 0:
        counts.pop()
    logger.debug(f"clique profile of a graph with {len(adjacency)} vertices: {counts}")
    return SphericalProfile(counts=tuple(counts))


def subset_profile(graph: nx.Graph) -> SphericalProfile:
    """Clique counts by testing every vertex subset; exponential, for cross-checks on small graphs."""
    _validate(graph)
    vertices = sorted(graph)
    counts = [1]
    for size in range(1, len(vertices) + 1):
        found = sum(
            1
            for subset in itertools.combinations(vertices, size)
            if all(graph.has_edge(u, v) for u, v in itertools.combinations(subset, 2))
        )
        if not found:
            break
        counts.append(found)
    return SphericalProfile(counts=tuple(counts))


def list_cliques(graph: nx.Graph) -> list[tuple[int, ...]]:
    """Every clique (the empty one first), by size then lexicographically."""
    _validate(graph)
    cliques = [tuple(sorted(c)) for c in nx.enumerate_all_cliques(graph)]
    return [()] + sorted(cliques, key=lambda c: (len(c), c))


def chi_kn_coxeter(graph: nx.Graph, n: int, p: int = 2) -> int:
    """
    `chi_K(n)(BW_L) = sum_l s(l) (2^n - 1)^l` at the prime 2.

    At an odd prime the elementary abelian 2-groups are invisible and only the empty clique survives.
    """
    require_prime(p)
    if n < 0:
        raise ValueError(f"Height must be non-negative, got {n}; use chi_orb_coxeter for the orbifold form.")
    step = 2**n - 1 if p == 2 else 0
    profile = clique_census(graph)
    return sum(count * step**size for size, count in enumerate(profile.counts))


def chi_orb_coxeter(graph: nx.Graph) -> Fraction:
    """`chi_orb(BW_L) = sum_l s(l) (-1/2)^l`, the height -1 value of the same polynomial."""
    profile = clique_census(graph)
    return sum((count * Fraction(-1, 2) ** size for size, count in enumerate(profile.counts)), Fraction(0))


# ---------------------------------------------------------------------------------------------------------------------
# graph files
# ---------------------------------------------------------------------------------------------------------------------


def read_edge_list(path: Path) -> nx.Graph:
    """
    Read `u v` lines; a line holding a single vertex declares it. Blank lines and `#` comments are skipped.

    Only labels that appear in the file become vertices; they are renumbered `0..s-1` in increasing order, so 1-based
    files and files with gaps describe the graph they list.

    Raises:
        InvalidGraph: On malformed lines, loops or negative vertices.
    """
    edges: list[tuple[int, int]] = []
    vertices: set[int] = set()
    for number, line in enumerate(Path(path).read_text().splitlines(), start=1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        try:
            labels = [int(token) for token in line.split()]
        except ValueError:
            raise InvalidGraph(f"{path}:{number}: expected integer vertices, got {line!r}.") from None
        if len(labels) not in (1, 2) or min(labels) < 0:
            raise InvalidGraph(f"{path}:{number}: expected `u v` or `v`, got {line!r}.")
        vertices.update(labels)
        if len(labels) == 2:
            edges.append((labels[0], labels[1]))
    relabel = {label: index for index, label in enumerate(sorted(vertices))}
    return make_graph(len(relabel), [(relabel[u], relabel[v]) for u, v in edges])


def read_adjacency_json(path: Path) -> nx.Graph:
    """Read a `CoxeterGraphModel` JSON file."""
    try:
        model = CoxeterGraphModel.model_validate_json(Path(path).read_text())
    except ValidationError as e:
        raise InvalidGraph(f"{path}: {e}") from None
    return make_graph(model.vertices, model.edges)


def load_graph(path: Path | str) -> nx.Graph:
    """Read a defining graph: `.json` files as `CoxeterGraphModel`, anything else as an edge list."""
    path = Path(path)
    graph = read_adjacency_json(path) if path.suffix == ".json" else read_edge_list(path)
    logger.debug(f"loaded graph {path} with {graph.number_of_nodes()} vertices and {graph.number_of_edges()} edges")
    return graph


def dump_graph(graph: nx.Graph) -> str:
    """Serialize a graph on `0..s-1` as a `CoxeterGraphModel`."""
    model = CoxeterGraphModel(vertices=graph.number_of_nodes(), edges=sorted(tuple(sorted(e)) for e in graph.edges))
    return model.model_dump_json()
