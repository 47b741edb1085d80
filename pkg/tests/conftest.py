import networkx as nx
import pytest

from chromatic.groups import FiniteGroup, standard_group


@pytest.fixture(scope="package", autouse=True)
def settings():
    """Settings for unit testing, with a verification corpus small enough for the test run."""
    from chromatic.settings import settings

    settings.verify_max_corpus_order = 12
    return settings


@pytest.fixture(scope="session")
def small_corpus() -> list[FiniteGroup]:
    """Pairwise non-isomorphic groups of order at most 12."""
    specs = ["C1", "C2", "C3", "C4", "C2xC2", "C5", "C6", "S3", "C8", "C4xC2", "D8", "Q8", "C3xC3", "D12", "A4"]
    return [standard_group(spec) for spec in specs]


@pytest.fixture()
def pentagon() -> nx.Graph:
    return nx.cycle_graph(5)


@pytest.fixture()
def pentagon_file(tmp_path, pentagon):
    path = tmp_path / "pentagon.txt"
    path.write_text("# the 5-cycle\n" + "\n".join(f"{u} {v}" for u, v in pentagon.edges) + "\n")
    return path
