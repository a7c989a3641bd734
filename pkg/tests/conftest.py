import networkx as nx
import pytest

from opt1planar import DynamicGraph, random_optimal


def to_nx(g: DynamicGraph) -> nx.Graph:
    h = nx.Graph()
    h.add_nodes_from(g.vertices())
    h.add_edges_from(g.edges())
    return h


def isomorphic(a: DynamicGraph, b: DynamicGraph) -> bool:
    return nx.is_isomorphic(to_nx(a), to_nx(b))


@pytest.fixture(scope="session")
def small_members():
    """A handful of members of modest size, mixed construction styles."""
    out = []
    for n, seed, prefer in [
        (12, 0, "cr"), (16, 1, "cr"), (20, 2, "sr"), (25, 3, "cr"),
        (30, 4, "sr"), (37, 5, "cr"), (44, 6, "cr"), (50, 7, "sr"),
    ]:
        out.append(random_optimal(n, seed=seed, prefer=prefer))
    return out
