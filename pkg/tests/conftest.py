import itertools
import random
import sys

import networkx as nx
import pytest
from hypothesis import strategies as st

from butterfly.gluing import PartiallyLabeledGraph
from butterfly.graph import Graph, make_graph


def from_nx(g: nx.Graph) -> Graph:
    nodes = sorted(g.nodes())
    index = {v: i for i, v in enumerate(nodes)}
    return make_graph(len(nodes), [(index[u], index[v]) for u, v in g.edges()])


def to_nx(G: Graph) -> nx.Graph:
    g = nx.Graph()
    g.add_nodes_from(range(G.n))
    g.add_edges_from(G.edges())
    return g


def nx_square(H: PartiallyLabeledGraph) -> nx.Graph:
    """Square built straight from the definition, sharing no code with the package."""
    labeled = H.labeled

    def node(side, v):
        return ("L", v) if v in labeled else (side, v)

    g = nx.Graph()
    for side in (1, 2):
        g.add_nodes_from(node(side, v) for v in range(H.n))
        g.add_edges_from((node(side, u), node(side, v)) for u, v in H.graph.edges())
    return g


def random_graph(rng: random.Random, n: int, p: float | None = None) -> Graph:
    p = rng.random() if p is None else p
    return make_graph(n, [e for e in itertools.combinations(range(n), 2) if rng.random() < p])


def random_plg(rng: random.Random, max_n: int = 10) -> PartiallyLabeledGraph:
    n = rng.randint(2, max_n)
    G = random_graph(rng, n)
    k = rng.randint(1, n - 1)
    verts = rng.sample(range(n), k)
    labels = rng.sample(range(1, 3 * n), k)
    return PartiallyLabeledGraph(G, dict(zip(labels, verts)))


@st.composite
def graphs(draw, min_n=0, max_n=8):
    n = draw(st.integers(min_n, max_n))
    pairs = list(itertools.combinations(range(n), 2))
    bits = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    return make_graph(n, [e for e, b in zip(pairs, bits) if b])


@st.composite
def plgs(draw, max_n=8):
    G = draw(graphs(min_n=2, max_n=max_n))
    verts = draw(st.lists(st.integers(0, G.n - 1), min_size=1, max_size=G.n - 1, unique=True))
    labels = draw(st.lists(st.integers(0, 50), min_size=len(verts), max_size=len(verts), unique=True))
    return PartiallyLabeledGraph(G, dict(zip(labels, verts)))


@pytest.fixture(scope="session")
def atlas_classes():
    """Graph classes from the networkx atlas, keyed by order (n <= 7)."""
    out: dict[int, list[Graph]] = {}
    for g in nx.graph_atlas_g()[1:]:
        out.setdefault(g.number_of_nodes(), []).append(from_nx(g))
    return out


def pytest_terminal_summary(terminalreporter):
    module = sys.modules.get("tests.test_acceptance")
    results = getattr(module, "RESULTS", None)
    if not results:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(results):
        ok, elapsed, detail = results[number]
        terminalreporter.write_line(f"criterion {number:2d}: {'PASS' if ok else 'FAIL'} ({elapsed:.2f}s) {detail}")
