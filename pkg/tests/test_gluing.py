import networkx as nx
import pytest
from hypothesis import given, settings

from butterfly.families import complete, cycle, known_root, path
from butterfly.gluing import (
    LabelingError,
    PartiallyLabeledGraph,
    drop_labels,
    glue,
    predicted_degree,
    square,
    unlabel,
)
from butterfly.graph import GraphError, are_isomorphic, canonical_code, components, empty_graph, is_connected, make_graph
from tests.conftest import nx_square, plgs, to_nx


def labeled_path(n, labels):
    return PartiallyLabeledGraph(path(n), labels)


def triangle_12():
    # vertices 0, 1 carry labels 1, 2; vertex 2 is unlabeled
    return PartiallyLabeledGraph(complete(3), {1: 0, 2: 1})


def test_glue_with_extra_label():
    # path b - 1 - 2 - 3 with b unlabeled
    P = PartiallyLabeledGraph(path(4), {1: 1, 2: 2, 3: 3})
    out = glue(triangle_12(), P)
    assert out.n == 5 and out.graph.num_edges == 5
    assert sorted(out.label_map) == [1, 2, 3]


def test_glue_with_copy_is_k4_minus_edge():
    out = glue(triangle_12(), triangle_12())
    assert out.n == 4 and out.graph.num_edges == 5
    k4_minus = make_graph(4, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3)])
    assert are_isomorphic(unlabel(out), k4_minus) is not None


def test_single_edge_squares_to_p3():
    G, tw = square(PartiallyLabeledGraph(complete(2), {1: 0}))
    assert are_isomorphic(G, path(3)) is not None
    assert tw.pairs == {1: 2, 2: 1} and tw.fixed == {0}


def test_square_of_p5_with_labeled_ends_is_c8():
    H = labeled_path(5, {1: 0, 2: 4})
    G, tw = square(H)
    assert G.n == 2 * 5 - 2 == 8
    assert G.num_edges == 8
    assert are_isomorphic(G, cycle(8)) is not None
    assert len(tw.originals) == 3 and set(tw.copies).isdisjoint(tw.originals)


def test_square_of_edgeless_host():
    G, _ = square(PartiallyLabeledGraph(empty_graph(2), {1: 0}))
    assert G.n == 3 and G.num_edges == 0


def test_predicted_degrees():
    H = labeled_path(5, {1: 0, 2: 4})
    assert predicted_degree(H, 0) == 2
    assert predicted_degree(H, 2) == 2
    W = known_root("wheel:6")
    hub = max(range(W.n), key=W.graph.degree)
    assert W.graph.degree(hub) == 4 and hub in W.labeled
    assert predicted_degree(W, hub) == 6
    with pytest.raises(GraphError):
        predicted_degree(H, 5)


def test_drop_labels_restriction_on_c8_root():
    H = labeled_path(5, {1: 0, 2: 4})
    G, _ = square(drop_labels(H, {1}))
    assert are_isomorphic(G, path(7)) is not None
    assert drop_labels(H, set()) is H
    with pytest.raises(LabelingError):
        drop_labels(H, {1, 2})
    with pytest.raises(LabelingError):
        drop_labels(H, {7})


def test_unlabel_glue_matches_square():
    H = labeled_path(5, {1: 0, 2: 4})
    assert unlabel(H).n == 5
    assert canonical_code(unlabel(glue(H, H))) == canonical_code(square(H)[0])


@pytest.mark.parametrize(
    "labels, message",
    [({}, "at least one"), ({1: 0, 2: 1, 3: 2}, "surjective"), ({1: 0, 2: 0}, "injective"), ({1: 5}, "out of range")],
)
def test_labeling_invariants(labels, message):
    with pytest.raises(LabelingError, match=message):
        PartiallyLabeledGraph(path(3), labels)


@settings(max_examples=200, deadline=None)
@given(plgs(max_n=8))
def test_square_matches_definition(H):
    G, _ = square(H)
    assert nx.is_isomorphic(to_nx(G), nx_square(H))


@settings(max_examples=200, deadline=None)
@given(plgs(max_n=8))
def test_size_bounds(H):
    G, _ = square(H)
    L = H.labeled
    assert G.n == 2 * H.n - len(L)
    inner = sum(1 for u, v in H.graph.edges() if u in L and v in L)
    assert G.num_edges == 2 * H.graph.num_edges - inner <= 2 * H.graph.num_edges
    assert (G.num_edges == 2 * H.graph.num_edges) == (inner == 0)


@settings(max_examples=200, deadline=None)
@given(plgs(max_n=8))
def test_twins_nonadjacent_with_labeled_common_neighbourhood(H):
    G, tw = square(H)
    pairing = tw.pairs
    assert all(pairing[pairing[v]] == v and pairing[v] != v for v in pairing)
    assert set(pairing) == set(range(G.n)) - tw.fixed
    for v in tw.originals:
        w = tw.twin[v]
        assert not G.has_edge(v, w)
        common = G.adj[v] & G.adj[w]
        assert all(u in tw.fixed for u in range(G.n) if common >> u & 1)
    # common neighbourhood equals the labeled neighbours of the root vertex
    labeled_nbrs = {v: sum(1 for u in H.graph.neighbors(v) if u in H.labeled) for v in H.unlabeled}
    counts = [bin(G.adj[v] & G.adj[tw.twin[v]]).count("1") for v in tw.originals]
    assert counts == [labeled_nbrs[v] for v in H.unlabeled]


@settings(max_examples=200, deadline=None)
@given(plgs(max_n=8))
def test_predicted_degree_agrees(H):
    G, tw = square(H)
    # labeled vertices come first, in label order
    where = {v: i for i, (_, v) in enumerate(H.labels)}
    where.update(zip(H.unlabeled, tw.originals))
    assert sorted(tw.fixed) == list(range(len(H.labels)))
    for x in range(H.n):
        assert predicted_degree(H, x) == G.degree(where[x])
        if x not in H.labeled:
            assert G.degree(tw.twin[where[x]]) == predicted_degree(H, x)


@settings(max_examples=150, deadline=None)
@given(plgs(max_n=8))
def test_disconnected_root_gives_disconnected_square(H):
    if H.n and not is_connected(H.graph):
        assert not is_connected(square(H)[0])
        assert len(components(square(H)[0])) >= len(components(H.graph))


@settings(max_examples=150, deadline=None)
@given(plgs(max_n=7), plgs(max_n=7))
def test_glue_commutes(H1, H2):
    a, b = unlabel(glue(H1, H2)), unlabel(glue(H2, H1))
    assert are_isomorphic(a, b) is not None


@settings(max_examples=150, deadline=None)
@given(plgs(max_n=8))
def test_restriction_identity(H):
    labels = sorted(H.label_map)
    T = set(labels[: len(labels) // 2])
    if not T:
        return
    G, tw = square(H)
    gone = {i for i, l in enumerate(labels) if l in T}
    lhs = square(drop_labels(H, T))[0]
    rhs = G.induced([v for v in range(G.n) if v not in gone])
    assert are_isomorphic(lhs, rhs) is not None
