"""Partially labeled graphs and the gluing product.

Gluing identifies equally labeled vertices of two graphs and keeps all edges,
collapsing parallel ones. Gluing a graph with itself is squaring; the result is
returned unlabeled together with the pairing of duplicated vertices.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping

from .graph import Graph, GraphError, iter_bits


class LabelingError(ValueError):
    """A label map that is not injective, not partial, or empty."""


@dataclass(frozen=True)
class PartiallyLabeledGraph:
    """A graph with an injective, non-surjective, non-empty map from labels to vertices.

    ``labels`` is stored as sorted ``(label, vertex)`` pairs so instances are
    hashable; use :attr:`label_map` for dict access.
    """

    graph: Graph
    labels: tuple[tuple[int, int], ...]

    def __init__(self, graph: Graph, labels: Mapping[int, int] | Iterable[tuple[int, int]]):
        pairs = sorted((labels.items() if isinstance(labels, Mapping) else labels))
        object.__setattr__(self, "graph", graph)
        object.__setattr__(self, "labels", tuple((int(l), int(v)) for l, v in pairs))
        self._validate()

    def _validate(self) -> None:
        if not self.labels:
            raise LabelingError("partially labeled graph needs at least one labeled vertex")
        names = [l for l, _ in self.labels]
        if len(set(names)) != len(names):
            raise LabelingError("duplicate label")
        if any(l < 0 for l in names):
            raise LabelingError("labels must be non-negative integers")
        verts = [v for _, v in self.labels]
        for v in verts:
            if not 0 <= v < self.graph.n:
                raise LabelingError(f"label target {v} out of range for n={self.graph.n}")
        if len(set(verts)) != len(verts):
            raise LabelingError("labeling is not injective")
        if len(verts) == self.graph.n:
            raise LabelingError("labeling is surjective; at least one vertex must stay unlabeled")

    @property
    def label_map(self) -> dict[int, int]:
        return dict(self.labels)

    @property
    def labeled(self) -> frozenset[int]:
        return frozenset(v for _, v in self.labels)

    @property
    def unlabeled(self) -> list[int]:
        fixed = self.labeled
        return [v for v in range(self.graph.n) if v not in fixed]

    @property
    def n(self) -> int:
        return self.graph.n

    def __repr__(self) -> str:
        return f"PartiallyLabeledGraph(n={self.graph.n}, m={self.graph.num_edges}, labels={self.label_map})"


@dataclass(frozen=True)
class TwinMap:
    """Pairing of duplicated vertices in a square.

    ``twin[v]`` is the copy of ``v`` (or ``v`` itself when ``v`` is a glued,
    labeled vertex). ``originals`` are the first copies, in root order.
    """

    twin: tuple[int, ...]
    fixed: frozenset[int]
    originals: tuple[int, ...]

    @property
    def pairs(self) -> dict[int, int]:
        return {v: w for v, w in enumerate(self.twin) if v != w}

    @property
    def copies(self) -> tuple[int, ...]:
        return tuple(self.twin[v] for v in self.originals)


def _glue_layout(H1: PartiallyLabeledGraph, H2: PartiallyLabeledGraph):
    """Vertex ids of the glued graph: labels in ascending order, then the unlabeled
    vertices of H1, then those of H2."""
    m1, m2 = H1.label_map, H2.label_map
    all_labels = sorted(set(m1) | set(m2))
    where1: dict[int, int] = {}
    where2: dict[int, int] = {}
    for i, l in enumerate(all_labels):
        if l in m1:
            where1[m1[l]] = i
        if l in m2:
            where2[m2[l]] = i
    nxt = len(all_labels)
    for v in H1.unlabeled:
        where1[v] = nxt
        nxt += 1
    for v in H2.unlabeled:
        where2[v] = nxt
        nxt += 1
    return all_labels, where1, where2, nxt


def _glued_graph(H1, H2, where1, where2, n) -> Graph:
    adj = [0] * n
    for H, where in ((H1, where1), (H2, where2)):
        for u, v in H.graph.edges():
            a, b = where[u], where[v]
            adj[a] |= 1 << b
            adj[b] |= 1 << a
    return Graph(n, tuple(adj))


def glue(H1: PartiallyLabeledGraph, H2: PartiallyLabeledGraph) -> PartiallyLabeledGraph:
    """Glue along shared labels; labels of both factors are kept on the result."""
    all_labels, where1, where2, n = _glue_layout(H1, H2)
    return PartiallyLabeledGraph(_glued_graph(H1, H2, where1, where2, n), {l: i for i, l in enumerate(all_labels)})


def square(H: PartiallyLabeledGraph) -> tuple[Graph, TwinMap]:
    all_labels, where1, where2, n = _glue_layout(H, H)
    G = _glued_graph(H, H, where1, where2, n)
    twin = list(range(n))
    originals = []
    for v in H.unlabeled:
        a, b = where1[v], where2[v]
        twin[a], twin[b] = b, a
        originals.append(a)
    return G, TwinMap(tuple(twin), frozenset(range(len(all_labels))), tuple(originals))


def predicted_degree(H: PartiallyLabeledGraph, x: int) -> int:
    """Degree of ``x`` inside the square of ``H``, from ``H`` alone."""
    if not 0 <= x < H.graph.n:
        raise GraphError(f"vertex {x} not in H (n={H.graph.n})")
    deg = H.graph.degree(x)
    labeled = H.labeled
    if x not in labeled:
        return deg
    alpha = sum(1 for u in iter_bits(H.graph.adj[x]) if u in labeled)
    return 2 * deg - alpha


def drop_labels(H: PartiallyLabeledGraph, T: Iterable[int]) -> PartiallyLabeledGraph:
    """Delete the vertices carrying labels ``T`` (a proper subset of the labels)."""
    T = set(T)
    m = H.label_map
    if not T <= set(m):
        raise LabelingError(f"labels {sorted(T - set(m))} are not used by H")
    if T == set(m):
        raise LabelingError("T must be a proper subset of the label set")
    if not T:
        return H
    gone = {m[l] for l in T}
    keep = [v for v in range(H.graph.n) if v not in gone]
    index = {v: i for i, v in enumerate(keep)}
    return PartiallyLabeledGraph(H.graph.induced(keep), {l: index[v] for l, v in m.items() if l not in T})


def unlabel(H: PartiallyLabeledGraph) -> Graph:
    return H.graph
