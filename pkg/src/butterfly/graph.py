"""Simple undirected graphs on dense vertices 0..n-1, stored as adjacency bitmasks.

Besides the container this module holds the exact machinery the rest of the
package leans on: colour refinement, isomorphism witnesses, automorphism and
involution enumeration, canonical codes and chromatic numbers.
"""

from __future__ import annotations

import itertools
from collections import Counter
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Optional, Sequence

Edge = tuple[int, int]


class GraphError(ValueError):
    """Malformed graph input: vertex out of range, self-loop, asymmetric adjacency."""


class FilterUnavailable(RuntimeError):
    """An exact computation was requested above its configured size threshold."""


def iter_bits(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def mask_of(vertices: Iterable[int]) -> int:
    m = 0
    for v in vertices:
        m |= 1 << v
    return m


@dataclass(frozen=True)
class Graph:
    """Immutable simple graph. ``adj[v]`` is the bitmask of neighbours of ``v``.

    ``names`` is an optional display table (e.g. Johnson subsets); it takes no
    part in equality or hashing.
    """

    n: int
    adj: tuple[int, ...]
    names: Optional[tuple[str, ...]] = field(default=None, compare=False)

    def __post_init__(self):
        if self.n < 0 or len(self.adj) != self.n:
            raise GraphError(f"adjacency has {len(self.adj)} rows for n={self.n}")
        full = (1 << self.n) - 1
        for v, row in enumerate(self.adj):
            if row & ~full:
                raise GraphError(f"vertex {v} has a neighbour outside 0..{self.n - 1}")
            if row >> v & 1:
                raise GraphError(f"self-loop at vertex {v}")
            for u in iter_bits(row):
                if not self.adj[u] >> v & 1:
                    raise GraphError(f"adjacency not symmetric at ({v}, {u})")
        if self.names is not None and len(self.names) != self.n:
            raise GraphError("names table length differs from n")

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.num_edges})"

    @property
    def num_edges(self) -> int:
        return sum(row.bit_count() for row in self.adj) // 2

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.adj[u] >> v & 1)

    def degree(self, v: int) -> int:
        return self.adj[v].bit_count()

    def degrees(self) -> list[int]:
        return [row.bit_count() for row in self.adj]

    def neighbors(self, v: int) -> list[int]:
        return list(iter_bits(self.adj[v]))

    def edges(self) -> list[Edge]:
        return [(u, v) for u in range(self.n) for v in iter_bits(self.adj[u] >> (u + 1) << (u + 1))]

    def name(self, v: int) -> str:
        return self.names[v] if self.names is not None else str(v)

    def induced(self, vertices: Sequence[int]) -> Graph:
        """Induced subgraph; vertex ``vertices[i]`` becomes ``i``."""
        index = {v: i for i, v in enumerate(vertices)}
        if len(index) != len(vertices):
            raise GraphError("repeated vertex in induced subgraph request")
        adj = []
        for v in vertices:
            row = 0
            for u in iter_bits(self.adj[v]):
                j = index.get(u)
                if j is not None:
                    row |= 1 << j
            adj.append(row)
        names = tuple(self.names[v] for v in vertices) if self.names is not None else None
        return Graph(len(vertices), tuple(adj), names)

    def relabel(self, perm: Sequence[int]) -> Graph:
        """Graph in which vertex ``v`` is renamed ``perm[v]``."""
        adj = [0] * self.n
        for v in range(self.n):
            adj[perm[v]] = mask_of(perm[u] for u in iter_bits(self.adj[v]))
        return Graph(self.n, tuple(adj))

    def complement(self) -> Graph:
        full = (1 << self.n) - 1
        return Graph(self.n, tuple(full & ~row & ~(1 << v) for v, row in enumerate(self.adj)))

    def without_edges(self, removed: Iterable[Edge]) -> Graph:
        adj = list(self.adj)
        for u, v in removed:
            adj[u] &= ~(1 << v)
            adj[v] &= ~(1 << u)
        return Graph(self.n, tuple(adj), self.names)

    def is_automorphism(self, perm: Sequence[int]) -> bool:
        if len(perm) != self.n or sorted(perm) != list(range(self.n)):
            return False
        return all(
            mask_of(perm[u] for u in iter_bits(self.adj[v])) == self.adj[perm[v]]
            for v in range(self.n)
        )


def make_graph(n: int, edges: Iterable[Sequence[int]], names: Optional[Sequence[str]] = None) -> Graph:
    adj = [0] * n
    for pair in edges:
        u, v = pair
        if not (0 <= u < n and 0 <= v < n):
            raise GraphError(f"edge ({u}, {v}) out of range for n={n}")
        if u == v:
            raise GraphError(f"self-loop ({u}, {v})")
        adj[u] |= 1 << v
        adj[v] |= 1 << u
    return Graph(n, tuple(adj), tuple(names) if names is not None else None)


def empty_graph(n: int) -> Graph:
    return Graph(n, (0,) * n)


def disjoint_union(*graphs: Graph) -> Graph:
    adj: list[int] = []
    offset = 0
    for g in graphs:
        adj.extend(row << offset for row in g.adj)
        offset += g.n
    return Graph(offset, tuple(adj))


def _check_vertex(G: Graph, v: int) -> None:
    if not 0 <= v < G.n:
        raise GraphError(f"vertex {v} out of range for n={G.n}")


def open_neighborhood(G: Graph, v: int) -> frozenset[int]:
    _check_vertex(G, v)
    return frozenset(iter_bits(G.adj[v]))


def closed_neighborhood(G: Graph, v: int) -> frozenset[int]:
    _check_vertex(G, v)
    return frozenset(iter_bits(G.adj[v] | 1 << v))


def component_masks(G: Graph, within: Optional[int] = None) -> list[int]:
    """Components of the subgraph induced by ``within`` (default: all), as bitmasks,
    ordered by smallest vertex."""
    todo = (1 << G.n) - 1 if within is None else within
    comps = []
    while todo:
        frontier = todo & -todo
        comp = frontier
        while frontier:
            nxt = 0
            for v in iter_bits(frontier):
                nxt |= G.adj[v]
            frontier = nxt & todo & ~comp
            comp |= frontier
        comps.append(comp)
        todo &= ~comp
    return comps


def components(G: Graph) -> list[frozenset[int]]:
    return [frozenset(iter_bits(c)) for c in component_masks(G)]


def is_connected(G: Graph) -> bool:
    return G.n >= 1 and len(component_masks(G)) == 1


def universal_vertices(G: Graph) -> list[int]:
    return [v for v in range(G.n) if G.adj[v].bit_count() == G.n - 1]


# ---------------------------------------------------------------------------
# colour refinement


def refine(adjs: Sequence[Sequence[int]], colorings: Sequence[Sequence[int]]) -> Optional[list[list[int]]]:
    """Jointly refine colourings of one or more graphs to the coarsest equitable
    partition below them.

    Colour ids are assigned by sorting signatures, so they are invariant under
    relabelling and comparable across the graphs. Returns None as soon as the
    colour histograms of the graphs disagree (no colour-preserving isomorphism).
    """
    cols = [list(c) for c in colorings]
    if len(cols) > 1 and any(Counter(c) != Counter(cols[0]) for c in cols[1:]):
        return None
    k = len({c for col in cols for c in col})
    while True:
        sigs = [
            [(col[v], tuple(sorted(col[u] for u in iter_bits(adj[v])))) for v in range(len(col))]
            for adj, col in zip(adjs, cols)
        ]
        table = {s: i for i, s in enumerate(sorted({s for sig in sigs for s in sig}))}
        cols = [[table[s] for s in sig] for sig in sigs]
        if len(cols) > 1:
            first = Counter(cols[0])
            if any(Counter(c) != first for c in cols[1:]):
                return None
        if len(table) == k:
            return cols
        k = len(table)


def _subset_coloring(n: int, subset: Optional[Iterable[int]]) -> list[int]:
    col = [0] * n
    if subset is not None:
        for v in subset:
            col[v] = 1
    return col


def _pair_search(A: Graph, B: Graph, colA: list[int], colB: list[int]) -> Iterator[tuple[int, ...]]:
    """Colour-preserving isomorphisms A -> B in lexicographic order of the image tuple.

    Individualise the smallest vertex of A that is not yet in a singleton cell,
    try each same-coloured vertex of B in ascending order, refine, recurse.
    """
    n = A.n
    start = refine([A.adj, B.adj], [colA, colB])
    if start is None:
        return

    def rec(ca: list[int], cb: list[int]) -> Iterator[tuple[int, ...]]:
        sizes = Counter(ca)
        v = next((x for x in range(n) if sizes[ca[x]] > 1), None)
        if v is None:
            where = {c: w for w, c in enumerate(cb)}
            f = tuple(where[c] for c in ca)
            if all(mask_of(f[u] for u in iter_bits(A.adj[x])) == B.adj[f[x]] for x in range(n)):
                yield f
            return
        target = ca[v]
        for w in range(n):
            if cb[w] != target:
                continue
            na, nb = ca.copy(), cb.copy()
            na[v] = nb[w] = -1
            nxt = refine([A.adj, B.adj], [na, nb])
            if nxt is not None:
                yield from rec(*nxt)

    yield from rec(*start)


def are_isomorphic(
    G: Graph,
    H: Graph,
    colorsG: Optional[Iterable[int]] = None,
    colorsH: Optional[Iterable[int]] = None,
) -> Optional[tuple[int, ...]]:
    """Lexicographically least isomorphism ``f`` with ``f[v]`` the image of ``v``,
    or None. When both vertex subsets are given, ``f`` must map one onto the other."""
    if (colorsG is None) != (colorsH is None):
        raise ValueError("give both colour subsets or neither")
    if G.n != H.n or G.num_edges != H.num_edges:
        return None
    if G.n == 0:
        return ()
    return next(_pair_search(G, H, _subset_coloring(G.n, colorsG), _subset_coloring(H.n, colorsH)), None)


def enumerate_automorphisms(G: Graph) -> Iterator[tuple[int, ...]]:
    col = [0] * G.n
    if G.n == 0:
        yield ()
        return
    yield from _pair_search(G, G, col, list(col))


def enumerate_involutions(G: Graph) -> Iterator[tuple[int, ...]]:
    """Non-identity involutive automorphisms, in lexicographic order."""
    n = G.n
    if n == 0:
        return
    col = refine([G.adj], [[0] * n])[0]
    adj = G.adj
    phi = [-1] * n

    def fits(v: int, w: int, done: int) -> bool:
        img = 0
        for u in iter_bits(adj[v] & done):
            img |= 1 << phi[u]
        return img == adj[w] & done

    def rec(done: int, moved: bool) -> Iterator[tuple[int, ...]]:
        if done == (1 << n) - 1:
            if moved:
                yield tuple(phi)
            return
        free = ~done & ((1 << n) - 1)
        v = (free & -free).bit_length() - 1
        for w in iter_bits(free):
            if col[w] != col[v]:
                continue
            nd = done | 1 << v | 1 << w
            phi[v], phi[w] = w, v
            if fits(v, w, nd):
                yield from rec(nd, moved or w != v)
            phi[v] = phi[w] = -1

    yield from rec(0, False)


def brute_force_automorphisms(G: Graph) -> Iterator[tuple[int, ...]]:
    """Every permutation that is an automorphism, by exhaustion. For cross-checks only."""
    for perm in itertools.permutations(range(G.n)):
        if G.is_automorphism(perm):
            yield perm


# ---------------------------------------------------------------------------
# canonical codes


def canonical_code(G: Graph, subset: Optional[Iterable[int]] = None) -> bytes:
    """Isomorphism-invariant byte key; equal keys iff the (optionally vertex-coloured)
    graphs are isomorphic.

    Minimum adjacency string over the leaves of an individualisation-refinement
    tree. Branches on vertices that are twins of an already explored vertex in
    the same cell are skipped, since the swap is an automorphism of the coloured
    graph at that node.
    """
    n = G.n
    adj = G.adj
    base = _subset_coloring(n, subset)
    start = refine([adj], [base])[0] if n else []
    best: list[Optional[bytes]] = [None]

    def leaf_code(col: list[int]) -> bytes:
        order = sorted(range(n), key=col.__getitem__)
        pos = {v: i for i, v in enumerate(order)}
        bits = 0
        for i, v in enumerate(order):
            for u in iter_bits(adj[v]):
                j = pos[u]
                if j > i:
                    bits |= 1 << (j * (j - 1) // 2 + i)
        nbytes = (n * (n - 1) // 2 + 7) // 8
        head = n.to_bytes(4, "big") + bytes(base[v] for v in order)
        return head + bits.to_bytes(nbytes, "big")

    def rec(col: list[int]) -> None:
        sizes = Counter(col)
        cells = sorted(c for c, s in sizes.items() if s > 1)
        if not cells:
            code = leaf_code(col)
            if best[0] is None or code < best[0]:
                best[0] = code
            return
        target = cells[0]
        tried: list[int] = []
        for v in range(n):
            if col[v] != target:
                continue
            if any((adj[v] & ~(1 << t)) == (adj[t] & ~(1 << v)) for t in tried):
                continue
            tried.append(v)
            nc = col.copy()
            nc[v] = -1
            rec(refine([adj], [nc])[0])

    rec(start)
    return best[0] if best[0] is not None else (0).to_bytes(4, "big")


def all_graphs(n: int) -> list[Graph]:
    """One representative per isomorphism class on ``n`` vertices (small n only),
    ordered by edge count then canonical code."""
    pairs = list(itertools.combinations(range(n), 2))
    seen: dict[bytes, Graph] = {}
    for bits in range(1 << len(pairs)):
        g = make_graph(n, [p for i, p in enumerate(pairs) if bits >> i & 1])
        seen.setdefault(canonical_code(g), g)
    return sorted(seen.values(), key=lambda g: (g.num_edges, canonical_code(g)))


# ---------------------------------------------------------------------------
# colouring

CHROMATIC_MAX_N = 16


def clique_number(G: Graph) -> int:
    best = 0

    def expand(size: int, cand: int) -> None:
        nonlocal best
        if size > best:
            best = size
        while cand:
            if size + cand.bit_count() <= best:
                return
            v = (cand & -cand).bit_length() - 1
            cand &= ~(1 << v)
            expand(size + 1, cand & G.adj[v])

    expand(0, (1 << G.n) - 1)
    return best


def _colorable(G: Graph, k: int) -> bool:
    n = G.n
    order = sorted(range(n), key=lambda v: -G.degree(v))
    color = [-1] * n

    def rec(i: int, used: int) -> bool:
        if i == n:
            return True
        v = order[i]
        banned = {color[u] for u in iter_bits(G.adj[v]) if color[u] >= 0}
        # colours beyond used+1 are symmetric to colour `used`
        for c in range(min(k, used + 1)):
            if c not in banned:
                color[v] = c
                if rec(i + 1, max(used, c + 1)):
                    return True
        color[v] = -1
        return False

    return rec(0, 0)


def chromatic_number(G: Graph, max_n: int = CHROMATIC_MAX_N) -> int:
    if G.n > max_n:
        raise FilterUnavailable(f"exact colouring limited to n <= {max_n}, got n={G.n}")
    if G.n == 0:
        return 0
    k = max(1, clique_number(G))
    while not _colorable(G, k):
        k += 1
    return k


def is_vertex_chromatic_critical(G: Graph, max_n: int = CHROMATIC_MAX_N) -> bool:
    """True when deleting any single vertex lowers the chromatic number."""
    chi = chromatic_number(G, max_n)
    for v in range(G.n):
        rest = G.induced([u for u in range(G.n) if u != v])
        if chromatic_number(rest, max_n) >= chi:
            return False
    return True


def has_twin_pair(G: Graph) -> Optional[tuple[int, int]]:
    """First pair (lexicographic) of distinct vertices with equal open neighbourhoods."""
    first: dict[int, int] = {}
    hits = []
    for v in range(G.n):
        u = first.setdefault(G.adj[v], v)
        if u != v:
            hits.append((u, v))
    # lexicographic order over pairs, not discovery order
    return min(hits) if hits else None
