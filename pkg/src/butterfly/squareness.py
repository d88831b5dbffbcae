"""Deciding whether a graph is a square, with checkable certificates.

A graph is a square exactly when it has a butterfly involution: a non-identity
involutive automorphism ``phi`` whose fixed set F is non-empty and whose moved
vertices split into two sides A0, A1 that ``phi`` swaps, with no edge between
the sides and with every moved ``u`` sharing only fixed neighbours with
``phi(u)``.
"""

from __future__ import annotations

import enum
import itertools
import os
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Optional, Sequence

from .gluing import PartiallyLabeledGraph, square
from .graph import (
    FilterUnavailable,
    Graph,
    GraphError,
    are_isomorphic,
    canonical_code,
    component_masks,
    has_twin_pair,
    is_connected,
    is_vertex_chromatic_critical,
    iter_bits,
    mask_of,
    refine,
    CHROMATIC_MAX_N,
)

DEFAULT_MAX_N = 20


class SearchThresholdExceeded(RuntimeError):
    """The exhaustive search was asked to run above its size threshold."""


class CertificateError(ValueError):
    """A butterfly certificate failed verification."""


def search_threshold(max_n: Optional[int] = None) -> int:
    if max_n is not None:
        return max_n
    env = os.environ.get("BUTTERFLY_MAX_N")
    return int(env) if env else DEFAULT_MAX_N


@dataclass(frozen=True)
class ButterflyCertificate:
    phi: tuple[int, ...]
    fixed: frozenset[int]
    A0: frozenset[int]
    A1: frozenset[int]

    @classmethod
    def from_involution(cls, G: Graph, phi: Sequence[int], A0: Optional[Iterable[int]] = None) -> ButterflyCertificate:
        """Build a certificate from ``phi``; the sides are derived from the components
        of G - F unless ``A0`` is given."""
        phi = tuple(phi)
        fixed = frozenset(v for v in range(len(phi)) if phi[v] == v)
        if A0 is None:
            sides = _split_sides(G, phi, mask_of(fixed))
            a0 = frozenset(iter_bits(sides[0])) if sides else frozenset(v for v in range(len(phi)) if phi[v] > v)
        else:
            a0 = frozenset(A0)
        a1 = frozenset(phi[v] for v in a0)
        return cls(phi, fixed, a0, a1)

    def to_json(self) -> dict:
        return {
            "phi": list(self.phi),
            "fixed": sorted(self.fixed),
            "A0": sorted(self.A0),
            "A1": sorted(self.A1),
        }

    @classmethod
    def from_json(cls, obj: dict) -> ButterflyCertificate:
        return cls(tuple(obj["phi"]), frozenset(obj["fixed"]), frozenset(obj["A0"]), frozenset(obj["A1"]))

    def summary(self) -> str:
        swaps = " ".join(f"({a} {self.phi[a]})" for a in sorted(self.A0))
        return f"|F|={len(self.fixed)} swaps={swaps}"


@dataclass(frozen=True)
class CertificateCheck:
    """Outcome of :func:`check_certificate`.

    ``condition`` is None on success, 0 for a structural failure (``phi`` is not
    an involutive automorphism, or the recorded sets disagree with it), else the
    index 1-4 of the first violated butterfly condition.
    """

    ok: bool
    condition: Optional[int] = None
    reason: str = ""

    def __bool__(self) -> bool:
        return self.ok


def check_certificate(G: Graph, cert: ButterflyCertificate) -> CertificateCheck:
    n = G.n
    phi = cert.phi
    for s in (cert.fixed, cert.A0, cert.A1):
        if any(not 0 <= v < n for v in s):
            return CertificateCheck(False, 0, "certificate vertex out of range")
    if len(phi) != n or sorted(phi) != list(range(n)):
        return CertificateCheck(False, 0, "phi is not a permutation of V(G)")
    if any(phi[phi[v]] != v for v in range(n)):
        return CertificateCheck(False, 0, "phi is not an involution")
    if not G.is_automorphism(phi):
        return CertificateCheck(False, 0, "phi is not an automorphism")
    if cert.fixed != frozenset(v for v in range(n) if phi[v] == v):
        return CertificateCheck(False, 0, "fixed set disagrees with phi")
    if not cert.fixed:
        return CertificateCheck(False, 1, "fixed set is empty")
    moved = frozenset(range(n)) - cert.fixed
    if not moved:
        return CertificateCheck(False, 2, "phi moves no vertex")
    F = mask_of(cert.fixed)
    for u in sorted(moved):
        if G.adj[u] & G.adj[phi[u]] != G.adj[u] & F:
            return CertificateCheck(False, 3, f"vertex {u} and {phi[u]} share a non-fixed neighbour")
    if cert.A0 & cert.A1 or cert.A0 | cert.A1 != moved:
        return CertificateCheck(False, 4, "A0, A1 do not partition the moved vertices")
    if any(phi[v] not in cert.A1 for v in cert.A0):
        return CertificateCheck(False, 4, "phi does not swap A0 and A1")
    a1 = mask_of(cert.A1)
    for u in cert.A0:
        if G.adj[u] & a1:
            return CertificateCheck(False, 4, f"edge between A0 and A1 at vertex {u}")
    return CertificateCheck(True)


def _split_sides(G: Graph, phi: Sequence[int], fixed: int) -> Optional[tuple[int, int]]:
    """Assign components of G - F to sides; None when some component meets its image.

    No edge leaves a component of G - F except into F, so a valid split exists
    iff ``phi`` moves every such component off itself.
    """
    moved = ((1 << G.n) - 1) & ~fixed
    a0 = a1 = 0
    for comp in component_masks(G, moved):
        if comp & (a0 | a1):
            continue
        image = mask_of(phi[v] for v in iter_bits(comp))
        if image & comp:
            return None
        a0 |= comp
        a1 |= image
    return a0, a1


# ---------------------------------------------------------------------------
# exhaustive search


@dataclass
class SearchStats:
    involutions_examined: int = 0
    branches_pruned: int = 0

    def to_json(self) -> dict:
        return {"involutions_examined": self.involutions_examined, "branches_pruned": self.branches_pruned}


def butterfly_involutions(G: Graph, stats: Optional[SearchStats] = None) -> Iterator[ButterflyCertificate]:
    """Every butterfly involution of G, in lexicographic order of ``phi``.

    Backtracks over vertices in index order, choosing ``phi(v) = v`` or a swap
    with a later vertex of the same refined colour. Universal vertices are
    forced into F; a swapped pair must be non-adjacent and its common
    neighbours are forced into F.
    """
    stats = stats if stats is not None else SearchStats()
    n = G.n
    if n < 3:
        return
    adj = G.adj
    full = (1 << n) - 1
    col = refine([adj], [[0] * n])[0]
    universal = mask_of(v for v in range(n) if adj[v].bit_count() == n - 1)
    phi = [-1] * n

    def image(mask: int) -> int:
        m = 0
        for u in iter_bits(mask):
            m |= 1 << phi[u]
        return m

    def rec(done: int, fixed: int, must_fix: int) -> Iterator[ButterflyCertificate]:
        if done == full:
            if not fixed or fixed == full:
                stats.branches_pruned += 1
                return
            stats.involutions_examined += 1
            sides = _split_sides(G, phi, fixed)
            if sides is None:
                return
            yield ButterflyCertificate(
                tuple(phi), frozenset(iter_bits(fixed)), frozenset(iter_bits(sides[0])), frozenset(iter_bits(sides[1]))
            )
            return
        free = full & ~done
        v = (free & -free).bit_length() - 1
        # phi(v) = v
        nd = done | 1 << v
        phi[v] = v
        if image(adj[v] & nd) == adj[v] & nd:
            yield from rec(nd, fixed | 1 << v, must_fix)
        else:
            stats.branches_pruned += 1
        phi[v] = -1
        if must_fix >> v & 1:
            return
        moved = done & ~fixed
        for w in iter_bits(free & ~(1 << v) & ~adj[v] & ~must_fix):
            if col[w] != col[v]:
                continue
            common = adj[v] & adj[w]
            if common & moved:
                stats.branches_pruned += 1
                continue
            nd = done | 1 << v | 1 << w
            phi[v], phi[w] = w, v
            if image(adj[v] & nd) == adj[w] & nd:
                yield from rec(nd, fixed, must_fix | common)
            else:
                stats.branches_pruned += 1
            phi[v] = phi[w] = -1

    yield from rec(0, 0, universal)


class Verdict(str, enum.Enum):
    SQUARE = "square"
    NOT_SQUARE = "not_square"
    UNDECIDED = "undecided"


class DecidedBy(str, enum.Enum):
    TWINS = "twins"
    DOMINATING_PRUNE = "dominating-prune"
    CHROMATIC_CRITICAL = "chromatic-critical"
    EXHAUSTIVE_SEARCH = "exhaustive-search"
    CONSTRUCTIVE_LIFT = "constructive-lift"
    THRESHOLD = "threshold"


@dataclass
class Classification:
    verdict: Verdict
    decided_by: DecidedBy
    certificate: Optional[ButterflyCertificate] = None
    stats: SearchStats = field(default_factory=SearchStats)

    @property
    def is_square(self) -> bool:
        return self.verdict is Verdict.SQUARE

    def to_json(self) -> dict:
        return {
            "verdict": self.verdict.value,
            "decided_by": self.decided_by.value,
            "certificate": self.certificate.to_json() if self.certificate else None,
            "stats": self.stats.to_json(),
        }


def twin_certificate(G: Graph) -> Optional[ButterflyCertificate]:
    """Certificate swapping the first pair of vertices with equal open neighbourhoods."""
    if G.n < 3:
        return None
    pair = has_twin_pair(G)
    if pair is None:
        return None
    a, b = pair
    phi = list(range(G.n))
    phi[a], phi[b] = b, a
    return ButterflyCertificate(tuple(phi), frozenset(range(G.n)) - {a, b}, frozenset({a}), frozenset({b}))


def is_square(
    G: Graph,
    *,
    max_n: Optional[int] = None,
    use_twins: bool = True,
    use_chromatic: bool = True,
    chromatic_max_n: int = CHROMATIC_MAX_N,
) -> Classification:
    if G.n < 1:
        raise GraphError("is_square needs at least one vertex")
    if use_twins:
        cert = twin_certificate(G)
        if cert is not None:
            return Classification(Verdict.SQUARE, DecidedBy.TWINS, cert)
    if G.n > search_threshold(max_n):
        return Classification(Verdict.UNDECIDED, DecidedBy.THRESHOLD)
    movable = G.n - len([v for v in range(G.n) if G.degree(v) == G.n - 1])
    if movable < 2:
        return Classification(Verdict.NOT_SQUARE, DecidedBy.DOMINATING_PRUNE)
    if use_chromatic and G.n <= chromatic_max_n:
        try:
            if is_vertex_chromatic_critical(G, chromatic_max_n):
                return Classification(Verdict.NOT_SQUARE, DecidedBy.CHROMATIC_CRITICAL)
        except FilterUnavailable:
            pass
    stats = SearchStats()
    cert = next(butterfly_involutions(G, stats), None)
    if cert is None:
        return Classification(Verdict.NOT_SQUARE, DecidedBy.EXHAUSTIVE_SEARCH, None, stats)
    return Classification(Verdict.SQUARE, DecidedBy.EXHAUSTIVE_SEARCH, cert, stats)


# ---------------------------------------------------------------------------
# roots


def extract_root(G: Graph, cert: ButterflyCertificate) -> PartiallyLabeledGraph:
    """Root on F and A0, with F labeled 1..|F| in vertex order; verified by squaring."""
    check = check_certificate(G, cert)
    if not check:
        raise CertificateError(f"invalid certificate (condition {check.condition}): {check.reason}")
    keep = sorted(cert.fixed | cert.A0)
    index = {v: i for i, v in enumerate(keep)}
    H = PartiallyLabeledGraph(G.induced(keep), {i + 1: index[v] for i, v in enumerate(sorted(cert.fixed))})
    if are_isomorphic(square(H)[0], G) is None:
        raise CertificateError("extracted root does not square back to G")
    return H


def root_code(H: PartiallyLabeledGraph) -> bytes:
    """Key identifying a root up to isomorphism carrying labeled set onto labeled set."""
    return canonical_code(H.graph, H.labeled)


def enumerate_roots(G: Graph, *, max_n: Optional[int] = None) -> list[PartiallyLabeledGraph]:
    """One root per equivalence class, in order of first discovery."""
    limit = search_threshold(max_n)
    if G.n > limit:
        raise SearchThresholdExceeded(f"root enumeration limited to n <= {limit}, got n={G.n}")
    seen: dict[bytes, PartiallyLabeledGraph] = {}
    for cert in butterfly_involutions(G):
        H = extract_root(G, cert)
        seen.setdefault(root_code(H), H)
    return list(seen.values())


# ---------------------------------------------------------------------------
# cut-set characterization


@dataclass(frozen=True)
class CutSetCertificate:
    S: frozenset[int]
    H1: frozenset[int]
    H2: frozenset[int]
    iso: dict = field(hash=False)

    def verify(self, G: Graph) -> bool:
        """Re-check the certificate against ``G`` from scratch."""
        rest = frozenset(range(G.n)) - self.S
        comps = [frozenset(iter_bits(c)) for c in component_masks(G, mask_of(rest))]
        if self.H1 not in comps or self.H2 not in comps or self.H1 == self.H2:
            return False
        dom = sorted(self.H1 | self.S)
        if set(self.iso) != set(dom) or {self.iso[v] for v in dom} != self.H2 | self.S:
            return False
        if any(self.iso[s] != s for s in self.S):
            return False
        return all(G.has_edge(a, b) == G.has_edge(self.iso[a], self.iso[b]) for a, b in itertools.combinations(dom, 2))


def cut_set_square(G: Graph, *, max_n: Optional[int] = None) -> Optional[CutSetCertificate]:
    """Find S and components H1, H2 of G - S with an isomorphism H1+S -> H2+S fixing S.

    Only connected inputs are accepted. The search takes S to be everything
    outside H1 and H2, and tries connected candidate sets H1 by increasing size.
    """
    if not is_connected(G):
        raise GraphError("cut-set characterization applies to connected graphs")
    limit = search_threshold(max_n)
    if G.n > limit:
        raise SearchThresholdExceeded(f"cut-set search limited to n <= {limit}, got n={G.n}")
    n = G.n
    full = (1 << n) - 1
    for size in range(1, (n - 1) // 2 + 1):
        for combo in itertools.combinations(range(n), size):
            h1 = mask_of(combo)
            if len(component_masks(G, h1)) != 1:
                continue
            found = _match_wing(G, list(combo), h1, full)
            if found is not None:
                h2 = mask_of(found.values())
                S = frozenset(iter_bits(full & ~h1 & ~h2))
                iso = dict(found)
                iso.update({s: s for s in S})
                return CutSetCertificate(S, frozenset(combo), frozenset(found.values()), iso)
    return None


def _match_wing(G: Graph, wing: list[int], h1: int, full: int) -> Optional[dict[int, int]]:
    """Map the connected set ``wing`` onto a disjoint, non-adjacent copy whose
    attachments to the rest of the graph are identical."""
    adj = G.adj
    closed = h1
    for v in wing:
        closed |= adj[v]
    allowed = full & ~closed
    # BFS order keeps each new vertex adjacent to an already mapped one when possible
    order = [wing[0]]
    seen = 1 << wing[0]
    i = 0
    while i < len(order):
        for u in iter_bits(adj[order[i]] & h1 & ~seen):
            seen |= 1 << u
            order.append(u)
        i += 1
    psi: dict[int, int] = {}

    def rec(k: int, used: int) -> bool:
        if k == len(order):
            h2 = used
            for h, w in psi.items():
                inner = mask_of(psi[u] for u in iter_bits(adj[h] & h1))
                if adj[w] != inner | (adj[h] & ~h1):
                    return False
            return bool(h2)
        h = order[k]
        outside = adj[h] & ~h1
        for w in iter_bits(allowed & ~used):
            if adj[w].bit_count() != adj[h].bit_count() or adj[w] & outside != outside:
                continue
            if any(bool(adj[h] >> u & 1) != bool(adj[w] >> x & 1) for u, x in psi.items()):
                continue
            psi[h] = w
            if rec(k + 1, used | 1 << w):
                return True
            del psi[h]
        return False

    return dict(psi) if rec(0, 0) else None


# ---------------------------------------------------------------------------
# constructions


def _validate_involution(G: Graph, phi: Sequence[int]) -> tuple[int, ...]:
    phi = tuple(phi)
    if len(phi) != G.n or sorted(phi) != list(range(G.n)):
        raise CertificateError("phi is not a permutation of V(G)")
    if any(phi[phi[v]] != v for v in range(G.n)):
        raise CertificateError("phi is not an involution")
    if not G.is_automorphism(phi):
        raise CertificateError("phi is not an automorphism of G")
    return phi


def prune_to_square(
    G: Graph, phi: Sequence[int], side_choice: Optional[Iterable[int]] = None
) -> tuple[Graph, ButterflyCertificate]:
    """Delete every edge between the two sides of an involutive automorphism.

    ``side_choice`` names one vertex of each 2-orbit to go to A0; by default the
    smaller vertex of each orbit.
    """
    phi = _validate_involution(G, phi)
    fixed = frozenset(v for v in range(G.n) if phi[v] == v)
    if not fixed:
        raise CertificateError("phi fixes no vertex")
    if len(fixed) == G.n:
        raise CertificateError("phi moves no vertex")
    if side_choice is None:
        a0 = frozenset(v for v in range(G.n) if phi[v] > v)
    else:
        a0 = frozenset(side_choice)
        orbits = {frozenset((v, phi[v])) for v in range(G.n) if phi[v] != v}
        if a0 & fixed or any(len(o & a0) != 1 for o in orbits):
            raise CertificateError("side_choice must pick exactly one vertex of every 2-orbit")
    a1 = frozenset(phi[v] for v in a0)
    removed = [(u, v) if u < v else (v, u) for u in a0 for v in G.neighbors(u) if v in a1]
    pruned = G.without_edges(removed)
    return pruned, ButterflyCertificate(phi, fixed, a0, a1)


def pruned_circulant_edge_count(n: int, d: Sequence[int]) -> int:
    """Closed-form edge count for a circulant pruned along an antipodal reflection.

    ``n k - 2 sum(d_i - 1)`` when the largest difference is below n/2, otherwise
    ``n (k - 1/2) - 2 sum_{i<k}(d_i - 1)``. In the second case the value exceeds
    the edge count of the actual pruned graph by ``n/2 - 1``: the diameter chords
    between the two sides are removed too.
    """
    d = list(d)
    if n < 4 or n % 2:
        raise ValueError("n must be even and at least 4")
    if not d or d != sorted(set(d)) or d[0] < 1 or d[-1] > n // 2:
        raise ValueError("differences must be strictly increasing within 1..n/2")
    k = len(d)
    if d[-1] != n // 2:
        return n * k - 2 * sum(x - 1 for x in d)
    return n * k - n // 2 - 2 * sum(x - 1 for x in d[:-1])
