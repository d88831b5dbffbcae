"""Cartesian, tensor, strong and lexicographic products, the join, and lifting
butterfly certificates from a square factor onto the product."""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass
from typing import Optional

from .graph import Graph, GraphError, are_isomorphic, component_masks, iter_bits
from .squareness import (
    ButterflyCertificate,
    CertificateError,
    Classification,
    check_certificate,
    is_square,
)


class ProductKind(str, enum.Enum):
    CARTESIAN = "cartesian"
    TENSOR = "tensor"
    STRONG = "strong"
    LEXICOGRAPHIC = "lex"
    JOIN = "join"

    @classmethod
    def parse(cls, text: str) -> ProductKind:
        text = {"lexicographic": "lex", "direct": "tensor"}.get(text, text)
        try:
            return cls(text)
        except ValueError:
            raise ValueError(f"unknown product {text!r}; expected cartesian, tensor, strong, lex or join") from None


def _pair_names(G: Graph, H: Graph) -> Optional[tuple[str, ...]]:
    if G.names is None and H.names is None:
        return None
    return tuple(f"({G.name(g)},{H.name(h)})" for g in range(G.n) for h in range(H.n))


def join(G: Graph, H: Graph) -> Graph:
    """G's vertices first, then H's, with every G-H pair adjacent."""
    n = G.n + H.n
    gmask = (1 << G.n) - 1
    hmask = ((1 << H.n) - 1) << G.n
    adj = [row | hmask for row in G.adj] + [(row << G.n) | gmask for row in H.adj]
    names = None
    if G.names is not None or H.names is not None:
        names = tuple(G.name(v) for v in range(G.n)) + tuple(H.name(v) for v in range(H.n))
    return Graph(n, tuple(adj), names)


def product(kind: ProductKind | str, G: Graph, H: Graph) -> Graph:
    """Product graph; vertex ``(g, h)`` has index ``g * |V(H)| + h``."""
    kind = ProductKind.parse(kind) if isinstance(kind, str) else kind
    if G.n == 0 or H.n == 0:
        raise GraphError("product factors must be non-empty")
    if kind is ProductKind.JOIN:
        return join(G, H)
    m = H.n
    adj = [0] * (G.n * m)
    for g, h in itertools.product(range(G.n), range(m)):
        row = 0
        same_g = H.adj[h]
        g_nbrs = G.adj[g]
        h_closed = H.adj[h] | 1 << h
        if kind is ProductKind.CARTESIAN:
            row |= same_g << (g * m)
            for g2 in iter_bits(g_nbrs):
                row |= 1 << (g2 * m + h)
        elif kind is ProductKind.TENSOR:
            for g2 in iter_bits(g_nbrs):
                row |= H.adj[h] << (g2 * m)
        elif kind is ProductKind.STRONG:
            row |= same_g << (g * m)
            for g2 in iter_bits(g_nbrs):
                row |= h_closed << (g2 * m)
        else:
            row |= same_g << (g * m)
            full = (1 << m) - 1
            for g2 in iter_bits(g_nbrs):
                row |= full << (g2 * m)
        adj[g * m + h] = row
    return Graph(G.n * m, tuple(adj), _pair_names(G, H))


def lift_certificate(
    kind: ProductKind | str,
    G: Graph,
    cert: ButterflyCertificate,
    H: Graph,
    *,
    orientation: str = "left",
    fiber: int = 0,
) -> ButterflyCertificate:
    """Carry a butterfly certificate of ``G`` to ``product(kind, G, H)`` (orientation
    ``"left"``) or ``product(kind, H, G)`` (``"right"``).

    For the four products the involution acts on the G coordinate and fixes the
    H coordinate. The right lexicographic lift acts only on the copy of G over
    the fiber vertex ``fiber`` of H. The join lift fixes all of H.
    """
    kind = ProductKind.parse(kind) if isinstance(kind, str) else kind
    check = check_certificate(G, cert)
    if not check:
        raise CertificateError(f"input certificate invalid (condition {check.condition}): {check.reason}")
    if orientation not in ("left", "right"):
        raise ValueError("orientation must be 'left' or 'right'")
    phi = cert.phi
    nG, nH = G.n, H.n

    if kind is ProductKind.JOIN:
        off = 0 if orientation == "left" else nH
        hoff = nG if orientation == "left" else 0
        psi = [0] * (nG + nH)
        for g in range(nG):
            psi[g + off] = phi[g] + off
        for h in range(nH):
            psi[h + hoff] = h + hoff
        a0 = [g + off for g in cert.A0]
        return _cert(psi, a0)

    if kind is ProductKind.LEXICOGRAPHIC and orientation == "right":
        if not 0 <= fiber < nH:
            raise GraphError(f"fiber vertex {fiber} not in H")
        psi = list(range(nH * nG))
        for g in range(nG):
            psi[fiber * nG + g] = fiber * nG + phi[g]
        return _cert(psi, [fiber * nG + g for g in cert.A0])

    if orientation == "left":
        index = lambda g, h: g * nH + h  # noqa: E731
    else:
        index = lambda g, h: h * nG + g  # noqa: E731
    psi = [0] * (nG * nH)
    for g in range(nG):
        for h in range(nH):
            psi[index(g, h)] = index(phi[g], h)
    return _cert(psi, [index(g, h) for g in cert.A0 for h in range(nH)])


def _cert(psi, a0) -> ButterflyCertificate:
    psi = tuple(psi)
    a0 = frozenset(a0)
    return ButterflyCertificate(
        psi, frozenset(v for v in range(len(psi)) if psi[v] == v), a0, frozenset(psi[v] for v in a0)
    )


def isomorphic_component_pair(G: Graph) -> Optional[tuple[frozenset[int], frozenset[int]]]:
    """First pair of distinct components (by smallest vertex) that are isomorphic."""
    comps = [sorted(iter_bits(c)) for c in component_masks(G)]
    subs = [G.induced(c) for c in comps]
    for i, j in itertools.combinations(range(len(comps)), 2):
        if are_isomorphic(subs[i], subs[j]) is not None:
            return frozenset(comps[i]), frozenset(comps[j])
    return None


@dataclass(frozen=True)
class JoinVerdict:
    """``reason`` is one of left-components, right-components, left-square,
    right-square or none."""

    is_square: bool
    reason: str
    certificate: Optional[ButterflyCertificate] = None

    def __bool__(self) -> bool:
        return self.is_square


def join_is_square(G: Graph, H: Graph, *, max_n: Optional[int] = None) -> JoinVerdict:
    """Decide squareness of the join from the factors alone.

    The join is a square iff one factor is a square or has two isomorphic
    components. The witness is a certificate on ``join(G, H)``.
    """
    if G.n == 0 or H.n == 0:
        raise GraphError("join factors must be non-empty")
    for side, F in (("left", G), ("right", H)):
        pair = isomorphic_component_pair(F)
        if pair is not None:
            return JoinVerdict(True, f"{side}-components", _component_swap_cert(G, H, side, pair))
    verdicts: list[tuple[str, Graph, Classification]] = [("left", G, is_square(G, max_n=max_n)), ("right", H, is_square(H, max_n=max_n))]
    for side, F, c in verdicts:
        if c.is_square:
            lifted = lift_certificate(ProductKind.JOIN, F, c.certificate, H if side == "left" else G, orientation=side)
            return JoinVerdict(True, f"{side}-square", lifted)
    if any(c.verdict.value == "undecided" for _, _, c in verdicts):
        raise RuntimeError("a join factor exceeded the search threshold")
    return JoinVerdict(False, "none")


def _component_swap_cert(G: Graph, H: Graph, side: str, pair) -> ButterflyCertificate:
    F = G if side == "left" else H
    off = 0 if side == "left" else G.n
    c1, c2 = (sorted(c) for c in pair)
    iso = are_isomorphic(F.induced(c1), F.induced(c2))
    psi = list(range(G.n + H.n))
    for i, v in enumerate(c1):
        w = c2[iso[i]]
        psi[v + off], psi[w + off] = w + off, v + off
    return _cert(psi, [v + off for v in c1])


def product_sizes(kind: ProductKind | str, G: Graph, H: Graph) -> tuple[int, int]:
    """Vertex and edge counts of the product from the factors' counts alone."""
    kind = ProductKind.parse(kind) if isinstance(kind, str) else kind
    nG, nH, mG, mH = G.n, H.n, G.num_edges, H.num_edges
    if kind is ProductKind.JOIN:
        return nG + nH, mG + mH + nG * nH
    if kind is ProductKind.CARTESIAN:
        return nG * nH, nG * mH + nH * mG
    if kind is ProductKind.TENSOR:
        return nG * nH, 2 * mG * mH
    if kind is ProductKind.STRONG:
        return nG * nH, nG * mH + nH * mG + 2 * mG * mH
    return nG * nH, nG * mH + mG * nH * nH
