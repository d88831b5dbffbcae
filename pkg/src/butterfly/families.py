"""Generators for the classified graph families, their expected verdicts, and
explicit square roots where a construction is known."""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass
from math import comb
from typing import Optional

from .gluing import PartiallyLabeledGraph
from .graph import Graph, empty_graph, make_graph
from .products import join
from .squareness import ButterflyCertificate, extract_root, twin_certificate

KINDS = (
    "cycle",
    "path",
    "complete",
    "complete_multipartite",
    "wheel",
    "circulant",
    "johnson",
    "hypercube",
    "fan",
    "independent",
)
_ALIASES = {"multipartite": "complete_multipartite", "J": "johnson", "Q": "hypercube"}


class FamilyError(ValueError):
    pass


@dataclass(frozen=True)
class FamilySpec:
    """A family member, e.g. ``FamilySpec("circulant", (10, (1, 3)))``.

    Parameters per kind: ``cycle/path/complete/wheel/hypercube/independent: (n,)``;
    ``complete_multipartite: ((a1, ..., ak),)``; ``circulant: (n, (d1, ..., ds))``;
    ``johnson: (n, k)``; ``fan: (m, n)``.
    """

    kind: str
    params: tuple

    def __post_init__(self):
        kind = _ALIASES.get(self.kind, self.kind)
        object.__setattr__(self, "kind", kind)
        if kind not in KINDS:
            raise FamilyError(f"unknown family {self.kind!r}; expected one of {', '.join(KINDS)}")
        p = self.params
        if kind in ("cycle", "path", "complete", "wheel", "hypercube", "independent"):
            _expect(len(p) == 1 and isinstance(p[0], int), f"{kind} takes one integer")
            low = {"cycle": 3, "wheel": 3}.get(kind, 1)
            _expect(p[0] >= low, f"{kind} needs n >= {low}")
        elif kind == "complete_multipartite":
            _expect(len(p) == 1 and len(p[0]) >= 1 and all(a >= 1 for a in p[0]), "part sizes must be positive")
        elif kind == "circulant":
            _expect(len(p) == 2, "circulant takes n and a difference list")
            n, ds = p
            _expect(n >= 2, "circulant needs n >= 2")
            _expect(len(ds) >= 1 and list(ds) == sorted(set(ds)), "differences must be strictly increasing")
            _expect(1 <= ds[0] and ds[-1] <= n // 2, "differences must lie in 1..n/2")
        elif kind == "johnson":
            _expect(len(p) == 2, "johnson takes n and k")
            _expect(1 <= p[1] <= p[0], "johnson needs 1 <= k <= n")
        elif kind == "fan":
            _expect(len(p) == 2 and p[0] >= 1 and p[1] >= 1, "fan needs m, n >= 1")

    @classmethod
    def parse(cls, text: str) -> FamilySpec:
        """Parse ``kind:param:param`` with comma-separated lists, e.g. ``circulant:10:1,3``."""
        kind, *raw = text.strip().split(":")
        kind = _ALIASES.get(kind, kind)
        try:
            values = [tuple(int(x) for x in r.split(",")) if "," in r else int(r) for r in raw]
        except ValueError as exc:
            raise FamilyError(f"bad family spec {text!r}") from exc
        if kind == "complete_multipartite":
            parts = [x for v in values for x in (v if isinstance(v, tuple) else (v,))]
            return cls(kind, (tuple(parts),))
        if kind == "circulant" and len(values) == 2 and isinstance(values[1], int):
            values[1] = (values[1],)
        return cls(kind, tuple(values))

    def __str__(self) -> str:
        parts = [",".join(map(str, p)) if isinstance(p, tuple) else str(p) for p in self.params]
        return ":".join([self.kind, *parts])

    @property
    def order(self) -> int:
        """Vertex count of the generated graph."""
        k, p = self.kind, self.params
        if k == "complete_multipartite":
            return sum(p[0])
        if k == "wheel":
            return p[0] + 1
        if k == "johnson":
            return comb(p[0], p[1])
        if k == "hypercube":
            return 2 ** p[0]
        if k == "fan":
            return p[0] + p[1]
        return p[0]


def _expect(cond: bool, msg: str) -> None:
    if not cond:
        raise FamilyError(msg)


def cycle(n: int) -> Graph:
    return make_graph(n, [(i, (i + 1) % n) for i in range(n)])


def path(n: int) -> Graph:
    return make_graph(n, [(i, i + 1) for i in range(n - 1)])


def complete(n: int) -> Graph:
    return make_graph(n, itertools.combinations(range(n), 2))


def complete_multipartite(parts) -> Graph:
    owner = [i for i, a in enumerate(parts) for _ in range(a)]
    n = len(owner)
    return make_graph(n, [(u, v) for u, v in itertools.combinations(range(n), 2) if owner[u] != owner[v]])


def wheel(n: int) -> Graph:
    """Rim 0..n-1, hub n."""
    return make_graph(n + 1, [(i, (i + 1) % n) for i in range(n)] + [(i, n) for i in range(n)])


def circulant(n: int, ds) -> Graph:
    return make_graph(n, [(i, (i + d) % n) for i in range(n) for d in ds if (i + d) % n != i])


def johnson(n: int, k: int) -> Graph:
    subsets = list(itertools.combinations(range(1, n + 1), k))
    sep = "" if n < 10 else ","
    names = ["{" + sep.join(map(str, s)) + "}" for s in subsets]
    edges = [
        (i, j)
        for (i, a), (j, b) in itertools.combinations(enumerate(subsets), 2)
        if len(set(a) & set(b)) == k - 1
    ]
    return make_graph(len(subsets), edges, names)


def hypercube(n: int) -> Graph:
    """Vertex ``i`` is the tuple of binary digits of ``i``, first coordinate most significant."""
    N = 1 << n
    names = [format(i, f"0{n}b") for i in range(N)]
    return make_graph(N, [(i, i ^ (1 << b)) for i in range(N) for b in range(n) if i < i ^ (1 << b)], names)


def fan(m: int, n: int) -> Graph:
    """Independent set 0..m-1 joined to the path m..m+n-1."""
    return join(empty_graph(m), path(n))


def generate(spec: FamilySpec | str) -> Graph:
    if isinstance(spec, str):
        spec = FamilySpec.parse(spec)
    k, p = spec.kind, spec.params
    if k == "cycle":
        return cycle(p[0])
    if k == "path":
        return path(p[0])
    if k == "complete":
        return complete(p[0])
    if k == "complete_multipartite":
        return complete_multipartite(p[0])
    if k == "wheel":
        return wheel(p[0])
    if k == "circulant":
        return circulant(p[0], p[1])
    if k == "johnson":
        return johnson(p[0], p[1])
    if k == "hypercube":
        return hypercube(p[0])
    if k == "fan":
        return fan(p[0], p[1])
    return empty_graph(p[0])


# ---------------------------------------------------------------------------
# expected verdicts


class Expected(str, enum.Enum):
    SQUARE = "square"
    NOT_SQUARE = "not_square"
    OUTSIDE_SCOPE = "outside_scope"


@dataclass(frozen=True)
class FamilyVerdict:
    expected: Expected
    reason: str


def classify_family(spec: FamilySpec | str) -> FamilyVerdict:
    """Verdict predicted by the classification theorems, without any search."""
    if isinstance(spec, str):
        spec = FamilySpec.parse(spec)
    k, p = spec.kind, spec.params
    S, N, O = Expected.SQUARE, Expected.NOT_SQUARE, Expected.OUTSIDE_SCOPE
    if k == "cycle":
        return FamilyVerdict(S if p[0] % 2 == 0 else N, "C_n is a square iff n is even")
    if k == "path":
        if p[0] == 1:
            return FamilyVerdict(N, "P_1 = K_1 and complete graphs are not squares")
        return FamilyVerdict(S if p[0] % 2 else N, "P_n is a square iff n is odd")
    if k == "complete":
        return FamilyVerdict(N, "K_n is never a square")
    if k == "complete_multipartite":
        parts = p[0]
        if len(parts) >= 2 and max(parts) >= 2:
            return FamilyVerdict(S, "complete multipartite with a part of size >= 2 is a square")
        if len(parts) >= 2:
            return FamilyVerdict(N, "all parts of size 1 give K_n, never a square")
        return _independent(parts[0])
    if k == "independent":
        return _independent(p[0])
    if k == "wheel":
        return FamilyVerdict(S if p[0] % 2 == 0 else N, "W_n is a square iff n is even")
    if k == "circulant":
        n, ds = p
        ds = tuple(ds)
        if ds == (1,):
            if n <= 2:
                return FamilyVerdict(N, "C_2^{1} = K_2 is complete")
            return FamilyVerdict(S if n % 2 == 0 else N, "C_n is a square iff n is even")
        if len(ds) >= 2 and ds == tuple(range(1, len(ds) + 1)):
            if n == 2 * len(ds) + 2:
                # K_n minus a perfect matching, i.e. K_{2,...,2}
                return FamilyVerdict(S, "C_{2k+2}^{1,...,k} is K_{2,...,2}, a square by the multipartite rule")
            return FamilyVerdict(N, "C_n^{1,...,k} with k >= 2 is never a square")
        if ds == (1, 3):
            if n >= 7:
                return FamilyVerdict(S if n in (8, 10) else N, "C_n^{1,3} (n >= 7) is a square iff n in {8, 10}")
            return FamilyVerdict(O, "C_n^{1,3} is classified only for n >= 7")
        if len(ds) == 2 and ds[0] == 1 and ds[1] >= 4:
            d = ds[1]
            if n >= d * d + 1:
                return FamilyVerdict(N, "C_n^{1,d} with d >= 4 and n >= d^2 + 1 is not a square")
            return FamilyVerdict(O, "C_n^{1,d} with n <= d^2 is open")
        return FamilyVerdict(O, "no classification for this difference set")
    if k == "johnson":
        n, kk = p
        if n == 2 * kk:
            return FamilyVerdict(O, "J(2k, k) is open")
        return FamilyVerdict(N, "J(n, k) with n != 2k is not a square")
    if k == "hypercube":
        if p[0] >= 2:
            return FamilyVerdict(S, "Q_n is a square for n >= 2")
        return FamilyVerdict(N, "Q_1 = K_2 is complete")
    if k == "fan":
        m, n = p
        sq = m >= 2 or (m == 1 and n >= 3 and n % 2 == 1)
        return FamilyVerdict(S if sq else N, "F_{m,n} is a square iff m >= 2, or m = 1 and n >= 3 is odd")
    raise FamilyError(k)


def _independent(n: int) -> FamilyVerdict:
    if n >= 3:
        return FamilyVerdict(Expected.SQUARE, "two vertices with equal neighbourhoods in a graph on >= 3 vertices")
    if n == 1:
        return FamilyVerdict(Expected.NOT_SQUARE, "K_1 is complete")
    return FamilyVerdict(Expected.OUTSIDE_SCOPE, "I_2 is not covered by a classification theorem")


# ---------------------------------------------------------------------------
# explicit roots


def _swap(n: int, pairs) -> tuple[int, ...]:
    phi = list(range(n))
    for a, b in pairs:
        phi[a], phi[b] = b, a
    return tuple(phi)


def antipodal_reflection(n: int) -> tuple[int, ...]:
    """Reflection ``i -> -i mod n`` of a circulant, fixing 0 (and n/2 when n is even)."""
    return tuple((-i) % n for i in range(n))


def known_certificate(spec: FamilySpec | str) -> Optional[ButterflyCertificate]:
    """Butterfly certificate from the explicit construction for this family member, if any."""
    if isinstance(spec, str):
        spec = FamilySpec.parse(spec)
    k, p = spec.kind, spec.params
    if classify_family(spec).expected is not Expected.SQUARE and not (k == "johnson" and p == (4, 2)):
        return None
    G = generate(spec)
    if k == "cycle" or (k == "circulant" and tuple(p[1]) == (1,)):
        n = p[0]
        # reflection through vertices 0 and n/2
        return ButterflyCertificate.from_involution(G, antipodal_reflection(n), range(1, n // 2))
    if k == "path":
        n = p[0]
        half = n // 2
        return ButterflyCertificate.from_involution(G, tuple(reversed(range(n))), range(half))
    if k == "wheel":
        n = p[0]
        phi = antipodal_reflection(n) + (n,)
        return ButterflyCertificate.from_involution(G, phi, range(1, n // 2))
    if k == "circulant" and tuple(p[1]) == (1, 3) and p[0] == 10:
        return ButterflyCertificate.from_involution(G, _swap(10, [(1, 9), (4, 6)]), [1, 4])
    if k == "hypercube":
        n = p[0]
        top, second = 1 << (n - 1), 1 << (n - 2)

        def swap_first_two(i: int) -> int:
            a1, a2 = bool(i & top), bool(i & second)
            return (i & ~(top | second)) | (second if a1 else 0) | (top if a2 else 0)

        phi = tuple(swap_first_two(i) for i in range(1 << n))
        a0 = [i for i in range(1 << n) if not i & top and i & second]
        return ButterflyCertificate.from_involution(G, phi, a0)
    if k == "fan" and p[0] == 1:
        m, n = p
        phi = (0,) + tuple(m + (n - 1 - i) for i in range(n))
        return ButterflyCertificate.from_involution(G, phi, range(m, m + n // 2))
    if k == "fan":
        return ButterflyCertificate.from_involution(G, _swap(G.n, [(0, 1)]), [0])
    if k in ("complete_multipartite", "independent", "johnson", "circulant"):
        return twin_certificate(G)
    return None


def known_root(spec: FamilySpec | str) -> Optional[PartiallyLabeledGraph]:
    """Square root from the explicit construction; its square is isomorphic to ``generate(spec)``."""
    if isinstance(spec, str):
        spec = FamilySpec.parse(spec)
    cert = known_certificate(spec)
    if cert is None:
        return None
    return extract_root(generate(spec), cert)
