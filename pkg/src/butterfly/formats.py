"""graph6, JSON and DOT readers and writers."""

from __future__ import annotations

import json
from typing import Optional

from .gluing import LabelingError, PartiallyLabeledGraph
from .graph import Graph, GraphError, make_graph
from .squareness import ButterflyCertificate, CertificateError, check_certificate


class FormatError(ValueError):
    pass


# graph6 ---------------------------------------------------------------------

_HEADER = ">>graph6<<"
_MAX_N = 68719476735  # 2**36 - 1


def _size_field(n: int) -> str:
    if n < 63:
        return chr(n + 63)
    if n < 258048:
        return "~" + "".join(chr((n >> s & 63) + 63) for s in (12, 6, 0))
    return "~~" + "".join(chr((n >> s & 63) + 63) for s in (30, 24, 18, 12, 6, 0))


def emit_graph6(G: Graph) -> str:
    if G.n > _MAX_N:
        raise FormatError("graph too large for graph6")
    out = []
    bits = [G.has_edge(i, j) for j in range(1, G.n) for i in range(j)]
    bits += [False] * (-len(bits) % 6)
    for k in range(0, len(bits), 6):
        chunk = 0
        for b in bits[k:k + 6]:
            chunk = chunk << 1 | b
        out.append(chunk)
    return _size_field(G.n) + "".join(chr(c + 63) for c in out)


def parse_graph6(text: str) -> Graph:
    s = text.strip()
    if s.startswith(_HEADER):
        s = s[len(_HEADER):]
    if not s:
        raise FormatError("empty graph6 string")
    for ch in s:
        if not 63 <= ord(ch) <= 126:
            raise FormatError(f"bad graph6 character {ch!r}")
    vals = [ord(ch) - 63 for ch in s]
    if s[0] != "~":
        n, body = vals[0], vals[1:]
    elif len(s) >= 2 and s[1] == "~":
        if len(vals) < 8:
            raise FormatError("truncated graph6 size field")
        n, body = _pack(vals[2:8]), vals[8:]
    else:
        if len(vals) < 4:
            raise FormatError("truncated graph6 size field")
        n, body = _pack(vals[1:4]), vals[4:]
    if n > _MAX_N:
        raise FormatError("graph6 size overflow")
    if any(v > 63 for v in body):
        raise FormatError("bad graph6 character in edge data")
    nbits = n * (n - 1) // 2
    need = -(-nbits // 6)
    if len(body) < need:
        raise FormatError(f"truncated graph6 edge data: need {need} chars, got {len(body)}")
    if len(body) > need:
        raise FormatError("trailing characters after graph6 edge data")
    edges = []
    k = 0
    for j in range(1, n):
        for i in range(j):
            if body[k // 6] >> (5 - k % 6) & 1:
                edges.append((i, j))
            k += 1
    if need and body[-1] & ((1 << (need * 6 - nbits)) - 1):
        raise FormatError("nonzero graph6 padding bits")
    return make_graph(n, edges)


def _pack(vals: list[int]) -> int:
    n = 0
    for v in vals:
        n = n << 6 | v
    return n


# JSON -----------------------------------------------------------------------

def _edge_list(data, n: int) -> list[tuple[int, int]]:
    edges = data.get("edges", [])
    if not isinstance(edges, list):
        raise FormatError("'edges' must be a list")
    out = []
    for e in edges:
        if not (isinstance(e, list) and len(e) == 2 and all(isinstance(x, int) and not isinstance(x, bool) for x in e)):
            raise FormatError(f"edge {e!r} is not a pair of integers")
        out.append((e[0], e[1]))
    return out


def _load(text: str) -> dict:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise FormatError(f"invalid JSON: {exc}") from None
    if not isinstance(data, dict):
        raise FormatError("expected a JSON object")
    n = data.get("n")
    if not isinstance(n, int) or isinstance(n, bool) or n < 0:
        raise FormatError("'n' must be a non-negative integer")
    return data


def parse_graph_json(text: str) -> Graph:
    data = _load(text)
    try:
        return make_graph(data["n"], _edge_list(data, data["n"]))
    except GraphError as exc:
        raise FormatError(str(exc)) from None


def emit_graph_json(G: Graph) -> str:
    return json.dumps({"n": G.n, "edges": [list(e) for e in G.edges()]})


def parse_plg_json(text: str) -> PartiallyLabeledGraph:
    data = _load(text)
    try:
        G = make_graph(data["n"], _edge_list(data, data["n"]))
    except GraphError as exc:
        raise FormatError(str(exc)) from None
    labels = data.get("labels")
    if not isinstance(labels, dict):
        raise FormatError("'labels' must be an object mapping label to vertex")
    pairs = []
    for key, v in labels.items():
        try:
            label = int(key)
        except ValueError:
            raise FormatError(f"label {key!r} is not an integer") from None
        if not isinstance(v, int) or isinstance(v, bool):
            raise FormatError(f"label {key!r} must map to a vertex index")
        pairs.append((label, v))
    try:
        return PartiallyLabeledGraph(G, pairs)
    except LabelingError as exc:
        raise FormatError(str(exc)) from None


def emit_plg_json(H: PartiallyLabeledGraph) -> str:
    return json.dumps(
        {
            "n": H.graph.n,
            "edges": [list(e) for e in H.graph.edges()],
            "labels": {str(l): v for l, v in H.labels},
        }
    )


# DOT ------------------------------------------------------------------------

_COLORS = {"fixed": "red", "A0": "black", "A1": "gray"}


def emit_dot(G: Graph, cert: Optional[ButterflyCertificate] = None, name: str = "G") -> str:
    if cert is not None:
        check = check_certificate(G, cert)
        if not check:
            raise CertificateError(f"certificate fails condition {check.condition}: {check.reason}")
    lines = [f"graph {name} {{"]
    for v in range(G.n):
        attrs = []
        if G.names is not None:
            attrs.append(f'label="{G.name(v)}"')
        if cert is not None:
            part = "fixed" if v in cert.fixed else "A0" if v in cert.A0 else "A1"
            attrs.append(f'color={_COLORS[part]} group="{part}"')
        lines.append(f"  {v}" + (f" [{' '.join(attrs)}]" if attrs else "") + ";")
    for u, v in G.edges():
        lines.append(f"  {u} -- {v};")
    lines.append("}")
    return "\n".join(lines) + "\n"
