"""Command-line entry point: ``butterfly <command>``."""

from __future__ import annotations

import json
import os
import random
import sys
from collections import Counter
from typing import Optional

import click

from . import formats
from .families import KINDS, FamilyError, FamilySpec, generate
from .gluing import LabelingError, PartiallyLabeledGraph, glue, square
from .graph import Graph, GraphError, make_graph
from .products import ProductKind, product
from .squareness import (
    ButterflyCertificate,
    CertificateError,
    SearchThresholdExceeded,
    Verdict,
    enumerate_roots,
    extract_root,
    is_square,
    prune_to_square,
)
from .suites import SUITES, SuiteError, run_suite

_EXAMPLES = """\b
Examples:
  butterfly gen cycle:8 | butterfly classify
  butterfly classify circulant:10:1,3 --certificate
  butterfly root wheel:8 --all
  butterfly product cartesian cycle:4 path:3 | butterfly classify
  butterfly prune circulant:8:1,2 --involution 0,7,6,5,4,3,2,1 --format dot
  butterfly verify hypercube --max-n 5
"""

_USER_ERRORS = (GraphError, LabelingError, FamilyError, formats.FormatError, CertificateError, SearchThresholdExceeded)


def _fail(exc: Exception) -> click.UsageError:
    return click.UsageError(str(exc))


def _read_text(source: str) -> str:
    if source == "-":
        return sys.stdin.read()
    if os.path.isfile(source):
        with open(source, encoding="utf-8") as fh:
            return fh.read()
    return source


def _parse_one(text: str) -> Graph:
    text = text.strip()
    if text.startswith("{"):
        data = json.loads(text)
        return formats.parse_graph_json(json.dumps({"n": data.get("n"), "edges": data.get("edges", [])}))
    head = text.split(":", 1)[0]
    if ":" in text and (head in KINDS or head in ("multipartite", "J", "Q")):
        return generate(FamilySpec.parse(text))
    return formats.parse_graph6(text)


def read_graphs(source: str) -> list[Graph]:
    """Graphs from stdin (``-``), a file, or a literal: JSON, a family spec, or graph6 lines."""
    text = _read_text(source).strip()
    if not text:
        raise formats.FormatError("no graph given")
    try:
        if text.startswith("{"):
            return [_parse_one(text)]
        return [_parse_one(line) for line in text.splitlines() if line.strip()]
    except json.JSONDecodeError as exc:
        raise formats.FormatError(f"invalid JSON: {exc}") from None


def read_graph(source: str) -> Graph:
    graphs = read_graphs(source)
    if len(graphs) != 1:
        raise formats.FormatError(f"expected one graph, got {len(graphs)}")
    return graphs[0]


def read_plg(source: str) -> PartiallyLabeledGraph:
    return formats.parse_plg_json(_read_text(source))


def _emit_graph(G: Graph, fmt: str, cert: Optional[ButterflyCertificate] = None, extra: Optional[dict] = None) -> str:
    if fmt == "graph6":
        return formats.emit_graph6(G)
    if fmt == "dot":
        return formats.emit_dot(G, cert).rstrip("\n")
    obj = json.loads(formats.emit_graph_json(G))
    if cert is not None:
        obj["certificate"] = cert.to_json()
    obj.update(extra or {})
    return json.dumps(obj)


def _emit_plg(H: PartiallyLabeledGraph, fmt: str) -> str:
    if fmt == "json":
        return formats.emit_plg_json(H)
    if fmt == "graph6":
        return formats.emit_graph6(H.graph)
    label_of = {v: l for l, v in H.labels}
    lines = ["graph H {"]
    for v in range(H.n):
        lines.append(f'  {v} [color=red xlabel="{label_of[v]}"];' if v in label_of else f"  {v};")
    lines += [f"  {u} -- {v};" for u, v in H.graph.edges()]
    lines.append("}")
    return "\n".join(lines)


def _format_option(default: str, choices=("graph6", "json", "dot")):
    return click.option("--format", "fmt", type=click.Choice(choices), default=default, show_default=True,
                        help="Output format.")


@click.group(epilog=_EXAMPLES, context_settings={"help_option_names": ["-h", "--help"]})
@click.option("--seed", type=int, default=None, help="RNG seed for exploration sweeps (never used by verify).")
@click.pass_context
def main(ctx: click.Context, seed: Optional[int]) -> None:
    """Exact squareness decisions, square roots and gluing for small graphs.

    GRAPH arguments accept '-' for stdin, a file path, a family spec such as
    circulant:10:1,3, a graph6 string, or JSON {"n": .., "edges": [..]}.
    The search threshold defaults to 20 vertices; set BUTTERFLY_MAX_N to change it.
    """
    ctx.obj = {"seed": seed}


@main.command()
@click.argument("graph", default="-")
@_format_option("text", ("text", "json", "dot"))
@click.option("--certificate", is_flag=True, help="Also print the certificate as JSON (text format).")
@click.option("--max-n", type=int, default=None, help="Search threshold for this call.")
@click.option("--no-chromatic", is_flag=True, help="Skip the chromatic-critical filter.")
def classify(graph: str, fmt: str, certificate: bool, max_n: Optional[int], no_chromatic: bool) -> None:
    """Decide whether GRAPH is a square."""
    try:
        graphs = read_graphs(graph)
        results = [(G, is_square(G, max_n=max_n, use_chromatic=not no_chromatic)) for G in graphs]
    except _USER_ERRORS as exc:
        raise _fail(exc)
    for G, c in results:
        prefix = f"{formats.emit_graph6(G)}\t" if len(results) > 1 else ""
        if fmt == "json":
            click.echo(json.dumps({"n": G.n, **c.to_json()}))
        elif fmt == "dot":
            click.echo(formats.emit_dot(G, c.certificate).rstrip("\n"))
        else:
            click.echo(f"{prefix}{c.verdict.value} ({c.decided_by.value})")
            if certificate and c.certificate is not None:
                click.echo(json.dumps(c.certificate.to_json()))


@main.command()
@click.argument("graph", default="-")
@click.option("--all", "all_roots", is_flag=True, help="Every root up to isomorphism, not just the first.")
@_format_option("json")
@click.option("--max-n", type=int, default=None, help="Search threshold for this call.")
def root(graph: str, all_roots: bool, fmt: str, max_n: Optional[int]) -> None:
    """Print a square root of GRAPH as a partially labeled graph."""
    try:
        G = read_graph(graph)
        if all_roots:
            roots = enumerate_roots(G, max_n=max_n)
        else:
            c = is_square(G, max_n=max_n)
            if c.verdict is Verdict.UNDECIDED:
                raise SearchThresholdExceeded(f"n={G.n} is above the search threshold")
            roots = [extract_root(G, c.certificate)] if c.is_square else []
    except _USER_ERRORS as exc:
        raise _fail(exc)
    if not roots:
        click.echo("not_square", err=True)
        return
    for H in roots:
        click.echo(_emit_plg(H, fmt))


@main.command("square")
@click.argument("plg", default="-")
@_format_option("graph6")
def square_cmd(plg: str, fmt: str) -> None:
    """Square a partially labeled graph given as JSON {"n", "edges", "labels"}."""
    try:
        H = read_plg(plg)
    except _USER_ERRORS as exc:
        raise _fail(exc)
    G, tw = square(H)
    click.echo(_emit_graph(G, fmt, extra={"fixed": sorted(tw.fixed), "twins": [[v, w] for v, w in sorted(tw.pairs.items()) if v < w]}))


@main.command("glue")
@click.argument("plg1")
@click.argument("plg2")
@_format_option("json")
def glue_cmd(plg1: str, plg2: str, fmt: str) -> None:
    """Glue two partially labeled graphs along shared labels."""
    if plg1 == "-" and plg2 == "-":
        raise click.UsageError("only one argument may read stdin")
    try:
        H = glue(read_plg(plg1), read_plg(plg2))
    except _USER_ERRORS as exc:
        raise _fail(exc)
    click.echo(_emit_plg(H, fmt))


@main.command()
@click.argument("spec")
@_format_option("graph6")
def gen(spec: str, fmt: str) -> None:
    """Generate a family member, e.g. cycle:8, circulant:10:1,3, johnson:5:2, fan:1:5."""
    try:
        G = generate(FamilySpec.parse(spec))
    except FamilyError as exc:
        raise _fail(exc)
    click.echo(_emit_graph(G, fmt))


@main.command("product")
@click.argument("kind", type=click.Choice([k.value for k in ProductKind]))
@click.argument("g1")
@click.argument("g2")
@_format_option("graph6")
def product_cmd(kind: str, g1: str, g2: str, fmt: str) -> None:
    """Product of two graphs: cartesian, tensor, strong, lex or join."""
    try:
        G = product(kind, read_graph(g1), read_graph(g2))
    except _USER_ERRORS as exc:
        raise _fail(exc)
    click.echo(_emit_graph(G, fmt))


def _int_list(text: str) -> list[int]:
    try:
        return [int(x) for x in text.replace(" ", "").split(",") if x]
    except ValueError:
        raise click.BadParameter(f"expected comma-separated integers, got {text!r}") from None


@main.command()
@click.argument("graph", default="-")
@click.option("--involution", required=True, help="Images phi(0),phi(1),... as a comma list.")
@click.option("--a0", default=None, help="One vertex of each swapped pair for side A0 (default: smaller one).")
@_format_option("graph6")
def prune(graph: str, involution: str, a0: Optional[str], fmt: str) -> None:
    """Delete the edges between the two sides of an involution, leaving a square."""
    phi = _int_list(involution)
    side = _int_list(a0) if a0 is not None else None
    try:
        G = read_graph(graph)
        pruned, cert = prune_to_square(G, phi, side)
    except _USER_ERRORS as exc:
        raise _fail(exc)
    click.echo(_emit_graph(pruned, fmt, cert if fmt != "graph6" else None))


@main.command()
@click.argument("suite", type=click.Choice(SUITES))
@click.option("--max-n", type=int, default=None, help="Upper end of the suite's size parameter.")
@click.option("--jobs", "-j", type=int, default=1, show_default=True, help="Worker processes.")
@click.option("--allow-slow", is_flag=True, help="Permit instances above the search threshold.")
@_format_option("text", ("text", "json"))
def verify(suite: str, max_n: Optional[int], jobs: int, allow_slow: bool, fmt: str) -> None:
    """Check a classification suite; exit 1 if any row disagrees."""
    try:
        report = run_suite(suite, max_n=max_n, jobs=max(1, jobs), allow_slow=allow_slow)
    except SuiteError as exc:
        raise _fail(exc)
    click.echo(json.dumps(report.to_json(), indent=2) if fmt == "json" else report.table())
    sys.exit(0 if report.passed else 1)


@main.command()
@click.option("--n", "n", type=int, default=7, show_default=True, help="Vertex count of sampled graphs.")
@click.option("--count", type=int, default=200, show_default=True)
@click.option("--p", "p", type=float, default=0.5, show_default=True, help="Edge probability.")
@click.option("--product", "kind", type=click.Choice([k.value for k in ProductKind]), default=None,
              help="Sample pairs of non-squares and classify their product instead.")
@click.pass_obj
def sweep(obj: dict, n: int, count: int, p: float, kind: Optional[str]) -> None:
    """Classify random graphs (exploration only; nothing is asserted)."""
    rng = random.Random(obj["seed"])

    def sample(order: int) -> Graph:
        return make_graph(order, [(i, j) for i in range(order) for j in range(i + 1, order) if rng.random() < p])

    tally: Counter[str] = Counter()
    for _ in range(count):
        if kind is None:
            tally[is_square(sample(n)).verdict.value] += 1
            continue
        G, H = sample(n), sample(n)
        if is_square(G).is_square or is_square(H).is_square:
            tally["skipped (a factor is square)"] += 1
            continue
        tally["product " + is_square(product(kind, G, H)).verdict.value] += 1
    for key, value in sorted(tally.items()):
        click.echo(f"{key}\t{value}")


if __name__ == "__main__":
    main()
