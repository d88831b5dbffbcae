"""Acceptance gate: one test per criterion, each timed against its budget.

Run directly (``python -m tests.test_acceptance``) or through pytest; both
print one PASS/FAIL line per criterion.
"""

import itertools
import random
import time

import networkx as nx

from butterfly.families import (
    Expected,
    antipodal_reflection,
    circulant,
    classify_family,
    complete,
    complete_multipartite,
    cycle,
    fan,
    hypercube,
    johnson,
    known_certificate,
    path,
    wheel,
)
from butterfly.gluing import PartiallyLabeledGraph, drop_labels, predicted_degree, square
from butterfly.graph import are_isomorphic, make_graph
from butterfly.products import join, join_is_square, lift_certificate, product
from butterfly.squareness import (
    butterfly_involutions,
    check_certificate,
    cut_set_square,
    enumerate_roots,
    extract_root,
    is_square,
    prune_to_square,
    pruned_circulant_edge_count,
)
from tests.conftest import from_nx, random_plg, to_nx

RESULTS: dict[int, tuple[bool, float, str]] = {}


def _gate(number: int, budget: float, check) -> None:
    t0 = time.perf_counter()
    try:
        detail = check() or ""
        ok = True
    except AssertionError as exc:
        ok, detail = False, (str(exc).splitlines() or ["assertion failed"])[0]
    elapsed = time.perf_counter() - t0
    if ok and elapsed > budget:
        ok, detail = False, f"took {elapsed:.1f}s, budget {budget:.0f}s"
    RESULTS[number] = (ok, elapsed, detail)
    print(f"criterion {number}: {'PASS' if ok else 'FAIL'} ({elapsed:.2f}s) {detail}")
    assert ok, detail


def _expect_all(mismatches: list[str], what: str) -> None:
    assert not mismatches, f"{what}: {', '.join(mismatches)}"


def _labeled_nx(H: PartiallyLabeledGraph) -> nx.Graph:
    g = to_nx(H.graph)
    nx.set_node_attributes(g, {v: v in H.labeled for v in range(H.n)}, "labeled")
    return g


def _same_labeled(a: nx.Graph, b: nx.Graph) -> bool:
    return nx.is_isomorphic(a, b, node_match=lambda x, y: x["labeled"] == y["labeled"])


def _nx_root_classes(G) -> list[nx.Graph]:
    """Roots from every butterfly involution, deduplicated with networkx."""
    classes: list[nx.Graph] = []
    for cert in butterfly_involutions(G):
        g = _labeled_nx(extract_root(G, cert))
        if not any(_same_labeled(g, c) for c in classes):
            classes.append(g)
    return classes


def _check_unique_root(G, expected: PartiallyLabeledGraph | None, tag: str, bad: list[str]) -> None:
    classes = _nx_root_classes(G)
    if len(classes) != 1 or len(enumerate_roots(G)) != 1:
        bad.append(f"{tag}: {len(classes)} root classes")
    elif expected is not None and not _same_labeled(classes[0], _labeled_nx(expected)):
        bad.append(f"{tag}: root has the wrong shape")


# ---------------------------------------------------------------------------


def test_criterion_01_cycles():
    def check():
        bad = []
        for n in range(3, 15):
            if is_square(cycle(n)).is_square != (n % 2 == 0):
                bad.append(f"C_{n}")
            if n % 2 == 0 and n <= 12:
                m = n // 2
                _check_unique_root(cycle(n), PartiallyLabeledGraph(path(m + 1), {1: 0, 2: m}), f"C_{n}", bad)
        _expect_all(bad, "cycle mismatches")
        return "n=3..14, roots for even n<=12"

    _gate(1, 10, check)


def test_criterion_02_paths():
    def check():
        bad = []
        for n in range(2, 14):
            if is_square(path(n)).is_square != (n % 2 == 1):
                bad.append(f"P_{n}")
            if n % 2 == 1:
                k = n // 2
                _check_unique_root(path(n), PartiallyLabeledGraph(path(k + 1), {1: k}), f"P_{n}", bad)
        _expect_all(bad, "path mismatches")
        return "n=2..13"

    _gate(2, 5, check)


def test_criterion_03_complete():
    def check():
        _expect_all([f"K_{n}" for n in range(1, 10) if is_square(complete(n)).is_square], "complete graphs judged square")
        return "n=1..9"

    _gate(3, 5, check)


def _partitions(total: int, largest: int):
    if total == 0:
        yield ()
        return
    for a in range(min(total, largest), 0, -1):
        for rest in _partitions(total - a, a):
            yield (a,) + rest


def test_criterion_04_multipartite():
    def check():
        tuples = [p for t in range(2, 11) for p in _partitions(t, t) if len(p) >= 2 and max(p) >= 2]
        bad = []
        for parts in tuples:
            G = complete_multipartite(parts)
            c = is_square(G)
            if not (c.is_square and check_certificate(G, c.certificate)):
                bad.append(str(parts))
        _expect_all(bad, "multipartite not square")
        return f"{len(tuples)} part-size tuples"

    _gate(4, 10, check)


def test_criterion_05_wheels():
    def check():
        bad = []
        for n in range(3, 13):
            if is_square(wheel(n)).is_square != (n % 2 == 0):
                bad.append(f"W_{n}")
            if n % 2 == 0 and n <= 10:
                _check_unique_root(wheel(n), None, f"W_{n}", bad)
        _expect_all(bad, "wheel mismatches")
        return "n=3..12, roots for even n<=10"

    _gate(5, 30, check)


def test_criterion_06_consecutive_circulants():
    def check():
        bad = []
        count = 0
        for k in (2, 3):
            for n in range(2 * k, 15):
                count += 1
                if is_square(circulant(n, tuple(range(1, k + 1)))).is_square:
                    bad.append(f"C_{n}^{{1..{k}}}")
        _expect_all(bad, "judged square")
        return f"{count} circulants"

    _gate(6, 60, check)


def test_criterion_07_pruned_circulants():
    def check():
        bad = []
        counts = []
        for n, ds in ((8, (1, 2)), (10, (1, 3)), (8, (1, 4)), (12, (1, 2, 3))):
            pruned, cert = prune_to_square(circulant(n, ds), antipodal_reflection(n))
            formula = pruned_circulant_edge_count(n, ds)
            counts.append(pruned.num_edges)
            if pruned.num_edges != formula:
                bad.append(f"({n},{set(ds)}) built {pruned.num_edges} edges, formula {formula}")
            if not (check_certificate(pruned, cert) and is_square(pruned, use_twins=False).is_square):
                bad.append(f"({n},{set(ds)}) pruned graph not square")
        if counts[0] != 14:
            bad.append(f"C_8^{{1,2}} pruned to {counts[0]} edges, expected 14")
        _expect_all(bad, "pruning")
        return f"edge counts {counts}"

    _gate(7, 30, check)


def test_criterion_08_circulant_1_3():
    def check():
        squares = [n for n in range(7, 15) if is_square(circulant(n, (1, 3))).is_square]
        assert squares == [8, 10], f"square at {squares}"
        return "square exactly at n=8,10"

    _gate(8, 60, check)


def test_criterion_09_circulant_1_4():
    def check():
        bad = [f"n={n}" for n in range(17, 21) if is_square(circulant(n, (1, 4))).is_square]
        _expect_all(bad, "judged square")
        return "n=17..20"

    _gate(9, 300, check)


def test_criterion_10_johnson():
    def check():
        bad = [f"J{nk}" for nk in ((4, 1), (5, 1), (5, 2), (6, 2)) if is_square(johnson(*nk)).is_square]
        J = johnson(4, 2)
        assert classify_family("johnson:4:2").expected is Expected.OUTSIDE_SCOPE
        assert is_square(J, use_twins=False).is_square, "J(4,2) not square by search"
        assert are_isomorphic(J, complete_multipartite((2, 2, 2))) is not None, "J(4,2) is not K_{2,2,2}"
        _expect_all(bad, "johnson judged square")
        return "J(4,2) square, outside scope"

    _gate(10, 60, check)


def test_criterion_11_hypercubes():
    def check():
        bad = []
        for n in range(2, 7):
            Q = hypercube(n)
            cert = known_certificate(f"hypercube:{n}")
            if not check_certificate(Q, cert):
                bad.append(f"Q_{n} certificate")
            if any(Q.name(v)[0] != Q.name(v)[1] for v in cert.fixed):
                bad.append(f"Q_{n} fixed set")
            if n <= 4 and not is_square(Q, use_twins=False).is_square:
                bad.append(f"Q_{n} search")
        _expect_all(bad, "hypercube failures")
        return "certificates n=2..6, search n=2..4"

    _gate(11, 60, check)


def test_criterion_12_products():
    def check():
        gs = {"C4": cycle(4), "C6": cycle(6), "W6": wheel(6)}
        hs = {"K1": complete(1), "K2": complete(2), "P3": path(3), "K3": complete(3), "C5": cycle(5)}
        bad = []
        checked = 0
        for kind in ("cartesian", "tensor", "strong", "lex"):
            for gname, G in gs.items():
                cert = is_square(G).certificate
                for hname, H in hs.items():
                    for orient in ("left", "right"):
                        P = product(kind, G, H) if orient == "left" else product(kind, H, G)
                        checked += 1
                        if not check_certificate(P, lift_certificate(kind, G, cert, H, orientation=orient)):
                            bad.append(f"{kind} {gname} {hname} {orient}")
        K2, K3 = complete(2), complete(3)
        pins = [("cartesian", K3, K3), ("tensor", K2, K2), ("strong", K2, K2), ("lex", K2, K2)]
        for kind, G, H in pins:
            if is_square(product(kind, G, H), use_twins=False, use_chromatic=False).is_square:
                bad.append(f"pin {kind}")
        _expect_all(bad, "product failures")
        return f"{checked} lifts, 4 pins"

    _gate(12, 120, check)


def test_criterion_13_join():
    def check():
        classes = [from_nx(g) for g in nx.graph_atlas_g()[1:19]]
        assert [G.n for G in classes] == [1] + [2] * 2 + [3] * 4 + [4] * 11
        bad = []
        for (i, G), (j, H) in itertools.product(enumerate(classes), repeat=2):
            verdict = join_is_square(G, H)
            if verdict.is_square != is_square(join(G, H)).is_square:
                bad.append(f"({i},{j})")
            elif verdict.is_square and not check_certificate(join(G, H), verdict.certificate):
                bad.append(f"({i},{j}) witness")
        _expect_all(bad, "join disagreements")
        return f"{len(classes)}x{len(classes)} class pairs"

    _gate(13, 120, check)


def test_criterion_14_fans():
    def check():
        bad = []
        for m in (1, 2, 3):
            for n in range(1, 8):
                want = m >= 2 or (m == 1 and n >= 3 and n % 2 == 1)
                if is_square(fan(m, n)).is_square != want:
                    bad.append(f"F_{m},{n}")
        _expect_all(bad, "fan mismatches")
        return "m=1..3, n=1..7"

    _gate(14, 60, check)


def _definition_oracle(max_n: int) -> dict[int, list[nx.Graph]]:
    """All squares on at most max_n vertices, built from every labeled H."""
    found: dict[tuple, list[nx.Graph]] = {}
    for h in nx.graph_atlas_g()[1:]:
        m = h.number_of_nodes()
        for k in range(max(1, 2 * m - max_n), m):
            for L in itertools.combinations(range(m), k):
                g = nx.Graph()
                node = lambda side, v: ("L", v) if v in L else (side, v)  # noqa: E731
                for side in (0, 1):
                    g.add_nodes_from(node(side, v) for v in h.nodes())
                    g.add_edges_from((node(side, u), node(side, v)) for u, v in h.edges())
                key = (g.number_of_nodes(), g.number_of_edges(), nx.weisfeiler_lehman_graph_hash(g))
                bucket = found.setdefault(key, [])
                if not any(nx.is_isomorphic(g, other) for other in bucket):
                    bucket.append(g)
    return found


def test_criterion_15_oracle_completeness():
    def check():
        squares = _definition_oracle(7)
        bad = []
        total = 0
        for g in nx.graph_atlas_g()[1:]:
            if not nx.is_connected(g):
                continue
            total += 1
            key = (g.number_of_nodes(), g.number_of_edges(), nx.weisfeiler_lehman_graph_hash(g))
            oracle = any(nx.is_isomorphic(g, s) for s in squares.get(key, []))
            G = from_nx(g)
            if is_square(G).is_square != oracle:
                bad.append(f"{nx.to_graph6_bytes(g, header=False).decode().strip()} search")
            cut = cut_set_square(G)
            if (cut is not None) != oracle or (cut is not None and not cut.verify(G)):
                bad.append(f"{nx.to_graph6_bytes(g, header=False).decode().strip()} cut-set")
        _expect_all(bad, "disagreements")
        return f"{total} connected classes"

    _gate(15, 600, check)


def _random_invariant_case(rng: random.Random):
    n = rng.randint(3, 10)
    verts = list(range(n))
    rng.shuffle(verts)
    pairs = rng.randint(1, (n - 1) // 2)
    phi = list(range(n))
    for i in range(pairs):
        a, b = verts[2 * i], verts[2 * i + 1]
        phi[a], phi[b] = b, a
    p = rng.random()
    edges = set()
    for u, v in itertools.combinations(range(n), 2):
        orbit = {(u, v), tuple(sorted((phi[u], phi[v])))}
        if min(orbit) == (u, v) and rng.random() < p:
            edges |= orbit
    G = make_graph(n, edges)
    side = [rng.choice((v, phi[v])) for v in range(n) if phi[v] > v]
    return G, phi, side


def test_criterion_16_property_suites():
    def check():
        rng = random.Random(20240601)
        cases = 10_000
        bad: list[str] = []
        for i in range(cases):
            H = random_plg(rng)
            G, tw = square(H)
            L = H.labeled
            # size formulas
            inner = sum(1 for u, v in H.graph.edges() if u in L and v in L)
            if G.n != 2 * H.n - len(L) or G.num_edges != 2 * H.graph.num_edges - inner:
                bad.append(f"size {i}")
            # twin non-adjacency and common neighbourhood
            where = {v: j for j, (_, v) in enumerate(H.labels)}
            where.update(zip(H.unlabeled, tw.originals))
            back = {j: v for v, j in where.items()}
            for v in tw.originals:
                w = tw.twin[v]
                common = {u for u in G.neighbors(v) if G.has_edge(u, w)}
                want = {where[u] for u in H.graph.neighbors(back[v]) if u in L}
                if G.has_edge(v, w) or common != want:
                    bad.append(f"twin {i}")
            # degree formula
            if any(predicted_degree(H, x) != G.degree(where[x]) for x in range(H.n)):
                bad.append(f"degree {i}")
        for i in range(cases):
            H = random_plg(rng)
            labels = sorted(H.label_map)
            T = set(rng.sample(labels, rng.randint(0, len(labels) - 1)))
            G, _ = square(H)
            gone = {j for j, l in enumerate(labels) if l in T}
            lhs = square(drop_labels(H, T))[0]
            rhs = G.induced([v for v in range(G.n) if v not in gone])
            if are_isomorphic(lhs, rhs) is None:
                bad.append(f"restriction {i}")
        for i in range(cases):
            G, phi, side = _random_invariant_case(rng)
            pruned, cert = prune_to_square(G, phi, side)
            if not check_certificate(pruned, cert):
                bad.append(f"prune {i}")
        _expect_all(bad[:10], f"{len(bad)} violations")
        return f"5 properties x {cases} cases"

    _gate(16, 300, check)


if __name__ == "__main__":
    for name, fn in sorted(globals().items()):
        if name.startswith("test_criterion_"):
            try:
                fn()
            except AssertionError:
                pass
