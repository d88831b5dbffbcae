"""Verification suites: each row generates a family member, predicts its verdict
from the classification theorems and compares with an exact computation."""

from __future__ import annotations

import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass
from functools import lru_cache, partial
from typing import Callable, Optional

from .families import (
    Expected,
    FamilySpec,
    antipodal_reflection,
    circulant,
    classify_family,
    complete,
    complete_multipartite,
    cycle,
    generate,
    known_certificate,
    path,
    wheel,
)
from .gluing import PartiallyLabeledGraph
from .graph import Graph, all_graphs, are_isomorphic
from .products import join, join_is_square, lift_certificate, product
from .squareness import (
    ButterflyCertificate,
    Verdict,
    check_certificate,
    enumerate_roots,
    is_square,
    prune_to_square,
    pruned_circulant_edge_count,
    root_code,
    search_threshold,
)


class SuiteError(ValueError):
    """Unknown suite or a range that needs ``allow_slow``."""


@dataclass
class Row:
    instance: str
    expected: str
    reference: str
    computed: str
    certificate: Optional[str]
    elapsed: float
    passed: bool
    note: str = ""


@dataclass
class VerificationReport:
    suite: str
    rows: list[Row]

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.rows)

    def to_json(self) -> dict:
        return {"suite": self.suite, "passed": self.passed, "rows": [asdict(r) for r in self.rows]}

    def table(self) -> str:
        head = ("instance", "expected", "computed", "ok", "time", "certificate / note")
        body = [
            (r.instance, r.expected, r.computed, "PASS" if r.passed else "FAIL", f"{r.elapsed:.3f}s",
             "; ".join(x for x in (r.certificate or "", r.note) if x))
            for r in self.rows
        ]
        widths = [max(len(str(x[i])) for x in [head, *body]) for i in range(5)]
        lines = ["  ".join(str(x[i]).ljust(widths[i]) for i in range(5)) + "  " + x[5] for x in [head, *body]]
        lines.append(f"{self.suite}: {sum(r.passed for r in self.rows)}/{len(self.rows)} rows passed")
        return "\n".join(line.rstrip() for line in lines)


# ---------------------------------------------------------------------------
# row workers (module level so they pickle for the process pool)


def _cert_summary(G: Graph, cert: Optional[ButterflyCertificate]) -> tuple[Optional[str], bool]:
    if cert is None:
        return None, True
    ok = bool(check_certificate(G, cert))
    return cert.summary() + ("" if ok else " [INVALID]"), ok


def _family_row(spec: str, max_n: Optional[int], expected_root: Optional[PartiallyLabeledGraph] = None,
                unique_root: bool = False) -> Row:
    t0 = time.perf_counter()
    fs = FamilySpec.parse(spec)
    want = classify_family(fs)
    G = generate(fs)
    c = is_square(G, max_n=max_n)
    summary, cert_ok = _cert_summary(G, c.certificate)
    notes = [c.decided_by.value]
    if want.expected is Expected.OUTSIDE_SCOPE:
        passed = c.verdict is not Verdict.UNDECIDED
        notes.append("outside theorem scope; search result recorded")
    else:
        passed = c.verdict.value == want.expected.value
    passed = passed and cert_ok
    if c.is_square and (unique_root or expected_root is not None):
        roots = enumerate_roots(G, max_n=max_n)
        notes.append(f"{len(roots)} root class(es)")
        if unique_root and len(roots) != 1:
            passed = False
        if expected_root is not None and root_code(expected_root) not in {root_code(H) for H in roots}:
            passed = False
            notes.append("expected root missing")
    return Row(spec, want.expected.value, want.reason, c.verdict.value, summary,
               time.perf_counter() - t0, passed, ", ".join(notes))


def _johnson_4_2_row(max_n: Optional[int]) -> Row:
    row = _family_row("johnson:4:2", max_n)
    iso = are_isomorphic(generate("johnson:4:2"), complete_multipartite((2, 2, 2)))
    row.note += ", isomorphic to K_{2,2,2}" if iso is not None else ", NOT isomorphic to K_{2,2,2}"
    row.passed = row.passed and row.computed == Verdict.SQUARE.value and iso is not None
    return row


def _hypercube_row(n: int, full_search: bool, max_n: Optional[int]) -> Row:
    t0 = time.perf_counter()
    spec = f"hypercube:{n}"
    G = generate(spec)
    cert = known_certificate(spec)
    summary, ok = _cert_summary(G, cert)
    computed = "square (certificate)" if ok else "certificate rejected"
    note = "coordinate swap"
    if full_search:
        c = is_square(G, max_n=max_n)
        ok = ok and c.is_square
        computed = c.verdict.value
        note += f", {c.decided_by.value}"
    return Row(spec, "square", classify_family(spec).reason, computed, summary, time.perf_counter() - t0, ok, note)


_POOL_G = {"C_4": lambda: cycle(4), "C_6": lambda: cycle(6), "W_6": lambda: wheel(6)}
_POOL_H = {"K_1": lambda: complete(1), "K_2": lambda: complete(2), "P_3": lambda: path(3),
           "K_3": lambda: complete(3), "C_5": lambda: cycle(5)}
_SYMBOL = {"cartesian": "□", "tensor": "×", "strong": "⊠", "lex": "∘", "join": "∇"}


def _lift_row(kind: str, g: str, h: str, orientation: str) -> Row:
    t0 = time.perf_counter()
    G, H = _POOL_G[g](), _POOL_H[h]()
    cert = is_square(G).certificate
    P = product(kind, G, H) if orientation == "left" else product(kind, H, G)
    lifted = lift_certificate(kind, G, cert, H, orientation=orientation)
    check = check_certificate(P, lifted)
    sym = _SYMBOL[kind]
    label = f"{g} {sym} {h}" if orientation == "left" else f"{h} {sym} {g}"
    return Row(label, "square", "lifted certificate", "square (certificate)" if check else f"condition {check.condition} fails",
               lifted.summary(), time.perf_counter() - t0, bool(check), f"certificate on {g}")


def _pin_row(kind: str, g: str, h: str) -> Row:
    t0 = time.perf_counter()
    G = {"K_2": complete(2), "K_3": complete(3)}[g]
    H = {"K_2": complete(2), "K_3": complete(3)}[h]
    c = is_square(product(kind, G, H))
    return Row(f"{g} {_SYMBOL[kind]} {h}", "not_square", "counterexample to the converse", c.verdict.value,
               None, time.perf_counter() - t0, c.verdict is Verdict.NOT_SQUARE, c.decided_by.value)


def _join_row(i: int, j: int, max_order: int) -> Row:
    t0 = time.perf_counter()
    classes = _classes_up_to(max_order)
    G, H = classes[i], classes[j]
    predicted = join_is_square(G, H)
    J = join(G, H)
    c = is_square(J)
    summary, ok = _cert_summary(J, predicted.certificate)
    passed = ok and predicted.is_square == c.is_square
    want = "square" if predicted.is_square else "not_square"
    return Row(f"G{i} ∇ G{j} (n={G.n}+{H.n})", want, predicted.reason, c.verdict.value, summary,
               time.perf_counter() - t0, passed, c.decided_by.value)


@lru_cache(maxsize=None)
def _classes_up_to(max_order: int) -> tuple[Graph, ...]:
    return tuple(G for n in range(1, max_order + 1) for G in all_graphs(n))


def _pruned_row(n: int, ds: tuple[int, ...]) -> Row:
    t0 = time.perf_counter()
    G = circulant(n, ds)
    pruned, cert = prune_to_square(G, antipodal_reflection(n))
    formula = pruned_circulant_edge_count(n, ds)
    summary, ok = _cert_summary(pruned, cert)
    c = is_square(pruned)
    passed = ok and c.is_square and pruned.num_edges == formula
    spec = f"circulant:{n}:{','.join(map(str, ds))}"
    return Row(f"{spec} pruned", f"{formula} edges, square", "closed-form edge count",
               f"{pruned.num_edges} edges, {c.verdict.value}", summary, time.perf_counter() - t0, passed,
               f"{G.num_edges} edges before pruning")


# ---------------------------------------------------------------------------
# suite definitions


def _check_order(order: int, threshold: int, allow_slow: bool, what: str) -> Optional[int]:
    if order <= threshold:
        return None
    if not allow_slow:
        raise SuiteError(f"{what} has {order} vertices, above the search threshold {threshold}; pass --allow-slow")
    return order


def _family_tasks(specs, allow_slow, threshold, **kw) -> list[Callable[[], Row]]:
    out = []
    for spec, extra in specs:
        order = FamilySpec.parse(spec).order
        mx = _check_order(order, threshold, allow_slow, spec)
        out.append(partial(_family_row, spec, mx, **{**kw, **extra}))
    return out


def _labeled_path(m: int, ends: tuple[int, ...]) -> PartiallyLabeledGraph:
    return PartiallyLabeledGraph(path(m), {i + 1: v for i, v in enumerate(ends)})


def _tasks(name: str, max_n: Optional[int], allow_slow: bool) -> list[Callable[[], Row]]:
    thr = search_threshold()
    fam = partial(_family_tasks, allow_slow=allow_slow, threshold=thr)
    if name == "cycles":
        top = max_n or 14
        return fam([(f"cycle:{n}", {"unique_root": n % 2 == 0 and n <= 12,
                                    "expected_root": _labeled_path(n // 2 + 1, (0, n // 2)) if n % 2 == 0 and n <= 12 else None})
                    for n in range(3, top + 1)])
    if name == "paths":
        top = max_n or 13
        return fam([(f"path:{n}", {"unique_root": n % 2 == 1 and n >= 3,
                                   "expected_root": _labeled_path(n // 2 + 1, (n // 2,)) if n % 2 == 1 and n >= 3 else None})
                    for n in range(2, top + 1)])
    if name == "complete":
        return fam([(f"complete:{n}", {}) for n in range(1, (max_n or 9) + 1)])
    if name == "multipartite":
        return fam([("complete_multipartite:" + ",".join(map(str, parts)), {})
                    for parts in _partitions_up_to(max_n or 10) if len(parts) >= 2 and max(parts) >= 2])
    if name == "wheels":
        return fam([(f"wheel:{n}", {"unique_root": n % 2 == 0 and n <= 10}) for n in range(3, (max_n or 12) + 1)])
    if name == "circulant-consecutive":
        top = max_n or 14
        return fam([(f"circulant:{n}:{','.join(map(str, range(1, k + 1)))}", {})
                    for k in (2, 3) for n in range(2 * k, top + 1)])
    if name == "circulant-1-3":
        return fam([(f"circulant:{n}:1,3", {}) for n in range(7, (max_n or 14) + 1)])
    if name == "circulant-1-d":
        return fam([(f"circulant:{n}:1,4", {}) for n in range(17, (max_n or 20) + 1)])
    if name == "johnson":
        top = max_n or 6
        tasks = fam([(f"johnson:{n}:{k}", {}) for n, k in ((4, 1), (5, 1), (5, 2), (6, 2)) if n <= top])
        if top >= 4:
            tasks.append(partial(_johnson_4_2_row, None))
        return tasks
    if name == "hypercube":
        tasks = []
        for n in range(2, (max_n or 6) + 1):
            full = n <= 4
            mx = _check_order(1 << n, thr, allow_slow, f"hypercube:{n}") if full else None
            tasks.append(partial(_hypercube_row, n, full, mx))
        return tasks
    if name == "products":
        tasks = []
        for kind in ("cartesian", "tensor", "strong", "lex"):
            for g in _POOL_G:
                for h in _POOL_H:
                    for orient in ("left", "right"):
                        tasks.append(partial(_lift_row, kind, g, h, orient))
        for g in _POOL_G:
            for h in _POOL_H:
                tasks.append(partial(_lift_row, "join", g, h, "left"))
        tasks += [partial(_pin_row, "cartesian", "K_3", "K_3")]
        tasks += [partial(_pin_row, k, "K_2", "K_2") for k in ("tensor", "strong", "lex")]
        return tasks
    if name == "join":
        top = max_n or 4
        _check_order(2 * top, thr, allow_slow, f"join of {top}-vertex graphs")
        count = len(_classes_up_to(top))
        return [partial(_join_row, i, j, top) for i in range(count) for j in range(count)]
    if name == "fans":
        top = max_n or 7
        return fam([(f"fan:{m}:{n}", {}) for m in (1, 2, 3) for n in range(1, top + 1)])
    if name == "pruned-circulant":
        return [partial(_pruned_row, n, ds) for n, ds in ((8, (1, 2)), (10, (1, 3)), (8, (1, 4)), (12, (1, 2, 3)))]
    raise SuiteError(f"unknown suite {name!r}; expected one of {', '.join(SUITES)}")


SUITES = (
    "cycles", "paths", "complete", "multipartite", "wheels", "circulant-consecutive", "circulant-1-3",
    "circulant-1-d", "johnson", "hypercube", "products", "join", "fans", "pruned-circulant",
)


def _partitions_up_to(total: int):
    def parts(n, largest):
        if n == 0:
            yield ()
            return
        for a in range(min(n, largest), 0, -1):
            for rest in parts(n - a, a):
                yield (a,) + rest

    for t in range(1, total + 1):
        yield from parts(t, t)


def _call(task: Callable[[], Row]) -> Row:
    return task()


def run_suite(name: str, *, max_n: Optional[int] = None, jobs: int = 1, allow_slow: bool = False) -> VerificationReport:
    """Run one suite. ``max_n`` overrides the suite's main size parameter."""
    tasks = _tasks(name, max_n, allow_slow)
    if jobs > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            rows = list(pool.map(_call, tasks))
    else:
        rows = [t() for t in tasks]
    return VerificationReport(name, rows)
