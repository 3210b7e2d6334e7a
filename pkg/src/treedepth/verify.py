"""Randomised invariant battery for the exact solvers and constructions."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from itertools import combinations
from typing import Callable, Iterable, Optional

from .elimination import (
    build_general_upper,
    build_tree_centroid,
    dfs_forest,
    greedy_heuristic,
    is_elimination_forest,
)
from .expansion import (
    boundary_ratio,
    cheeger_exact,
    cut_ratio,
    find_balanced_kpartition,
    is_balanced_kpartition,
    vertex_expansion_exact,
)
from .graph import Graph, connected_components, format_edge_list, path_graph
from .models import RandomSeed, mix_seed, sample_gnp, sample_labeled_tree
from .solvers import td_lower_bound_path, treedepth_exact, treewidth_exact

__all__ = ["CheckResult", "VerifyReport", "all_graphs", "verify_suite"]

P_GRID = (0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9)


@dataclass
class CheckResult:
    name: str
    cases: int = 0
    failures: int = 0
    counterexample: Optional[str] = None

    @property
    def passed(self) -> bool:
        return self.failures == 0

    def record(self, ok: bool, g: Graph, note: str = "") -> None:
        self.cases += 1
        if not ok:
            self.failures += 1
            if self.counterexample is None:
                self.counterexample = (note + "\n" if note else "") + format_edge_list(g)


@dataclass
class VerifyReport:
    seed: int
    checks: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def lines(self) -> list[str]:
        out = [f"seed={self.seed}"]
        for c in self.checks:
            status = "PASS" if c.passed else "FAIL"
            out.append(f"{status} {c.name} cases={c.cases} failures={c.failures}")
            if c.counterexample:
                out.append("counterexample:")
                out.extend("  " + line for line in c.counterexample.splitlines())
        out.append("overall=" + ("PASS" if self.passed else "FAIL"))
        return out


def all_graphs(n: int) -> Iterable[Graph]:
    """Every labelled graph on ``n`` vertices."""
    pairs = list(combinations(range(n), 2))
    for bits in range(1 << len(pairs)):
        yield Graph(n, [e for i, e in enumerate(pairs) if bits >> i & 1])


def _random_graphs(seed: int, tag: str, count: int, sizes, probs=P_GRID):
    for i in range(count):
        s = RandomSeed(mix_seed(seed, tag), i)
        rng = s.rng()
        n = int(rng.choice(sizes))
        p = float(probs[i % len(probs)])
        yield sample_gnp(n, p, RandomSeed(s.state(), 1))


def check_sandwich(graphs) -> CheckResult:
    res = CheckResult("sandwich tw <= td <= tw(log2 n + 1)")
    for g in graphs:
        td = treedepth_exact(g).value
        tw = treewidth_exact(g).value
        ok = tw <= td <= tw * (math.log2(g.n) + 1) + 1e-9 if g.n else True
        # an edgeless graph has tw = 0 and td = 1, outside the stated form
        if g.m == 0:
            ok = td == 1 and tw == 0
        res.record(ok, g, f"tw={tw} td={td}")
    return res


def check_components_and_deletion(graphs) -> tuple[CheckResult, CheckResult]:
    cc = CheckResult("td is the max over components")
    dele = CheckResult("td(g - v) >= td(g) - 1")
    for g in graphs:
        td = treedepth_exact(g).value
        parts = [treedepth_exact(g.subgraph(c.vertices)[0]).value
                 for c in connected_components(g)]
        cc.record(td == max(parts, default=0), g)
        for v in range(g.n):
            dele.record(treedepth_exact(g.remove_vertex(v)).value >= td - 1, g, f"v={v}")
    return cc, dele


def check_monotone(graphs) -> CheckResult:
    res = CheckResult("removing an edge never increases td")
    for g in graphs:
        td = treedepth_exact(g).value
        for u, v in g.edges:
            res.record(treedepth_exact(g.remove_edge(u, v)).value <= td, g, f"edge={u},{v}")
    return res


def check_kloks(graphs) -> CheckResult:
    res = CheckResult("no balanced k-partition (k <= n-4) implies tw > k")
    for g in graphs:
        tw = treewidth_exact(g).value
        for k in range(0, g.n - 3):
            part = find_balanced_kpartition(g, k)
            if part is None:
                res.record(tw > k, g, f"k={k} tw={tw}")
            else:
                res.record(is_balanced_kpartition(g, part), g, f"k={k} invalid witness")
    return res


def check_forests(graphs) -> CheckResult:
    res = CheckResult("constructed forests are elimination forests and bound td")
    for g in graphs:
        exact = treedepth_exact(g)
        lower = td_lower_bound_path(g)
        forests = [exact.witness, build_general_upper(g), greedy_heuristic(g), dfs_forest(g)]
        ok = all(is_elimination_forest(f, g) for f in forests)
        ok = ok and exact.witness.height() == exact.value
        ok = ok and lower <= exact.value <= min(f.height() for f in forests[1:])
        res.record(ok, g)
    return res


def check_witnesses(graphs) -> CheckResult:
    res = CheckResult("expansion witnesses recompute to the reported minima")
    for g in graphs:
        if g.n < 2 or len(connected_components(g)) != 1:
            continue
        phi = cheeger_exact(g)
        alpha = vertex_expansion_exact(g)
        ok = (0 < len(phi.witness) <= g.n / 2 and cut_ratio(g, phi.witness) == phi.value
              and 0 < len(alpha.witness) <= g.n / 2
              and boundary_ratio(g, alpha.witness) == alpha.value)
        res.record(ok, g)
    return res


def check_paths(max_n: int = 16) -> CheckResult:
    res = CheckResult("td(P_n) = floor(log2 n) + 1")
    for n in range(1, max_n + 1):
        g = path_graph(n)
        res.record(treedepth_exact(g).value == n.bit_length(), g)
    return res


def check_trees(seed: int, count: int) -> CheckResult:
    res = CheckResult("centroid forest height <= floor(log2 n) + 1")
    for i in range(count):
        k = 1 + i % 200
        t = sample_labeled_tree(k, RandomSeed(mix_seed(seed, "trees"), i))
        f = build_tree_centroid(t)
        res.record(is_elimination_forest(f, t) and f.height() <= k.bit_length(), t)
    return res


def verify_suite(seed: int = 0, sandwich: int = 200, exhaustive_n: int = 5,
                 kloks: int = 20, samples: int = 60,
                 progress: Optional[Callable[[str], None]] = None) -> VerifyReport:
    """Run the invariant battery; failures carry a serialised counterexample."""
    report = VerifyReport(seed)

    def add(*checks):
        for c in checks:
            report.checks.append(c)
            if progress:
                progress(c.name)

    add(check_paths())
    add(check_sandwich(_random_graphs(seed, "sandwich", sandwich, range(1, 13))))
    small = [g for n in range(1, exhaustive_n + 1) for g in all_graphs(n)]
    add(*check_components_and_deletion(small))
    add(check_monotone(_random_graphs(seed, "monotone", samples, range(2, 11))))
    add(check_kloks(_random_graphs(seed, "kloks", kloks, [10])))
    add(check_forests(_random_graphs(seed, "forests", samples, range(1, 13))))
    add(check_witnesses(_random_graphs(seed, "witness", samples, range(2, 13),
                                       probs=(0.3, 0.5, 0.7))))
    add(check_trees(seed, samples))
    return report
