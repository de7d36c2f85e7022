"""Oracles and instrumentation for the enumeration engines.

Ground-truth oracles (exhaustive independent-set listing, exact clique
number), a per-iteration statistics collector fed by the linear-space engine,
and report builders that check the measurable claims of the design: the
min-degree/clique-number degree bound, the push-out amortization inequality,
the amortized cost per solution, and the linear-space budget. All inequality
checks run in exact integer/rational arithmetic; pass/fail never depends on
floating point.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .enumerator import CountingSink, LimitSink, enumerate_linear_space
from .errors import GuardError
from .graph import Graph
from .ordering import smallest_last

__all__ = [
    "RunStats",
    "IterationStats",
    "PoConfig",
    "brute_force_independent_sets",
    "brute_force_count",
    "clique_number",
    "instrumented_run",
    "turan_degree_bound_check",
    "po_condition_check",
    "amortized_cost_report",
    "space_report",
    "run_report",
    "SPACE_BOUND_FACTOR",
]

BRUTE_FORCE_GUARD = 25
CLIQUE_GUARD = 400
SPACE_BOUND_FACTOR = 32  # accounted integers allowed per unit of n + m


# ---------------------------------------------------------------------------
# exact oracles


def _independence_table(g: Graph) -> bytearray:
    """table[mask] = 1 iff the vertex subset encoded by mask is independent."""
    n = g.n
    adj_mask = [0] * n
    for u in range(n):
        for w in g.adj[u]:
            adj_mask[u] |= 1 << w
    table = bytearray(1 << n)
    table[0] = 1
    for mask in range(1, 1 << n):
        low = mask & -mask
        rest = mask ^ low
        v = low.bit_length() - 1
        table[mask] = table[rest] and not (adj_mask[v] & rest)
    return table


def brute_force_independent_sets(g: Graph) -> set[frozenset[int]]:
    """Every independent set of ``g`` by exhaustive subset testing."""
    if g.n > BRUTE_FORCE_GUARD:
        raise GuardError(f"brute force refused beyond n={BRUTE_FORCE_GUARD}, got n={g.n}")
    table = _independence_table(g)
    out: set[frozenset[int]] = set()
    for mask in range(1 << g.n):
        if table[mask]:
            out.add(frozenset(i for i in range(g.n) if mask >> i & 1))
    return out


def brute_force_count(g: Graph) -> int:
    """Number of independent sets, by the same exhaustive table."""
    if g.n > BRUTE_FORCE_GUARD:
        raise GuardError(f"brute force refused beyond n={BRUTE_FORCE_GUARD}, got n={g.n}")
    return sum(_independence_table(g))


def clique_number(g: Graph) -> int:
    """Exact clique number by branch and bound over neighbor bitsets.

    Vertices are expanded along the smallest-last ordering, each restricted to
    its later neighbors, so every clique is rooted at its ordering-minimal
    vertex and candidate sets stay small on sparse graphs.
    """
    if g.n > CLIQUE_GUARD:
        raise GuardError(f"clique oracle refused beyond n={CLIQUE_GUARD}, got n={g.n}")
    n = g.n
    if n == 0:
        return 0
    adj_mask = [0] * n
    for u in range(n):
        for w in g.adj[u]:
            adj_mask[u] |= 1 << w
    order = smallest_last(g).seq
    rank = {v: i for i, v in enumerate(order)}
    best = 1

    def expand(size: int, cand: int) -> None:
        nonlocal best
        while cand:
            if size + cand.bit_count() <= best:
                return
            bit = cand & -cand
            v = bit.bit_length() - 1
            cand ^= bit
            nxt = cand & adj_mask[v]
            if size + 1 > best:
                best = size + 1
            if nxt:
                expand(size + 1, nxt)

    for v in order:
        later = 0
        for w in g.adj[v]:
            if rank[w] > rank[v]:
                later |= 1 << w
        expand(1, later)
    return best


# ---------------------------------------------------------------------------
# instrumentation


@dataclass(slots=True)
class IterationStats:
    """Per-iteration view: graph size at entry, children spawned, the unit
    cost model size^2, measured basic operations, parent index."""

    index: int
    parent: int
    n_x: int
    child_count: int
    measured_ops: int

    @property
    def cost_model(self) -> int:
        return self.n_x * self.n_x


class RunStats:
    """Collector filled by the linear-space engine during one run.

    Iterations are indexed in emission (DFS pre-order) order, one per
    solution. Arrays are parallel; ``ops_per_iter`` is attributed when an
    iteration completes and stays 0 for iterations cut short by a sink abort.
    """

    __slots__ = (
        "n",
        "m",
        "n_x",
        "parent",
        "child_count",
        "ops_per_iter",
        "picks_n",
        "picks_deg",
        "solutions",
        "total_ops",
        "peak_live",
        "max_path_shifts",
        "roundtrip_checks",
        "aborted",
    )

    def __init__(self, n: int, m: int):
        self.n = n
        self.m = m
        self.n_x: list[int] = []
        self.parent: list[int] = []
        self.child_count: list[int] = []
        self.ops_per_iter: list[int] = []
        self.picks_n: list[int] = []
        self.picks_deg: list[int] = []
        self.solutions = 0
        self.total_ops = 0
        self.peak_live = 0
        self.max_path_shifts = 0
        self.roundtrip_checks = 0
        self.aborted = False

    # engine hooks -----------------------------------------------------------

    def enter(self, index: int, parent: int, n_x: int) -> None:
        assert index == len(self.n_x)
        self.n_x.append(n_x)
        self.parent.append(parent)
        self.child_count.append(0)
        self.ops_per_iter.append(0)

    def pick(self, n_cur: int, degree: int) -> None:
        self.picks_n.append(n_cur)
        self.picks_deg.append(degree)

    def complete(self, index: int, child_count: int, ops: int) -> None:
        self.child_count[index] = child_count
        self.ops_per_iter[index] = ops

    def sample_live(self, live: int) -> None:
        if live > self.peak_live:
            self.peak_live = live

    def finish(self) -> None:
        self.total_ops = sum(self.ops_per_iter)

    # convenience -------------------------------------------------------------

    def iteration(self, i: int) -> IterationStats:
        return IterationStats(i, self.parent[i], self.n_x[i], self.child_count[i], self.ops_per_iter[i])

    def iterations(self) -> int:
        return len(self.n_x)


def instrumented_run(
    g: Graph, *, limit: int | None = None, debug: bool = True
) -> tuple[int, RunStats]:
    """Run the linear-space engine with full instrumentation (and, by default,
    the rollback shadow checks). Returns (solution count, stats)."""
    stats = RunStats(g.n, g.m)
    sink = LimitSink(CountingSink(), limit) if limit is not None else None
    count = enumerate_linear_space(g, sink, stats=stats, debug=debug)
    if stats.aborted:
        stats.total_ops = sum(stats.ops_per_iter)
    return count, stats


# ---------------------------------------------------------------------------
# reports


@dataclass(slots=True)
class PoConfig:
    """Constants for the push-out amortization inequality
    sum-of-children-cost >= alpha * own-cost - beta * (children + 1) * T*,
    with T* = t_star_coeff * q."""

    q: int
    alpha: Fraction = Fraction(3, 2)
    beta: int = 6
    t_star_coeff: int = 1

    def __post_init__(self):
        if self.q < 2:
            raise ValueError("q must be at least 2")
        if not self.alpha > 1:
            raise ValueError("alpha must exceed 1")
        if self.beta < 0:
            raise ValueError("beta must be non-negative")

    @property
    def tau(self) -> Fraction:
        return Fraction(self.q - 1, self.q)

    @property
    def t_star(self) -> int:
        return self.t_star_coeff * self.q


def turan_degree_bound_check(stats: RunStats, q: int) -> dict:
    """Check d(v) * q <= n * (q - 1) at every recorded pick (v always has
    minimum degree in the n-vertex graph it was picked from)."""
    violations = []
    for n_cur, d in zip(stats.picks_n, stats.picks_deg):
        if d * q > n_cur * (q - 1):
            violations.append((n_cur, d))
    return {
        "picks": len(stats.picks_n),
        "q": q,
        "violations": len(violations),
        "examples": violations[:10],
        "pass": not violations,
    }


def po_condition_check(stats: RunStats, cfg: PoConfig) -> dict:
    """Evaluate both per-iteration inequalities over the completed recursion
    tree, under the exact cost model T(X) = n_X^2, T-bar(X) = sum of children's
    n_Y^2. Internal iterations with n_X > 2q qualify.

    (a) lower-bound inequality with unit constant:
        6 q^2 T-bar > n(n+1)(n+2) - q^3 - 6 q^2
    (b) push-out inequality with the configured alpha, beta, T*.
    Failures of (a) are model-constant findings, not engine defects; (b) is
    expected to hold everywhere.
    """
    q = cfg.q
    m_iter = stats.iterations()
    tbar = [0] * m_iter
    n_x = stats.n_x
    parents = stats.parent
    for i in range(1, m_iter):
        p = parents[i]
        v = n_x[i]
        tbar[p] += v * v

    a_pass = a_fail = b_pass = b_fail = 0
    worst_a: Fraction | None = None
    worst_b: Fraction | None = None
    a_failures = []
    b_failures = []
    threshold = 2 * q
    for i in range(m_iter):
        n = n_x[i]
        if n <= threshold or stats.child_count[i] == 0:
            continue
        tb = tbar[i]
        margin_a = Fraction(6 * q * q * tb - (n * (n + 1) * (n + 2) - q**3 - 6 * q * q), 6 * q * q)
        if margin_a > 0:
            a_pass += 1
        else:
            a_fail += 1
            if len(a_failures) < 10:
                a_failures.append((i, n, tb))
        if worst_a is None or margin_a < worst_a:
            worst_a = margin_a
        margin_b = Fraction(tb) - (cfg.alpha * n * n - cfg.beta * (stats.child_count[i] + 1) * cfg.t_star)
        if margin_b >= 0:
            b_pass += 1
        else:
            b_fail += 1
            if len(b_failures) < 10:
                b_failures.append((i, n, tb))
        if worst_b is None or margin_b < worst_b:
            worst_b = margin_b
    return {
        "q": q,
        "qualifying": a_pass + a_fail,
        "a_pass": a_pass,
        "a_fail": a_fail,
        "a_failures": a_failures,
        "worst_margin_a": None if worst_a is None else float(worst_a),
        "b_pass": b_pass,
        "b_fail": b_fail,
        "b_failures": b_failures,
        "worst_margin_b": None if worst_b is None else float(worst_b),
        "pass": b_fail == 0,
    }


def amortized_cost_report(stats: RunStats, q: int) -> dict:
    """Measured operations per solution, split by the small-graph regime
    (n_X <= 2q) and the large-graph regime (n_X > 2q)."""
    threshold = 2 * q
    small_ops = large_ops = 0
    small_iters = large_iters = 0
    for n, ops in zip(stats.n_x, stats.ops_per_iter):
        if n <= threshold:
            small_ops += ops
            small_iters += 1
        else:
            large_ops += ops
            large_iters += 1
    total = small_ops + large_ops
    m_sol = max(stats.solutions, 1)
    ratio = total / m_sol
    return {
        "q": q,
        "solutions": stats.solutions,
        "ops": total,
        "ops_per_solution": ratio,
        "ratio_to_q": ratio / q,
        "small_regime": {"iterations": small_iters, "ops": small_ops},
        "large_regime": {"iterations": large_iters, "ops": large_ops},
    }


def space_report(stats: RunStats, n: int, m: int) -> dict:
    """Peak accounted live storage against the linear budget, plus the
    per-root-to-leaf total of ordering shift pairs against m."""
    bound = SPACE_BOUND_FACTOR * (n + m)
    return {
        "n": n,
        "m": m,
        "peak_live": stats.peak_live,
        "bound": bound,
        "pass": stats.peak_live <= bound,
        "max_path_shifts": stats.max_path_shifts,
        "shift_bound": m,
        "shift_pass": stats.max_path_shifts <= m,
    }


def run_report(g: Graph, *, limit: int | None = None, debug: bool = True) -> dict:
    """One-shot instrumented run condensed to the fixed reporting keys."""
    count, stats = instrumented_run(g, limit=limit, debug=debug)
    try:
        omega = clique_number(g)
        q = omega + 1
    except GuardError:
        omega = None
        q = None
    if q is not None and not stats.aborted:
        po = po_condition_check(stats, PoConfig(q=max(q, 2)))
        po_pass, po_fail, worst = po["b_pass"], po["b_fail"], po["worst_margin_b"]
    else:
        po_pass = po_fail = 0
        worst = None
    return {
        "solutions": count,
        "ops": stats.total_ops,
        "ops_per_solution": stats.total_ops / max(count, 1),
        "peak_space": stats.peak_live,
        "q": q,
        "omega": omega,
        "po_pass": po_pass,
        "po_fail": po_fail,
        "worst_margin": worst,
    }
