"""Exhaustive enumeration of offset tuples with full two-step residue coverage.

The search walks ascending offset tuples ``a_1 < ... < a_{d-3}`` over
``[2, m-2]``, keeps a residue-coverage bitmask per partial tuple, and prunes:

* by an admissibility bound: with ``k`` offsets chosen and ``r`` still to
  pick, the future offsets can add at most ``r*(6 + 2k) + r*(r-1)`` new
  residues, so a partial tuple whose coverage cannot reach ``m`` is dead;
* by the negation symmetry: a tuple and its negation mod ``m`` describe
  isomorphic graphs, so only tuples that are lexicographically no larger
  than their negation image are kept, and candidates that would force a
  larger-than-negation tuple are cut as soon as the first offset fixes the
  comparison.

Sharding is deterministic by the first free offset position; shard results
merge by summing counters and sorting solutions, so reports are identical
for any worker count. ``find-first`` stops each shard at its own first
solution but still visits every shard; node budgets are divided evenly
across shards. Both choices keep reports byte-identical across worker
counts.
"""

from __future__ import annotations

import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

from .bounds import max_m_upper_bound
from .circulant import PhiSpec, format_spec, two_step_residues

MODES = ("find-all", "find-first", "count-only")


@dataclass(frozen=True)
class SearchTask:
    """One enumeration job: degree, modulus, mode, optional prefix and budget.

    ``prefix`` pins the first offsets (useful for manual sharding); the
    engine then enumerates the remaining positions. ``spacing_prune``
    restricts candidates to ``[4, m-4]``; that restriction is only safe when
    ``m == d*d - d - 1`` (where full coverage forces it) and must never
    change the solution set there.
    """

    d: int
    m: int
    mode: str = "find-all"
    prefix: tuple[int, ...] = ()
    node_budget: int | None = None
    spacing_prune: bool = False

    def __post_init__(self) -> None:
        cap = max_m_upper_bound(self.d)
        if not 5 <= self.m <= cap:
            raise ValueError(f"modulus must lie in [5, {cap}] for degree {self.d}")
        if self.d - 3 > self.m - 3:
            raise ValueError(f"not enough distinct offsets in [2, {self.m - 2}]")
        if self.mode not in MODES:
            raise ValueError(f"mode must be one of {MODES}")
        prefix = tuple(self.prefix)
        if len(prefix) > self.d - 3:
            raise ValueError("prefix longer than the offset tuple")
        for a, b in zip(prefix, prefix[1:]):
            if b <= a:
                raise ValueError("prefix must be strictly increasing")
        for a in prefix:
            if not 2 <= a <= self.m - 2:
                raise ValueError(f"prefix offset {a} outside [2, {self.m - 2}]")
        object.__setattr__(self, "prefix", prefix)
        if self.node_budget is not None and self.node_budget < 1:
            raise ValueError("node budget must be positive")


@dataclass
class SearchCounters:
    """Work accounting. ``nodes_visited`` counts offset placements beyond the
    prefix; prune counters count cut candidates/subtrees by cause."""

    nodes_visited: int = 0
    pruned_by_bound: int = 0
    pruned_by_symmetry: int = 0
    pruned_by_spacing: int = 0
    solutions_found: int = 0
    budget_stops: int = 0

    def add(self, other: SearchCounters) -> None:
        self.nodes_visited += other.nodes_visited
        self.pruned_by_bound += other.pruned_by_bound
        self.pruned_by_symmetry += other.pruned_by_symmetry
        self.pruned_by_spacing += other.pruned_by_spacing
        self.solutions_found += other.solutions_found
        self.budget_stops += other.budget_stops

    def to_dict(self) -> dict:
        return {
            "nodesVisited": self.nodes_visited,
            "prunedByBound": self.pruned_by_bound,
            "prunedBySymmetry": self.pruned_by_symmetry,
            "prunedBySpacing": self.pruned_by_spacing,
            "solutionsFound": self.solutions_found,
            "budgetStops": self.budget_stops,
        }


@dataclass(frozen=True)
class SearchReport:
    task: SearchTask
    solutions: tuple[PhiSpec, ...]
    counters: SearchCounters
    elapsed: float
    exhausted: bool

    def to_json_dict(self) -> dict:
        """Deterministic JSON payload; wall time deliberately excluded."""
        return {
            "task": {
                "d": self.task.d,
                "m": self.task.m,
                "mode": self.task.mode,
                "prefix": list(self.task.prefix),
                "nodeBudget": self.task.node_budget,
                "spacingPrune": self.task.spacing_prune,
            },
            "solutions": [format_spec(s) for s in self.solutions],
            "counters": self.counters.to_dict(),
            "exhausted": self.exhausted,
        }


class _StopShard(Exception):
    """Internal unwind for budget exhaustion / find-first early stop."""


def _unit_mask(m: int, a: int) -> int:
    mask = 0
    for value in (a, -a, a + 1, -a - 1, a - 1, -a + 1):
        mask |= 1 << (value % m)
    return mask


def _shard_state(task: SearchTask, shard_budget: int | None):
    m = task.m
    base = 0
    for value in (0, 1, -1, 2, -2):
        base |= 1 << (value % m)
    units = [0] * (m - 1)
    for a in range(2, m - 1):
        units[a] = _unit_mask(m, a)
    bound_add = {}
    n = task.d - 3
    for placed in range(n + 1):
        r = n - placed
        bound_add[placed] = r * (6 + 2 * placed) + r * (r - 1)
    return m, n, base, units, bound_add, shard_budget


def _run_shard(args: tuple[SearchTask, int, int | None]) -> tuple[SearchCounters, list[PhiSpec], bool]:
    """Explore the subtree where the first free position takes ``shard_value``."""
    task, shard_value, shard_budget = args
    m, n, base, units, bound_add, budget = _shard_state(task, shard_budget)
    counters = SearchCounters()
    solutions: list[PhiSpec] = []
    find_first = task.mode == "find-first"
    keep = task.mode != "count-only"
    spacing = task.spacing_prune
    full_count = m

    prefix = list(task.prefix)
    a1 = prefix[0] if prefix else shard_value
    sym_cap = m - a1

    # Coverage contributed by the prefix itself (not counted as nodes).
    covered = base
    for idx, a in enumerate(prefix):
        covered |= units[a]
        for b in prefix[:idx]:
            covered |= 1 << ((a - b) % m)
            covered |= 1 << ((b - a) % m)

    def accept(chosen: list[int]) -> None:
        offsets = tuple(chosen)
        negated = tuple(sorted(m - a for a in offsets))
        if offsets <= negated:
            counters.solutions_found += 1
            if keep:
                solutions.append(PhiSpec(m, offsets))
            if find_first:
                raise _StopShard
        else:
            counters.pruned_by_symmetry += 1

    def place(v: int, chosen: list[int], covered: int) -> None:
        # chosen includes the prefix; only non-prefix placements reach here
        if budget is not None and counters.nodes_visited >= budget:
            counters.budget_stops += 1
            raise _StopShard
        counters.nodes_visited += 1
        new = covered | units[v]
        for b in chosen:
            new |= 1 << ((v - b) % m)
            new |= 1 << ((b - v) % m)
        chosen.append(v)
        k = len(chosen)
        if new.bit_count() + bound_add[k] < full_count:
            counters.pruned_by_bound += 1
        elif k == n:
            accept(chosen)
        else:
            extend(chosen, new)
        chosen.pop()

    def extend(chosen: list[int], covered: int) -> None:
        start = chosen[-1] + 1
        for v in range(start, m - 1):
            if v > sym_cap:
                counters.pruned_by_symmetry += (m - 1) - v
                break
            if spacing and not 4 <= v <= m - 4:
                counters.pruned_by_spacing += 1
                continue
            place(v, chosen, covered)

    exhausted = True
    v = shard_value
    try:
        if v > sym_cap:
            counters.pruned_by_symmetry += 1
        elif spacing and not 4 <= v <= m - 4:
            counters.pruned_by_spacing += 1
        else:
            place(v, list(prefix), covered)
    except _StopShard:
        exhausted = False
    return counters, solutions, exhausted


def search_offsets(task: SearchTask, workers: int = 1) -> SearchReport:
    """Enumerate canonical offset tuples with full coverage for ``task``.

    Returns the canonical, sorted, duplicate-free solution list together
    with work counters. ``exhausted`` is True only when the task's whole
    candidate space was visited.
    """
    if workers < 1:
        raise ValueError("worker count must be at least 1")
    t0 = time.perf_counter()
    n = task.d - 3
    counters = SearchCounters()
    solutions: list[PhiSpec] = []
    exhausted = True

    if len(task.prefix) == n:
        # Nothing to enumerate: evaluate the fully pinned tuple directly.
        counters_, sols_, exh_ = _run_prefixed_leaf(task)
        counters.add(counters_)
        solutions.extend(sols_)
        exhausted = exh_
    else:
        start = task.prefix[-1] + 1 if task.prefix else 2
        shard_values = list(range(start, task.m - 1))
        if task.node_budget is None:
            shard_budget = None
        else:
            shard_budget = -(-task.node_budget // max(1, len(shard_values)))
        jobs = [(task, v, shard_budget) for v in shard_values]
        if workers == 1 or len(jobs) <= 1:
            results = map(_run_shard, jobs)
        else:
            with ProcessPoolExecutor(max_workers=workers) as pool:
                results = list(pool.map(_run_shard, jobs))
        for shard_counters, shard_solutions, shard_exhausted in results:
            counters.add(shard_counters)
            solutions.extend(shard_solutions)
            exhausted = exhausted and shard_exhausted

    solutions.sort(key=lambda s: s.offsets)
    if task.mode == "find-first" and solutions:
        solutions = [solutions[0]]
    return SearchReport(
        task=task,
        solutions=tuple(solutions),
        counters=counters,
        elapsed=time.perf_counter() - t0,
        exhausted=exhausted,
    )


def _run_prefixed_leaf(task: SearchTask) -> tuple[SearchCounters, list[PhiSpec], bool]:
    counters = SearchCounters()
    solutions: list[PhiSpec] = []
    spec = PhiSpec(task.m, task.prefix)
    if two_step_residues(spec).full:
        negated = tuple(sorted(task.m - a for a in spec.offsets))
        if spec.offsets <= negated:
            counters.solutions_found += 1
            if task.mode != "count-only":
                solutions.append(spec)
        else:
            counters.pruned_by_symmetry += 1
    return counters, solutions, True


@dataclass(frozen=True)
class MaxMResult:
    d: int
    m_low: int
    m_high: int
    best_m: int | None
    witnesses: tuple[PhiSpec, ...]
    reports: dict[int, SearchReport] = field(hash=False, default_factory=dict)
    #: Smallest modulus in the contiguous range below m_high proven solution-free.
    verified_down_to: int | None = None
    conclusive: bool = True


def max_m(
    d: int,
    m_low: int,
    m_high: int,
    node_budget: int | None = None,
    workers: int = 1,
) -> MaxMResult:
    """Largest modulus in ``[m_low, m_high]`` admitting a full-coverage tuple.

    Scans downward with a find-first search per modulus and stops at the
    first hit. Moduli below the degree cannot host enough distinct offsets
    and are skipped. If a budget runs out before a modulus is settled the
    scan stops and the result is marked inconclusive.
    """
    cap = max_m_upper_bound(d)
    if not 5 <= m_low <= m_high <= cap:
        raise ValueError(f"need 5 <= m_low <= m_high <= {cap}")
    reports: dict[int, SearchReport] = {}
    verified_down_to: int | None = None
    effective_low = max(m_low, d)
    for m in range(m_high, effective_low - 1, -1):
        task = SearchTask(d=d, m=m, mode="find-first", node_budget=node_budget)
        report = search_offsets(task, workers=workers)
        reports[m] = report
        if report.solutions:
            return MaxMResult(
                d=d,
                m_low=m_low,
                m_high=m_high,
                best_m=m,
                witnesses=report.solutions,
                reports=reports,
                verified_down_to=verified_down_to,
                conclusive=True,
            )
        if report.counters.budget_stops:
            return MaxMResult(
                d=d,
                m_low=m_low,
                m_high=m_high,
                best_m=None,
                witnesses=(),
                reports=reports,
                verified_down_to=verified_down_to,
                conclusive=False,
            )
        verified_down_to = m
    return MaxMResult(
        d=d,
        m_low=m_low,
        m_high=m_high,
        best_m=None,
        witnesses=(),
        reports=reports,
        verified_down_to=verified_down_to,
        conclusive=True,
    )
