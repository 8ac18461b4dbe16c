"""Exact extremal values by complement hitting-set branch and bound.

The universe is every subset of the ground set within the size cap.  A family
is simplex-free exactly when the deleted subsets hit every simplex of the
universe, so the largest family corresponds to the smallest hitting set.  The
solver branches on an unhit simplex with the fewest undecided members
(delete member ``i`` while keeping members ``0..i-1``), which partitions the
solution space; each minimum hitting set is therefore reached exactly once,
which is what makes optimal-family counting possible.
"""

from __future__ import annotations

import json
import multiprocessing as mp
import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations

from .family import MAX_CANONICAL_N, MAX_POWERSET_N, SetFamily, canonical_form, mask_of, masks_up_to
from .formulas import EXACT, BoundValue, build_star_family, star_value
from .simplex import DEFAULT_TUPLE_BUDGET, BudgetExceeded, find_simplex, simplex_index_tuples

DEFAULT_NODE_BUDGET = 10**8
# ground sizes from here on take minutes to hours and must be asked for
LONG_RUNNING_N = 7
SCHEMA = "simplexfree.search/1"

OPTIMAL = "optimal"
FEASIBLE = "feasible"
INFEASIBLE = "infeasible"
INCONCLUSIVE = "inconclusive"


@dataclass(frozen=True)
class SearchProblem:
    n: int
    d: int
    size_cap: int | None = None
    require_max: bool = False
    target: int | None = None

    def __post_init__(self):
        if not 1 <= self.n <= MAX_POWERSET_N:
            raise ValueError(f"n={self.n} outside 1..{MAX_POWERSET_N}")
        if self.d < 1:
            raise ValueError("d must be positive")
        if self.size_cap is not None and not 0 <= self.size_cap <= self.n:
            raise ValueError(f"size_cap={self.size_cap} must lie in 0..n")
        if self.target is not None and not 0 <= self.target <= 2 ** self.n:
            raise ValueError(f"target={self.target} must lie in 0..2^n")

    @property
    def cap(self) -> int:
        return self.n if self.size_cap is None else self.size_cap

    @classmethod
    def f(cls, n, d, k=0, **kw):
        return cls(n, d, size_cap=n - k, **kw)

    @classmethod
    def g(cls, n, d, k, **kw):
        return cls(n, d, size_cap=n - k, require_max=True, **kw)


@dataclass
class SearchStats:
    nodes: int = 0
    prunes: int = 0
    simplices: int = 0
    workers: int = 1
    wall_time: float = 0.0

    def as_dict(self):
        return {"nodes": self.nodes, "prunes": self.prunes, "simplices": self.simplices,
                "workers": self.workers, "wall_time": round(self.wall_time, 6)}


@dataclass
class SearchOutcome:
    problem: SearchProblem
    status: str
    optimum: int | None
    witness: SetFamily | None
    optimal_count: int | None = None
    optimal_orbit_count: int | None = None
    stats: SearchStats = field(default_factory=SearchStats)
    message: str = ""

    @property
    def proved(self) -> bool:
        return self.status in (OPTIMAL, FEASIBLE, INFEASIBLE)

    def to_dict(self, include_stats=True):
        p = self.problem
        out = {
            "schema": SCHEMA,
            "problem": {"n": p.n, "d": p.d, "size_cap": p.size_cap,
                        "require_max": p.require_max, "target": p.target},
            "status": self.status,
            "optimum": self.optimum,
            "witness": None if self.witness is None else
            {"n": self.witness.n, "sets": self.witness.sets()},
            "optimal_count": self.optimal_count,
            "optimal_orbit_count": self.optimal_orbit_count,
        }
        if self.message:
            out["message"] = self.message
        if include_stats:
            out["stats"] = self.stats.as_dict()
        return out

    def to_json(self, include_stats=True) -> str:
        return json.dumps(self.to_dict(include_stats), separators=(",", ":"))


class _OutOfNodes(Exception):
    pass


# --------------------------------------------------------------------------
# instance construction


@dataclass
class _Instance:
    n: int
    universe: list[int]
    edges: list[int]          # bit i <-> universe[i]
    forced: int               # vertices that may not be deleted
    seed_deletions: int       # deletion mask of a known simplex-free family

    def family(self, deleted: int) -> SetFamily:
        return SetFamily(self.n, tuple(m for i, m in enumerate(self.universe) if not deleted >> i & 1))


def _instance(prob: SearchProblem, pivot: int | None = None,
              tuple_budget: int = DEFAULT_TUPLE_BUDGET) -> _Instance:
    n, d, cap = prob.n, prob.d, prob.cap
    universe = masks_up_to(n, cap)
    index = {m: i for i, m in enumerate(universe)}
    tuples = simplex_index_tuples(SetFamily(n, tuple(universe)), d, tuple_budget)
    edges = []
    for t in tuples:
        e = 0
        for i in t:
            e |= 1 << i
        edges.append(e)
    forced = 0
    if prob.require_max:
        if pivot is None:
            pivot = (1 << cap) - 1
        forced = 1 << index[pivot]
    # star through element 0, cut to the universe; it contains the default pivot
    seed = 0
    for i, m in enumerate(universe):
        if not (m & 1 or m.bit_count() <= d - 1):
            seed |= 1 << i
    if forced & seed:
        seed = _seed_with_pivot(universe, d, pivot)
    return _Instance(n, universe, edges, forced, seed)


def _seed_with_pivot(universe, d, pivot):
    # relabel the star so that its centre is the lowest element of the pivot
    x = (pivot & -pivot).bit_length() - 1 if pivot else 0
    xb = 1 << x
    seed = 0
    for i, m in enumerate(universe):
        if not (m & xb or m.bit_count() <= d - 1):
            seed |= 1 << i
    return seed


# --------------------------------------------------------------------------
# branch and bound core

_shared_best = None  # set in worker processes


def _init_worker(shared):
    global _shared_best
    _shared_best = shared


class _Solver:
    """Depth-first hitting-set search.

    ``mode`` is ``"min"`` (shrink the limit on every improvement), ``"all"``
    (collect every hitting set within the limit) or ``"first"`` (stop at the
    first one).
    """

    def __init__(self, mode, limit, node_budget, shared=None):
        self.mode = mode
        self.limit = limit
        self.node_budget = node_budget
        self.shared = shared
        self.nodes = 0
        self.prunes = 0
        self.best = None          # (ndel, deleted) in min/first mode
        self.found = []           # deletion masks in all mode
        self.done = False

    def _current_limit(self):
        if self.shared is not None and self.mode == "min":
            return min(self.limit, self.shared.value - 1)
        return self.limit

    def _record(self, ndel, deleted):
        if self.mode == "all":
            self.found.append(deleted)
            return
        self.best = (ndel, deleted)
        if self.mode == "first":
            self.done = True
            return
        self.limit = ndel - 1
        if self.shared is not None:
            with self.shared.get_lock():
                if ndel < self.shared.value:
                    self.shared.value = ndel

    def children(self, unhit, kept, deleted, ndel):
        """Child states of a node, ``None`` when pruned, ``[]`` at a leaf."""
        self.nodes += 1
        if self.nodes > self.node_budget:
            raise _OutOfNodes
        if not unhit:
            self._record(ndel, deleted)
            return []
        room = self._current_limit() - ndel
        if room <= 0:
            self.prunes += 1
            return None
        notkept = ~kept
        used = 0
        packed = 0
        pick = 0
        pick_count = 1 << 30
        for e in unhit:
            free = e & notkept
            c = free.bit_count()
            if c < pick_count:
                if c == 0:
                    self.prunes += 1
                    return None
                pick, pick_count = free, c
            if not free & used:
                used |= free
                packed += 1
        if packed > room:
            self.prunes += 1
            return None
        out = []
        prefix = 0
        rest = pick
        while rest:
            bit = rest & -rest
            rest ^= bit
            out.append(([e for e in unhit if not e & bit], kept | prefix, deleted | bit, ndel + 1))
            prefix |= bit
        return out

    def run(self, state):
        kids = self.children(*state)
        if not kids:
            return
        for child in kids:
            self.run(child)
            if self.done:
                return


def _root(inst: _Instance):
    return (list(inst.edges), inst.forced, 0, 0)


def _frontier(solver: _Solver, root, want: int):
    """Breadth-first expansion until at least ``want`` open states remain."""
    layer = [root]
    while layer and len(layer) < want:
        nxt = []
        expanded = False
        for state in layer:
            kids = solver.children(*state)
            if kids:
                nxt.extend(kids)
                expanded = True
            if solver.done:
                return []
        layer = nxt
        if not expanded:
            break
    return layer


def _task(args):
    mode, limit, node_budget, state = args
    solver = _Solver(mode, limit, node_budget, _shared_best)
    try:
        solver.run(state)
        exhausted = False
    except _OutOfNodes:
        exhausted = True
    return solver.best, solver.found, solver.nodes, solver.prunes, exhausted


def _solve(inst: _Instance, mode: str, limit: int, node_budget: int, workers: int):
    """Run one search; returns (best, found, nodes, prunes, exhausted)."""
    if workers <= 1:
        solver = _Solver(mode, limit, node_budget)
        try:
            solver.run(_root(inst))
            exhausted = False
        except _OutOfNodes:
            exhausted = True
        return solver.best, solver.found, solver.nodes, solver.prunes, exhausted

    # "first" mode stays serial: its answer is defined by depth-first order
    assert mode in ("min", "all")
    ctx = mp.get_context("fork")
    shared = ctx.Value("i", limit + 1)
    head = _Solver(mode, limit, node_budget, shared)
    try:
        tasks = _frontier(head, _root(inst), 4 * workers)
    except _OutOfNodes:
        return head.best, head.found, head.nodes, head.prunes, True
    best, found = head.best, list(head.found)
    nodes, prunes, exhausted = head.nodes, head.prunes, False
    if tasks:
        with ProcessPoolExecutor(max_workers=workers, mp_context=ctx,
                                 initializer=_init_worker, initargs=(shared,)) as pool:
            jobs = [(mode, head.limit, node_budget, s) for s in tasks]
            for b, f, nd, pr, ex in pool.map(_task, jobs):
                nodes += nd
                prunes += pr
                exhausted = exhausted or ex
                found.extend(f)
                if b is not None and (best is None or b[0] < best[0]):
                    best = b
    return best, sorted(found), nodes, prunes, exhausted


def default_workers() -> int:
    return os.cpu_count() or 1


# --------------------------------------------------------------------------
# public operations


def max_simplex_free(prob: SearchProblem, *, workers: int = 1,
                     node_budget: int = DEFAULT_NODE_BUDGET,
                     tuple_budget: int = DEFAULT_TUPLE_BUDGET,
                     long_running: bool = False) -> SearchOutcome:
    """Largest d-simplex-free family under the problem's constraints.

    Without a target the incumbent starts at the star construction and the
    search proves or improves it; with a target the call only decides whether
    a family of at least that size exists.
    """
    _gate(prob, long_running)
    t0 = time.perf_counter()
    stats = SearchStats(workers=max(1, workers))
    try:
        inst = _instance(prob, tuple_budget=tuple_budget)
    except BudgetExceeded as exc:
        stats.wall_time = time.perf_counter() - t0
        return SearchOutcome(prob, INCONCLUSIVE, None, None, stats=stats, message=str(exc))
    stats.simplices = len(inst.edges)
    size = len(inst.universe)

    if prob.target is not None:
        limit = size - prob.target
        if limit < 0:
            stats.wall_time = time.perf_counter() - t0
            return SearchOutcome(prob, INFEASIBLE, None, None, stats=stats,
                                 message="target exceeds the universe")
        best, _, nodes, prunes, exhausted = _solve(inst, "first", limit, node_budget, 1)
        stats.nodes, stats.prunes = nodes, prunes
        stats.wall_time = time.perf_counter() - t0
        if best is not None:
            fam = inst.family(best[1])
            return SearchOutcome(prob, FEASIBLE, None, fam, stats=stats)
        if exhausted:
            return SearchOutcome(prob, INCONCLUSIVE, None, None, stats=stats,
                                 message="node budget exhausted")
        return SearchOutcome(prob, INFEASIBLE, None, None, stats=stats)

    seed_del = inst.seed_deletions.bit_count()
    best, _, nodes, prunes, exhausted = _solve(inst, "min", seed_del - 1, node_budget, workers)
    stats.nodes, stats.prunes = nodes, prunes
    if exhausted:
        stats.wall_time = time.perf_counter() - t0
        lower = size - (best[0] if best else seed_del)
        return SearchOutcome(prob, INCONCLUSIVE, None, inst.family(best[1] if best else inst.seed_deletions),
                             stats=stats, message=f"node budget exhausted; best known {lower}")
    min_del = best[0] if best is not None else seed_del
    # witness: first optimum in depth-first order, independent of scheduling
    first, _, nd, pr, _ = _solve(inst, "first", min_del, node_budget, 1)
    stats.nodes += nd
    stats.prunes += pr
    witness = inst.family(first[1])
    _check_witness(prob, witness)
    stats.wall_time = time.perf_counter() - t0
    return SearchOutcome(prob, OPTIMAL, size - min_del, witness, stats=stats)


def _gate(prob, long_running):
    if prob.n >= LONG_RUNNING_N and not long_running:
        raise ValueError(f"n={prob.n} >= {LONG_RUNNING_N} is a long-running search; pass long_running=True")


def _check_witness(prob: SearchProblem, fam: SetFamily):
    if find_simplex(fam, prob.d) is not None:
        raise AssertionError("search produced a family containing a simplex")
    if any(m.bit_count() > prob.cap for m in fam):
        raise AssertionError("search produced a member above the size cap")
    if prob.require_max and not any(m.bit_count() == prob.cap for m in fam):
        raise AssertionError("search produced a family without a member of maximum size")


def enumerate_optimal(prob: SearchProblem, *, workers: int = 1,
                      node_budget: int = DEFAULT_NODE_BUDGET,
                      max_families: int = 10**6,
                      long_running: bool = False) -> tuple[list[SetFamily], SearchOutcome]:
    """All optimal families, sorted, with the optimum outcome carrying the counts."""
    if prob.target is not None:
        raise ValueError("enumeration runs in optimisation mode; drop the target")
    outcome = max_simplex_free(prob, workers=workers, node_budget=node_budget,
                               long_running=long_running)
    if outcome.status != OPTIMAL:
        return [], outcome
    t0 = time.perf_counter()
    n, cap = prob.n, prob.cap
    if prob.require_max:
        pivots = [mask_of(c) for c in combinations(range(n), cap)]
    else:
        pivots = [None]
    families = set()
    for pivot in pivots:
        inst = _instance(prob, pivot)
        min_del = len(inst.universe) - outcome.optimum
        _, found, nodes, prunes, exhausted = _solve(inst, "all", min_del, node_budget, workers)
        outcome.stats.nodes += nodes
        outcome.stats.prunes += prunes
        if exhausted or len(found) + len(families) > max_families:
            outcome.status = INCONCLUSIVE
            outcome.message = "enumeration budget exhausted"
            return [], outcome
        families.update(inst.family(dm) for dm in found)
    result = sorted(families, key=lambda f: f.members)
    for fam in result:
        _check_witness(prob, fam)
    outcome.optimal_count = len(result)
    if n <= MAX_CANONICAL_N:
        outcome.optimal_orbit_count = len({canonical_form(f) for f in result})
    outcome.stats.wall_time += time.perf_counter() - t0
    return result, outcome


# --------------------------------------------------------------------------
# exact values and the conjecture grid


@lru_cache(maxsize=None)
def exact_f(n: int, d: int, k: int = 0) -> int:
    """Exact ``f(n, d, k)`` by search; ground size 0 and ``k > n`` handled directly."""
    if k > n:
        return 0
    if n == 0:
        return 1
    out = max_simplex_free(SearchProblem.f(n, d, k))
    if out.status != OPTIMAL:
        raise BudgetExceeded(f"f({n},{d},{k}) not settled: {out.message}")
    return out.optimum


@lru_cache(maxsize=None)
def exact_g(n: int, d: int, k: int) -> int:
    if not 0 <= k <= n:
        raise ValueError("g(n,d,k) needs 0 <= k <= n")
    if k == n:
        return 1
    out = max_simplex_free(SearchProblem.g(n, d, k))
    if out.status != OPTIMAL:
        raise BudgetExceeded(f"g({n},{d},{k}) not settled: {out.message}")
    return out.optimum


def exact_oracle(n: int, d: int, k: int) -> BoundValue:
    """``lemma_bound`` oracle backed by exhaustive search."""
    return BoundValue(exact_f(n, d, k), EXACT, "exhaustive search")


@dataclass
class ConjectureRow:
    n: int
    k: int
    exact: int | None
    conjectured: int
    match: bool | None
    unique: bool | None
    optimal_count: int | None = None


@dataclass
class ConjectureReport:
    d: int
    n_max: int
    rows: list[ConjectureRow]
    complete: bool

    @property
    def all_match(self) -> bool:
        return self.complete and all(r.match and r.unique for r in self.rows)

    def to_dict(self):
        return {"schema": "simplexfree.conjecture/1", "d": self.d, "n_max": self.n_max,
                "complete": self.complete, "all_match": self.all_match,
                "rows": [r.__dict__ for r in self.rows]}


def verify_conjecture(n_max: int, d: int, *, workers: int = 1,
                      node_budget: int = DEFAULT_NODE_BUDGET) -> ConjectureReport:
    """Check the star value and its uniqueness on every cell ``1 <= k <= n-d-1``, ``n <= n_max``."""
    if n_max > 6:
        raise ValueError("verify_conjecture is limited to n_max <= 6")
    if d < 2:
        raise ValueError("the conjecture concerns d >= 2")
    rows = []
    for n in range(1, n_max + 1):
        for k in range(1, n - d):
            conj = star_value(n, d, k).value
            fams, out = enumerate_optimal(SearchProblem.f(n, d, k), workers=workers,
                                          node_budget=node_budget)
            if out.status != OPTIMAL:
                rows.append(ConjectureRow(n, k, None, conj, None, None))
                return ConjectureReport(d, n_max, rows, complete=False)
            stars = {build_star_family(n, x, d, k) for x in range(n)}
            rows.append(ConjectureRow(n, k, out.optimum, conj, out.optimum == conj,
                                      set(fams) == stars, out.optimal_count))
    return ConjectureReport(d, n_max, rows, complete=True)
