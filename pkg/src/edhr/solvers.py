"""Exact solvers: DP oracle, exhaustive oracle, depth-first branch-and-bound
and the reduction pipeline built on top of them."""
from __future__ import annotations

import time
from bisect import bisect_right
from dataclasses import dataclass, field
from typing import Iterable, Optional

import numpy as np

from .kpcore import (
    Instance,
    SortedInstance,
    Solution,
    break_solution_lower_bound,
    normalize_and_sort,
)
from .reduction import (
    DEFAULT_BRANCH_CAP,
    CardinalityConstraints,
    Subproblem,
    assemble_branch,
    cardinality_constraints,
    edhr_partition,
    enumeration_plan,
)

DEFAULT_DP_BUDGET = 25_000_000  # table cells
MAX_EXHAUSTIVE_N = 25
MODES = ("plain-bb", "constrained-bb", "enumerate", "dp", "exhaustive")


class BudgetExceeded(MemoryError):
    pass


@dataclass
class SearchStats:
    nodes_expanded: int = 0
    branches_solved: int = 0
    fixed_by_reduction: int = 0
    wall_time: float = 0.0


@dataclass(frozen=True)
class SolverConfig:
    mode: str = "constrained-bb"
    i: int = 2
    branch_cap: int = DEFAULT_BRANCH_CAP
    dp_budget: int = DEFAULT_DP_BUDGET

    def __post_init__(self):
        if self.mode not in MODES:
            raise ValueError(f"unknown mode {self.mode!r}; expected one of {', '.join(MODES)}")
        if self.i < 1:
            raise ValueError(f"i must be >= 1, got {self.i}")
        if self.branch_cap < 1:
            raise ValueError("branch_cap must be positive")


# ---------------------------------------------------------------- DP

def _dp_table(profits, weights, capacity: int, budget: int) -> np.ndarray:
    """Suffix table: ``t[k, c]`` = best profit from items ``k..`` within capacity ``c``."""
    m = len(profits)
    cells = (m + 1) * (capacity + 1)
    if cells > budget:
        raise BudgetExceeded(
            f"DP table needs n*C = {m}*{capacity} (~{cells} cells), budget is {budget}"
        )
    if sum(profits) >= 2**62:
        raise OverflowError("profit sum does not fit the 64-bit DP table")
    table = np.zeros((m + 1, capacity + 1), dtype=np.int64)
    for k in range(m - 1, -1, -1):
        nxt = table[k + 1]
        row = nxt.copy()
        w, p = weights[k], profits[k]
        if w <= capacity:
            np.maximum(row[w:], nxt[: capacity + 1 - w] + p, out=row[w:])
        table[k] = row
    return table


def _dp_pick(table: np.ndarray, weights, capacity: int) -> list[int]:
    """Lexicographically smallest optimal 0/1 vector (prefers leaving items out)."""
    x = []
    c = capacity
    for k, w in enumerate(weights):
        if table[k, c] == table[k + 1, c]:
            x.append(0)
        else:
            x.append(1)
            c -= w
    return x


def solve_dp(inst: Instance, budget: int = DEFAULT_DP_BUDGET) -> tuple[Solution, SearchStats]:
    start = time.perf_counter()
    table = _dp_table(inst.profits, inst.weights, inst.capacity, budget)
    x = _dp_pick(table, inst.weights, inst.capacity)
    sol = Solution(tuple(x), int(table[0, inst.capacity]), True)
    stats = SearchStats(nodes_expanded=inst.n, wall_time=time.perf_counter() - start)
    return sol, stats


# ---------------------------------------------------------------- exhaustive

def solve_exhaustive(
    inst: Instance, max_n: int = MAX_EXHAUSTIVE_N
) -> tuple[Solution, list[tuple[int, ...]]]:
    """Enumerate all ``2^n`` assignments; return the optimum and every optimal vector."""
    n = inst.n
    if n > max_n:
        raise ValueError(f"exhaustive enumeration limited to n <= {max_n}, got {n}")
    p = np.asarray(inst.profits, dtype=np.int64)
    w = np.asarray(inst.weights, dtype=np.int64)
    shifts = np.arange(n, dtype=np.int64)
    best = -1
    masks: list[np.ndarray] = []
    chunk = 1 << 16
    for lo in range(0, 1 << n, chunk):
        m = np.arange(lo, min(lo + chunk, 1 << n), dtype=np.int64)
        bits = (m[:, None] >> shifts) & 1
        val = bits @ p
        ok = (bits @ w) <= inst.capacity
        val = np.where(ok, val, -1)
        top = int(val.max())
        if top > best:
            best, masks = top, [m[val == top]]
        elif top == best:
            masks.append(m[val == top])
    allm = np.concatenate(masks)
    optima = sorted(tuple(int((mm >> j) & 1) for j in range(n)) for mm in allm.tolist())
    return Solution(optima[0], best, True), optima


# ---------------------------------------------------------------- branch and bound

def solve_branch_bound(
    inst: Instance,
    constraints: Optional[CardinalityConstraints] = None,
    fixed: Optional[Subproblem] = None,
    *,
    sorted_inst: Optional[SortedInstance] = None,
) -> tuple[Solution, SearchStats]:
    """Depth-first branch-and-bound over sorted positions, 1-branch first.

    Each node popped from the stack is counted in ``nodes_expanded`` and gets
    its Dantzig bound evaluated. Children that would break a cardinality row
    are never created. ``fixed`` positions are removed from the search before
    it starts.
    """
    start = time.perf_counter()
    s = sorted_inst if sorted_inst is not None else normalize_and_sort(inst)
    n = s.n
    stats = SearchStats()

    fixed_one = fixed.fixed_one if fixed is not None else frozenset()
    fixed_zero = fixed.fixed_zero if fixed is not None else frozenset()
    base_w = sum(s.weights[k] for k in fixed_one)
    base_p = sum(s.profits[k] for k in fixed_one)
    cap = s.capacity - base_w
    if cap < 0:
        stats.wall_time = time.perf_counter() - start
        return Solution.infeasible(n), stats

    free = [k for k in range(n) if k not in fixed_one and k not in fixed_zero]
    m = len(free)
    p = [s.profits[k] for k in free]
    w = [s.weights[k] for k in free]
    W = [0]
    P = [0]
    for pk, wk in zip(p, w):
        W.append(W[-1] + wk)
        P.append(P[-1] + pk)

    # tag 1: member of the at-least row, tag 4: member of the at-most row
    tag = [0] * m
    inf = m + 1
    max_zeros = allow_ones = inf
    if constraints is not None and constraints.at_least is not None:
        rows, bound = constraints.at_least
        need = bound - len(rows & fixed_one)
        free_rows = [t for t, k in enumerate(free) if k in rows]
        max_zeros = len(free_rows) - need
        for t in free_rows:
            tag[t] = 1
    if constraints is not None and constraints.at_most is not None:
        rows, bound = constraints.at_most
        allow_ones = bound - len(rows & fixed_one)
        for t, k in enumerate(free):
            if k in rows:
                tag[t] = 4
    if max_zeros < 0 or allow_ones < 0:
        stats.wall_time = time.perf_counter() - start
        return Solution.infeasible(n), stats
    # prefix counts, used to check a greedy completion against the rows
    cnt1 = [0]
    cnt4 = [0]
    for tg in tag:
        cnt1.append(cnt1[-1] + (tg == 1))
        cnt4.append(cnt4[-1] + (tg == 4))

    # incumbent: the break solution, when it respects fixings and rows
    best = -1
    best_x: Optional[list[int]] = None
    b = s.break_index
    brk = [1 if k < b else 0 for k in free]
    if (
        all(k < b for k in fixed_one)
        and not any(k < b for k in fixed_zero)
        and sum(1 for t in range(m) if tag[t] == 1 and not brk[t]) <= max_zeros
        and sum(1 for t in range(m) if tag[t] == 4 and brk[t]) <= allow_ones
    ):
        best = s.prefix_profits[b] - base_p
        best_x = brk

    # a node is dominated by an earlier node at the same depth with the same
    # capacity left and at least its profit; that subtree is already done
    keyed = constraints is not None and not constraints.empty and best_x is None
    seen: list[dict] = [dict() for _ in range(m + 1)]
    x = [0] * m
    nodes = 0
    # (depth, capacity left, profit, zeros on row 1, ones on row 4, decision)
    stack = [(0, cap, 0, 0, 0, -1)]
    while stack:
        k, c, val, z, o, d = stack.pop()
        if k:
            x[k - 1] = d
        nodes += 1
        if k == m:
            if val > best:
                best, best_x = val, x[:]
            continue
        t = bisect_right(W, W[k] + c, k) - 1
        greedy = val + P[t] - P[k]
        ub = greedy
        if t < m:
            ub += (c - (W[t] - W[k])) * p[t] // w[t]
        if ub <= best:
            continue
        memo = seen[k]
        key = (c, z, o) if keyed else c
        if memo.get(key, -1) >= val:
            continue
        memo[key] = val
        if (
            ub == greedy
            and cnt1[m] - cnt1[t] + z <= max_zeros
            and cnt4[t] - cnt4[k] + o <= allow_ones
        ):
            # greedy completion is integral and reaches the bound
            best = greedy
            best_x = x[:k] + [1] * (t - k) + [0] * (m - t)
            continue
        tg = tag[k]
        if tg != 1 or z < max_zeros:
            stack.append((k + 1, c, val, z + (tg == 1), o, 0))
        if w[k] <= c and (tg != 4 or o < allow_ones):
            stack.append((k + 1, c - w[k], val + p[k], z, o + (tg == 4), 1))

    stats.nodes_expanded = nodes
    stats.wall_time = time.perf_counter() - start
    if best_x is None:
        return Solution.infeasible(n), stats
    assignment = [0] * n
    for k in fixed_one:
        assignment[s.order[k]] = 1
    for t, v in enumerate(best_x):
        if v:
            assignment[s.order[free[t]]] = 1
    return Solution(tuple(assignment), best + base_p, True), stats


# ---------------------------------------------------------------- reduction pipeline

def _solve_enumerate(inst: Instance, s: SortedInstance, cfg: SolverConfig) -> tuple[Solution, SearchStats]:
    part = edhr_partition(s, cfg.i)
    plan = enumeration_plan(part, cfg.branch_cap)
    stats = SearchStats(fixed_by_reduction=len(part.n1) + len(part.n4))
    free = sorted(part.free)
    fp = [s.profits[k] for k in free]
    fw = [s.weights[k] for k in free]
    # every branch shares the same free set, only the capacity moves
    table = _dp_table(fp, fw, s.capacity, cfg.dp_budget)

    p1 = sum(s.profits[k] for k in part.n1)
    w1 = sum(s.weights[k] for k in part.n1)
    best_val, best_idx = -1, -1
    for idx, (excl, incl) in enumerate(plan.branches):
        cf = s.capacity - w1 + sum(s.weights[k] for k in excl) - sum(s.weights[k] for k in incl)
        if cf < 0:
            continue  # dropped before DP
        stats.branches_solved += 1
        val = (
            p1 - sum(s.profits[k] for k in excl) + sum(s.profits[k] for k in incl)
            + int(table[0, cf])
        )
        if val > best_val:
            best_val, best_idx = val, idx
    stats.nodes_expanded = stats.branches_solved

    sub = assemble_branch(s, part, plan.branches[best_idx])
    pick = _dp_pick(table, fw, sub.reduced_capacity)
    assignment = [0] * s.n
    for k in sub.fixed_one:
        assignment[s.order[k]] = 1
    for k, v in zip(free, pick):
        if v:
            assignment[s.order[k]] = 1
    return Solution(tuple(assignment), best_val, True), stats


def solve_edhr(inst: Instance, cfg: SolverConfig = SolverConfig()) -> tuple[Solution, SearchStats]:
    """Reduce with parameter ``cfg.i`` and solve.

    ``constrained-bb`` adds the two cardinality rows to branch-and-bound;
    ``enumerate`` walks the candidate family and solves the shared free part
    by DP.
    """
    start = time.perf_counter()
    s = normalize_and_sort(inst)
    if cfg.mode == "enumerate":
        sol, stats = _solve_enumerate(inst, s, cfg)
    elif cfg.mode == "constrained-bb":
        cons = cardinality_constraints(edhr_partition(s, cfg.i))
        sol, stats = solve_branch_bound(inst, cons, sorted_inst=s)
        stats.fixed_by_reduction = cons.forced_count()
        stats.branches_solved = 1
    else:
        raise ValueError(f"solve_edhr handles constrained-bb and enumerate, not {cfg.mode!r}")
    stats.wall_time = time.perf_counter() - start
    return sol, stats


def solve(inst: Instance, cfg: SolverConfig = SolverConfig()) -> tuple[Solution, SearchStats]:
    """Dispatch on ``cfg.mode``."""
    if cfg.mode in ("constrained-bb", "enumerate"):
        return solve_edhr(inst, cfg)
    if cfg.mode == "plain-bb":
        return solve_branch_bound(inst)
    if cfg.mode == "dp":
        return solve_dp(inst, cfg.dp_budget)
    start = time.perf_counter()
    sol, optima = solve_exhaustive(inst)
    return sol, SearchStats(nodes_expanded=1 << inst.n, wall_time=time.perf_counter() - start)
