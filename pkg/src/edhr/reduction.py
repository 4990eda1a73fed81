"""Dembo-Hammer fixing and its extension to the five-set partition.

For a parameter ``i >= 1`` every item is classified against the break item
``b`` using the residual capacity scaled down by ``i``. All tests are done on
the ``i``-scaled integer forms, e.g. ``p_j w_b - p_b (r/i + w_j) > 0`` is
evaluated as ``i p_j w_b - p_b (r + i w_j) > 0``.

All sets hold 0-based *sorted* positions of a :class:`SortedInstance`.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from math import comb
from typing import NamedTuple, Optional

from .kpcore import SortedInstance, Solution

DEFAULT_BRANCH_CAP = 10**7


class EnumerationBlowUp(RuntimeError):
    """The candidate family would exceed the configured branch cap."""


@dataclass(frozen=True)
class EdhrPartition:
    i: int
    n1: frozenset[int]
    n2: frozenset[int]
    n3: frozenset[int]
    n4: frozenset[int]
    n5: frozenset[int]

    @property
    def sets(self) -> tuple[frozenset[int], ...]:
        return (self.n1, self.n2, self.n3, self.n4, self.n5)

    @property
    def free(self) -> frozenset[int]:
        return self.n2 | self.n3 | self.n5

    def sizes(self) -> tuple[int, int, int, int, int]:
        return tuple(len(s) for s in self.sets)


@dataclass(frozen=True)
class Subproblem:
    fixed_one: frozenset[int]
    fixed_zero: frozenset[int]
    free: frozenset[int]
    reduced_capacity: int

    @property
    def feasible(self) -> bool:
        return self.reduced_capacity >= 0


@dataclass(frozen=True)
class CardinalityConstraints:
    """``sum(x[N_i1]) >= at_least[1]`` and ``sum(x[N_i4]) <= at_most[1]``.

    A vacuous row is stored as ``None``.
    """

    at_least: Optional[tuple[frozenset[int], int]]
    at_most: Optional[tuple[frozenset[int], int]]

    @property
    def empty(self) -> bool:
        return self.at_least is None and self.at_most is None

    def forced_count(self) -> int:
        """Items whose value the rows pin down outright."""
        forced = 0
        if self.at_least is not None and self.at_least[1] == len(self.at_least[0]):
            forced += len(self.at_least[0])
        if self.at_most is not None and self.at_most[1] == 0:
            forced += len(self.at_most[0])
        return forced


class Branch(NamedTuple):
    excluded: tuple[int, ...]  # taken out of N_i1
    included: tuple[int, ...]  # taken from N_i4


@dataclass(frozen=True)
class EnumerationPlan:
    partition: EdhrPartition
    branches: list[Branch]


@dataclass(frozen=True)
class TheoremAudit:
    i: int
    d1: frozenset[int]
    d2: frozenset[int]
    d3: frozenset[int]

    @property
    def at_least_holds(self) -> bool:
        return len(self.d1) <= self.i - 1

    @property
    def at_most_holds(self) -> bool:
        return len(self.d2) <= self.i - 1

    @property
    def holds(self) -> bool:
        return self.at_least_holds and self.at_most_holds


def dhr_partition(s: SortedInstance) -> Subproblem:
    pb, wb = s.break_item
    r = s.residual
    ones, zeros = set(), set()
    for k in range(s.n):
        p, w = s.profits[k], s.weights[k]
        if s.denser_than_break(k):
            if p * wb - pb * (r + w) > 0:
                ones.add(k)
        elif w > r and p * wb + pb * (r - w) < 0:
            zeros.add(k)
    free = frozenset(range(s.n)) - ones - zeros
    cap = s.capacity - sum(s.weights[k] for k in ones)
    return Subproblem(frozenset(ones), frozenset(zeros), free, cap)


def edhr_partition(s: SortedInstance, i: int) -> EdhrPartition:
    if i < 1:
        raise ValueError(f"reduction parameter must be >= 1, got {i}")
    pb, wb = s.break_item
    r = s.residual
    sets = ([], [], [], [], [])
    for k in range(s.n):
        p, w = s.profits[k], s.weights[k]
        if s.denser_than_break(k):
            sets[0 if i * p * wb - pb * (r + i * w) > 0 else 1].append(k)
        elif i * w > r:
            sets[2 if i * p * wb + pb * (r - i * w) >= 0 else 3].append(k)
        else:
            sets[4].append(k)
    return EdhrPartition(i, *(frozenset(x) for x in sets))


def fixing_sets_agree_with_dhr(s: SortedInstance) -> bool:
    part = edhr_partition(s, 1)
    dhr = dhr_partition(s)
    return part.n1 == dhr.fixed_one and part.n4 == dhr.fixed_zero


def cardinality_constraints(p: EdhrPartition) -> CardinalityConstraints:
    slack = p.i - 1
    at_least = None
    need = len(p.n1) - slack
    if p.n1 and need > 0:
        at_least = (p.n1, need)
    at_most = None
    if p.n4 and slack < len(p.n4):
        at_most = (p.n4, slack)
    return CardinalityConstraints(at_least, at_most)


def branch_count(p: EdhrPartition) -> int:
    n1, n4 = len(p.n1), len(p.n4)
    return sum(comb(n1, j) for j in range(p.i)) * sum(comb(n4, j) for j in range(p.i))


def _small_subsets(items: frozenset[int], max_size: int) -> list[tuple[int, ...]]:
    ordered = sorted(items)
    out = []
    for size in range(min(max_size, len(ordered)) + 1):
        out.extend(combinations(ordered, size))
    return out


def enumeration_plan(p: EdhrPartition, cap: int = DEFAULT_BRANCH_CAP) -> EnumerationPlan:
    count = branch_count(p)
    if count > cap:
        raise EnumerationBlowUp(
            f"enumeration blow-up: {count} branches for i={p.i}, "
            f"|N_i1|={len(p.n1)}, |N_i4|={len(p.n4)} (cap {cap})"
        )
    excl = _small_subsets(p.n1, p.i - 1)
    incl = _small_subsets(p.n4, p.i - 1)
    branches = [Branch(e, a) for a in incl for e in excl]
    return EnumerationPlan(p, branches)


def assemble_branch(s: SortedInstance, p: EdhrPartition, branch: Branch) -> Subproblem:
    excl, incl = branch
    excluded, included = frozenset(excl), frozenset(incl)
    fixed_one = (p.n1 - excluded) | included
    fixed_zero = excluded | (p.n4 - included)
    cap = s.capacity - sum(s.weights[k] for k in fixed_one)
    return Subproblem(fixed_one, fixed_zero, p.free, cap)


def audit_optimal(
    s: SortedInstance,
    p: EdhrPartition,
    optimal: Solution,
    oracle_objective: Optional[int] = None,
) -> TheoremAudit:
    """Count how far an optimum strays from the N_i1 / N_i4 / N_i5 defaults.

    If ``oracle_objective`` is given, ``optimal`` must reach it.
    """
    if oracle_objective is not None and optimal.objective != oracle_objective:
        raise ValueError(
            f"solution objective {optimal.objective} is not the optimum {oracle_objective}"
        )
    y = [optimal.assignment[s.order[k]] for k in range(s.n)]
    return TheoremAudit(
        i=p.i,
        d1=frozenset(k for k in p.n1 if not y[k]),
        d2=frozenset(k for k in p.n4 if y[k]),
        d3=frozenset(k for k in p.n5 if y[k]),
    )
