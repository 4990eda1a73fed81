"""Instance representation, density ordering, break item and the classical bounds.

Positions in a :class:`SortedInstance` are 0-based indices into the density
order; ``order[k]`` is the original index of the item at sorted position ``k``.
Densities are never turned into floats: comparisons go through integer
cross-multiplication (or :class:`fractions.Fraction`, which does the same).
"""
from __future__ import annotations

from bisect import bisect_right
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence


class InstanceError(ValueError):
    """An instance violates one of the non-triviality assumptions."""


@dataclass(frozen=True)
class Instance:
    profits: tuple[int, ...]
    weights: tuple[int, ...]
    capacity: int

    def __post_init__(self):
        object.__setattr__(self, "profits", tuple(int(p) for p in self.profits))
        object.__setattr__(self, "weights", tuple(int(w) for w in self.weights))
        object.__setattr__(self, "capacity", int(self.capacity))
        if len(self.profits) != len(self.weights):
            raise InstanceError(
                f"{len(self.profits)} profits but {len(self.weights)} weights"
            )

    @classmethod
    def from_items(cls, items: Sequence[tuple[int, int]], capacity: int) -> "Instance":
        """Build from ``(profit, weight)`` pairs."""
        return cls(tuple(p for p, _ in items), tuple(w for _, w in items), capacity)

    @property
    def n(self) -> int:
        return len(self.profits)

    @property
    def items(self) -> list[tuple[int, int]]:
        return list(zip(self.profits, self.weights))

    def check_assumptions(self) -> None:
        """Raise :class:`InstanceError` naming the first violated assumption."""
        if self.n < 2:
            raise InstanceError(f"need at least 2 items, got {self.n}")
        if self.capacity < 1:
            raise InstanceError(f"capacity must be a positive integer, got {self.capacity}")
        for j, (p, w) in enumerate(zip(self.profits, self.weights)):
            if p < 1 or w < 1:
                raise InstanceError(
                    f"item {j}: profit and weight must be positive integers, got ({p}, {w})"
                )
            if w >= self.capacity:
                raise InstanceError(
                    f"item {j}: weight {w} >= capacity {self.capacity} (every weight must be below C)"
                )
        if sum(self.weights) <= self.capacity:
            raise InstanceError(
                f"trivial instance: total weight {sum(self.weights)} fits in capacity {self.capacity}"
            )


@dataclass(frozen=True)
class SortedInstance:
    """Density-ordered view of an instance.

    ``prefix_weights`` and ``prefix_profits`` have length ``n + 1`` with a
    leading zero, so ``prefix_weights[k]`` is the weight of positions
    ``0..k-1``. ``break_index`` is the 0-based position of the break item.
    """

    base: Instance
    order: tuple[int, ...]
    profits: tuple[int, ...]
    weights: tuple[int, ...]
    prefix_weights: tuple[int, ...]
    prefix_profits: tuple[int, ...]
    break_index: int
    residual: int

    @property
    def n(self) -> int:
        return len(self.order)

    @property
    def capacity(self) -> int:
        return self.base.capacity

    @property
    def break_item(self) -> tuple[int, int]:
        b = self.break_index
        return self.profits[b], self.weights[b]

    def denser_than_break(self, k: int) -> bool:
        """``e_k > e_b`` at sorted position ``k``."""
        pb, wb = self.break_item
        return self.profits[k] * wb > pb * self.weights[k]

    def to_original(self, positions) -> set[int]:
        return {self.order[k] for k in positions}


@dataclass(frozen=True)
class Bounds:
    upper: int
    lower: int


@dataclass(frozen=True)
class Solution:
    """A 0/1 assignment over original item indices.

    An infeasible marker (e.g. a forced set heavier than the capacity) carries
    ``objective = -inf`` and ``feasible = False``.
    """

    assignment: tuple[int, ...]
    objective: int | float
    feasible: bool

    @classmethod
    def infeasible(cls, n: int) -> "Solution":
        return cls((0,) * n, float("-inf"), False)

    @property
    def selected(self) -> list[int]:
        return [j for j, x in enumerate(self.assignment) if x]


def density_key(profit: int, weight: int, index: int):
    """Sort key: density descending, then lighter first, then original index."""
    return (-Fraction(profit, weight), weight, index)


def normalize_and_sort(inst: Instance) -> SortedInstance:
    inst.check_assumptions()
    order = tuple(
        sorted(range(inst.n), key=lambda j: density_key(inst.profits[j], inst.weights[j], j))
    )
    profits = tuple(inst.profits[j] for j in order)
    weights = tuple(inst.weights[j] for j in order)
    pw = [0]
    pp = [0]
    for p, w in zip(profits, weights):
        pw.append(pw[-1] + w)
        pp.append(pp[-1] + p)
    # first position whose inclusive prefix exceeds C; exists since sum(w) > C
    b = bisect_right(pw, inst.capacity) - 1
    residual = inst.capacity - pw[b]
    return SortedInstance(
        base=inst,
        order=order,
        profits=profits,
        weights=weights,
        prefix_weights=tuple(pw),
        prefix_profits=tuple(pp),
        break_index=b,
        residual=residual,
    )


def dantzig_upper_bound(s: SortedInstance) -> int:
    b = s.break_index
    pb, wb = s.break_item
    return s.prefix_profits[b] + (s.residual * pb) // wb


def break_solution_lower_bound(s: SortedInstance) -> tuple[Solution, int]:
    x = [0] * s.n
    for k in range(s.break_index):
        x[s.order[k]] = 1
    lower = s.prefix_profits[s.break_index]
    return Solution(tuple(x), lower, True), lower


def bounds(s: SortedInstance) -> Bounds:
    return Bounds(upper=dantzig_upper_bound(s), lower=s.prefix_profits[s.break_index])


def evaluate(inst: Instance, assignment: Sequence[int]) -> Solution:
    if len(assignment) != inst.n:
        raise ValueError(f"assignment has length {len(assignment)}, instance has {inst.n} items")
    x = tuple(int(v) for v in assignment)
    if any(v not in (0, 1) for v in x):
        raise ValueError("assignment entries must be 0 or 1")
    profit = sum(p for p, v in zip(inst.profits, x) if v)
    weight = sum(w for w, v in zip(inst.weights, x) if v)
    return Solution(x, profit, weight <= inst.capacity)
