"""Reference computations kept independent of the package code paths.

Nothing here imports the solvers or the reduction module: enumeration is
plain ``itertools.product`` and every density/residual test uses exact
rationals, including the ``r/i`` division the package avoids.
"""
from fractions import Fraction
from itertools import product


def brute_force(items, capacity):
    """(optimum, sorted list of all optimal 0/1 tuples) by enumerating 2^n vectors."""
    best, argbest = -1, []
    for x in product((0, 1), repeat=len(items)):
        w = sum(wj for (_, wj), xj in zip(items, x) if xj)
        if w > capacity:
            continue
        v = sum(pj for (pj, _), xj in zip(items, x) if xj)
        if v > best:
            best, argbest = v, [x]
        elif v == best:
            argbest.append(x)
    return best, sorted(argbest)


def sorted_view(items, capacity):
    """Density order with weight/index tie-break, break position and residual."""
    order = sorted(range(len(items)), key=lambda j: (-Fraction(*items[j]), items[j][1], j))
    acc = 0
    for pos, j in enumerate(order):
        if acc + items[j][1] > capacity:
            return order, pos, capacity - acc
        acc += items[j][1]
    raise ValueError("trivial instance")


def lp_fill(items, capacity):
    """Rational LP optimum of the relaxation by greedy fractional fill."""
    order, _, _ = sorted_view(items, capacity)
    left, total = Fraction(capacity), Fraction(0)
    for j in order:
        p, w = items[j]
        take = min(Fraction(1), left / w)
        total += take * p
        left -= take * w
        if left == 0:
            break
    return total


def classify(items, capacity, i):
    """Five-set labels (1..5) per sorted position, evaluated with exact rationals."""
    order, b, r = sorted_view(items, capacity)
    pb, wb = items[order[b]]
    eb = Fraction(pb, wb)
    ri = Fraction(r, i)
    labels = []
    for j in order:
        p, w = items[j]
        if Fraction(p, w) > eb:
            labels.append(1 if p * wb - pb * (ri + w) > 0 else 2)
        elif w > ri:
            labels.append(3 if p * wb + pb * (ri - w) >= 0 else 4)
        else:
            labels.append(5)
    return labels


def random_items(rng, n, hi):
    """Item list and a capacity strictly between max weight and total weight."""
    while True:
        items = [(rng.randint(1, hi), rng.randint(1, hi)) for _ in range(n)]
        ws = [w for _, w in items]
        if sum(ws) - max(ws) >= 2:
            return items, rng.randint(max(ws) + 1, sum(ws) - 1)
