"""Experiment harness, CSV/markdown reports and LP-file export."""
from __future__ import annotations

import csv
import io
import re
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from statistics import mean
from typing import Iterable, Optional, Sequence

from .generators import FAMILIES, GeneratorConfig, generate
from .kpcore import Instance, SortedInstance, normalize_and_sort
from .reduction import CardinalityConstraints, cardinality_constraints, edhr_partition
from .solvers import solve_branch_bound

CSV_HEADER = [
    "instance", "family", "n", "i", "obj_base", "nodes_base",
    "obj_edhr", "nodes_edhr", "rate", "n_i1", "n_i4",
]


@dataclass(frozen=True)
class BenchRow:
    instance_name: str
    family: str
    n: int
    i: int
    objective_baseline: int
    nodes_baseline: int
    objective_edhr: int
    nodes_edhr: int
    rate: float
    reduction_set_sizes: tuple[int, int]

    @property
    def exact(self) -> bool:
        return self.objective_baseline == self.objective_edhr


@dataclass
class BenchResult:
    rows: list[BenchRow]
    averages: dict[str, float] = field(default_factory=dict)  # family -> mean rate
    errors: list[tuple[str, str]] = field(default_factory=list)


def node_rate(nodes_base: int, nodes_edhr: int) -> float:
    if nodes_base == nodes_edhr:
        return 0.0
    return (nodes_base - nodes_edhr) / nodes_base


def compare(inst: Instance, i: int, name: str = "", family: str = "") -> BenchRow:
    """Plain vs constrained branch-and-bound on one instance, same branching order."""
    s = normalize_and_sort(inst)
    part = edhr_partition(s, i)
    base, base_stats = solve_branch_bound(inst, sorted_inst=s)
    edhr, edhr_stats = solve_branch_bound(inst, cardinality_constraints(part), sorted_inst=s)
    return BenchRow(
        instance_name=name,
        family=family,
        n=inst.n,
        i=i,
        objective_baseline=int(base.objective),
        nodes_baseline=base_stats.nodes_expanded,
        objective_edhr=int(edhr.objective),
        nodes_edhr=edhr_stats.nodes_expanded,
        rate=node_rate(base_stats.nodes_expanded, edhr_stats.nodes_expanded),
        reduction_set_sizes=(len(part.n1), len(part.n4)),
    )


def _row_job(job):
    name, (family, n, range_, seed), i = job
    try:
        cfg = GeneratorConfig(family, n, range_, seed)
        return compare(generate(cfg), i, name, family), None
    except Exception as exc:  # reported per row, the batch goes on
        return None, f"{type(exc).__name__}: {exc}"


def run_bench(
    families: Sequence[str] = FAMILIES,
    sizes: Sequence[int] = tuple(range(200, 2001, 200)),
    seeds: Sequence[int] = (0,),
    i: int = 2,
    range_: int = 1000,
    workers: int = 1,
) -> BenchResult:
    """One row per (family, n, seed), ordered that way, plus per-family mean rates."""
    jobs = []
    for fam in families:
        k = 0
        for n in sizes:
            for seed in seeds:
                k += 1
                jobs.append((f"{fam}{k:02d}", (fam, n, range_, seed), i))
    if workers > 1:
        with ProcessPoolExecutor(workers) as pool:
            outcomes = list(pool.map(_row_job, jobs))
    else:
        outcomes = [_row_job(job) for job in jobs]
    result = BenchResult(rows=[])
    for (name, _, _), (row, err) in zip(jobs, outcomes):
        if err is not None:
            result.errors.append((name, err))
        else:
            result.rows.append(row)
    result.averages = family_averages(result.rows)
    return result


def family_averages(rows: Iterable[BenchRow]) -> dict[str, float]:
    """Mean of the per-row rates, per family (percentages are averaged, not pooled)."""
    by_fam: dict[str, list[float]] = {}
    for row in rows:
        by_fam.setdefault(row.family, []).append(row.rate)
    return {fam: mean(rates) for fam, rates in by_fam.items()}


# ---------------------------------------------------------------- reports

def _grouped(rows: Sequence[BenchRow]):
    groups: dict[str, list[BenchRow]] = {}
    for row in rows:
        groups.setdefault(row.family, []).append(row)
    return groups


def emit_report(rows: Sequence[BenchRow], format: str = "csv") -> str:
    """CSV (raw rate) or markdown (rate in percent); an average row closes each family."""
    if format == "csv":
        return _emit_csv(rows)
    if format == "markdown":
        return _emit_markdown(rows)
    raise ValueError(f"unknown report format {format!r}")


def _emit_csv(rows: Sequence[BenchRow]) -> str:
    buf = io.StringIO()
    out = csv.writer(buf, lineterminator="\n")
    out.writerow(CSV_HEADER)
    for fam, group in _grouped(rows).items():
        for r in group:
            out.writerow([
                r.instance_name, r.family, r.n, r.i, r.objective_baseline, r.nodes_baseline,
                r.objective_edhr, r.nodes_edhr, repr(r.rate), *r.reduction_set_sizes,
            ])
        out.writerow(["average", fam, "", group[0].i, "", "", "", "", repr(mean(r.rate for r in group)), "", ""])
    return buf.getvalue()


def _emit_markdown(rows: Sequence[BenchRow]) -> str:
    lines = [
        "| instance | n | base result | base nodes | EDHR result | EDHR nodes | rate |",
        "|---|---:|---:|---:|---:|---:|---:|",
    ]
    for group in _grouped(rows).values():
        for r in group:
            lines.append(
                f"| {r.instance_name} | {r.n} | {r.objective_baseline} | {r.nodes_baseline} "
                f"| {r.objective_edhr} | {r.nodes_edhr} | {r.rate * 100:.2f}% |"
            )
        lines.append(f"| average | | | | | | {mean(r.rate for r in group) * 100:.2f}% |")
    return "\n".join(lines) + "\n"


def parse_csv(text: str) -> list[BenchRow]:
    """Inverse of the CSV report; average rows are dropped."""
    reader = csv.reader(io.StringIO(text))
    header = next(reader, None)
    if header != CSV_HEADER:
        raise ValueError(f"unexpected CSV header {header}")
    rows = []
    for rec in reader:
        if not rec or rec[0] == "average":
            continue
        name, fam, n, i, ob, nb, oe, ne, rate, n1, n4 = rec
        rows.append(BenchRow(
            name, fam, int(n), int(i), int(ob), int(nb), int(oe), int(ne),
            float(rate), (int(n1), int(n4)),
        ))
    return rows


# ---------------------------------------------------------------- LP files

def _terms(coefs: Sequence[tuple[int, int]]) -> str:
    """``[(coef, j), ...]`` -> ``"2 x1 + x3"`` with 1-based names."""
    return " + ".join(f"x{j + 1}" if c == 1 else f"{c} x{j + 1}" for c, j in coefs)


def export_lp(
    inst: Instance,
    constraints: Optional[CardinalityConstraints] = None,
    sorted_inst: Optional[SortedInstance] = None,
) -> str:
    """LP-file text for the knapsack, with the cardinality rows when given.

    Variables are ``x1..xn`` in original item order.
    """
    lines = [
        "\\ 0-1 knapsack",
        "Maximize",
        " obj: " + _terms([(p, j) for j, p in enumerate(inst.profits)]),
        "Subject To",
        " capacity: " + _terms([(w, j) for j, w in enumerate(inst.weights)]) + f" <= {inst.capacity}",
    ]
    if constraints is not None and not constraints.empty:
        s = sorted_inst if sorted_inst is not None else normalize_and_sort(inst)
        if constraints.at_least is not None:
            rows, bound = constraints.at_least
            names = sorted(s.to_original(rows))
            lines.append(" at_least: " + _terms([(1, j) for j in names]) + f" >= {bound}")
        if constraints.at_most is not None:
            rows, bound = constraints.at_most
            names = sorted(s.to_original(rows))
            lines.append(" at_most: " + _terms([(1, j) for j in names]) + f" <= {bound}")
    lines += ["Binaries", " " + " ".join(f"x{j + 1}" for j in range(inst.n)), "End"]
    return "\n".join(lines) + "\n"


@dataclass
class LpModel:
    objective: dict[int, int]
    rows: list[tuple[str, dict[int, int], str, int]]
    binaries: list[int]

    def satisfied(self, assignment: Sequence[int]) -> bool:
        for _, coefs, sense, rhs in self.rows:
            lhs = sum(c * assignment[j] for j, c in coefs.items())
            if (sense == "<=" and lhs > rhs) or (sense == ">=" and lhs < rhs):
                return False
        return True

    def knapsack(self) -> Instance:
        """The objective and the ``capacity`` row as an instance."""
        cap = [r for r in self.rows if r[0] == "capacity"]
        if not cap:
            raise ValueError("LP model has no capacity row")
        _, coefs, _, rhs = cap[0]
        n = len(self.binaries)
        return Instance(
            tuple(self.objective.get(j, 0) for j in range(n)),
            tuple(coefs.get(j, 0) for j in range(n)),
            rhs,
        )


_TERM = re.compile(r"^(?:(\d+)\s+)?x(\d+)$")


def _parse_terms(expr: str) -> dict[int, int]:
    coefs = {}
    for tok in expr.split("+"):
        m = _TERM.match(tok.strip())
        if not m:
            raise ValueError(f"cannot parse LP term {tok.strip()!r}")
        coefs[int(m.group(2)) - 1] = int(m.group(1) or 1)
    return coefs


def parse_lp(text: str) -> LpModel:
    """Reader for the subset of the LP format that :func:`export_lp` writes."""
    section = None
    objective: dict[int, int] = {}
    rows = []
    binaries: list[int] = []
    for raw in text.splitlines():
        line = raw.strip()
        if not line or line.startswith("\\"):
            continue
        low = line.lower()
        if low in ("maximize", "subject to", "binaries", "end"):
            section = low
            continue
        if section == "maximize":
            objective = _parse_terms(line.split(":", 1)[1])
        elif section == "subject to":
            name, body = line.split(":", 1)
            m = re.match(r"^(.*?)(<=|>=)\s*(-?\d+)$", body.strip())
            if not m:
                raise ValueError(f"cannot parse LP row {line!r}")
            rows.append((name.strip(), _parse_terms(m.group(1)), m.group(2), int(m.group(3))))
        elif section == "binaries":
            binaries += [int(tok[1:]) - 1 for tok in line.split()]
    return LpModel(objective, rows, binaries)
