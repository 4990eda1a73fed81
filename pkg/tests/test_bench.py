import pytest

from edhr import Instance, cardinality_constraints, edhr_partition, normalize_and_sort, solve_dp
from edhr.bench import (
    CSV_HEADER,
    BenchRow,
    compare,
    emit_report,
    export_lp,
    family_averages,
    node_rate,
    parse_csv,
    parse_lp,
    run_bench,
)
from edhr.generators import GeneratorConfig, generate
from edhr.reduction import CardinalityConstraints


def _row(k, rate, fam="UC"):
    return BenchRow(f"{fam}{k:02d}", fam, 200, 2, 100 + k, 50, 100 + k, 40, rate, (3, 1))


def test_lp_plain(t1):
    text = export_lp(t1)
    assert " capacity: 2 x1 + 2 x2 + 2 x3 + 2 x4 <= 5" in text
    assert text.splitlines()[-2:] == [" x1 x2 x3 x4", "End"]


def test_lp_with_rows(t2):
    cons = cardinality_constraints(edhr_partition(normalize_and_sort(t2), 1))
    text = export_lp(t2, cons)
    assert " at_least: x1 >= 1" in text
    assert " at_most: x4 <= 0" in text


def test_lp_empty_rows_match_plain(t1):
    assert export_lp(t1, CardinalityConstraints(None, None)) == export_lp(t1)


def test_lp_round_trip():
    inst = generate(GeneratorConfig("UC", 30, 100, 9))
    s = normalize_and_sort(inst)
    cons = cardinality_constraints(edhr_partition(s, 2))
    model = parse_lp(export_lp(inst, cons))
    assert model.knapsack() == inst
    sol, _ = solve_dp(model.knapsack())
    assert sol.objective == solve_dp(inst)[0].objective
    assert model.satisfied(sol.assignment)


def test_lp_parse_errors():
    with pytest.raises(ValueError, match="LP row"):
        parse_lp("Maximize\n obj: x1\nSubject To\n c: x1 = 2\nEnd\n")
    with pytest.raises(ValueError, match="no capacity row"):
        parse_lp("Maximize\n obj: x1\nBinaries\n x1\nEnd\n").knapsack()


def test_node_rate():
    assert node_rate(10, 10) == 0.0
    assert node_rate(10, 7) == pytest.approx(0.3)


def test_csv_empty():
    assert emit_report([], "csv") == ",".join(CSV_HEADER) + "\n"


def test_csv_rows_and_average():
    rows = [_row(k, k / 100) for k in range(1, 11)]
    lines = emit_report(rows, "csv").splitlines()
    assert len(lines) == 12
    assert lines[-1].startswith("average,UC,")
    assert parse_csv(emit_report(rows, "csv")) == rows


def test_csv_bad_header():
    with pytest.raises(ValueError, match="header"):
        parse_csv("a,b\n")


def test_markdown_golden():
    rows = [_row(1, 0.25), _row(2, 0.0)]
    assert emit_report(rows, "markdown") == (
        "| instance | n | base result | base nodes | EDHR result | EDHR nodes | rate |\n"
        "|---|---:|---:|---:|---:|---:|---:|\n"
        "| UC01 | 200 | 101 | 50 | 101 | 40 | 25.00% |\n"
        "| UC02 | 200 | 102 | 50 | 102 | 40 | 0.00% |\n"
        "| average | | | | | | 12.50% |\n"
    )


def test_unknown_format():
    with pytest.raises(ValueError):
        emit_report([], "xml")


def test_family_averages():
    rows = [_row(1, 0.2), _row(2, 0.4), _row(1, 0.5, "SC")]
    avg = family_averages(rows)
    assert avg["UC"] == pytest.approx(0.3) and avg["SC"] == 0.5


def test_compare_is_exact():
    row = compare(generate(GeneratorConfig("IC", 60, 1000, 1)), 2, "IC01", "IC")
    assert row.exact and row.nodes_edhr <= row.nodes_baseline


def test_run_bench_order_and_errors():
    res = run_bench(families=["SC", "UC"], sizes=[20, 40], seeds=[0, 1], range_=100)
    assert [r.instance_name for r in res.rows] == [
        "SC01", "SC02", "SC03", "SC04", "UC01", "UC02", "UC03", "UC04",
    ]
    assert [r.n for r in res.rows[:4]] == [20, 20, 40, 40]
    assert set(res.averages) == {"SC", "UC"} and not res.errors
    # odd n cannot carry a forced break; the row is reported, not raised
    bad = run_bench(families=["UC"], sizes=[21, 20], range_=100)
    assert len(bad.rows) == 1 and bad.errors[0][0] == "UC01"


def test_run_bench_workers():
    a = run_bench(families=["WC"], sizes=[20, 30], range_=100)
    b = run_bench(families=["WC"], sizes=[20, 30], range_=100, workers=2)
    assert a.rows == b.rows
