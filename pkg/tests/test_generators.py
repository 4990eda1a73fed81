import pytest

from edhr import Instance, edhr_partition, normalize_and_sort
from edhr.generators import (
    FAMILIES,
    AdversaryConfig,
    FormatError,
    GeneratorConfig,
    SplitMix64,
    forced_break_report,
    format_instance,
    format_jooken,
    generate,
    make_adversary,
    parse_instance,
    parse_jooken,
    read_instance,
    read_jooken,
    write_instance,
    write_jooken,
)
from edhr.kpcore import InstanceError


def test_splitmix_reference_values():
    # first outputs for seed 1234567 from the reference C implementation
    rng = SplitMix64(1234567)
    assert [rng.next_u64() for _ in range(3)] == [
        6457827717110365317, 3203168211198807973, 9817491932198370423,
    ]


def test_randint_bounds():
    rng = SplitMix64(0)
    vals = [rng.randint(3, 7) for _ in range(2000)]
    assert min(vals) == 3 and max(vals) == 7


def test_sc_profits():
    inst = generate(GeneratorConfig("SC", 50, 1000, 1, force_break=False))
    assert all(p == w + 200 for p, w in inst.items)


def test_wc_and_asc_ranges():
    wc = generate(GeneratorConfig("WC", 200, 1000, 2, force_break=False))
    assert all(abs(p - w) <= 200 and w > 200 for p, w in wc.items)
    asc = generate(GeneratorConfig("ASC", 200, 1000, 2, force_break=False))
    assert all(abs(p - w - 100) <= 20 for p, w in asc.items)


def test_ic_weights():
    inst = generate(GeneratorConfig("IC", 40, 1000, 5, force_break=False))
    assert all(w == p + 200 for p, w in inst.items)


@pytest.mark.parametrize("family", FAMILIES)
def test_forced_residual(family):
    for seed in range(20):
        cfg = GeneratorConfig(family, 40, 1000, seed)
        inst = generate(cfg)
        rep = forced_break_report(inst, cfg)
        assert rep.break_position == 19 and rep.residual == 199
        if rep.order_preserved:
            s = normalize_and_sort(inst)
            assert s.break_index == rep.break_position and s.residual == rep.residual


@pytest.mark.parametrize("family", FAMILIES)
def test_thousand_seeds_valid(family):
    for seed in range(1000):
        generate(GeneratorConfig(family, 20, 100, seed)).check_assumptions()


def test_determinism():
    cfg = GeneratorConfig("UC", 30, 1000, 42)
    assert generate(cfg) == generate(cfg)
    assert generate(cfg) != generate(GeneratorConfig("UC", 30, 1000, 43))


@pytest.mark.parametrize("kwargs", [
    dict(family="XX", n=10),
    dict(family="UC", n=1, force_break=False),
    dict(family="UC", n=7),
    dict(family="UC", n=10, range=5),
])
def test_config_validation(kwargs):
    with pytest.raises(ValueError):
        GeneratorConfig(**kwargs)


def test_adversary_small():
    inst = make_adversary(AdversaryConfig(1, 2))
    assert inst.items.count((1, 1)) == 5 and inst.capacity == 7
    s = normalize_and_sort(inst)
    assert s.break_index == 5 and s.residual == 2
    unit = s.order.index(0)
    assert unit not in edhr_partition(s, 2).n1
    assert unit in edhr_partition(s, 3).n1


@pytest.mark.parametrize("m", [1, 5, 10])
def test_adversary_threshold(m):
    s = normalize_and_sort(make_adversary(AdversaryConfig(m, 3)))
    unit = s.order.index(0)
    for i in range(1, 2 * m + 4):
        assert (unit in edhr_partition(s, i).n1) == (i > 2 * m)


def test_native_round_trip(tmp_path):
    inst = generate(GeneratorConfig("WC", 20, 100, 3))
    path = tmp_path / "a.txt"
    write_instance(inst, path)
    assert read_instance(path) == inst
    assert parse_instance(format_instance(inst)) == inst


def test_jooken_round_trip(tmp_path):
    inst = generate(GeneratorConfig("ASC", 20, 100, 3))
    path = tmp_path / "a.kp"
    write_jooken(inst, path)
    assert read_jooken(path) == inst
    assert parse_jooken(format_jooken(inst)) == inst


def test_native_errors():
    with pytest.raises(InstanceError, match="every weight must be below C"):
        parse_instance("2 5\n1 5\n1 1\n")
    with pytest.raises(FormatError, match=r":3: non-integer") as exc:
        parse_instance("2 5\n1 2\n1 x\n", "f.txt")
    assert exc.value.line == 3
    with pytest.raises(FormatError, match="announces 3 items"):
        parse_instance("3 5\n1 2\n1 1\n")
    with pytest.raises(FormatError, match="empty"):
        parse_instance("")


def test_jooken_errors():
    with pytest.raises(FormatError, match="out of order"):
        parse_jooken("2\n2 1 2\n1 1 1\n2\n")
    with pytest.raises(FormatError, match="capacity line missing"):
        parse_jooken("2\n1 1 2\n2 1 1\n")
    with pytest.raises(FormatError, match="trailing"):
        parse_jooken("2\n1 1 2\n2 1 1\n2\n9\n")
