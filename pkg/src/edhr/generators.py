"""Random instance families, the adversarial instance, and instance file I/O.

Randomness comes from SplitMix64 (Steele, Lea & Flood 2014) seeded with the
config seed. A draw in ``[lo, hi]`` takes 64-bit outputs and rejects those in
the final partial block, so the value is ``lo + (u mod span)`` for the first
``u < 2^64 - (2^64 mod span)``. Items are drawn one at a time, weight first
then profit where both are random. If a draw violates the instance
assumptions the whole item list is redrawn from the same stream.
"""
from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

from .kpcore import Instance, InstanceError, density_key, normalize_and_sort
from .reduction import edhr_partition

FAMILIES = ("UC", "WC", "SC", "IC", "ASC")
_MASK = (1 << 64) - 1
MAX_ATTEMPTS = 1000


class SplitMix64:
    def __init__(self, seed: int):
        self.state = seed & _MASK

    def next_u64(self) -> int:
        self.state = (self.state + 0x9E3779B97F4A7C15) & _MASK
        z = self.state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK
        return z ^ (z >> 31)

    def randint(self, lo: int, hi: int) -> int:
        """Uniform integer in ``[lo, hi]``."""
        if hi < lo:
            raise ValueError(f"empty range [{lo}, {hi}]")
        span = hi - lo + 1
        limit = (1 << 64) - ((1 << 64) % span)
        while True:
            u = self.next_u64()
            if u < limit:
                return lo + u % span


@dataclass(frozen=True)
class GeneratorConfig:
    family: str
    n: int
    range: int = 1000
    seed: int = 0
    force_break: bool = True

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise ValueError(f"unknown family {self.family!r}; expected one of {FAMILIES}")
        if self.range < 10:
            raise ValueError(f"range R must be >= 10, got {self.range}")
        if self.n < 2:
            raise ValueError(f"n must be >= 2, got {self.n}")
        if self.force_break and (self.n < 4 or self.n % 2):
            raise ValueError(f"force_break needs an even n >= 4, got {self.n}")

    @property
    def break_position(self) -> int:
        """0-based slot of the forced break item (1-based ``floor(n/2)``)."""
        return self.n // 2 - 1


@dataclass(frozen=True)
class AdversaryConfig:
    m: int
    r: int

    def __post_init__(self):
        if self.m < 1 or self.r < 1:
            raise ValueError(f"m and r must be >= 1, got m={self.m}, r={self.r}")


def _draw_item(family: str, R: int, rng: SplitMix64) -> tuple[int, int]:
    r5, r10, r50 = R // 5, R // 10, R // 50
    if family == "UC":
        w = rng.randint(1, R)
        return rng.randint(1, R), w
    if family == "WC":
        w = rng.randint(r5 + 1, R)
        return rng.randint(max(1, w - r5), w + r5), w
    if family == "SC":
        w = rng.randint(1, R)
        return w + r5, w
    if family == "IC":
        p = rng.randint(1, R)
        return p, p + r5
    w = rng.randint(1, R)
    return rng.randint(w + r10 - r50, w + r10 + r50), w


def _break_override(family: str, R: int, rng: SplitMix64) -> tuple[int, int]:
    r5, r10, r50 = R // 5, R // 10, R // 50
    if family == "IC":
        return r5, 2 * r5
    w = r5
    if family == "UC":
        return rng.randint(1, R), w
    if family == "WC":
        return rng.randint(max(1, w - r5), w + r5), w
    if family == "SC":
        return w + r5, w
    return rng.randint(w + r10 - r50, w + r10 + r50), w


def generate(cfg: GeneratorConfig) -> Instance:
    """Draw an instance of ``cfg.family``.

    With ``force_break`` the items are emitted in density order, the item in
    slot ``floor(n/2)`` is replaced by the family's break item (weight
    ``floor(R/5)``; IC uses weight ``2 floor(R/5)`` and profit ``floor(R/5)``)
    and ``C`` is set so the residual in front of that slot is
    ``floor(R/5) - 1``. The slot is kept even when the replacement does not fit
    the density order there; :func:`forced_break_report` tells which case
    applies. Without ``force_break``, ``C = floor(sum(w) / 2)``.
    """
    R = cfg.range
    if R // 5 < 2:
        raise ValueError(f"range {R} too small: floor(R/5) - 1 must be positive")
    rng = SplitMix64(cfg.seed)
    for _ in range(MAX_ATTEMPTS):
        items = [_draw_item(cfg.family, R, rng) for _ in range(cfg.n)]
        if cfg.force_break:
            items.sort(key=lambda it: density_key(it[0], it[1], 0))
            b = cfg.break_position
            items[b] = _break_override(cfg.family, R, rng)
            capacity = sum(w for _, w in items[:b]) + R // 5 - 1
        else:
            capacity = sum(w for _, w in items) // 2
        inst = Instance.from_items(items, capacity)
        try:
            inst.check_assumptions()
        except InstanceError:
            continue
        return inst
    raise RuntimeError(f"no valid instance after {MAX_ATTEMPTS} draws for {cfg}")


@dataclass(frozen=True)
class BreakReport:
    break_position: int
    residual: int
    order_preserved: bool


def forced_break_report(inst: Instance, cfg: GeneratorConfig) -> BreakReport:
    """Break slot and residual as built, and whether sorting keeps them.

    ``order_preserved`` is true when the emitted order is already the
    canonical density order, in which case :func:`normalize_and_sort` reports
    the same break position and residual.
    """
    b = cfg.break_position
    residual = inst.capacity - sum(inst.weights[:b])
    s = normalize_and_sort(inst)
    return BreakReport(b, residual, s.order == tuple(range(inst.n)))


def make_adversary(cfg: AdversaryConfig) -> Instance:
    """Instance whose unit item joins ``N_i1`` only once ``i > 2m``.

    ``2m + r + 1`` unit items are followed by two copies of ``(2m, 2m + r)``;
    ``C`` is the unit count plus ``r``, so the first heavy copy is the break
    item with residual ``r``.
    """
    pb, wb = 2 * cfg.m, 2 * cfg.m + cfg.r
    units = wb + 1
    inst = Instance.from_items([(1, 1)] * units + [(pb, wb)] * 2, units + cfg.r)
    s = normalize_and_sort(inst)
    assert s.break_index == units and s.residual == cfg.r
    unit = s.order.index(0)
    for i in (2 * cfg.m, 2 * cfg.m + 1):
        assert (unit in edhr_partition(s, i).n1) == (i > 2 * cfg.m)
    return inst


# ---------------------------------------------------------------- file I/O

class FormatError(ValueError):
    def __init__(self, path, line: int, msg: str):
        super().__init__(f"{path}:{line}: {msg}")
        self.line = line


def _ints(path, lineno: int, line: str, count: int) -> list[int]:
    toks = line.split()
    if len(toks) != count:
        raise FormatError(path, lineno, f"expected {count} integers, got {len(toks)} tokens")
    try:
        return [int(t) for t in toks]
    except ValueError:
        raise FormatError(path, lineno, f"non-integer token in {line.strip()!r}") from None


def _content_lines(text: str) -> list[tuple[int, str]]:
    return [(k + 1, ln) for k, ln in enumerate(text.splitlines()) if ln.strip()]


def _validated(inst: Instance, path) -> Instance:
    try:
        inst.check_assumptions()
    except InstanceError as exc:
        raise InstanceError(f"{path}: {exc}") from None
    return inst


def format_instance(inst: Instance) -> str:
    lines = [f"{inst.n} {inst.capacity}"]
    lines += [f"{p} {w}" for p, w in zip(inst.profits, inst.weights)]
    return "\n".join(lines) + "\n"


def parse_instance(text: str, path="<string>") -> Instance:
    lines = _content_lines(text)
    if not lines:
        raise FormatError(path, 1, "empty file")
    n, capacity = _ints(path, *lines[0], 2)
    if len(lines) - 1 != n:
        raise FormatError(path, lines[-1][0], f"header announces {n} items, found {len(lines) - 1}")
    items = [tuple(_ints(path, no, ln, 2)) for no, ln in lines[1:]]
    return _validated(Instance.from_items(items, capacity), path)


def write_instance(inst: Instance, path) -> None:
    Path(path).write_text(format_instance(inst))


def read_instance(path) -> Instance:
    return parse_instance(Path(path).read_text(), path)


def format_jooken(inst: Instance) -> str:
    lines = [str(inst.n)]
    lines += [f"{j + 1} {p} {w}" for j, (p, w) in enumerate(zip(inst.profits, inst.weights))]
    lines.append(str(inst.capacity))
    return "\n".join(lines) + "\n"


def parse_jooken(text: str, path="<string>") -> Instance:
    lines = _content_lines(text)
    if not lines:
        raise FormatError(path, 1, "empty file")
    (n,) = _ints(path, *lines[0], 1)
    if len(lines) < n + 2:
        raise FormatError(path, lines[-1][0] + 1, "capacity line missing")
    if len(lines) > n + 2:
        raise FormatError(path, lines[n + 2][0], "trailing content after capacity line")
    items = []
    for k, (no, ln) in enumerate(lines[1 : n + 1]):
        idx, p, w = _ints(path, no, ln, 3)
        if idx != k + 1:
            raise FormatError(path, no, f"item index {idx} out of order, expected {k + 1}")
        items.append((p, w))
    (capacity,) = _ints(path, *lines[n + 1], 1)
    return _validated(Instance.from_items(items, capacity), path)


def write_jooken(inst: Instance, path) -> None:
    Path(path).write_text(format_jooken(inst))


def read_jooken(path) -> Instance:
    return parse_jooken(Path(path).read_text(), path)
