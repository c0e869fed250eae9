"""Seeded Monte Carlo estimation of Shapley payoffs by permutation sampling.

For each sampled arrival order, every player's marginal contribution is
v(predecessors + player) - v(predecessors). Sampling is split into
chunks; chunk c draws its permutations from an RNG stream derived from
(seed, c), so the output is a pure function of (oracle, players, plan)
regardless of how many workers execute the chunks.

Marginal contributions are aggregated as exact rationals (each distinct
(prefix, player) step is counted, then evaluated once), which keeps the
per-permutation telescoping identity exact: the estimates always sum to
v(N) - v(empty), an equality, not a tolerance.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

import numpy as np

from .errors import OracleError, SamplingPlanError
from .game import Coalition, PlayerSet
from .rational import parse_rational

# Prefix mask and player index pack into one uint64 key on the
# vectorized path; wider games fall back to plain Python masks.
VECTOR_MAX_PLAYERS = 57
_PLAYER_BITS = 6

DEFAULT_CHUNK_SIZE = 4096


@dataclass(frozen=True)
class SamplingPlan:
    """How many permutations to draw, from which seed, in which chunks."""

    permutations: int
    seed: int
    chunk_size: int = DEFAULT_CHUNK_SIZE

    def __post_init__(self):
        if not isinstance(self.permutations, int) or self.permutations < 1:
            raise SamplingPlanError(f"permutation count must be >= 1, got {self.permutations!r}")
        if not isinstance(self.chunk_size, int) or self.chunk_size < 1:
            raise SamplingPlanError(f"chunk size must be >= 1, got {self.chunk_size!r}")
        if not isinstance(self.seed, int) or not 0 <= self.seed < 2**64:
            raise SamplingPlanError(f"seed must be a 64-bit unsigned int, got {self.seed!r}")


@dataclass(frozen=True)
class EstimateReport:
    """Sampled allocation estimates with per-player standard errors.

    ``estimates`` are exact rational sample means, so their sum equals
    the grand-coalition value exactly on every run; ``rng`` records the
    generator and library version behind the permutation stream.
    """

    player_set: PlayerSet
    estimates: tuple[Fraction, ...]
    std_error: tuple[float, ...]
    m: int
    rng: str


class _OracleTable:
    """Memoized exact values of the coalition oracle, keyed by mask."""

    def __init__(self, oracle: Callable, player_set: PlayerSet):
        self.oracle = oracle
        self.player_set = player_set
        self.cache: dict[int, Fraction] = {}

    def value(self, mask: int, permutation_index: int) -> Fraction:
        cached = self.cache.get(mask)
        if cached is not None:
            return cached
        try:
            raw = self.oracle(Coalition(self.player_set, mask))
            value = parse_rational(raw)
        except Exception as exc:
            raise OracleError(permutation_index, exc) from exc
        self.cache[mask] = value
        return value


def _chunk_rng(seed: int, chunk_index: int) -> np.random.Generator:
    return np.random.default_rng(np.random.SeedSequence(entropy=seed, spawn_key=(chunk_index,)))


def _count_steps_vector(perms: np.ndarray) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Count distinct (prefix-mask, player) steps in a block of permutations.

    Rows of a permutation contribute distinct power-of-two bits, so a
    cumulative sum along the row is the cumulative OR of prefixes.
    """
    bits = np.left_shift(np.uint64(1), perms)
    after = np.cumsum(bits, axis=1, dtype=np.uint64)
    before = after - bits
    keys = np.left_shift(before, np.uint64(_PLAYER_BITS)) | perms
    return np.unique(keys.ravel(), return_index=True, return_counts=True)


def _count_steps_python(perms: np.ndarray) -> dict[tuple[int, int], tuple[int, int]]:
    """Python fallback for games too wide for uint64 prefix masks."""
    counts: dict[tuple[int, int], tuple[int, int]] = {}
    for row_index, row in enumerate(perms.tolist()):
        mask = 0
        for position, player in enumerate(row):
            key = (mask, player)
            hit = counts.get(key)
            if hit is None:
                counts[key] = (1, row_index * len(row) + position)
            else:
                counts[key] = (hit[0] + 1, hit[1])
            mask |= 1 << player
    return counts


def _chunk_totals(
    n: int,
    table: _OracleTable,
    plan: SamplingPlan,
    chunk_index: int,
    count: int,
    chunk_start: int,
) -> tuple[list[Fraction], list[Fraction]]:
    """Exact per-player sums of marginals and squared marginals for one chunk."""
    rng = _chunk_rng(plan.seed, chunk_index)
    perms = rng.permuted(np.tile(np.arange(n, dtype=np.uint64), (count, 1)), axis=1)
    totals = [Fraction(0)] * n
    squares = [Fraction(0)] * n
    if n <= VECTOR_MAX_PLAYERS:
        keys, first_seen, occurrences = _count_steps_vector(perms)
        steps = (
            (int(key) >> _PLAYER_BITS, int(key) & ((1 << _PLAYER_BITS) - 1), int(c), int(f))
            for key, c, f in zip(keys, occurrences, first_seen)
        )
    else:
        counted = _count_steps_python(perms)
        steps = ((mask, player, c, f) for (mask, player), (c, f) in counted.items())
    for mask, player, c, flat_index in steps:
        permutation_index = chunk_start + flat_index // n
        with_player = table.value(mask | 1 << player, permutation_index)
        without = table.value(mask, permutation_index)
        marginal = with_player - without
        totals[player] += c * marginal
        squares[player] += c * marginal * marginal
    return totals, squares


def sample_shapley(
    oracle: Callable,
    players: PlayerSet,
    plan: SamplingPlan,
    *,
    workers: int = 1,
) -> EstimateReport:
    """Estimate the Shapley allocation of ``oracle`` by permutation sampling.

    ``oracle`` is a pure callable from :class:`Coalition` to a value
    (int, Fraction, Decimal, decimal string, or float); a
    :class:`chainshare.game.CharacteristicFunction` works directly. The
    report is identical for identical (players, plan) inputs whatever
    ``workers`` is; chunks merge in index order by exact summation.
    """
    if workers < 1:
        raise ValueError(f"worker count must be >= 1, got {workers}")
    n = players.n
    m = plan.permutations
    table = _OracleTable(oracle, players)
    chunk_count = math.ceil(m / plan.chunk_size)
    jobs = []
    start = 0
    for chunk_index in range(chunk_count):
        count = min(plan.chunk_size, m - start)
        jobs.append((chunk_index, count, start))
        start += count
    if workers == 1 or chunk_count == 1:
        results = [_chunk_totals(n, table, plan, *job) for job in jobs]
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            futures = [pool.submit(_chunk_totals, n, table, plan, *job) for job in jobs]
            results = [f.result() for f in futures]
    totals = [Fraction(0)] * n
    squares = [Fraction(0)] * n
    for chunk_total, chunk_squares in results:
        for i in range(n):
            totals[i] += chunk_total[i]
            squares[i] += chunk_squares[i]
    estimates = tuple(t / m for t in totals)
    if m > 1:
        std_error = tuple(
            math.sqrt(float((sq - t * t / m) / (m - 1) / m))
            for sq, t in zip(squares, totals)
        )
    else:
        std_error = tuple(0.0 for _ in range(n))
    return EstimateReport(
        player_set=players,
        estimates=estimates,
        std_error=std_error,
        m=m,
        rng=f"numpy.random.PCG64 via SeedSequence(seed, spawn_key=(chunk,)), numpy=={np.__version__}",
    )
