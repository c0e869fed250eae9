"""Acceptance suite: one test per release criterion, each printing a
PASS/FAIL line (run with ``pytest tests/test_acceptance.py -v -s``).

Expected values are either exact rationals fixed by the bundled case
study, or values recomputed here by independent brute-force oracles
(permutation averaging, per-term formula evaluation) before asserting.
"""

import functools
import random
import time
from fractions import Fraction

from chainshare.adjust import adjusted_shapley, compute_deltas
from chainshare.ahp import consistency_report, dominant_eigen
from chainshare.cli import main
from chainshare.game import CharacteristicFunction, shapley_exact
from chainshare.rational import format_fixed
from chainshare.sampling import SamplingPlan, sample_shapley
from chainshare.scenario import bundled_scenario, parse_scenario, serialize_scenario

from .conftest import CASE_CLASSICAL, CASE_FACTORS, CASE_VALUES
from .oracles import (
    as_from_values,
    eq3_per_term,
    per_player_lever,
    permutation_shapley,
    random_factors,
    random_game_table,
)

PLAYERS = ("A", "B", "C")


def criterion(number: int, title: str):
    def decorate(fn):
        @functools.wraps(fn)
        def wrapper(*args, **kwargs):
            try:
                fn(*args, **kwargs)
            except BaseException:
                print(f"ACCEPTANCE {number}: FAIL - {title}")
                raise
            print(f"ACCEPTANCE {number}: PASS - {title}")

        return wrapper

    return decorate


@criterion(1, "classical allocation reproduces the case study exactly, under 10 ms")
def test_criterion_1_classical_regression(case_game):
    elapsed = []
    for _ in range(3):
        start = time.perf_counter()
        allocation = shapley_exact(case_game)
        elapsed.append(time.perf_counter() - start)
    assert allocation.payoffs == CASE_CLASSICAL
    assert [format_fixed(p) for p in allocation.payoffs] == [
        "1383.3333",
        "983.3333",
        "633.3333",
    ]
    assert min(elapsed) < 0.010


@criterion(2, "efficiency is an exact equality on 1000 random games, n in 2..8")
def test_criterion_2_efficiency_exactness():
    rng = random.Random(20260810)
    start = time.perf_counter()
    for k in range(1000):
        n = 2 + k % 7
        players = tuple(f"p{i}" for i in range(n))
        table = random_game_table(rng, players)
        game = CharacteristicFunction.from_values(players, as_from_values(table))
        allocation = shapley_exact(game)
        assert allocation.total == table[frozenset(players)]
    assert time.perf_counter() - start < 30


@criterion(3, "axioms hold and the permutation oracle agrees exactly, n <= 6")
def test_criterion_3_axiom_suite():
    start = time.perf_counter()
    rng = random.Random(3)

    # oracle agreement on random games of every size
    for n in range(1, 7):
        players = tuple(f"p{i}" for i in range(n))
        for _ in range(4):
            table = random_game_table(rng, players)
            game = CharacteristicFunction.from_values(players, as_from_values(table))
            assert shapley_exact(game).as_dict() == permutation_shapley(players, table)

    # symmetry: v blind to swapping x and y
    players = ("x", "y", "a", "b")
    for _ in range(5):
        pattern = {}
        for rest in ({}, {"a"}, {"b"}, {"a", "b"}):
            for count in (0, 1, 2):
                pattern[(frozenset(rest), count)] = Fraction(rng.randint(-999, 999), 10)
        table = {
            s: pattern[(frozenset(s - {"x", "y"}), len(s & {"x", "y"}))]
            for s in random_game_table(rng, players)
        }
        allocation = shapley_exact(
            CharacteristicFunction.from_values(players, as_from_values(table))
        )
        assert allocation.payoff_of("x") == allocation.payoff_of("y")

    # dummy: a player adding exactly its standalone value everywhere
    for _ in range(5):
        others = ("a", "b", "c")
        worth = Fraction(rng.randint(-99, 99), 10)
        base = random_game_table(rng, others)
        table = dict(base)
        table[frozenset({"d"})] = worth
        for s, v in base.items():
            table[s | {"d"}] = v + worth
        game = CharacteristicFunction.from_values(others + ("d",), as_from_values(table))
        assert shapley_exact(game).payoff_of("d") == worth

    # additivity and linearity
    for _ in range(5):
        players = ("a", "b", "c", "d", "e")
        v = random_game_table(rng, players)
        w = random_game_table(rng, players)
        c = Fraction(rng.randint(1, 60), 11)
        phi = lambda t: shapley_exact(
            CharacteristicFunction.from_values(players, as_from_values(t))
        ).payoffs
        phi_v, phi_w = phi(v), phi(w)
        assert phi({s: v[s] + w[s] for s in v}) == tuple(
            a + b for a, b in zip(phi_v, phi_w)
        )
        assert phi({s: c * v[s] for s in v}) == tuple(c * a for a in phi_v)

    assert time.perf_counter() - start < 60


@criterion(4, "consistency numbers: CI within 1e-4, CR within 0.005; exact recovery on consistent matrices")
def test_criterion_4_ahp_consistency():
    report = consistency_report(7.5838, 7)
    assert abs(report.ci - 0.0973) <= 1e-4
    # RI 1.32 (tabulated) vs the implied 1.333 behind the published
    # 0.073: accepted within 0.005.
    assert report.ri == 1.32
    assert abs(report.cr - 0.073) <= 0.005
    assert report.passed

    rng = random.Random(4)
    import numpy as np

    for n in (3, 5, 7, 10):
        w = np.array([rng.uniform(0.05, 1.0) for _ in range(n)])
        w /= w.sum()
        matrix = w[:, None] / w[None, :]
        got, lam = dominant_eigen(matrix)
        assert np.max(np.abs(got - w)) < 1e-9
        matrix_report = consistency_report(lam, n)
        assert abs(matrix_report.lambda_max - n) < 1e-9
        assert abs(matrix_report.cr) < 1e-9


@criterion(5, "adjustment modes: eq3 matches the per-term oracle, grand preserves efficiency")
def test_criterion_5_adjusted_modes(case_game):
    factors = compute_deltas(CASE_FACTORS, PLAYERS)
    table = {frozenset(k): Fraction(v) for k, v in CASE_VALUES.items()}

    eq3 = adjusted_shapley(case_game, factors, "eq3")
    # published headline figure for A, within rounding of its printed factor
    assert abs(float(eq3.payoff_of("A")) - 2018.7083) <= 0.15
    # B and C against the independent per-term oracle; their published
    # figures are not reproducible under either variant and are excluded.
    oracle = eq3_per_term(PLAYERS, table, dict(zip(PLAYERS, factors.factors)))
    assert abs(float(eq3.payoff_of("B") - oracle["B"])) <= 1e-3
    assert abs(float(eq3.payoff_of("C") - oracle["C"])) <= 1e-3
    assert abs(float(oracle["B"]) - 864.2767) <= 1e-3
    assert abs(float(oracle["C"]) - 225.6317) <= 1e-3

    grand = adjusted_shapley(case_game, factors, "grand")
    classical = shapley_exact(case_game)
    for i in range(3):
        expected = classical.payoffs[i] + case_game.grand_value * factors.deviations[i]
        assert abs(float(grand.adjusted_payoffs[i] - expected)) <= 1e-9

    normalized = compute_deltas(CASE_FACTORS, PLAYERS, normalize=True)
    preserved = adjusted_shapley(case_game, normalized, "grand")
    assert sum(preserved.adjusted_payoffs, Fraction(0)) == case_game.grand_value
    assert preserved.efficiency_gap == 0


@criterion(6, "eq3 efficiency gap equals sum of deviation * lever, case study and 100 random games")
def test_criterion_6_gap_identity(case_game):
    factors = compute_deltas(CASE_FACTORS, PLAYERS)
    adjusted = adjusted_shapley(case_game, factors, "eq3")
    table = {frozenset(k): Fraction(v) for k, v in CASE_VALUES.items()}
    levers = per_player_lever(PLAYERS, table)
    identity = sum(
        (dev * levers[p] for p, dev in zip(PLAYERS, factors.deviations)), Fraction(0)
    )
    assert adjusted.efficiency_gap == identity  # exact, stronger than 1e-9
    assert abs(float(adjusted.efficiency_gap) - 108.5527) <= 1e-3

    rng = random.Random(6)
    for _ in range(100):
        players = tuple(f"p{i}" for i in range(rng.randint(2, 6)))
        table = random_game_table(rng, players)
        game = CharacteristicFunction.from_values(players, as_from_values(table))
        f = compute_deltas(random_factors(rng, players), players)
        adjusted = adjusted_shapley(game, f, "eq3")
        levers = per_player_lever(players, table)
        identity = sum(
            (dev * levers[p] for p, dev in zip(players, f.deviations)), Fraction(0)
        )
        assert adjusted.efficiency_gap == identity


@criterion(7, "sampler: 1% relative error at 100k permutations for 20 seeds, worker-count invariant, under 10 s")
def test_criterion_7_sampler_convergence(case_game):
    start = time.perf_counter()
    for seed in range(20):
        plan = SamplingPlan(permutations=100_000, seed=seed, chunk_size=25_000)
        report = sample_shapley(case_game, case_game.player_set, plan)
        assert sum(report.estimates, Fraction(0)) == case_game.grand_value
        for estimate, exact in zip(report.estimates, CASE_CLASSICAL):
            assert abs(float(estimate - exact)) / float(exact) < 0.01
    assert time.perf_counter() - start < 10

    for seed in (0, 7, 19):
        plan = SamplingPlan(permutations=100_000, seed=seed, chunk_size=25_000)
        solo = sample_shapley(case_game, case_game.player_set, plan, workers=1)
        pooled = sample_shapley(case_game, case_game.player_set, plan, workers=8)
        assert solo == pooled


@criterion(8, "scenario round-trips and CSV output is byte-identical across runs")
def test_criterion_8_cli_round_trip(capsys, tmp_path):
    for name in ("paper_case", "paper_ahp"):
        text = bundled_scenario(name).read_text(encoding="utf-8")
        sf = parse_scenario(text)
        assert parse_scenario(serialize_scenario(sf)) == sf
        assert serialize_scenario(parse_scenario(serialize_scenario(sf))) == serialize_scenario(sf)

    commands = [
        ("shapley", str(bundled_scenario("paper_case"))),
        ("allocate", str(bundled_scenario("paper_case")), "--mode", "eq3"),
        ("allocate", str(bundled_scenario("paper_case")), "--mode", "grand"),
        ("ahp", "weights", str(bundled_scenario("paper_ahp"))),
        ("ahp", "synthesize", str(bundled_scenario("paper_ahp"))),
        ("sample", str(bundled_scenario("paper_case")), "--permutations", "20000", "--seed", "3"),
        ("validate", str(bundled_scenario("paper_case"))),
    ]
    for argv in commands:
        for fmt in ("csv", "structured", "table"):
            outputs = set()
            for run in range(2):
                target = tmp_path / f"{'_'.join(argv[:2]).replace('/', '_')}_{run}.{fmt}"
                code = main([*argv, "--format", fmt, "--output", str(target)])
                assert code == 0
                outputs.add(target.read_bytes())
            assert len(outputs) == 1, f"non-deterministic {fmt} for {argv[0]}"
            body = outputs.pop()
            assert body.endswith(b"\n") and b"\r" not in body
    capsys.readouterr()
