import numpy as np
import pytest

from egta.bounds import hoeffding_eps
from egta.games import IndexSet, linf_distance, nash_mask, utility
from egta.simulators import (
    Condition,
    CongestionGame,
    congestion_from_json,
    congestion_to_json,
    draw_conditions,
    empirical_game,
    expand,
    factored_sim,
    gen_rc,
    gen_rg,
    noisy_sim,
    ppa_exact,
    ppa_example_game,
)

import _oracles as oracle


def test_gen_rg_shape_and_support():
    g = gen_rg(4, 3, u0=10.0, seed=5)
    assert g.strategy_counts == (3, 3, 3, 3)
    assert g.utilities.shape == (4, 81)
    assert np.all(g.utilities > -5.0) and np.all(g.utilities < 5.0)


def test_gen_rg_deterministic_in_seed():
    a = gen_rg(3, 2, seed=9)
    b = gen_rg(3, 2, seed=9)
    c = gen_rg(3, 2, seed=10)
    assert np.array_equal(a.utilities, b.utilities)
    assert not np.array_equal(a.utilities, c.utilities)


def test_gen_rc_strategy_counts_and_facility_one():
    for seed in range(30):
        cg = gen_rc(5, 5, 2, seed=seed)
        assert cg.num_players == 5
        for strats in cg.strategy_sets:
            assert 1 <= len(strats) <= 2
            assert len(set(strats)) == len(strats)
            for strat in strats:
                assert 0 in strat  # the always-included first facility
                assert all(0 <= e < 5 for e in strat)


def test_gen_rc_deterministic_and_validated():
    assert gen_rc(3, 4, 3, seed=2) == gen_rc(3, 4, 3, seed=2)
    with pytest.raises(ValueError):
        gen_rc(2, 2, 4)  # k exceeds 2^facilities - 1
    with pytest.raises(ValueError):
        gen_rc(2, 3, 2, alpha=1.5)


def test_expand_single_player():
    cg = CongestionGame(1, (((0,),),))
    g = expand(cg)
    assert utility(g, 0, (0,)) == -1.0


def test_expand_ppa_example_costs():
    g = expand(ppa_example_game())
    for p in range(3):
        assert utility(g, p, (0, 0, 0)) == -2.0
        assert utility(g, p, (1, 1, 1)) == -5.0


def test_expand_matches_oracle_costs():
    rng = np.random.default_rng(4)
    for seed in range(20):
        cg = gen_rc(
            int(rng.integers(2, 5)), int(rng.integers(2, 5)), 2, seed=seed
        )
        g = expand(cg)
        for profile in oracle.all_profiles(g):
            costs = oracle.congestion_costs(cg, profile)
            for p in range(cg.num_players):
                assert utility(g, p, profile) == pytest.approx(-costs[p])


def test_expand_custom_cost_fn():
    cg = CongestionGame(2, (((0, 1),), ((0,),)), cost_fn=lambda e, n: n * n)
    g = expand(cg)
    # facility 0 carries both players (cost 4), facility 1 only player 0
    assert utility(g, 0, (0, 0)) == -(4 + 1)
    assert utility(g, 1, (0, 0)) == -4


def test_ppa_exact_values():
    assert ppa_exact(CongestionGame(1, (((0,),),))) == 1.0
    assert ppa_exact(ppa_example_game()) == 2.5
    # identical-interest game with a unique optimum equilibrium
    shared = CongestionGame(2, (((0,), (0, 1)), ((0,), (0, 1))))
    assert ppa_exact(shared) == 1.0


def test_ppa_example_equilibria():
    g = expand(ppa_example_game())
    nash = nash_mask(g, 0.0)
    assert nash.sum() == 2
    assert nash[g.profile_index((0, 0, 0))] and nash[g.profile_index((1, 1, 1))]
    totals = -g.utilities.sum(axis=0)
    assert totals.min() == 6.0
    assert totals[g.profile_index((0, 0, 0))] == 6.0
    assert (totals == 6.0).sum() == 1  # the optimum is unique
    assert totals[nash].max() == 15.0


def test_rosenthal_pure_nash_exists():
    rng = np.random.default_rng(8)
    for seed in range(60):
        cg = gen_rc(
            int(rng.integers(2, 6)), int(rng.integers(2, 6)), 2, seed=seed
        )
        assert nash_mask(expand(cg), 0.0).any()


def test_congestion_validation():
    with pytest.raises(ValueError):
        CongestionGame(2, ((),))  # player with no strategies
    with pytest.raises(ValueError):
        CongestionGame(2, (((),),))  # empty facility set
    with pytest.raises(ValueError):
        CongestionGame(2, (((0, 5),),))  # facility out of range


def test_congestion_json_roundtrip():
    cg = gen_rc(4, 5, 2, seed=3)
    back = congestion_from_json(congestion_to_json(cg))
    assert back == cg
    with pytest.raises(ValueError):
        congestion_from_json('{"players": 1, "facilities": 2, "strategies": [[[0]]], "cost": "quadratic"}')


def test_noisy_sim_zero_noise_is_exact():
    base = expand(ppa_example_game())
    sim = noisy_sim(base, 0.0)
    idx = IndexSet.full(base)
    seeds = draw_conditions(np.random.default_rng(0), 7)
    values = sim.sample_block(seeds, idx.players, idx.profiles)
    assert np.array_equal(values, np.tile(base.utilities.reshape(-1)[:, None], (1, 7)))


def test_noisy_sim_support_and_determinism():
    base = gen_rg(2, 2, seed=1)
    sim = noisy_sim(base, d=3.0)
    idx = IndexSet.full(base)
    seeds = draw_conditions(np.random.default_rng(1), 500)
    a = sim.sample_block(seeds, idx.players, idx.profiles)
    b = sim.sample_block(seeds, idx.players, idx.profiles)
    assert np.array_equal(a, b)
    spread = np.abs(a - base.utilities.reshape(-1)[:, None])
    assert np.all(spread < 1.5)
    assert sim.range_c == 2.0 * np.abs(base.utilities).max() + 3.0


def test_noisy_sim_query_matches_block():
    base = gen_rg(3, 2, seed=2)
    sim = noisy_sim(base, d=2.0)
    cond = Condition(123456789)
    got = sim.query(cond, 1, (0, 1, 1))
    j = base.profile_index((0, 1, 1))
    block = sim.sample_block(
        np.array([cond.seed], dtype=np.uint64),
        np.array([1], dtype=np.int64),
        np.array([j], dtype=np.int64),
    )
    assert got == block[0, 0]


def test_noisy_sim_means_concentrate_on_base():
    base = gen_rg(2, 2, seed=3)
    d = 4.0
    sim = noisy_sim(base, d)
    idx = IndexSet.full(base)
    m = 100_000
    seeds = draw_conditions(np.random.default_rng(11), m)
    means = sim.sample_block(seeds, idx.players, idx.profiles).mean(axis=1)
    tol = 3.0 * d / np.sqrt(12.0 * m)
    assert np.all(np.abs(means - base.utilities.reshape(-1)) < tol)


def test_factored_sim_zero_scales_and_global_sharing():
    base = gen_rg(2, 3, u0=1.9, seed=4)
    silent = factored_sim(1.0, [0.0], ["global"], base, seed=0)
    idx = IndexSet.full(base)
    seeds = draw_conditions(np.random.default_rng(2), 5)
    assert np.array_equal(
        silent.sample_block(seeds, idx.players, idx.profiles),
        np.tile(base.utilities.reshape(-1)[:, None], (1, 5)),
    )
    noisy = factored_sim(1.0, [0.7], ["global"], base, seed=0)
    offsets = noisy.sample_block(seeds, idx.players, idx.profiles) - base.utilities.reshape(-1)[:, None]
    # the global factor shifts every index identically per condition
    assert np.allclose(offsets, offsets[0][None, :])
    assert np.all(np.abs(offsets) <= 0.7)


def test_factored_sim_image_sizes_and_range():
    base = gen_rg(3, 4, u0=2.0, seed=5)
    sim = factored_sim(
        1.0,
        [1.0, 1.0, 1.0, 0.5, 0.5],
        ["global", "agent", "own-strategy", "profile", "agent-profile"],
        base,
        seed=9,
    )
    assert sim.factor_image_sizes() == [1, 3, 4, 64, 192]
    assert sim.range_c == 2.0 * (1.0 + 4.0)
    idx = IndexSet.full(base)
    seeds = draw_conditions(np.random.default_rng(3), 50)
    values = sim.sample_block(seeds, idx.players, idx.profiles)
    assert np.all(np.abs(values) <= sim.range_c / 2)


def test_factored_sim_validates():
    base = gen_rg(2, 2, u0=4.0, seed=6)
    with pytest.raises(ValueError):
        factored_sim(1.0, [1.0], ["global"], base, seed=0)  # a0 too small
    with pytest.raises(ValueError):
        factored_sim(2.0, [1.0], ["unknown"], base, seed=0)
    with pytest.raises(ValueError):
        factored_sim(2.0, [1.0, 1.0], ["global"], base, seed=0)


def test_empirical_game_single_draw_and_zero_noise():
    base = expand(ppa_example_game())
    idx = IndexSet.full(base)
    sim = noisy_sim(base, 2.0)
    conds = [Condition(42)]
    emp, tensor = empirical_game(sim, idx, conds)
    assert np.array_equal(emp.utilities.reshape(-1), tensor.values[:, 0])
    silent = noisy_sim(base, 0.0)
    emp2, _ = empirical_game(silent, idx, draw_conditions(np.random.default_rng(5), 13))
    assert np.array_equal(emp2.utilities, base.utilities)


def test_empirical_game_partial_index_set():
    base = expand(ppa_example_game())
    idx = IndexSet.from_pairs([(0, 0), (2, 5)])
    sim = noisy_sim(base, 0.0)
    emp, tensor = empirical_game(sim, idx, [Condition(1), Condition(2)])
    assert tensor.values.shape == (2, 2)
    assert emp.utilities[0, 0] == base.utilities[0, 0]
    assert emp.utilities[2, 5] == base.utilities[2, 5]
    assert emp.utilities[1, 3] == 0.0  # untouched entries keep the fill value


def test_empirical_game_hoeffding_coverage():
    # uniform error within the union bound in at least 99 of 100 replications
    base = gen_rg(2, 2, seed=7)
    d = 5.0
    sim = noisy_sim(base, d)
    idx = IndexSet.full(base)
    m, delta = 10_000, 0.01
    eps = hoeffding_eps(sim.range_c, len(idx), m, delta)
    hits = 0
    for rep in range(100):
        seeds = draw_conditions(np.random.default_rng(1000 + rep), m)
        emp, _ = empirical_game(sim, idx, seeds)
        hits += linf_distance(emp, base) <= eps
    assert hits >= 99
