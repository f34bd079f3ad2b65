"""Desk-scale experiment drivers behind the command-line interface.

Every driver returns a Table (column names, rows, metadata) that serializes
to CSV deterministically: given the same master seed the bytes are identical
across runs. Per-replication seeds are derived by hashing (master seed,
experiment name, replication index), never by sharing a stateful RNG.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .algorithms import (
    BoundType,
    FailureSchedule,
    SamplingSchedule,
    gs,
    psp,
    query_cost,
)
from .bounds import (
    NoiseProfile,
    factored_ra_bound,
    hoeffding_eps,
    hoeffding_eps_ln,
    noise_scaling_ra_bound,
)
from .games import IndexSet, NormalFormGame, game_size, nash_mask
from .hashing import mix
from .simulators import expand, gen_rc, gen_rg, noisy_sim, ppa_example_game

CONFIDENCE_Z = 1.96  # normal-approximation 95% intervals throughout


@dataclass
class Table:
    columns: tuple[str, ...]
    rows: list[tuple]
    metadata: dict[str, object] = field(default_factory=dict)

    def to_csv(self) -> str:
        lines = [f"# {key}={value}" for key, value in self.metadata.items()]
        lines.append(",".join(self.columns))
        for row in self.rows:
            lines.append(",".join(_cell(value) for value in row))
        return "\n".join(lines) + "\n"

    def column(self, name: str) -> list:
        i = self.columns.index(name)
        return [row[i] for row in self.rows]


def _cell(value) -> str:
    if isinstance(value, float):
        return repr(value)
    return str(value)


def _mean_ci(values: np.ndarray) -> tuple[float, float, float]:
    mean = float(values.mean())
    if values.size < 2:
        return mean, mean, mean
    half = CONFIDENCE_Z * float(values.std(ddof=1)) / math.sqrt(values.size)
    return mean, mean - half, mean + half


def run_eps_vs_samples(
    seed: int = 0,
    reps: int = 200,
    d_values: tuple[float, ...] = (2.0, 5.0, 10.0),
    m_values: tuple[int, ...] = (1000, 3162, 10000, 31623, 100000),
    delta: float = 0.1,
    players: int = 5,
    facilities: int = 5,
    k: int = 2,
) -> Table:
    """Error radius of global sampling versus sample count on random
    congestion games, one row per (noise width, sample count)."""
    name = "eps-vs-samples"
    rows = []
    for d in d_values:
        sims = []
        for rep in range(reps):
            base = expand(gen_rc(players, facilities, k, seed=mix(seed, name, rep)))
            sims.append(noisy_sim(base, d))
        for m in m_values:
            eps = np.empty(reps)
            for rep, sim in enumerate(sims):
                result = gs(
                    sim,
                    IndexSet.full(sim.base),
                    m,
                    delta,
                    sim.range_c,
                    BoundType.ONE_ERA,
                    seed=mix(seed, name, rep, int(d * 1000), m),
                )
                eps[rep] = result.epsilon
            mean, lo, hi = _mean_ci(eps)
            rows.append((float(d), m, mean, lo, hi))
    return Table(
        ("d", "m", "mean_epsilon", "ci_low", "ci_high"),
        rows,
        {
            "experiment": name,
            "seed": seed,
            "reps": reps,
            "delta": delta,
            "family": f"RC({players},{facilities},{k})",
            "bound": "1era",
        },
    )


def loglog_slope(ms: list[float], eps: list[float]) -> float:
    """Least-squares slope of log(eps) against log(m)."""
    return float(np.polyfit(np.log(np.asarray(ms, float)), np.log(np.asarray(eps, float)), 1)[0])


def center_per_player(game: NormalFormGame) -> NormalFormGame:
    """Shift each player's utilities to mean zero. Regrets, equilibria, and
    dominance relations are unchanged; the symmetric utility range (and with
    it every range-driven error radius) shrinks to the essential spread."""
    centered = game.utilities - game.utilities.mean(axis=1, keepdims=True)
    return NormalFormGame(game.strategy_counts, centered)


def find_unique_nash_rc_game(
    seed: int,
    players: int = 5,
    facilities: int = 5,
    k: int = 2,
    profiles_wanted: int = 32,
    alpha: float = 0.5,
    max_tries: int = 10_000,
) -> tuple[NormalFormGame, int, int]:
    """First congestion game (by hashed sub-seed) whose expansion has the
    requested profile count and a unique pure equilibrium. Returns the
    per-player-centered expansion, the matching attempt index, and the
    equilibrium profile.

    The default facility-inclusion decay is raised to 0.5 here: at 0.1
    nearly every sampled strategy collapses to {facility 1}, so a game where
    all five players keep two distinct strategies is vanishingly rare.
    Centering keeps the game strategically identical while its declared
    utility range stays proportional to the cost spread rather than the
    absolute cost level.
    """
    for attempt in range(max_tries):
        cg = gen_rc(players, facilities, k, alpha=alpha, seed=mix(seed, "fixture", attempt))
        base = expand(cg)
        if base.num_profiles != profiles_wanted:
            continue
        nash = np.nonzero(nash_mask(base, 0.0))[0]
        if nash.size == 1:
            return center_per_player(base), attempt, int(nash[0])
    raise RuntimeError("no game with the requested shape found; widen the search")


def run_nash_frequency(
    seed: int = 0,
    runs: int = 200,
    m_values: tuple[int, ...] = (50, 100, 200, 500),
    d: float = 2.0,
    delta: float = 0.1,
) -> Table:
    """How often each profile of a fixed unique-equilibrium congestion game
    is flagged as a pure 2-epsilon-equilibrium by global sampling."""
    name = "nash-frequency"
    base, attempt, true_nash = find_unique_nash_rc_game(seed)
    sim = noisy_sim(base, d)
    idx = IndexSet.full(base)
    rows = []
    for m in m_values:
        flagged = np.zeros(base.num_profiles, dtype=np.int64)
        for run in range(runs):
            result = gs(
                sim, idx, m, delta, sim.range_c, BoundType.ONE_ERA,
                seed=mix(seed, name, run, m),
            )
            table = np.zeros((base.num_players, base.num_profiles))
            table[idx.players, idx.profiles] = result.utilities
            empirical = NormalFormGame(base.strategy_counts, table)
            flagged += nash_mask(empirical, 2.0 * result.epsilon)
        for j in range(base.num_profiles):
            if flagged[j]:
                rows.append((m, j, int(flagged[j])))
    return Table(
        ("m", "profile", "frequency"),
        rows,
        {
            "experiment": name,
            "seed": seed,
            "runs": runs,
            "d": d,
            "delta": delta,
            "fixture_attempt": attempt,
            "true_nash_profile": true_nash,
            "num_profiles": base.num_profiles,
        },
    )


def run_success_rate(
    seed: int = 0,
    reps: int = 200,
    delta_grid: tuple[float, ...] = (0.05, 0.1, 0.15, 0.2, 0.25),
    rho_grid: tuple[float, ...] = (1.0, 0.875, 0.75, 0.625, 0.5),
    d: float = 5.0,
    m: int = 500,
) -> Table:
    """Empirical rate at which the two-sided equilibrium containment holds,
    swept over the failure probability and a radius contraction factor."""
    name = "success-rate"
    families = {
        "rc": lambda rep: expand(gen_rc(3, 3, 2, seed=mix(seed, name, "rc", rep))),
        "rg": lambda rep: gen_rg(3, 3, u0=10.0, seed=mix(seed, name, "rg", rep)),
    }
    rows = []
    for family, make in families.items():
        sims = [noisy_sim(make(rep), d) for rep in range(reps)]
        for bound in (BoundType.HOEFFDING, BoundType.ONE_ERA):
            for delta in delta_grid:
                success = {rho: np.zeros(reps, dtype=bool) for rho in rho_grid}
                for rep, sim in enumerate(sims):
                    result = gs(
                        sim,
                        IndexSet.full(sim.base),
                        m,
                        delta,
                        sim.range_c,
                        bound,
                        seed=mix(seed, name, family, rep, bound.value),
                    )
                    table = np.zeros_like(sim.base.utilities)
                    idx = result.index_set
                    table[idx.players, idx.profiles] = result.utilities
                    empirical = NormalFormGame(sim.base.strategy_counts, table)
                    truth0 = nash_mask(sim.base, 0.0)
                    for rho in rho_grid:
                        eps = rho * result.epsilon
                        emp2 = nash_mask(empirical, 2.0 * eps)
                        truth4 = nash_mask(sim.base, 4.0 * eps)
                        success[rho][rep] = bool(
                            np.all(emp2[truth0]) and np.all(truth4[emp2])
                        )
                for rho in rho_grid:
                    rate, lo, hi = _mean_ci(success[rho].astype(np.float64))
                    rows.append((family, bound.value, delta, rho, rate, lo, hi))
    return Table(
        ("family", "bound", "delta", "rho", "success_rate", "ci_low", "ci_high"),
        rows,
        {"experiment": name, "seed": seed, "reps": reps, "d": d, "m": m},
    )


def run_gs_vs_psp(
    seed: int = 0,
    reps: int = 12,
    players_values: tuple[int, ...] = (2, 3, 4, 5),
    k_values: tuple[int, ...] = (2, 3, 4, 5),
    d: float = 5.0,
    delta: float = 0.1,
    m0: int = 100,
    budget: int = 102300,
) -> Table:
    """Progressive sampling run to completion versus one-shot sampling on the
    same total utility-evaluation budget, one row per random game."""
    name = "gs-vs-psp"
    sched = SamplingSchedule.finite_doubling(m0, budget)
    failure = FailureSchedule.uniform_split(delta, sched.length)
    rows = []
    for players in players_values:
        for k in k_values:
            for rep in range(reps):
                base = gen_rg(players, k, u0=10.0, seed=mix(seed, name, players, k, rep))
                sim = noisy_sim(base, d)
                result = psp(
                    sim,
                    sched,
                    failure,
                    c=sim.range_c,
                    bound=BoundType.HOEFFDING,
                    pure=True,
                    eps_threshold=0.0,
                    seed=mix(seed, name, "run", players, k, rep),
                )
                size = game_size(base)
                cost_psp = query_cost(result.trace)
                m_gs = cost_psp / size  # uniform per-utility budget
                eps_gs = hoeffding_eps(sim.range_c, size, m_gs, delta)
                rows.append(
                    (players, k, size, rep, result.epsilon, eps_gs, cost_psp, m_gs)
                )
    return Table(
        ("players", "k", "game_size", "rep", "eps_psp", "eps_gs", "cost_psp", "m_gs"),
        rows,
        {
            "experiment": name,
            "seed": seed,
            "reps": reps,
            "d": d,
            "delta": delta,
            "m0": m0,
            "budget": budget,
            "bound": "hoeffding",
        },
    )


def run_bound_compare_factored(
    players_max: int = 100,
    m: int = 10000,
    delta: float = 0.05,
    num_strategies: int = 100,
    a0: float = 1.0,
    a: tuple[float, ...] = (1.0, 1.0, 1.0, 0.5, 0.5),
) -> Table:
    """Hoeffding union radius against the factored-noise Rademacher radius as
    the player count grows; both use the full index set of a game with
    num_strategies actions per player."""
    c = 2.0 * (a0 + sum(a))
    ln_s = math.log(num_strategies)
    tail = 3.0 * c * math.sqrt(math.log(1.0 / delta) / (2.0 * m))
    rows = []
    crossover = None
    for players in range(1, players_max + 1):
        ln_index_count = math.log(players) + players * ln_s
        hoeff = hoeffding_eps_ln(c, ln_index_count, m, delta)
        b = (
            1,
            players,
            num_strategies,
            num_strategies**players,
            players * num_strategies**players,
        )
        rad = 2.0 * factored_ra_bound(a0, a, b, m) + tail
        if crossover is None and hoeff > rad:
            crossover = players
        rows.append((players, hoeff, rad))
    return Table(
        ("players", "hoeffding", "rademacher"),
        rows,
        {
            "experiment": "bound-compare-factored",
            "m": m,
            "delta": delta,
            "num_strategies": num_strategies,
            "c": c,
            "crossover_players": crossover,
        },
    )


def run_bound_compare_vns(
    players_max: int = 100,
    m: int = 10000,
    delta: float = 0.05,
    num_strategies: int = 100,
    a: float = 1.0,
    c: float = 2.0,
    intervals: int = 6,
) -> Table:
    """Hoeffding union radius against the variable-noise-scale Rademacher
    radius: noise magnitudes are binned dyadically, with index counts per bin
    halving as the bin's scale doubles."""
    ln_s = math.log(num_strategies)
    tail = 3.0 * c * math.sqrt(math.log(1.0 / delta) / (2.0 * m))
    breakpoints = (0.0,) + tuple(c * 2.0 ** (i - intervals) for i in range(1, intervals + 1))
    rows = []
    crossover = None
    for players in range(1, players_max + 1):
        ln_index_count = math.log(players) + players * ln_s
        hoeff = hoeffding_eps_ln(c, ln_index_count, m, delta)
        size = players * num_strategies**players
        counts = tuple(-(-size // 2**i) for i in range(1, intervals + 1))
        profile = NoiseProfile(a, breakpoints, counts)
        rad = 2.0 * noise_scaling_ra_bound(profile, m) + tail
        if crossover is None and hoeff > rad:
            crossover = players
        rows.append((players, hoeff, rad))
    return Table(
        ("players", "hoeffding", "rademacher"),
        rows,
        {
            "experiment": "bound-compare-vns",
            "m": m,
            "delta": delta,
            "num_strategies": num_strategies,
            "a": a,
            "c": c,
            "intervals": intervals,
            "crossover_players": crossover,
        },
    )


def run_ppa_demo() -> str:
    """Text report for the canonical three-player congestion instance."""
    cg = ppa_example_game()
    game = expand(cg)
    totals = -game.utilities.sum(axis=0)
    nash = np.nonzero(nash_mask(game, 0.0))[0]
    optimum = float(totals.min())
    worst = float(totals[nash].max())
    lines = [
        "Pure price of anarchy demo: 3 players, 6 facilities, linear costs.",
        f"Pure equilibria ({nash.size}):",
    ]
    for j in nash:
        profile = game.profile_of_index(int(j))
        labels = ",".join("AB"[s] + str(p + 1) for p, s in enumerate(profile))
        lines.append(f"  profile ({labels}) with total cost {totals[j]:g}")
    lines += [
        f"Optimal total cost: {optimum:g}",
        f"Worst equilibrium total cost: {worst:g}",
        f"Pure price of anarchy: {worst / optimum:g}",
    ]
    return "\n".join(lines) + "\n"
