"""Black-box conditional simulators and synthetic game generators.

A conditional simulator deterministically maps (condition, player, profile)
to a utility; sampling i.i.d. conditions realizes the noise distribution.
Noise is produced by counter-based hashing of (condition seed, index), so a
single condition consistently defines utilities for every index, queries are
reproducible bit-for-bit, and no shared RNG state exists.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from .bounds import SampleTensor
from .games import IndexSet, NormalFormGame, nash_mask, welfare_table
from .hashing import hash_uniform, mix, splitmix64


@dataclass(frozen=True)
class Condition:
    """One draw from the condition distribution, realized as a 64-bit seed."""

    seed: int


def draw_conditions(rng: np.random.Generator, m: int) -> np.ndarray:
    """m condition seeds as a uint64 array."""
    return rng.integers(0, 2**64, size=m, dtype=np.uint64)


class ConditionalSimulator:
    """Deterministic map (condition, player, profile) -> utility.

    base is the expected game (ground truth, exposed for evaluation
    harnesses); range_c declares the bound: all outputs lie in
    [-range_c/2, range_c/2].
    """

    base: NormalFormGame
    range_c: float

    def sample_block(
        self, cond_seeds: np.ndarray, players: np.ndarray, profiles: np.ndarray
    ) -> np.ndarray:
        """Utilities for each (player, profile) index under each condition;
        shape [num_indices, num_conditions]."""
        raise NotImplementedError

    def query(self, condition: Condition, p: int, profile: Sequence[int]) -> float:
        j = self.base.profile_index(profile)
        block = self.sample_block(
            np.array([condition.seed], dtype=np.uint64),
            np.array([p], dtype=np.int64),
            np.array([j], dtype=np.int64),
        )
        return float(block[0, 0])

    def sample_tensor(self, index_set: IndexSet, cond_seeds: np.ndarray) -> SampleTensor:
        values = self.sample_block(cond_seeds, index_set.players, index_set.profiles)
        return SampleTensor(index_set, values)


class NoisySimulator(ConditionalSimulator):
    """Base game plus additive uniform noise on (-d/2, d/2), independent per
    (player, profile) index and shared-condition consistent."""

    def __init__(self, base: NormalFormGame, d: float):
        if d < 0:
            raise ValueError("noise width d must be nonnegative")
        self.base = base
        self.d = float(d)
        self.range_c = 2.0 * float(np.abs(base.utilities).max()) + self.d

    def sample_block(self, cond_seeds, players, profiles):
        base_vals = self.base.utilities[players, profiles]
        if self.d == 0.0:
            return np.tile(base_vals[:, None], (1, len(cond_seeds)))
        keys = (players * self.base.num_profiles + profiles).astype(np.uint64)
        noise = (hash_uniform(cond_seeds, keys) - 0.5) * self.d
        return base_vals[:, None] + noise


def noisy_sim(base: NormalFormGame, d: float) -> NoisySimulator:
    return NoisySimulator(base, d)


# Grouping rules for factored noise: each factor perturbs all indices that
# share the value of its grouping function.
FACTOR_KINDS = ("global", "agent", "own-strategy", "profile", "agent-profile")


class FactoredNoiseSimulator(ConditionalSimulator):
    """Base game plus a sum of additive noise factors, each uniform on
    [-a_i, a_i] and constant across indices with equal grouping value."""

    def __init__(
        self,
        a0: float,
        a: Sequence[float],
        kinds: Sequence[str],
        base: NormalFormGame,
        seed: int,
    ):
        if len(a) != len(kinds):
            raise ValueError("one scale per factor kind required")
        for kind in kinds:
            if kind not in FACTOR_KINDS:
                raise ValueError(f"unknown factor kind {kind!r}")
        if any(a_i < 0 for a_i in a):
            raise ValueError("factor scales must be nonnegative")
        if float(np.abs(base.utilities).max()) > a0:
            raise ValueError("a0 must bound the base game's utilities")
        self.base = base
        self.a0 = float(a0)
        self.a = tuple(float(x) for x in a)
        self.kinds = tuple(kinds)
        self.seed = int(seed)
        self.range_c = 2.0 * (self.a0 + sum(self.a))
        # strides to decode a player's own strategy from a profile index
        counts = base.strategy_counts
        self._strides = np.array(
            [int(np.prod(counts[p + 1 :], initial=1)) for p in range(len(counts))],
            dtype=np.int64,
        )
        self._counts = np.array(counts, dtype=np.int64)

    def factor_image_sizes(self) -> list[int]:
        """Number of distinct grouping values per factor (the b_i of the
        factored Rademacher bound)."""
        g = self.base
        table = {
            "global": 1,
            "agent": g.num_players,
            "own-strategy": max(g.strategy_counts),
            "profile": g.num_profiles,
            "agent-profile": g.num_players * g.num_profiles,
        }
        return [table[kind] for kind in self.kinds]

    def _phi(self, kind: str, players: np.ndarray, profiles: np.ndarray) -> np.ndarray:
        if kind == "global":
            return np.zeros_like(players)
        if kind == "agent":
            return players
        if kind == "own-strategy":
            return (profiles // self._strides[players]) % self._counts[players]
        if kind == "profile":
            return profiles
        return players * self.base.num_profiles + profiles

    def sample_block(self, cond_seeds, players, profiles):
        out = np.tile(self.base.utilities[players, profiles][:, None], (1, len(cond_seeds)))
        for i, (a_i, kind) in enumerate(zip(self.a, self.kinds)):
            if a_i == 0.0:
                continue
            salt = np.uint64(mix(self.seed, i))
            keys = splitmix64(self._phi(kind, players, profiles).astype(np.uint64) + salt)
            out += (2.0 * hash_uniform(cond_seeds, keys) - 1.0) * a_i
        return out


def factored_sim(
    a0: float,
    a: Sequence[float],
    kinds: Sequence[str],
    base: NormalFormGame,
    seed: int,
) -> FactoredNoiseSimulator:
    return FactoredNoiseSimulator(a0, a, kinds, base, seed)


def empirical_game(
    sim: ConditionalSimulator,
    index_set: IndexSet,
    conditions: Sequence[Condition] | np.ndarray,
    fill: float = 0.0,
) -> tuple[NormalFormGame, SampleTensor]:
    """Mean utilities over the given conditions for every index in the set.

    Returns the empirical game (entries outside the index set are left at
    ``fill``) together with the raw per-condition samples.
    """
    if isinstance(conditions, np.ndarray):
        cond_seeds = conditions.astype(np.uint64)
    else:
        cond_seeds = np.array([c.seed for c in conditions], dtype=np.uint64)
    if cond_seeds.size < 1:
        raise ValueError("at least one condition required")
    index_set.validate_for(sim.base)
    tensor = sim.sample_tensor(index_set, cond_seeds)
    table = np.full((sim.base.num_players, sim.base.num_profiles), fill)
    table[index_set.players, index_set.profiles] = tensor.means()
    return NormalFormGame(sim.base.strategy_counts, table), tensor


def gen_rg(num_players: int, k: int, u0: float = 10.0, seed: int = 0) -> NormalFormGame:
    """Uniform random game: every utility i.i.d. uniform on (-u0/2, u0/2)."""
    if num_players < 1 or k < 1:
        raise ValueError("need at least one player and one strategy")
    if u0 <= 0:
        raise ValueError("utility magnitude u0 must be positive")
    rng = np.random.Generator(np.random.PCG64(seed))
    counts = (k,) * num_players
    shape = (num_players, int(np.prod(counts)))
    return NormalFormGame(counts, rng.uniform(-u0 / 2.0, u0 / 2.0, size=shape))


@dataclass(frozen=True)
class CongestionGame:
    """Facility-based compact game; players pay the sum of their chosen
    facilities' costs, each a function of that facility's load."""

    num_facilities: int
    strategy_sets: tuple[tuple[tuple[int, ...], ...], ...]
    cost_fn: Callable[[int, int], float] | None = None  # (facility, load) -> cost

    def __post_init__(self):
        sets = tuple(
            tuple(tuple(sorted(int(e) for e in strat)) for strat in player_strats)
            for player_strats in self.strategy_sets
        )
        object.__setattr__(self, "strategy_sets", sets)
        if not sets:
            raise ValueError("need at least one player")
        for p, player_strats in enumerate(sets):
            if not player_strats:
                raise ValueError(f"player {p} has no strategies")
            for strat in player_strats:
                if not strat:
                    raise ValueError(f"player {p} has an empty facility set")
                if strat[0] < 0 or strat[-1] >= self.num_facilities:
                    raise ValueError("facility index out of range")
                if len(set(strat)) != len(strat):
                    raise ValueError("facility listed twice in one strategy")

    @property
    def num_players(self) -> int:
        return len(self.strategy_sets)

    @property
    def strategy_counts(self) -> tuple[int, ...]:
        return tuple(len(s) for s in self.strategy_sets)


def gen_rc(
    num_players: int,
    num_facilities: int,
    k: int,
    alpha: float = 0.1,
    seed: int = 0,
) -> CongestionGame:
    """Random congestion game: each player draws uniformly many candidate
    strategies (1..k); facility e joins a strategy with probability
    alpha^(e-1), so facility 1 is always included and strategies cluster on
    low-numbered facilities. Duplicate strategies are dropped.
    """
    if num_players < 1 or num_facilities < 1:
        raise ValueError("need at least one player and one facility")
    if not 1 <= k <= 2**num_facilities - 1:
        raise ValueError("k must lie in [1, 2^facilities - 1]")
    if not 0 < alpha < 1:
        raise ValueError("alpha must lie in (0, 1)")
    rng = np.random.Generator(np.random.PCG64(seed))
    inclusion = alpha ** np.arange(num_facilities)
    strategy_sets = []
    for _ in range(num_players):
        n_p = int(rng.integers(1, k, endpoint=True))
        strats: list[tuple[int, ...]] = []
        for _ in range(n_p):
            mask = rng.random(num_facilities) < inclusion
            mask[0] = True
            strat = tuple(int(e) for e in np.nonzero(mask)[0])
            if strat not in strats:
                strats.append(strat)
        strategy_sets.append(tuple(strats))
    return CongestionGame(num_facilities, tuple(strategy_sets))


def expand(cg: CongestionGame) -> NormalFormGame:
    """Dense normal-form view of a congestion game; utilities are negated
    costs so the usual regret/equilibrium machinery applies unchanged."""
    counts = cg.strategy_counts
    num_profiles = int(np.prod(counts))
    profiles = np.stack(
        np.unravel_index(np.arange(num_profiles), counts), axis=1
    )  # [num_profiles, P]
    usage = []
    for p, player_strats in enumerate(cg.strategy_sets):
        u = np.zeros((counts[p], cg.num_facilities), dtype=np.float64)
        for s_idx, strat in enumerate(player_strats):
            u[s_idx, list(strat)] = 1.0
        usage.append(u)
    loads = np.zeros((num_profiles, cg.num_facilities))
    for p in range(cg.num_players):
        loads += usage[p][profiles[:, p]]
    if cg.cost_fn is None:
        facility_costs = loads
    else:
        facility_costs = np.empty_like(loads)
        for e in range(cg.num_facilities):
            for load in np.unique(loads[:, e]):
                facility_costs[loads[:, e] == load, e] = cg.cost_fn(e, int(load))
    utilities = np.empty((cg.num_players, num_profiles))
    for p in range(cg.num_players):
        utilities[p] = -(usage[p][profiles[:, p]] * facility_costs).sum(axis=1)
    return NormalFormGame(counts, utilities)


def ppa_exact(cg: CongestionGame) -> float:
    """Exact pure price of anarchy: worst total cost over pure equilibria of
    the expanded game, divided by the optimal total cost."""
    game = expand(cg)
    total_cost = -welfare_table(game)
    nash = nash_mask(game, 0.0)
    if not nash.any():
        raise RuntimeError("no pure equilibrium found; congestion games must have one")
    optimum = float(total_cost.min())
    if optimum <= 0:
        raise RuntimeError("optimal total cost must be positive")
    return float(total_cost[nash].max()) / optimum


def ppa_example_game() -> CongestionGame:
    """Three-player, six-facility instance whose worst equilibrium costs 15
    against an optimum of 6, giving a pure price of anarchy of 5/2.

    Facilities 0..2 are h1..h3 and 3..5 are g1..g3; player p chooses between
    {h_p, g_p} and {g_{p+1}, h_{p+1}, h_{p+2}} (indices wrapping mod 3).
    """
    h = [0, 1, 2]
    g = [3, 4, 5]
    sets = []
    for p in range(3):
        a_p = (h[p], g[p])
        b_p = tuple(sorted((g[(p + 1) % 3], h[(p + 1) % 3], h[(p + 2) % 3])))
        sets.append((a_p, b_p))
    return CongestionGame(6, tuple(sets))


def congestion_to_json(cg: CongestionGame) -> str:
    if cg.cost_fn is not None:
        raise ValueError("only the linear cost function serializes")
    payload = {
        "players": cg.num_players,
        "facilities": cg.num_facilities,
        "strategies": [[list(s) for s in player] for player in cg.strategy_sets],
        "cost": "linear",
    }
    return json.dumps(payload)


def congestion_from_json(text: str) -> CongestionGame:
    payload = json.loads(text)
    if payload.get("cost") != "linear":
        raise ValueError("only the linear cost function is supported")
    if int(payload["players"]) != len(payload["strategies"]):
        raise ValueError("players field does not match strategies length")
    sets = tuple(
        tuple(tuple(int(e) for e in strat) for strat in player)
        for player in payload["strategies"]
    )
    return CongestionGame(int(payload["facilities"]), sets)
