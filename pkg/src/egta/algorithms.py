"""Learning algorithms: one-shot global sampling and progressive sampling
with pruning.

Global sampling draws a single batch of conditions, estimates every index in
an index set by its sample mean, and attaches a uniform error radius from the
chosen concentration bound. Progressive sampling repeats this on a growing
sample schedule, discarding (player, profile) indices that provably cannot
matter for equilibrium estimation, and accumulates the failure probability it
has spent.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from enum import Enum
from typing import Iterator, Sequence

import numpy as np

from .bounds import era_eps, hoeffding_eps
from .games import (
    IndexSet,
    NormalFormGame,
    Profile,
    pure_eps_nash,
    rationalizable,
)
from .hashing import mix
from .simulators import ConditionalSimulator, draw_conditions

# cap on elements per sampling block; keeps memory flat without changing
# results (chunk boundaries depend only on the index-set size)
_BLOCK_ELEMS = 2_000_000


class BoundType(Enum):
    HOEFFDING = "hoeffding"
    ONE_ERA = "1era"


@dataclass(frozen=True)
class SamplingSchedule:
    """Doubling sample-size schedule M_1 = m0, M_{t+1} = 2 M_t.

    The finite variant emits sizes while their running total stays within
    ``budget`` conditions; the infinite variant never stops.
    """

    m0: int
    budget: int | None = None

    def __post_init__(self):
        if self.m0 < 1:
            raise ValueError("initial sample size must be at least 1")
        if self.budget is not None and self.budget < self.m0:
            raise ValueError("budget admits no iterations")

    @staticmethod
    def finite_doubling(m0: int, budget: int) -> "SamplingSchedule":
        return SamplingSchedule(m0, budget)

    @staticmethod
    def infinite_doubling(m0: int) -> "SamplingSchedule":
        return SamplingSchedule(m0, None)

    @property
    def length(self) -> int | None:
        """Number of iterations, or None when infinite."""
        if self.budget is None:
            return None
        count, m, total = 0, self.m0, 0
        while total + m <= self.budget:
            total += m
            m *= 2
            count += 1
        return count

    def sizes(self) -> Iterator[int]:
        m, total = self.m0, 0
        while self.budget is None or total + m <= self.budget:
            yield m
            total += m
            m *= 2


@dataclass(frozen=True)
class FailureSchedule:
    """Per-iteration failure probabilities delta_t with sum at most delta."""

    delta: float
    steps: int | None = None  # uniform split over this many steps; None = geometric

    def __post_init__(self):
        if not 0 < self.delta < 1:
            raise ValueError("total failure probability must lie in (0, 1)")
        if self.steps is not None and self.steps < 1:
            raise ValueError("uniform split needs at least one step")

    @staticmethod
    def uniform_split(delta: float, steps: int) -> "FailureSchedule":
        return FailureSchedule(delta, steps)

    @staticmethod
    def geometric_halving(delta: float) -> "FailureSchedule":
        return FailureSchedule(delta, None)

    def deltas(self) -> Iterator[float]:
        if self.steps is not None:
            for _ in range(self.steps):
                yield self.delta / self.steps
        else:
            t = 1
            while True:
                yield self.delta * 2.0**-t
                t += 1


@dataclass(frozen=True)
class GSResult:
    """Empirical utilities over an index set plus a uniform error radius."""

    index_set: IndexSet
    utilities: np.ndarray
    epsilon: float
    m: int
    delta: float
    bound: BoundType

    def sup_deviation(self, truth: NormalFormGame) -> float:
        """Largest estimate error against a known expected game."""
        actual = truth.utilities[self.index_set.players, self.index_set.profiles]
        return float(np.abs(self.utilities - actual).max())

    def to_json(self) -> str:
        return json.dumps(
            {
                "indices": [[int(p), int(s)] for p, s in self.index_set.pairs()],
                "utilities": self.utilities.tolist(),
                "epsilon": self.epsilon,
                "m": self.m,
                "delta": self.delta,
                "bound": self.bound.value,
            }
        )


def gs(
    sim: ConditionalSimulator,
    index_set: IndexSet,
    m: int,
    delta: float,
    c: float,
    bound: BoundType,
    seed: int = 0,
) -> GSResult:
    """Global sampling: estimate every index from m shared conditions and
    bound the uniform error.

    With the Hoeffding bound the radius is the Bonferroni-corrected
    c*sqrt(ln(2|I|/delta)/(2m)); with the one-draw empirical Rademacher
    average it is 2r + 3c*sqrt(ln(1/delta)/(2m)) for a fresh sign draw.
    """
    n = len(index_set)
    if n == 0:
        raise ValueError("index set must be nonempty")
    if m < 1:
        raise ValueError("sample count m must be at least 1")
    if not 0 < delta < 1:
        raise ValueError("failure probability must lie in (0, 1)")
    if c <= 0:
        raise ValueError("utility range c must be positive")
    index_set.validate_for(sim.base)

    rng = np.random.Generator(np.random.PCG64(seed))
    cond_seeds = draw_conditions(rng, m)
    sigma = None
    if bound is BoundType.ONE_ERA:
        sigma = rng.integers(0, 2, size=m).astype(np.float64) * 2.0 - 1.0

    sums = np.zeros(n)
    signed = np.zeros(n)
    block = max(1, _BLOCK_ELEMS // n)
    for start in range(0, m, block):
        stop = min(start + block, m)
        values = sim.sample_block(
            cond_seeds[start:stop], index_set.players, index_set.profiles
        )
        sums += values.sum(axis=1)
        if sigma is not None:
            signed += values @ sigma[start:stop]
    means = sums / m

    if bound is BoundType.HOEFFDING:
        epsilon = hoeffding_eps(c, n, m, delta)
    else:
        r = float(np.abs(signed).max() / m)
        epsilon = era_eps(r, c, m, delta)
    return GSResult(index_set, means, epsilon, m, delta, bound)


def _restricted_regret_mask(
    utilities: np.ndarray, mask: np.ndarray, counts: tuple[int, ...], threshold: float
) -> np.ndarray:
    """Per-index survival of the pure pruning rule: keep (p, s) when p's
    regret at s, with deviations ranging only over p's surviving indices at
    the same opponent context, is at most the threshold."""
    out = np.zeros_like(mask)
    for p in range(mask.shape[0]):
        t = utilities[p].reshape(counts)
        alive = mask[p].reshape(counts)
        best = np.where(alive, t, -np.inf).max(axis=p, keepdims=True)
        regret = best - t
        out[p] = (alive & (regret <= threshold)).reshape(-1)
    return out


def prune_pure(game: NormalFormGame, index_set: IndexSet, eps_hat: float) -> IndexSet:
    """Indices worth keeping for pure-equilibrium estimation: the player's
    own regret, evaluated within the surviving structure, is at most
    2*eps_hat."""
    index_set.validate_for(game)
    mask = index_set.to_mask(game)
    new_mask = _restricted_regret_mask(
        game.utilities, mask, game.strategy_counts, 2.0 * eps_hat
    )
    return IndexSet.from_mask(new_mask)


def _restriction_of(index_set: IndexSet, game: NormalFormGame) -> list[list[int]]:
    strides = [int(np.prod(game.strategy_counts[p + 1 :], initial=1)) for p in range(game.num_players)]
    restriction = []
    for p in range(game.num_players):
        own = index_set.profiles[index_set.players == p]
        strategies = (own // strides[p]) % game.strategy_counts[p]
        restriction.append(sorted(set(int(s) for s in strategies)))
    return restriction


def prune_mixed(
    game: NormalFormGame,
    index_set: IndexSet,
    eps_hat: float,
    restrict: Sequence[Sequence[int]] | None = None,
) -> IndexSet:
    """Indices worth keeping for mixed-equilibrium estimation: every
    coordinate of the profile is 2*eps_hat-rationalizable."""
    index_set.validate_for(game)
    if restrict is None:
        restrict = _restriction_of(index_set, game)
    surviving = rationalizable(game, 2.0 * eps_hat, restrict=restrict)
    keep_strategy = [np.zeros(k, dtype=bool) for k in game.strategy_counts]
    for p, strategies in enumerate(surviving):
        keep_strategy[p][strategies] = True
    coords = np.stack(
        np.unravel_index(index_set.profiles, game.strategy_counts), axis=1
    )
    ok = np.ones(len(index_set), dtype=bool)
    for q in range(game.num_players):
        ok &= keep_strategy[q][coords[:, q]]
    return IndexSet(index_set.players[ok], index_set.profiles[ok])


@dataclass(frozen=True)
class IterationRecord:
    t: int
    m: int
    index_count: int
    epsilon: float


def query_cost(trace: Sequence[IterationRecord] | Sequence[tuple]) -> int:
    """Total simulator utility evaluations: sum over iterations of the
    sample count times the surviving index count."""
    total = 0
    for rec in trace:
        if isinstance(rec, IterationRecord):
            total += rec.m * rec.index_count
        else:
            _, m, count, _ = rec
            total += int(m) * int(count)
    return total


@dataclass(frozen=True)
class PSPResult:
    """Everything progressive sampling returns: the full empirical game,
    per-index error radii, the equilibrium output, the final radius, the
    spent failure probability, and the iteration trace."""

    empirical: NormalFormGame
    radii: np.ndarray
    pure_equilibria: list[Profile] | None
    mixed_restriction: list[list[int]] | None
    epsilon: float
    delta_total: float
    trace: tuple[IterationRecord, ...]
    details: tuple[tuple[IndexSet, np.ndarray], ...] | None = None

    def to_json(self) -> str:
        payload = {
            "strategies": list(self.empirical.strategy_counts),
            "utilities": self.empirical.utilities.reshape(-1).tolist(),
            "radii": self.radii.reshape(-1).tolist(),
            "epsilon": self.epsilon,
            "delta": self.delta_total,
            "trace": [
                {"t": r.t, "m": r.m, "indices": r.index_count, "epsilon": r.epsilon}
                for r in self.trace
            ],
        }
        if self.pure_equilibria is not None:
            payload["pure_equilibria"] = [list(s) for s in self.pure_equilibria]
        if self.mixed_restriction is not None:
            payload["rationalizable"] = self.mixed_restriction
        return json.dumps(payload)


def psp(
    sim: ConditionalSimulator,
    sampling: SamplingSchedule,
    failure: FailureSchedule,
    c: float,
    bound: BoundType,
    pure: bool = True,
    eps_threshold: float = 0.0,
    seed: int = 0,
    keep_details: bool = False,
) -> PSPResult:
    """Progressive sampling with pruning.

    Runs global sampling on the surviving index set once per schedule entry,
    drawing fresh conditions every iteration, and stops once the radius
    reaches eps_threshold or the schedule ends. In pure mode the output
    equilibria are the 2*epsilon-equilibria of the empirical game; in mixed
    mode the output is the per-player 2*epsilon-rationalizable restriction
    (equilibrium enumeration is out of scope). Pruned indices keep the radius
    from their last estimation.
    """
    game = sim.base
    counts = game.strategy_counts
    mask = np.ones((game.num_players, game.num_profiles), dtype=bool)
    utilities = np.zeros((game.num_players, game.num_profiles))
    radii = np.full((game.num_players, game.num_profiles), c / 2.0)
    restriction = [list(range(k)) for k in counts]

    total_steps = sampling.length
    if total_steps == 0:
        raise ValueError("sampling schedule admits no iterations")
    if failure.steps is not None:
        if total_steps is None:
            raise ValueError("an unbounded sampling schedule needs a geometric failure schedule")
        if failure.steps < total_steps:
            raise ValueError("failure schedule has fewer steps than the sampling schedule")

    trace: list[IterationRecord] = []
    details: list[tuple[IndexSet, np.ndarray]] = []
    consumed = 0.0
    epsilon = c / 2.0

    for t, (m_t, delta_t) in enumerate(zip(sampling.sizes(), failure.deltas()), start=1):
        index_set = IndexSet.from_mask(mask)
        result = gs(sim, index_set, m_t, delta_t, c, bound, seed=mix(seed, t))
        utilities[mask] = result.utilities
        epsilon = result.epsilon
        radii[mask] = epsilon
        consumed += delta_t
        trace.append(IterationRecord(t, m_t, len(index_set), epsilon))
        if keep_details:
            details.append((index_set, result.utilities.copy()))

        if epsilon <= eps_threshold or t == total_steps:
            break

        if pure:
            mask = _restricted_regret_mask(utilities, mask, counts, 2.0 * epsilon)
        else:
            empirical = NormalFormGame(counts, utilities)
            restriction = rationalizable(empirical, 2.0 * epsilon, restrict=restriction)
            keep = [np.zeros(k, dtype=bool) for k in counts]
            for p, strategies in enumerate(restriction):
                keep[p][strategies] = True
            grid = np.stack(
                np.unravel_index(np.arange(game.num_profiles), counts), axis=1
            )
            profile_ok = np.ones(game.num_profiles, dtype=bool)
            for q in range(game.num_players):
                profile_ok &= keep[q][grid[:, q]]
            mask = mask & profile_ok[None, :]

    empirical = NormalFormGame(counts, utilities)
    pure_equilibria = None
    mixed_restriction = None
    if pure:
        pure_equilibria = pure_eps_nash(empirical, 2.0 * epsilon)
    else:
        mixed_restriction = rationalizable(empirical, 2.0 * epsilon, restrict=restriction)
    return PSPResult(
        empirical,
        radii,
        pure_equilibria,
        mixed_restriction,
        epsilon,
        consumed,
        tuple(trace),
        tuple(details) if keep_details else None,
    )
