"""Normal-form games and exact game-theoretic computations.

Games are dense: a utility tensor indexed by (player, pure strategy profile).
Profiles are linearized row-major over players, so the last player's strategy
index varies fastest. Everything here is deterministic and pure; all
comparisons against epsilon thresholds are inclusive (<=) with no extra
floating-point tolerance.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

Profile = tuple[int, ...]


@dataclass(frozen=True)
class NormalFormGame:
    """Dense normal-form game.

    utilities has shape [num_players, num_profiles] with the profile axis
    linearized row-major over per-player strategy indices.
    """

    strategy_counts: tuple[int, ...]
    utilities: np.ndarray

    def __post_init__(self):
        counts = tuple(int(k) for k in self.strategy_counts)
        object.__setattr__(self, "strategy_counts", counts)
        if not counts or any(k < 1 for k in counts):
            raise ValueError("every player needs at least one strategy")
        u = np.asarray(self.utilities, dtype=np.float64)
        expected = (len(counts), int(np.prod(counts)))
        if u.shape != expected:
            raise ValueError(f"utilities must have shape {expected}, got {u.shape}")
        if not np.all(np.isfinite(u)):
            raise ValueError("utilities must be finite")
        u = u.copy()
        u.setflags(write=False)
        object.__setattr__(self, "utilities", u)

    @property
    def num_players(self) -> int:
        return len(self.strategy_counts)

    @property
    def num_profiles(self) -> int:
        return self.utilities.shape[1]

    def tensor(self, p: int) -> np.ndarray:
        """Player p's utilities as a tensor with one axis per player."""
        return self.utilities[p].reshape(self.strategy_counts)

    def profiles(self) -> list[Profile]:
        return [self.profile_of_index(j) for j in range(self.num_profiles)]

    def profile_index(self, profile: Sequence[int]) -> int:
        s = tuple(int(x) for x in profile)
        if len(s) != self.num_players:
            raise IndexError("profile length does not match player count")
        for p, (x, k) in enumerate(zip(s, self.strategy_counts)):
            if not 0 <= x < k:
                raise IndexError(f"strategy {x} out of range for player {p}")
        return int(np.ravel_multi_index(s, self.strategy_counts))

    def profile_of_index(self, index: int) -> Profile:
        if not 0 <= index < self.num_profiles:
            raise IndexError("profile index out of range")
        return tuple(int(x) for x in np.unravel_index(index, self.strategy_counts))


@dataclass(frozen=True)
class IndexSet:
    """Ordered, duplicate-free set of (player, profile-index) pairs."""

    players: np.ndarray
    profiles: np.ndarray

    def __post_init__(self):
        p = np.asarray(self.players, dtype=np.int64).copy()
        s = np.asarray(self.profiles, dtype=np.int64).copy()
        if p.shape != s.shape or p.ndim != 1:
            raise ValueError("players and profiles must be 1-d arrays of equal length")
        p.setflags(write=False)
        s.setflags(write=False)
        object.__setattr__(self, "players", p)
        object.__setattr__(self, "profiles", s)

    def __len__(self) -> int:
        return self.players.shape[0]

    def pairs(self) -> list[tuple[int, int]]:
        return list(zip(self.players.tolist(), self.profiles.tolist()))

    def validate_for(self, game: NormalFormGame) -> None:
        n = len(self)
        if n == 0:
            return
        if self.players.min() < 0 or self.players.max() >= game.num_players:
            raise ValueError("player index out of range")
        if self.profiles.min() < 0 or self.profiles.max() >= game.num_profiles:
            raise ValueError("profile index out of range")
        flat = self.players * game.num_profiles + self.profiles
        if np.unique(flat).size != n:
            raise ValueError("duplicate (player, profile) pairs")

    def to_mask(self, game: NormalFormGame) -> np.ndarray:
        mask = np.zeros((game.num_players, game.num_profiles), dtype=bool)
        mask[self.players, self.profiles] = True
        return mask

    @staticmethod
    def from_mask(mask: np.ndarray) -> "IndexSet":
        players, profiles = np.nonzero(mask)
        return IndexSet(players, profiles)

    @staticmethod
    def from_pairs(pairs: Iterable[tuple[int, int]]) -> "IndexSet":
        pairs = list(pairs)
        players = np.array([p for p, _ in pairs], dtype=np.int64)
        profiles = np.array([s for _, s in pairs], dtype=np.int64)
        return IndexSet(players, profiles)

    @staticmethod
    def full(game: NormalFormGame) -> "IndexSet":
        players = np.repeat(np.arange(game.num_players), game.num_profiles)
        profiles = np.tile(np.arange(game.num_profiles), game.num_players)
        return IndexSet(players, profiles)


def game_size(game: NormalFormGame) -> int:
    """Number of utility parameters: players times profiles."""
    return game.num_players * game.num_profiles


def utility(game: NormalFormGame, p: int, profile: Sequence[int]) -> float:
    if not 0 <= p < game.num_players:
        raise IndexError("player index out of range")
    return float(game.utilities[p, game.profile_index(profile)])


def validate_mixed_profile(game: NormalFormGame, mixed: Sequence[np.ndarray]) -> list[np.ndarray]:
    if len(mixed) != game.num_players:
        raise ValueError("one probability vector per player required")
    out = []
    for p, (vec, k) in enumerate(zip(mixed, game.strategy_counts)):
        v = np.asarray(vec, dtype=np.float64)
        if v.shape != (k,):
            raise ValueError(f"player {p} probability vector must have length {k}")
        if np.any(v < 0) or abs(float(v.sum()) - 1.0) > 1e-12:
            raise ValueError(f"player {p} probabilities must be nonnegative and sum to 1")
        out.append(v)
    return out


def mixed_utility(game: NormalFormGame, mixed: Sequence[np.ndarray]) -> np.ndarray:
    """Expected utility of each player under a product mixed profile."""
    probs = validate_mixed_profile(game, mixed)
    out = np.empty(game.num_players)
    for p in range(game.num_players):
        v = game.tensor(p)
        for q in range(game.num_players - 1, -1, -1):
            v = np.tensordot(v, probs[q], axes=([q], [0])) if v.ndim > 1 else v @ probs[q]
        out[p] = v
    return out


def regret_table(game: NormalFormGame) -> np.ndarray:
    """Pure regret of every (player, profile): best unilateral gain, >= 0."""
    out = np.empty_like(game.utilities)
    for p in range(game.num_players):
        t = game.tensor(p)
        best = t.max(axis=p, keepdims=True)
        out[p] = (best - t).reshape(-1)
    return out


def pure_regret(game: NormalFormGame, p: int, profile: Sequence[int]) -> float:
    if not 0 <= p < game.num_players:
        raise IndexError("player index out of range")
    j = game.profile_index(profile)
    t = game.tensor(p)
    best = (t.max(axis=p, keepdims=True) + np.zeros_like(t)).reshape(-1)
    return float(best[j] - game.utilities[p, j])


def nash_mask(game: NormalFormGame, eps: float) -> np.ndarray:
    """Boolean mask over profiles: every player's regret <= eps (inclusive)."""
    if eps < 0:
        raise ValueError("eps must be nonnegative")
    return (regret_table(game) <= eps).all(axis=0)


def pure_eps_nash(game: NormalFormGame, eps: float) -> list[Profile]:
    """All pure strategy profiles whose regret is at most eps for everyone."""
    return [game.profile_of_index(j) for j in np.nonzero(nash_mask(game, eps))[0]]


def eps_dominates(game: NormalFormGame, p: int, s: int, s_other: int, eps: float) -> bool:
    """True when strategy s beats s_other by at least eps for player p in
    every opponent context (inclusive comparison).
    """
    if not 0 <= p < game.num_players:
        raise IndexError("player index out of range")
    k = game.strategy_counts[p]
    if not (0 <= s < k and 0 <= s_other < k):
        raise IndexError("strategy index out of range")
    t = game.tensor(p)
    a = np.take(t, s, axis=p)
    b = np.take(t, s_other, axis=p)
    return bool(np.all(a >= b + eps))


def rationalizable(
    game: NormalFormGame,
    eps: float,
    restrict: Sequence[Sequence[int]] | None = None,
) -> list[list[int]]:
    """Per-player strategies surviving iterated elimination of eps-dominated
    strategies, computed on the game restricted to ``restrict`` (default: all).

    Rounds are simultaneous: every strategy dominated by some surviving
    strategy of the same player is removed at once. A strategy is only
    removed for a dominator that it does not itself dominate back, so
    mutually dominant (payoff-identical) strategies are kept and each player
    always retains at least one strategy.
    """
    if eps < 0:
        raise ValueError("eps must be nonnegative")
    if restrict is None:
        alive = [list(range(k)) for k in game.strategy_counts]
    else:
        alive = [sorted(set(int(s) for s in strats)) for strats in restrict]
        for p, strats in enumerate(alive):
            if not strats or strats[0] < 0 or strats[-1] >= game.strategy_counts[p]:
                raise ValueError("restriction invalid for this game")

    while True:
        removed_any = False
        doomed: list[set[int]] = []
        for p in range(game.num_players):
            t = game.tensor(p)
            # slice opponents down to currently alive strategies
            for q in range(game.num_players):
                if q != p:
                    t = np.take(t, alive[q], axis=q)
            slices = {s: np.take(t, s, axis=p) for s in alive[p]}
            dead = set()
            for s_other in alive[p]:
                for s in alive[p]:
                    if s == s_other:
                        continue
                    dom = np.all(slices[s] >= slices[s_other] + eps)
                    back = np.all(slices[s_other] >= slices[s] + eps)
                    if dom and not back:
                        dead.add(s_other)
                        break
            doomed.append(dead)
        for p, dead in enumerate(doomed):
            if dead:
                removed_any = True
                alive[p] = [s for s in alive[p] if s not in dead]
        if not removed_any:
            return alive


def welfare(game: NormalFormGame, profile: Sequence[int]) -> float:
    """Utilitarian welfare: sum of all players' utilities at the profile."""
    return float(game.utilities[:, game.profile_index(profile)].sum())


def welfare_table(game: NormalFormGame) -> np.ndarray:
    return game.utilities.sum(axis=0)


def pessimal_value(game: NormalFormGame, p: int, s: int) -> float:
    """Worst utility player p can receive while committed to strategy s."""
    if not 0 <= p < game.num_players:
        raise IndexError("player index out of range")
    if not 0 <= s < game.strategy_counts[p]:
        raise IndexError("strategy index out of range")
    return float(np.take(game.tensor(p), s, axis=p).min())


def maximin_value(game: NormalFormGame, p: int) -> float:
    if not 0 <= p < game.num_players:
        raise IndexError("player index out of range")
    t = game.tensor(p)
    axes = tuple(q for q in range(game.num_players) if q != p)
    pessimal = t.min(axis=axes) if axes else t
    return float(pessimal.max())


def _check_same_shape(g1: NormalFormGame, g2: NormalFormGame) -> None:
    if g1.strategy_counts != g2.strategy_counts:
        raise ValueError("games must share players and strategy counts")


def linf_distance(g1: NormalFormGame, g2: NormalFormGame) -> float:
    """Largest absolute utility difference over all players and profiles."""
    _check_same_shape(g1, g2)
    return float(np.abs(g1.utilities - g2.utilities).max())


def check_containment(g_a: NormalFormGame, g_b: NormalFormGame, eps: float) -> bool:
    """Nash(g_a) within Nash_{2eps}(g_b) within Nash_{4eps}(g_a), by
    exhaustive enumeration of pure profiles.
    """
    _check_same_shape(g_a, g_b)
    nash_a = nash_mask(g_a, 0.0)
    nash_b2 = nash_mask(g_b, 2.0 * eps)
    nash_a4 = nash_mask(g_a, 4.0 * eps)
    first = bool(np.all(nash_b2[nash_a]))
    second = bool(np.all(nash_a4[nash_b2]))
    return first and second


def game_to_json(game: NormalFormGame) -> str:
    payload = {
        "players": game.num_players,
        "strategies": list(game.strategy_counts),
        "utilities": game.utilities.reshape(-1).tolist(),
    }
    return json.dumps(payload)


def game_from_json(text: str) -> NormalFormGame:
    payload = json.loads(text)
    players = int(payload["players"])
    counts = [int(k) for k in payload["strategies"]]
    if players != len(counts):
        raise ValueError("players field does not match strategies length")
    utilities = np.asarray(payload["utilities"], dtype=np.float64)
    expected = players * math.prod(counts)
    if utilities.shape != (expected,):
        raise ValueError(f"utilities must hold exactly {expected} values")
    return NormalFormGame(tuple(counts), utilities.reshape(players, -1))
