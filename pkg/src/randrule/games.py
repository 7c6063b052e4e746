"""Two-player normal-form games and their mixed-strategy equilibria.

Covers the dilemma games where pure strategies fail: matching pennies,
rock-paper-scissors, and the harm-allocation game in which a decision-maker
must hurt one of two parties without knowing who is at fault. 2x2 zero-sum
games are solved exactly by the indifference equations; larger zero-sum
games are approximated by fictitious play.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .errors import InputError
from .jsonio import read_json_source
from .rng import generator

__all__ = [
    "NormalFormGame",
    "MixedStrategy",
    "MixedProfile",
    "HarmScenario",
    "ZeroSumSolution",
    "FictitiousPlayResult",
    "zero_sum_game",
    "build_matching_pennies",
    "build_rock_paper_scissors",
    "build_harm_game",
    "expected_payoff",
    "find_pure_nash",
    "solve_2x2_zero_sum",
    "is_nash",
    "fictitious_play",
    "game_value",
    "game_from_dict",
    "load_game",
]

STRATEGY_SUM_TOL = 1e-12
NASH_TOL = 1e-9


def _payoff_array(values, side: str) -> np.ndarray:
    arr = np.asarray(values, dtype=float)
    if arr.ndim != 2 or not np.all(np.isfinite(arr)):
        raise InputError(f"{side} payoff must be a finite 2-D matrix")
    arr = arr.copy()
    arr.flags.writeable = False
    return arr


@dataclass(frozen=True, eq=False)
class NormalFormGame:
    """Payoff matrices for the row and column player, shape (rows, cols)."""

    row_payoff: np.ndarray
    col_payoff: np.ndarray
    zero_sum: bool = False

    def __post_init__(self) -> None:
        row = _payoff_array(self.row_payoff, "row")
        col = _payoff_array(self.col_payoff, "column")
        if row.shape != col.shape:
            raise InputError(f"payoff shapes differ: {row.shape} vs {col.shape}")
        if self.zero_sum and not np.array_equal(col, -row):
            raise InputError("zero_sum games need col_payoff == -row_payoff")
        object.__setattr__(self, "row_payoff", row)
        object.__setattr__(self, "col_payoff", col)

    @property
    def row_actions(self) -> int:
        return int(self.row_payoff.shape[0])

    @property
    def col_actions(self) -> int:
        return int(self.row_payoff.shape[1])


def zero_sum_game(row_payoff) -> NormalFormGame:
    """Game where the column player's payoff is the negation of the row's."""
    row = np.asarray(row_payoff, dtype=float)
    return NormalFormGame(row, -row, zero_sum=True)


@dataclass(frozen=True, eq=False)
class MixedStrategy:
    """Probability distribution over one player's pure actions."""

    probs: np.ndarray

    def __post_init__(self) -> None:
        p = np.asarray(self.probs, dtype=float)
        if p.ndim != 1 or p.size == 0:
            raise InputError("a mixed strategy is a non-empty probability vector")
        if np.any(p < 0) or abs(p.sum() - 1.0) > STRATEGY_SUM_TOL:
            raise InputError(f"strategy entries must be >= 0 and sum to 1, got {p}")
        p = p.copy()
        p.flags.writeable = False
        object.__setattr__(self, "probs", p)

    @classmethod
    def pure(cls, action: int, n_actions: int) -> "MixedStrategy":
        if not 0 <= action < n_actions:
            raise InputError(f"action {action} out of range for {n_actions} actions")
        p = np.zeros(n_actions)
        p[action] = 1.0
        return cls(p)

    @classmethod
    def uniform(cls, n_actions: int) -> "MixedStrategy":
        return cls(np.full(n_actions, 1.0 / n_actions))

    @property
    def n_actions(self) -> int:
        return int(self.probs.size)

    def is_fully_mixed(self) -> bool:
        return bool(np.all(self.probs > 0.0))


@dataclass(frozen=True)
class MixedProfile:
    """One strategy per player."""

    row: MixedStrategy
    col: MixedStrategy


@dataclass(frozen=True)
class HarmScenario:
    """Merit and headcount of the two parties a decision-maker may harm."""

    m_x: float
    v_x: float
    m_y: float
    v_y: float

    def __post_init__(self) -> None:
        if self.m_x < 0 or self.m_y < 0:
            raise InputError("merit values must be non-negative")
        if self.v_x <= 0 or self.v_y <= 0:
            raise InputError("worth values must be positive")
        if self.m_x * self.v_x + self.m_y * self.v_y <= 0:
            raise InputError("at least one merit-worth product must be positive")


@dataclass(frozen=True)
class ZeroSumSolution:
    profile: MixedProfile
    value: float


@dataclass(frozen=True, eq=False)
class FictitiousPlayResult:
    profile: MixedProfile
    value_estimate: float
    iterations: int


def build_matching_pennies() -> NormalFormGame:
    """The even player (rows) wins +1 when the pennies match, -1 otherwise."""
    return zero_sum_game([[1.0, -1.0], [-1.0, 1.0]])


def build_rock_paper_scissors() -> NormalFormGame:
    """Actions ordered (rock, paper, scissors); win +1, tie 0, loss -1."""
    return zero_sum_game(
        [
            [0.0, -1.0, 1.0],
            [1.0, 0.0, -1.0],
            [-1.0, 1.0, 0.0],
        ]
    )


def build_harm_game(scenario: HarmScenario) -> NormalFormGame:
    """Harm-allocation game for the decision-maker (rows) vs the environment.

    Rows are (harm X, harm Y); columns are (X at fault, Y at fault). Harming
    the party at fault costs nothing; harming the innocent party costs their
    merit times their worth. The environment collects the negation.
    """
    return zero_sum_game(
        [
            [0.0, -(scenario.m_x * scenario.v_x)],
            [-(scenario.m_y * scenario.v_y), 0.0],
        ]
    )


def _check_profile(game: NormalFormGame, profile: MixedProfile) -> None:
    if profile.row.n_actions != game.row_actions or profile.col.n_actions != game.col_actions:
        raise InputError(
            f"profile dimensions ({profile.row.n_actions}, {profile.col.n_actions}) do not "
            f"match the game ({game.row_actions}, {game.col_actions})"
        )


def expected_payoff(game: NormalFormGame, profile: MixedProfile) -> tuple[float, float]:
    """Bilinear payoffs (row, col) for a mixed profile."""
    _check_profile(game, profile)
    r = profile.row.probs
    c = profile.col.probs
    return float(r @ game.row_payoff @ c), float(r @ game.col_payoff @ c)


def find_pure_nash(game: NormalFormGame) -> list[tuple[int, int]]:
    """All pure profiles where each action is a best response to the other.

    Returned in row-major order; empty when no pure equilibrium exists.
    """
    row_best = game.row_payoff >= game.row_payoff.max(axis=0, keepdims=True)
    col_best = game.col_payoff >= game.col_payoff.max(axis=1, keepdims=True)
    cells = np.argwhere(row_best & col_best)
    return [(int(i), int(j)) for i, j in cells]


def solve_2x2_zero_sum(game: NormalFormGame) -> ZeroSumSolution:
    """Exact equilibrium of a 2x2 zero-sum game.

    A pure saddle point is returned as a degenerate mixed profile; otherwise
    the unique fully mixed equilibrium follows from the indifference
    equations. The result always passes :func:`is_nash` at 1e-9.
    """
    if game.row_actions != 2 or game.col_actions != 2:
        raise InputError("exact solver only handles 2x2 games")
    if not game.zero_sum:
        raise InputError("exact solver only handles zero-sum games")
    saddles = find_pure_nash(game)
    if saddles:
        i, j = saddles[0]
        profile = MixedProfile(MixedStrategy.pure(i, 2), MixedStrategy.pure(j, 2))
        solution = ZeroSumSolution(profile, float(game.row_payoff[i, j]))
    else:
        (a, b), (c, d) = game.row_payoff
        denom = (a - b) - c + d
        p = (d - c) / denom
        q = (d - b) / denom
        value = (a * d - b * c) / denom
        profile = MixedProfile(
            MixedStrategy(np.array([p, 1.0 - p])),
            MixedStrategy(np.array([q, 1.0 - q])),
        )
        solution = ZeroSumSolution(profile, float(value))
    if not is_nash(game, solution.profile, NASH_TOL):
        raise ArithmeticError("indifference solution failed the equilibrium check")
    return solution


def is_nash(game: NormalFormGame, profile: MixedProfile, tol: float = NASH_TOL) -> bool:
    """True iff no player gains more than ``tol`` by any pure deviation.

    For a fully mixed strategy the supported pure payoffs must also be
    indifferent within ``tol``.
    """
    if tol <= 0:
        raise InputError("tolerance must be positive")
    _check_profile(game, profile)
    row_purepay = game.row_payoff @ profile.col.probs
    col_purepay = profile.row.probs @ game.col_payoff
    if row_purepay.max() - profile.row.probs @ row_purepay > tol:
        return False
    if col_purepay.max() - col_purepay @ profile.col.probs > tol:
        return False
    if profile.row.is_fully_mixed() and row_purepay.max() - row_purepay.min() > tol:
        return False
    if profile.col.is_fully_mixed() and col_purepay.max() - col_purepay.min() > tol:
        return False
    return True


def _pick(scores: np.ndarray, u: float) -> int:
    """Index of the maximal score; exact ties resolved by the uniform ``u``."""
    ties = np.flatnonzero(scores == scores.max())
    if ties.size == 1:
        return int(ties[0])
    return int(ties[int(u * ties.size)])


def fictitious_play(game: NormalFormGame, iterations: int, tie_seed: int = 0) -> FictitiousPlayResult:
    """Best-response dynamics against empirical opponent frequencies.

    Beliefs start with one virtual observation per opponent action, so the
    first best response is defined; exact score ties are broken by a stream
    of uniforms from ``tie_seed``. For zero-sum games the average payoff
    converges to the game value and the empirical frequencies approach an
    equilibrium profile.
    """
    if not game.zero_sum:
        raise InputError("fictitious play is only supported for zero-sum games")
    if iterations < 1:
        raise InputError(f"iterations must be >= 1, got {iterations}")
    A = game.row_payoff
    B = game.col_payoff
    ties = generator(tie_seed).random(2 * iterations)
    # cumulative payoff of each pure action against the opponent's counts
    row_scores = A.sum(axis=1)
    col_scores = B.sum(axis=0)
    row_counts = np.zeros(game.row_actions, dtype=np.int64)
    col_counts = np.zeros(game.col_actions, dtype=np.int64)
    total_payoff = 0.0
    for t in range(iterations):
        i = _pick(row_scores, ties[2 * t])
        j = _pick(col_scores, ties[2 * t + 1])
        row_counts[i] += 1
        col_counts[j] += 1
        total_payoff += A[i, j]
        row_scores += A[:, j]
        col_scores += B[i, :]
    profile = MixedProfile(
        MixedStrategy(row_counts / iterations),
        MixedStrategy(col_counts / iterations),
    )
    return FictitiousPlayResult(profile, total_payoff / iterations, iterations)


def game_value(game: NormalFormGame, iterations: int = 100_000, tie_seed: int = 0) -> float:
    """Row player's equilibrium payoff of a zero-sum game.

    Exact for 2x2 games and for antisymmetric square games (value 0 by
    symmetry); otherwise a fictitious-play estimate.
    """
    if not game.zero_sum:
        raise InputError("game value is defined here for zero-sum games only")
    if game.row_actions == 2 and game.col_actions == 2:
        return solve_2x2_zero_sum(game).value
    A = game.row_payoff
    if A.shape[0] == A.shape[1] and np.array_equal(A, -A.T):
        return 0.0
    return fictitious_play(game, iterations, tie_seed).value_estimate


def game_from_dict(obj: dict) -> NormalFormGame:
    """Build a game from its JSON form.

    Either ``{"row_payoff": [[...]], "col_payoff": [[...]]}`` or
    ``{"row_payoff": [[...]], "zero_sum": true}``.
    """
    if "row_payoff" not in obj:
        raise InputError("game document needs a row_payoff matrix")
    row = np.asarray(obj["row_payoff"], dtype=float)
    if obj.get("zero_sum"):
        if "col_payoff" in obj and not np.array_equal(
            np.asarray(obj["col_payoff"], dtype=float), -row
        ):
            raise InputError("document declares zero_sum but col_payoff != -row_payoff")
        return zero_sum_game(row)
    if "col_payoff" not in obj:
        raise InputError("game document needs col_payoff or zero_sum: true")
    return NormalFormGame(row, np.asarray(obj["col_payoff"], dtype=float))


def load_game(source: str | Path) -> NormalFormGame:
    """Load a game from a JSON file path or an inline JSON string."""
    return game_from_dict(read_json_source(source, "game"))
