"""Repeated stage games: mixed play versus a frequency-learning adversary.

The point demonstrated here: a pure strategy in a game without pure
equilibria is eventually read and punished by an opponent that merely
counts action frequencies, while an equilibrium mix concedes nothing
beyond sampling noise. The adversary observes actions only, never the
opposing policy object.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass
from pathlib import Path
from typing import NamedTuple, Union

import numpy as np

from .errors import InputError
from .games import MixedStrategy, NormalFormGame, game_value
from .rng import generator

__all__ = [
    "PurePolicy",
    "MixedPolicy",
    "FrequencyExploiter",
    "AgentPolicy",
    "RoundRecord",
    "MatchTrace",
    "MatchSummary",
    "ExploitabilityReport",
    "run_repeated",
    "exploitability_report",
]


@dataclass(frozen=True)
class PurePolicy:
    """Play one fixed action every round."""

    action: int


@dataclass(frozen=True)
class MixedPolicy:
    """Draw each round's action independently from a fixed mixed strategy."""

    strategy: MixedStrategy


@dataclass(frozen=True, eq=False)
class FrequencyExploiter:
    """Best-respond to the opponent's empirical action counts.

    ``virtual_counts`` (over the opponent's actions) seed the counts so the
    first round has a defined best response; ``None`` means one virtual
    observation per action. Exact-tie best responses are broken by the
    match's seeded uniforms.
    """

    virtual_counts: np.ndarray | None = None


AgentPolicy = Union[PurePolicy, MixedPolicy, FrequencyExploiter]


class RoundRecord(NamedTuple):
    round: int
    row_action: int
    col_action: int
    row_payoff: float
    col_payoff: float


@dataclass(frozen=True, eq=False)
class MatchTrace:
    """Per-round actions and payoffs of one repeated match."""

    row_actions: np.ndarray
    col_actions: np.ndarray
    row_payoffs: np.ndarray
    col_payoffs: np.ndarray
    seed: int

    @property
    def rounds(self) -> int:
        return int(self.row_actions.size)

    def records(self) -> list[RoundRecord]:
        # adding 0.0 folds the negative zeros produced by payoff negation
        return [
            RoundRecord(
                t,
                int(self.row_actions[t]),
                int(self.col_actions[t]),
                float(self.row_payoffs[t]) + 0.0,
                float(self.col_payoffs[t]) + 0.0,
            )
            for t in range(self.rounds)
        ]

    def write_csv(self, path: str | Path) -> None:
        with open(path, "w", newline="") as fh:
            writer = csv.writer(fh)
            writer.writerow(["round", "row_action", "col_action", "row_payoff", "col_payoff"])
            for rec in self.records():
                writer.writerow(
                    [rec.round, rec.row_action, rec.col_action, repr(rec.row_payoff), repr(rec.col_payoff)]
                )


@dataclass(frozen=True, eq=False)
class MatchSummary:
    avg_row_payoff: float
    avg_col_payoff: float
    row_frequencies: np.ndarray
    col_frequencies: np.ndarray


@dataclass(frozen=True, eq=False)
class ExploitabilityReport:
    """How much a row policy concedes to a frequency-learning column."""

    exploiter_avg_payoff: float
    policy_avg_payoff: float
    policy_frequencies: np.ndarray
    game_value: float | None
    payoff_gap: float | None
    rounds: int
    seed: int


class _Agent:
    """Resolved per-match state of one policy; consumes one uniform per round."""

    def __init__(self, policy: AgentPolicy, n_actions: int, n_opponent: int, side: str):
        self.policy = policy
        if isinstance(policy, PurePolicy):
            if not 0 <= policy.action < n_actions:
                raise InputError(
                    f"{side} pure action {policy.action} out of range for {n_actions} actions"
                )
        elif isinstance(policy, MixedPolicy):
            if policy.strategy.n_actions != n_actions:
                raise InputError(
                    f"{side} mixed strategy has {policy.strategy.n_actions} entries, "
                    f"game offers {n_actions} actions"
                )
            self.cum = np.cumsum(policy.strategy.probs)
        elif isinstance(policy, FrequencyExploiter):
            counts = policy.virtual_counts
            counts = np.ones(n_opponent) if counts is None else np.asarray(counts, dtype=float)
            if counts.shape != (n_opponent,) or np.any(counts < 0) or counts.sum() <= 0:
                raise InputError(
                    f"{side} exploiter needs {n_opponent} non-negative virtual counts, not all zero"
                )
            self.opponent_counts = counts.copy()
        else:
            raise InputError(f"unknown policy type {type(policy).__name__}")

    def act(self, payoff_vs_opponent: np.ndarray, u: float) -> int:
        if isinstance(self.policy, PurePolicy):
            return self.policy.action
        if isinstance(self.policy, MixedPolicy):
            return int(min(np.searchsorted(self.cum, u, side="right"), self.cum.size - 1))
        scores = payoff_vs_opponent @ self.opponent_counts
        ties = np.flatnonzero(scores == scores.max())
        return int(ties[int(u * ties.size)]) if ties.size > 1 else int(ties[0])

    def observe(self, opponent_action: int) -> None:
        if isinstance(self.policy, FrequencyExploiter):
            self.opponent_counts[opponent_action] += 1


def run_repeated(
    game: NormalFormGame,
    row: AgentPolicy,
    col: AgentPolicy,
    rounds: int,
    seed: int,
) -> tuple[MatchTrace, MatchSummary]:
    """Play the stage game ``rounds`` times; identical seeds replay identically.

    Sub-streams 0 and 1 of ``seed`` give the row and column player one
    uniform per round (ignored by policies that do not need randomness), so
    the trace does not depend on what the other player's policy consumes.
    """
    if rounds < 1:
        raise InputError(f"rounds must be >= 1, got {rounds}")
    row_agent = _Agent(row, game.row_actions, game.col_actions, "row")
    col_agent = _Agent(col, game.col_actions, game.row_actions, "col")
    u_row = generator(seed, 0).random(rounds)
    u_col = generator(seed, 1).random(rounds)
    A = game.row_payoff
    B = game.col_payoff
    # the column exploiter scores its own actions against row counts: B^T
    BT = B.T.copy()
    row_actions = np.empty(rounds, dtype=np.int64)
    col_actions = np.empty(rounds, dtype=np.int64)
    for t in range(rounds):
        i = row_agent.act(A, u_row[t])
        j = col_agent.act(BT, u_col[t])
        row_actions[t] = i
        col_actions[t] = j
        row_agent.observe(j)
        col_agent.observe(i)
    row_payoffs = A[row_actions, col_actions]
    col_payoffs = B[row_actions, col_actions]
    trace = MatchTrace(row_actions, col_actions, row_payoffs, col_payoffs, seed)
    summary = MatchSummary(
        avg_row_payoff=float(np.sum(row_payoffs) / rounds),
        avg_col_payoff=float(np.sum(col_payoffs) / rounds),
        row_frequencies=np.bincount(row_actions, minlength=game.row_actions) / rounds,
        col_frequencies=np.bincount(col_actions, minlength=game.col_actions) / rounds,
    )
    return trace, summary


def exploitability_report(
    game: NormalFormGame,
    policy: AgentPolicy,
    rounds: int,
    seed: int,
) -> ExploitabilityReport:
    """Run ``policy`` as the row player against a frequency exploiter column.

    For zero-sum games the report includes the game value and the gap
    ``value - policy payoff``: near zero for an equilibrium mix, large and
    positive for an exploitable pure strategy.
    """
    _, summary = run_repeated(game, policy, FrequencyExploiter(), rounds, seed)
    value = game_value(game) if game.zero_sum else None
    gap = (value - summary.avg_row_payoff) if value is not None else None
    return ExploitabilityReport(
        exploiter_avg_payoff=summary.avg_col_payoff,
        policy_avg_payoff=summary.avg_row_payoff,
        policy_frequencies=summary.row_frequencies,
        game_value=value,
        payoff_gap=gap,
        rounds=rounds,
        seed=seed,
    )
