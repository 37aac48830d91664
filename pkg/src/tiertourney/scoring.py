"""Tier scores and the tie-break cascade.

The score of a player within a tier is (wins - losses) / games, kept as an
exact rational so that equal scores with different denominators (2/7 vs 4/14)
compare equal and ties are never misclassified by float rounding.

Ties are broken by four rules applied in order:
  (i)   head-to-head winner within the group,
  (ii)  more wins,
  (iii) lower mean move count over won games,
  (iv)  a draw from the caller's random stream.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from functools import cmp_to_key
from math import inf
from typing import Iterable, Protocol, Sequence

from .core.errors import (
    InconsistentScores,
    MixedPair,
    NoGames,
    SelfOpponent,
)
from .core.types import GameRecord, GameResult


@dataclass(frozen=True)
class TierScore:
    """Exact (wins - losses) / games. Numerator and denominator are kept
    as entered, so 2/7 and 4/14 are equal but still display differently."""

    num: int
    den: int

    def __post_init__(self) -> None:
        if self.den <= 0:
            raise NoGames("tier score needs at least one game")
        if not -self.den <= self.num <= self.den:
            raise ValueError(f"score {self.num}/{self.den} outside [-1, +1]")

    def as_fraction(self) -> Fraction:
        return Fraction(self.num, self.den)

    def __float__(self) -> float:
        return self.num / self.den

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, TierScore):
            return NotImplemented
        return self.as_fraction() == other.as_fraction()

    def __hash__(self) -> int:
        return hash(self.as_fraction())

    def __lt__(self, other: TierScore) -> bool:
        return self.as_fraction() < other.as_fraction()

    def __le__(self, other: TierScore) -> bool:
        return self.as_fraction() <= other.as_fraction()

    def __gt__(self, other: TierScore) -> bool:
        return self.as_fraction() > other.as_fraction()

    def __ge__(self, other: TierScore) -> bool:
        return self.as_fraction() >= other.as_fraction()


@dataclass(frozen=True)
class ScoreLine:
    """Per-player tallies within one group.

    moves_to_win holds one entry per won game, in game order. A zero entry
    marks a win by forfeit; those are skipped when averaging for rule (iii).
    """

    player_id: str
    wins: int
    losses: int
    draws: int
    moves_to_win: tuple[int, ...] = ()

    def __post_init__(self) -> None:
        if len(self.moves_to_win) != self.wins:
            raise ValueError("moves_to_win must have one entry per win")

    @property
    def games(self) -> int:
        return self.wins + self.losses + self.draws

    def score(self) -> TierScore:
        return tier_score(self.wins, self.losses, self.draws)

    def mean_moves_to_win(self) -> Fraction | float:
        """Average moves over genuinely played wins; +inf when there are none."""
        played = [m for m in self.moves_to_win if m > 0]
        if not played:
            return inf
        return Fraction(sum(played), len(played))


def tier_score(wins: int, losses: int, draws: int) -> TierScore:
    if min(wins, losses, draws) < 0:
        raise ValueError("negative counts")
    games = wins + losses + draws
    if games == 0:
        raise NoGames("no games played")
    return TierScore(num=wins - losses, den=games)


def score_lines(games: Iterable[GameRecord], members: Sequence[str]) -> list[ScoreLine]:
    """Tally one ScoreLine per member from the given games."""
    wins: dict[str, int] = {m: 0 for m in members}
    losses: dict[str, int] = {m: 0 for m in members}
    draws: dict[str, int] = {m: 0 for m in members}
    moves: dict[str, list[int]] = {m: [] for m in members}
    for g in games:
        if g.white_id not in wins or g.black_id not in wins:
            raise InconsistentScores(f"game {g.white_id} vs {g.black_id} outside the member list")
        if g.result is GameResult.DRAW:
            draws[g.white_id] += 1
            draws[g.black_id] += 1
            continue
        winner, loser = g.winner_id(), g.loser_id()
        wins[winner] += 1
        losses[loser] += 1
        moves[winner].append(0 if g.forfeit else g.move_count)
    return [
        ScoreLine(
            player_id=m,
            wins=wins[m],
            losses=losses[m],
            draws=draws[m],
            moves_to_win=tuple(moves[m]),
        )
        for m in members
    ]


def pairwise_ts(a_id: str, b_id: str, games: Iterable[GameRecord]) -> TierScore:
    """Score of a_id against b_id over their mutual games; 0/1 when unplayed."""
    if a_id == b_id:
        raise SelfOpponent(a_id)
    a_wins = b_wins = total = 0
    for g in games:
        pair = {g.white_id, g.black_id}
        if pair != {a_id, b_id}:
            raise MixedPair(f"game {g.white_id} vs {g.black_id} is not between {a_id} and {b_id}")
        total += 1
        if g.result is GameResult.DRAW:
            continue
        if g.winner_id() == a_id:
            a_wins += 1
        else:
            b_wins += 1
    if total == 0:
        return TierScore(num=0, den=1)
    return TierScore(num=a_wins - b_wins, den=total)


class HeadToHeadSource(Protocol):
    def games_between(self, a_id: str, b_id: str) -> list[GameRecord]: ...


def mean_pairwise_ts(player_id: str, opponents: Sequence[str], db: HeadToHeadSource) -> Fraction:
    """Mean pairwise score against every listed opponent, unplayed pairs
    contributing zero."""
    if not opponents:
        raise ValueError("no opponents listed")
    if player_id in opponents:
        raise SelfOpponent(player_id)
    total = Fraction(0)
    for opp in opponents:
        total += pairwise_ts(player_id, opp, db.games_between(player_id, opp)).as_fraction()
    return total / len(opponents)


# --- ranking ----------------------------------------------------------------------


@dataclass(frozen=True)
class RankedRow:
    player_id: str
    score: TierScore
    line: ScoreLine
    rule: str  # "score" or the rule ("i".."iv") separating this row from the one above


@dataclass(frozen=True)
class RankedStanding:
    rows: tuple[RankedRow, ...]
    # adjacent pairs whose final order came down to the random draw
    random_pairs: tuple[tuple[str, str], ...] = ()


def _net_wins(a_id: str, b_id: str, games: Sequence[GameRecord]) -> int:
    """Decisive-game balance between two players: positive favors a_id."""
    net = 0
    for g in games:
        if {g.white_id, g.black_id} != {a_id, b_id} or g.result is GameResult.DRAW:
            continue
        net += 1 if g.winner_id() == a_id else -1
    return net


def head_to_head_blocked(tied: Sequence[str], games: Sequence[GameRecord]) -> set[frozenset[str]]:
    """Pairs inside a rule (i) cycle, where the rule is declared inapplicable.

    Builds the beats-graph restricted to the tied set and marks every pair
    that shares a strongly connected component of size > 1.
    """
    index = {pid: k for k, pid in enumerate(tied)}
    edges: dict[str, set[str]] = {pid: set() for pid in tied}
    for a in tied:
        for b in tied:
            if index[a] < index[b]:
                net = _net_wins(a, b, games)
                if net > 0:
                    edges[a].add(b)
                elif net < 0:
                    edges[b].add(a)

    # Tarjan over a graph of at most a group's size; recursion depth is safe.
    counter = [0]
    low: dict[str, int] = {}
    num: dict[str, int] = {}
    stack: list[str] = []
    on_stack: set[str] = set()
    blocked: set[frozenset[str]] = set()

    def strongconnect(v: str) -> None:
        num[v] = low[v] = counter[0]
        counter[0] += 1
        stack.append(v)
        on_stack.add(v)
        for w in edges[v]:
            if w not in num:
                strongconnect(w)
                low[v] = min(low[v], low[w])
            elif w in on_stack:
                low[v] = min(low[v], num[w])
        if low[v] == num[v]:
            component = []
            while True:
                w = stack.pop()
                on_stack.discard(w)
                component.append(w)
                if w == v:
                    break
            if len(component) > 1:
                for i, a in enumerate(component):
                    for b in component[i + 1:]:
                        blocked.add(frozenset((a, b)))

    for v in tied:
        if v not in num:
            strongconnect(v)
    return blocked


def compare_tied(
    a: ScoreLine,
    b: ScoreLine,
    games: Sequence[GameRecord],
    blocked: set[frozenset[str]],
    priority: dict[str, int],
) -> tuple[int, str]:
    """Order two score-tied players. Returns (sign, rule): sign < 0 puts a first.

    games supplies the head-to-head record for rule (i); pass an empty list
    when the two never shared a group and the cascade starts at rule (ii).
    """
    if frozenset((a.player_id, b.player_id)) not in blocked:
        net = _net_wins(a.player_id, b.player_id, games)
        if net:
            return (-1 if net > 0 else 1, "i")
    if a.wins != b.wins:
        return (-1 if a.wins > b.wins else 1, "ii")
    mean_a, mean_b = a.mean_moves_to_win(), b.mean_moves_to_win()
    if mean_a != mean_b:
        return (-1 if mean_a < mean_b else 1, "iii")
    return (-1 if priority[a.player_id] < priority[b.player_id] else 1, "iv")


def rank_group(
    scores: Sequence[ScoreLine],
    games: Sequence[GameRecord],
    rng: random.Random,
) -> RankedStanding:
    """Strictly order a group by score, then by the tie-break cascade.

    The rng is consumed only when a score tie exists: one shuffle per tied
    set, giving each tied player a random priority used by rule (iv).
    """
    by_id = {line.player_id: line for line in scores}
    if len(by_id) != len(scores):
        raise InconsistentScores("duplicate player in score list")

    recomputed = {line.player_id: line for line in score_lines(games, sorted(by_id))}
    for line in scores:
        fresh = recomputed[line.player_id]
        same = (
            line.wins == fresh.wins
            and line.losses == fresh.losses
            and line.draws == fresh.draws
            and sorted(line.moves_to_win) == sorted(fresh.moves_to_win)
        )
        if not same:
            raise InconsistentScores(f"score line for {line.player_id} disagrees with the games")

    clusters: dict[Fraction, list[ScoreLine]] = {}
    for line in scores:
        clusters.setdefault(line.score().as_fraction(), []).append(line)

    ordered: list[ScoreLine] = []
    cluster_meta: dict[str, tuple[set[frozenset[str]], dict[str, int]]] = {}
    for value in sorted(clusters, reverse=True):
        tied = sorted(clusters[value], key=lambda ln: ln.player_id)
        if len(tied) == 1:
            ordered.extend(tied)
            continue
        ids = [ln.player_id for ln in tied]
        shuffled = ids[:]
        rng.shuffle(shuffled)
        priority = {pid: k for k, pid in enumerate(shuffled)}
        blocked = head_to_head_blocked(ids, games)

        def cmp(x: ScoreLine, y: ScoreLine) -> int:
            return compare_tied(x, y, games, blocked, priority)[0]

        tied.sort(key=cmp_to_key(cmp))
        for ln in tied:
            cluster_meta[ln.player_id] = (blocked, priority)
        ordered.extend(tied)

    rows: list[RankedRow] = []
    random_pairs: list[tuple[str, str]] = []
    prev: ScoreLine | None = None
    for line in ordered:
        rule = "score"
        if prev is not None and prev.score() == line.score():
            blocked, priority = cluster_meta[line.player_id]
            _, rule = compare_tied(prev, line, games, blocked, priority)
            if rule == "iv":
                random_pairs.append((prev.player_id, line.player_id))
        rows.append(RankedRow(player_id=line.player_id, score=line.score(), line=line, rule=rule))
        prev = line
    return RankedStanding(rows=tuple(rows), random_pairs=tuple(random_pairs))
