"""Tier assignment by rating and balanced splitting of oversized tiers.

Splitting minimizes, per extracted group, the distance between the group's
mean rating and the full tier's mean. Ratings are integers, so minimizing
|mean(S) - target| at fixed size k is the same as minimizing
|sum(S) - k*target|, which an exact subset-sum count table solves without
enumerating the (possibly tens of millions of) candidate subsets. When the
candidate count is small the enumeration path is used directly; both paths
pick uniformly among co-minimizers from the caller's random stream.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Sequence

from .core.errors import IndivisibleTier, PoolTooSmall
from .core.types import Player, TournamentConfig

# below this many candidate subsets, brute force beats building the table
ENUMERATION_LIMIT = 100_000


def count_subsets(n: int, k: int) -> int:
    if not 0 <= k <= n:
        raise ValueError(f"need 0 <= k <= n, got n={n} k={k}")
    return math.comb(n, k)


@dataclass(frozen=True)
class TierAssignment:
    """tier index (1 = lowest rated) -> member ids, rating-ordered."""

    tiers: dict[int, tuple[str, ...]]
    # rating-equal blocks whose order across a tier boundary came from the rng
    random_ties: tuple[tuple[str, ...], ...] = ()


def assign_tiers(
    roster: Sequence[Player], config: TournamentConfig, rng: random.Random
) -> TierAssignment:
    """Fill tier 1 with the lowest-rated base_size players, then tier 2, etc.

    Equal ratings are ordered by a random priority drawn once per player, so
    a tie block straddling a tier boundary is split by the seeded stream and
    reported for the audit log.
    """
    priority = {p.id: rng.random() for p in sorted(roster, key=lambda p: p.id)}
    ordered = sorted(roster, key=lambda p: (p.elo, priority[p.id]))

    cuts = []
    total = 0
    for tier_cfg in config.tiers[:-1]:
        total += tier_cfg.base_size
        cuts.append(total)

    random_ties: list[tuple[str, ...]] = []
    seen_elos: set[int] = set()
    for cut in cuts:
        if cut < len(ordered) and ordered[cut - 1].elo == ordered[cut].elo:
            elo = ordered[cut].elo
            if elo not in seen_elos:
                seen_elos.add(elo)
                block = tuple(p.id for p in ordered if p.elo == elo)
                random_ties.append(block)

    tiers: dict[int, tuple[str, ...]] = {}
    start = 0
    for index, tier_cfg in enumerate(config.tiers, start=1):
        tiers[index] = tuple(p.id for p in ordered[start:start + tier_cfg.base_size])
        start += tier_cfg.base_size
    return TierAssignment(tiers=tiers, random_ties=tuple(random_ties))


# --- balanced subset extraction ------------------------------------------------


@dataclass(frozen=True)
class SubsetChoice:
    ids: tuple[str, ...]
    deviation: Fraction  # |mean(chosen) - target|
    tie_count: int  # co-minimizers the rng chose among


def _canonical(pool: Sequence[Player]) -> list[Player]:
    return sorted(pool, key=lambda p: (p.elo, p.id))


def _enumerate_minimizers(
    pool: list[Player], k: int, target: Fraction
) -> tuple[list[tuple[Player, ...]], Fraction]:
    best: Fraction | None = None
    winners: list[tuple[Player, ...]] = []
    goal = k * target
    for combo in combinations(pool, k):
        dev = abs(sum(p.elo for p in combo) - goal)
        if best is None or dev < best:
            best, winners = dev, [combo]
        elif dev == best:
            winners.append(combo)
    assert best is not None
    return winners, best


def min_subset_enumerate(
    pool: Sequence[Player], k: int, target: Fraction, rng: random.Random
) -> SubsetChoice:
    players = _canonical(pool)
    winners, best = _enumerate_minimizers(players, k, target)
    chosen = winners[rng.randrange(len(winners))]
    return SubsetChoice(
        ids=tuple(p.id for p in chosen),
        deviation=best / k,
        tie_count=len(winners),
    )


def _suffix_counts(vals: list[int], k: int) -> list[list[list[int]]]:
    """counts[i][j][s] = number of size-j subsets of vals[i:] with sum s."""
    n = len(vals)
    cap = sum(sorted(vals, reverse=True)[:k])
    width = cap + 1
    zero_row = [0] * width
    counts: list[list[list[int]]] = [[] for _ in range(n + 1)]
    base = [zero_row[:] for _ in range(k + 1)]
    base[0][0] = 1
    counts[n] = base
    for i in range(n - 1, -1, -1):
        nxt = counts[i + 1]
        v = vals[i]
        table = [nxt[0][:]]
        for j in range(1, k + 1):
            skip = nxt[j]
            take = nxt[j - 1]
            if v == 0:
                table.append([a + b for a, b in zip(skip, take)])
            elif v < width:
                row = skip[:v]
                row.extend(a + b for a, b in zip(skip[v:], take[:width - v]))
                table.append(row)
            else:
                table.append(skip[:])
        counts[i] = table
    return counts


def _unrank(vals: list[int], counts: list[list[list[int]]], k: int, s: int, t: int) -> list[int]:
    """Index list of the t-th (0-based) size-k subset of vals with sum s,
    in take-first enumeration order."""
    picked: list[int] = []
    i, j = 0, k
    while j > 0:
        v = vals[i]
        width = len(counts[0][0])
        with_i = counts[i + 1][j - 1][s - v] if 0 <= s - v < width else 0
        if t < with_i:
            picked.append(i)
            s -= v
            j -= 1
        else:
            t -= with_i
        i += 1
    return picked


def min_subset_table(
    pool: Sequence[Player], k: int, target: Fraction, rng: random.Random
) -> SubsetChoice:
    players = _canonical(pool)
    shift = min(p.elo for p in players)
    vals = [p.elo - shift for p in players]
    goal = k * target - k * shift  # same deviations as the unshifted problem
    counts = _suffix_counts(vals, k)
    top = counts[0][k]

    best: Fraction | None = None
    sums: list[int] = []
    for s, ways in enumerate(top):
        if not ways:
            continue
        dev = abs(s - goal)
        if best is None or dev < best:
            best, sums = dev, [s]
        elif dev == best:
            sums.append(s)
    if best is None:
        raise PoolTooSmall(f"no size-{k} subset exists")

    total = sum(top[s] for s in sums)
    t = rng.randrange(total)
    chosen_sum = sums[0]
    for s in sums:
        if t < top[s]:
            chosen_sum = s
            break
        t -= top[s]
    picked = _unrank(vals, counts, k, chosen_sum, t)
    return SubsetChoice(
        ids=tuple(players[i].id for i in picked),
        deviation=best / k,
        tie_count=total,
    )


def min_deviation_subset(
    pool: Sequence[Player], k: int, target: Fraction | int, rng: random.Random
) -> SubsetChoice:
    """Size-k subset of pool closest in mean rating to target, drawn
    uniformly among all minimizers."""
    if k < 1:
        raise ValueError("subset size must be at least 1")
    if k > len(pool):
        raise PoolTooSmall(f"need {k} players, pool has {len(pool)}")
    target = Fraction(target)
    if count_subsets(len(pool), k) <= ENUMERATION_LIMIT:
        return min_subset_enumerate(pool, k, target, rng)
    return min_subset_table(pool, k, target, rng)


@dataclass(frozen=True)
class GroupSplit:
    groups: tuple[tuple[Player, ...], ...]
    target_mean: Fraction
    group_means: tuple[Fraction, ...]
    tie_counts: tuple[int, ...]  # co-minimizer count per group; 1 where forced


def split_tier(
    tier_players: Sequence[Player], group_size: int, rng: random.Random
) -> GroupSplit:
    """Split a tier into equal groups, each extracted as the subset whose
    mean rating comes closest to the FULL tier's mean (the target does not
    drift as groups are removed)."""
    players = _canonical(tier_players)
    n = len(players)
    if group_size < 2:
        raise ValueError("groups need at least 2 players")
    target = Fraction(sum(p.elo for p in players), n)

    def mean(group: Sequence[Player]) -> Fraction:
        return Fraction(sum(p.elo for p in group), len(group))

    if n <= group_size:
        group = tuple(players)
        return GroupSplit(
            groups=(group,), target_mean=target, group_means=(mean(group),), tie_counts=(1,)
        )
    if n % group_size != 0:
        raise IndivisibleTier(f"{n} players cannot form equal groups of {group_size}")

    remaining = players[:]
    groups: list[tuple[Player, ...]] = []
    ties: list[int] = []
    while len(remaining) > group_size:
        choice = min_deviation_subset(remaining, group_size, target, rng)
        chosen_ids = set(choice.ids)
        groups.append(tuple(p for p in remaining if p.id in chosen_ids))
        ties.append(choice.tie_count)
        remaining = [p for p in remaining if p.id not in chosen_ids]
    groups.append(tuple(remaining))
    ties.append(1)
    return GroupSplit(
        groups=tuple(groups),
        target_mean=target,
        group_means=tuple(mean(g) for g in groups),
        tie_counts=tuple(ties),
    )
