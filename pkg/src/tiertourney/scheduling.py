"""Single round-robin schedules with color assignments.

Pairings come from the circle construction: one seat fixed, the rest
rotating. Colors follow the canonical alternating rule, which for even n
yields the minimum achievable number of breaks (consecutive same-color
games), n - 2, with every player's white/black counts within one of each
other and no color appearing three times in a row. For odd n the rotating
bye absorbs the imbalance completely: zero breaks, perfect balance.

A player can't avoid all breaks in an even-n round robin, so "no two
consecutive games with the same color" is enforced in its attainable form:
minimum total breaks, no triple runs. The validator reports both the
strict diff limit (1) and the looser conventional limit (2).
"""

from __future__ import annotations

import csv
import io
import random
from dataclasses import dataclass
from typing import Iterable, Sequence

from .core.errors import DuplicatePlayer, GroupTooSmall

SCHEDULE_HEADER = ["round", "white", "black", "bye"]


@dataclass(frozen=True)
class RoundPairing:
    round: int
    boards: tuple[tuple[str, str], ...]  # (white, black)
    bye: str | None = None


@dataclass(frozen=True)
class ColorStats:
    white: int
    black: int
    diff: int
    max_run: int
    breaks: int


@dataclass(frozen=True)
class ScheduleReport:
    per_player: dict[str, ColorStats]
    total_breaks: int
    violations: tuple[str, ...]

    @property
    def clean(self) -> bool:
        return not self.violations


def round_robin(group: Sequence[str], rng: random.Random) -> list[RoundPairing]:
    """Every pair once; n-1 rounds (even n) or n rounds with rotating byes
    (odd n). Seat order is shuffled from the rng, so different streams give
    different but equally fair schedules."""
    if len(set(group)) != len(group):
        raise DuplicatePlayer("group has repeated ids")
    n = len(group)
    if n < 2:
        raise GroupTooSmall(f"round robin needs 2 players, got {n}")

    seats = list(group)
    rng.shuffle(seats)

    rounds: list[RoundPairing] = []
    if n % 2 == 0:
        m = n - 1
        for r in range(m):
            boards: list[tuple[str, str]] = []
            anchor, fixed = seats[r % m], seats[n - 1]
            boards.append((fixed, anchor) if r % 2 == 0 else (anchor, fixed))
            for i in range(1, n // 2):
                a, b = seats[(r - i) % m], seats[(r + i) % m]
                boards.append((a, b) if i % 2 == 0 else (b, a))
            rounds.append(RoundPairing(round=r + 1, boards=tuple(boards)))
    else:
        # the fixed seat is a phantom: whoever rotates into it sits out
        for r in range(n):
            boards = []
            for i in range(1, (n + 1) // 2):
                a, b = seats[(r - i) % n], seats[(r + i) % n]
                boards.append((a, b) if i % 2 == 0 else (b, a))
            rounds.append(RoundPairing(round=r + 1, boards=tuple(boards), bye=seats[r % n]))

    report = validate_schedule(rounds)
    assert report.clean, f"generator produced violations: {report.violations}"
    return rounds


def validate_schedule(schedule: Sequence[RoundPairing]) -> ScheduleReport:
    """Check pairing and color constraints; violations are returned, not raised."""
    violations: list[str] = []
    colors: dict[str, list[str]] = {}
    seen_pairs: set[frozenset[str]] = set()

    for rnd in schedule:
        in_round: set[str] = set()
        for white, black in rnd.boards:
            for pid in (white, black):
                if pid in in_round:
                    violations.append(f"round {rnd.round}: {pid} booked twice")
                in_round.add(pid)
                colors.setdefault(pid, [])
            pair = frozenset((white, black))
            if pair in seen_pairs:
                violations.append(f"pair {white}/{black} meets twice")
            seen_pairs.add(pair)
            colors[white].append("W")
            colors[black].append("B")
        if rnd.bye is not None:
            if rnd.bye in in_round:
                violations.append(f"round {rnd.round}: bye player {rnd.bye} also paired")
            colors.setdefault(rnd.bye, [])

    per_player: dict[str, ColorStats] = {}
    total_breaks = 0
    for pid, seq in sorted(colors.items()):
        white = seq.count("W")
        black = seq.count("B")
        diff = abs(white - black)
        breaks = sum(1 for x, y in zip(seq, seq[1:]) if x == y)
        max_run = 0
        run = 0
        last = None
        for c in seq:
            run = run + 1 if c == last else 1
            last = c
            max_run = max(max_run, run)
        per_player[pid] = ColorStats(
            white=white, black=black, diff=diff, max_run=max_run, breaks=breaks
        )
        total_breaks += breaks
        if diff > 1:
            note = " (over the conventional limit 2 as well)" if diff > 2 else ""
            violations.append(f"{pid}: color diff {diff} exceeds 1{note}")
        if max_run >= 3:
            violations.append(f"{pid}: same color {max_run} times in a row")

    return ScheduleReport(
        per_player=per_player, total_breaks=total_breaks, violations=tuple(violations)
    )


def schedule_to_csv(schedule: Iterable[RoundPairing]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf)
    writer.writerow(SCHEDULE_HEADER)
    for rnd in schedule:
        for white, black in rnd.boards:
            writer.writerow([rnd.round, white, black, ""])
        if rnd.bye is not None:
            writer.writerow([rnd.round, "", "", rnd.bye])
    return buf.getvalue()


def schedule_from_csv(text: str) -> list[RoundPairing]:
    reader = csv.reader(io.StringIO(text))
    header = next(reader, None)
    if header != SCHEDULE_HEADER:
        raise ValueError(f"expected header {','.join(SCHEDULE_HEADER)}")
    boards: dict[int, list[tuple[str, str]]] = {}
    byes: dict[int, str] = {}
    for row in reader:
        if not row or not any(row):
            continue
        rnd = int(row[0])
        if row[3]:
            byes[rnd] = row[3]
        else:
            boards.setdefault(rnd, []).append((row[1], row[2]))
    return [
        RoundPairing(round=r, boards=tuple(boards.get(r, ())), bye=byes.get(r))
        for r in sorted(set(boards) | set(byes))
    ]
