"""Roster file IO: CSV with header `id,name,elo`."""

from __future__ import annotations

import csv
import io

from .errors import MissingHeader
from .types import Player

ROSTER_HEADER = ["id", "name", "elo"]


def parse_roster(text: str) -> list[Player]:
    reader = csv.DictReader(io.StringIO(text))
    if reader.fieldnames is None or [f.strip() for f in reader.fieldnames[:3]] != ROSTER_HEADER:
        raise MissingHeader(f"roster must start with header {','.join(ROSTER_HEADER)!r}")
    players = []
    for lineno, row in enumerate(reader, start=2):
        raw_id = (row.get("id") or "").strip()
        name = (row.get("name") or "").strip() or raw_id
        raw_elo = (row.get("elo") or "").strip()
        if not raw_id:
            raise ValueError(f"roster line {lineno}: empty player id")
        try:
            elo = int(raw_elo)
        except ValueError:
            raise ValueError(f"roster line {lineno}: elo {raw_elo!r} is not an integer") from None
        players.append(Player(id=raw_id, name=name, elo=elo))
    return players


def read_roster(path) -> list[Player]:
    with open(path, encoding="utf-8") as fh:
        return parse_roster(fh.read())


def write_roster(path, players: list[Player]) -> None:
    with open(path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(ROSTER_HEADER)
        for p in players:
            writer.writerow([p.id, p.name, p.elo])
