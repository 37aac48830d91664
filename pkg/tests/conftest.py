from __future__ import annotations

import pytest

from tiertourney.core.types import Player

# Elo top-20 roster, February 2024 list. Doubles as the fixture for the
# historical replay and tier-assignment tests.
TOP20 = [
    ("carlsen", "M. Carlsen", 2830),
    ("caruana", "F. Caruana", 2804),
    ("nakamura", "H. Nakamura", 2788),
    ("ding", "Ding L.", 2762),
    ("giri", "A. Giri", 2762),
    ("firouzja", "A. Firouzja", 2760),
    ("nepomniachtchi", "I. Nepomniachtchi", 2758),
    ("so", "W. So", 2757),
    ("wei", "Wei Y.", 2755),
    ("dominguez", "L. Dominguez", 2752),
    ("praggnanandhaa", "R. Praggnanandhaa", 2747),
    ("vidit", "Vidit G.", 2747),
    ("abdusattorov", "N. Abdusattorov", 2744),
    ("gukesh", "Gukesh D.", 2743),
    ("keymer", "V. Keymer", 2738),
    ("erigaisi", "A. Erigaisi", 2738),
    ("mvl", "M. Vachier-Lagrave", 2732),
    ("duda", "J.-K. Duda", 2732),
    ("aronian", "L. Aronian", 2725),
    ("mamedyarov", "S. Mamedyarov", 2722),
]


@pytest.fixture
def top20_roster() -> list[Player]:
    return [Player(id=i, name=n, elo=e) for i, n, e in TOP20]
