"""Seeded random automata for experiments and round-trip tests."""

from __future__ import annotations

import random
from fractions import Fraction

from .dfa import Dfa
from .sst import Sst
from .wfa import Wfa


def random_dfa(rng: random.Random, max_states: int = 10, alphabet: str = "ab") -> Dfa:
    n = rng.randint(1, max_states)
    delta = {(s, a): rng.randrange(n) for s in range(n) for a in alphabet}
    accepting = frozenset(s for s in range(n) if rng.random() < 0.5)
    return Dfa(tuple(alphabet), n, 0, accepting, delta)


def random_wfa(rng: random.Random, max_dim: int = 5, alphabet: str = "ab",
               lo: int = -2, hi: int = 2) -> Wfa:
    n = rng.randint(1, max_dim)
    vec = lambda: [Fraction(rng.randint(lo, hi)) for _ in range(n)]
    mats = {a: [vec() for _ in range(n)] for a in alphabet}
    return Wfa.make(alphabet, vec(), mats, vec())


def random_sst(rng: random.Random, max_states: int = 6, alphabet: str = "ab",
               output_alphabet: str = "xy", max_out: int = 2, p_missing: float = 0.2) -> Sst:
    n = rng.randint(1, max_states)

    def word():
        return "".join(rng.choice(output_alphabet) for _ in range(rng.randint(0, max_out)))

    delta = {}
    for s in range(n):
        for a in alphabet:
            if rng.random() >= p_missing:
                delta[s, a] = (rng.randrange(n), word())
    final = {s: word() for s in range(n) if rng.random() >= p_missing}
    return Sst(tuple(alphabet), tuple(output_alphabet), n, (0, word()), delta, final)
