"""Words are plain strings of single-character symbols; the empty string is epsilon."""

from __future__ import annotations

from typing import Callable, Iterable, Sequence

EPSILON = ""


def prefixes(w: str) -> list[str]:
    """All prefixes of ``w``, including epsilon and ``w`` itself, shortest first."""
    return [w[:i] for i in range(len(w) + 1)]


def suffixes(w: str) -> list[str]:
    return [w[i:] for i in range(len(w) + 1)]


def order_key(alphabet: Sequence[str]) -> Callable[[str], tuple]:
    """Sort key for shortest-then-lexicographic order w.r.t. the alphabet's declared order."""
    rank = {a: i for i, a in enumerate(alphabet)}
    return lambda w: (len(w), tuple(rank[c] for c in w))


def sorted_words(words: Iterable[str], alphabet: Sequence[str]) -> list[str]:
    return sorted(words, key=order_key(alphabet))


def all_words(alphabet: Sequence[str], max_len: int) -> list[str]:
    """Every word of length <= max_len in shortest-then-lex order."""
    out = [EPSILON]
    layer = [EPSILON]
    for _ in range(max_len):
        layer = [w + a for w in layer for a in alphabet]
        out.extend(layer)
    return out


def fmt(w: str) -> str:
    """Human-readable rendering; epsilon shows as ``ε``."""
    return w if w else "ε"
