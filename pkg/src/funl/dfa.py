"""Deterministic finite automata: the boolean instantiation of the learner.

Rows of the observation table are bit vectors indexed by test words.
Closedness is the surjectivity half of the table's epsilon map and
consistency the injectivity half.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Collection, Mapping, Sequence

from .errors import AlphabetMismatch, NotAutomatable
from .words import EPSILON, sorted_words


@dataclass(frozen=True, eq=False)
class Dfa:
    """A complete DFA with states ``0 .. n_states-1``."""

    alphabet: tuple[str, ...]
    n_states: int
    initial: int
    accepting: frozenset[int]
    delta: Mapping[tuple[int, str], int]
    labels: tuple[str, ...] | None = field(default=None, compare=False)

    def __post_init__(self):
        if not 0 <= self.initial < self.n_states:
            raise ValueError(f"initial state {self.initial} out of range")
        if not self.accepting <= set(range(self.n_states)):
            raise ValueError("accepting states out of range")
        for s in range(self.n_states):
            for a in self.alphabet:
                t = self.delta.get((s, a))
                if t is None:
                    raise ValueError(f"transition ({s}, {a!r}) missing; DFA must be complete")
                if not 0 <= t < self.n_states:
                    raise ValueError(f"transition ({s}, {a!r}) -> {t} out of range")

    def run(self, w: str, start: int | None = None) -> int:
        s = self.initial if start is None else start
        for a in w:
            s = self.delta[s, a]
        return s

    def accepts(self, w: str) -> bool:
        return self.run(w) in self.accepting

    def label(self, s: int) -> str:
        return self.labels[s] if self.labels else str(s)


def complete_with_sink(alphabet: Sequence[str], n_states: int, initial: int,
                       accepting: Collection[int], delta: Mapping[tuple[int, str], int],
                       labels: Sequence[str] | None = None) -> tuple[Dfa, bool]:
    """Build a Dfa, routing missing transitions to a fresh rejecting sink.

    Returns the automaton and whether a sink had to be added.
    """
    delta = dict(delta)
    missing = [(s, a) for s in range(n_states) for a in alphabet if (s, a) not in delta]
    added = bool(missing)
    if added:
        sink = n_states
        n_states += 1
        for key in missing:
            delta[key] = sink
        for a in alphabet:
            delta[sink, a] = sink
        if labels is not None:
            labels = list(labels) + ["sink"]
    d = Dfa(tuple(alphabet), n_states, initial, frozenset(accepting), delta,
            tuple(labels) if labels is not None else None)
    return d, added


# -- observation rows ------------------------------------------------------

def row(w: str, tests: Collection[str], teacher) -> dict[str, bool]:
    """The map t -> L(wt) over ``tests``."""
    return {t: bool(teacher.eval_query(w + t)) for t in tests}


def _key(w: str, tests: Sequence[str], teacher) -> tuple[bool, ...]:
    return tuple(bool(teacher.eval_query(w + t)) for t in tests)


def _extensions(words: Collection[str], alphabet: Sequence[str]) -> list[str]:
    return sorted_words({w + a for w in words for a in alphabet} - set(words), alphabet)


def _test_extensions(tests: Collection[str], alphabet: Sequence[str]) -> list[str]:
    return sorted_words({a + t for t in tests for a in alphabet} - set(tests), alphabet)


def distinct_rows(Q: Collection[str], T: Collection[str], teacher) -> int:
    tests = sorted_words(T, teacher.alphabet)
    return len({_key(q, tests, teacher) for q in Q})


def check_epi_dfa(Q: Collection[str], T: Collection[str], teacher) -> str | None:
    """Closedness. ``None`` if closed, else the least ``qa`` whose row is new."""
    A = teacher.alphabet
    tests = sorted_words(T, A)
    seen = {_key(q, tests, teacher) for q in Q}
    for qa in _extensions(Q, A):
        if _key(qa, tests, teacher) not in seen:
            return qa
    return None


def check_mono_dfa(Q: Collection[str], T: Collection[str], teacher) -> str | None:
    """Consistency. ``None`` if consistent, else the least ``at`` separating two T-equivalent words of Q."""
    A = teacher.alphabet
    tests = sorted_words(T, A)
    groups: dict[tuple, list[str]] = {}
    for q in Q:
        groups.setdefault(_key(q, tests, teacher), []).append(q)
    groups = {k: g for k, g in groups.items() if len(g) > 1}
    if not groups:
        return None
    for at in _test_extensions(T, A):
        for g in groups.values():
            if len({teacher.eval_query(q + at) for q in g}) > 1:
                return at
    return None


def build_hypothesis_dfa(Q: Collection[str], T: Collection[str], teacher) -> Dfa:
    A = teacher.alphabet
    if check_epi_dfa(Q, T, teacher) is not None or check_mono_dfa(Q, T, teacher) is not None:
        raise NotAutomatable("observation pair is not closed and consistent")
    tests = sorted_words(T, A)
    full = tests + _test_extensions(T, A)
    class_of_row: dict[tuple, int] = {}   # row over T -> state
    reps: list[str] = []
    for q in sorted_words(Q, A):
        k = _key(q, tests, teacher)
        if k not in class_of_row:
            class_of_row[k] = len(reps)
            reps.append(q)
    # consistency makes rows over T and over T u AT induce the same partition of Q
    assert len({_key(q, full, teacher) for q in Q}) == len(reps)
    delta = {}
    for s, q in enumerate(reps):
        for a in A:
            delta[s, a] = class_of_row[_key(q + a, tests, teacher)]
    accepting = frozenset(s for s, q in enumerate(reps) if teacher.eval_query(q))
    return Dfa(tuple(A), len(reps), class_of_row[_key(EPSILON, tests, teacher)],
               accepting, delta, tuple(reps))


# -- minimization and equivalence -----------------------------------------

def reachable_states(d: Dfa) -> list[int]:
    """States reachable from the initial one, in breadth-first (alphabet) order."""
    order = [d.initial]
    seen = {d.initial}
    queue = deque(order)
    while queue:
        s = queue.popleft()
        for a in d.alphabet:
            t = d.delta[s, a]
            if t not in seen:
                seen.add(t)
                order.append(t)
                queue.append(t)
    return order


def minimize_dfa(d: Dfa) -> Dfa:
    """Reachable part, then Moore partition refinement; states numbered breadth-first."""
    states = reachable_states(d)
    block = {s: int(s in d.accepting) for s in states}
    n_blocks = len(set(block.values()))
    while True:
        sigs: dict[tuple, int] = {}
        new = {}
        for s in states:
            sig = (block[s],) + tuple(block[d.delta[s, a]] for a in d.alphabet)
            new[s] = sigs.setdefault(sig, len(sigs))
        block = new
        if len(sigs) == n_blocks:
            break
        n_blocks = len(sigs)
    # renumber blocks breadth-first from the initial block
    number: dict[int, int] = {}
    labels = []
    for s in states:
        if block[s] not in number:
            number[block[s]] = len(number)
            labels.append(d.label(s))
    delta = {}
    for s in states:
        for a in d.alphabet:
            delta[number[block[s]], a] = number[block[d.delta[s, a]]]
    accepting = frozenset(number[block[s]] for s in states if s in d.accepting)
    return Dfa(d.alphabet, len(number), number[block[d.initial]], accepting, delta, tuple(labels))


def dfa_isomorphic(d1: Dfa, d2: Dfa) -> bool:
    """Whether the reachable parts are isomorphic (same shape and acceptance)."""
    if tuple(d1.alphabet) != tuple(d2.alphabet):
        return False
    bij = {d1.initial: d2.initial}
    used = {d2.initial}
    queue = deque([d1.initial])
    while queue:
        s = queue.popleft()
        if (s in d1.accepting) != (bij[s] in d2.accepting):
            return False
        for a in d1.alphabet:
            t1, t2 = d1.delta[s, a], d2.delta[bij[s], a]
            if t1 in bij:
                if bij[t1] != t2:
                    return False
            else:
                if t2 in used:
                    return False
                bij[t1] = t2
                used.add(t2)
                queue.append(t1)
    return len(bij) == len(reachable_states(d2)) == len(reachable_states(d1))


def dfa_equiv(d1: Dfa, d2: Dfa) -> str | None:
    """``None`` if equivalent, else the shortest-then-lex word in the symmetric difference."""
    if tuple(d1.alphabet) != tuple(d2.alphabet):
        raise AlphabetMismatch(f"{d1.alphabet} vs {d2.alphabet}")
    start = (d1.initial, d2.initial)
    seen = {start}
    queue = deque([(start, EPSILON)])
    while queue:
        (s1, s2), w = queue.popleft()
        if (s1 in d1.accepting) != (s2 in d2.accepting):
            return w
        for a in d1.alphabet:
            nxt = (d1.delta[s1, a], d2.delta[s2, a])
            if nxt not in seen:
                seen.add(nxt)
                queue.append((nxt, w + a))
    return None


class DfaDomain:
    """Learning domain over a boolean-valued teacher."""

    kind = "dfa"

    def __init__(self, teacher):
        self.teacher = teacher

    def factor_size(self, Q, T) -> int:
        return distinct_rows(Q, T, self.teacher)

    def check_epi(self, Q, T):
        return check_epi_dfa(Q, T, self.teacher)

    def check_mono(self, Q, T):
        return check_mono_dfa(Q, T, self.teacher)

    def build_hypothesis(self, Q, T) -> Dfa:
        return build_hypothesis_dfa(Q, T, self.teacher)

    def grows_states(self, Q, T, qa: str) -> bool:
        return self.factor_size(set(Q) | {qa}, T) > self.factor_size(Q, T)

    def grows_tests(self, Q, T, at: str) -> bool:
        return self.factor_size(Q, set(T) | {at}) > self.factor_size(Q, T)

    def hypothesis_value(self, h: Dfa, w: str) -> bool:
        return h.accepts(w)

    def equivalent(self, h1: Dfa, h2: Dfa) -> bool:
        return dfa_equiv(h1, h2) is None

    def minimal_size(self, target: Dfa) -> int:
        return minimize_dfa(target).n_states
