"""Weighted automata over the rationals: the vector-space instantiation.

Rows are vectors of exact rationals; closedness and consistency become rank
conditions on blocks of the observation table.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Collection, Mapping, Sequence

from .errors import AlphabetMismatch, NotAutomatable
from .linalg import RowSpace, dot, rank, vec_mat
from .words import EPSILON, sorted_words


@dataclass(frozen=True, eq=False)
class Wfa:
    """``value(w) = alpha . M[w1] ... M[wk] . beta``."""

    alphabet: tuple[str, ...]
    dim: int
    alpha: tuple[Fraction, ...]
    mats: Mapping[str, tuple[tuple[Fraction, ...], ...]]
    beta: tuple[Fraction, ...]
    labels: tuple[str, ...] | None = field(default=None, compare=False)

    def __post_init__(self):
        n = self.dim
        if len(self.alpha) != n or len(self.beta) != n:
            raise ValueError(f"alpha/beta must have length dim={n}")
        for a in self.alphabet:
            m = self.mats.get(a)
            if m is None:
                raise ValueError(f"missing matrix for letter {a!r}")
            if len(m) != n or any(len(r) != n for r in m):
                raise ValueError(f"matrix for {a!r} is not {n}x{n}")

    @classmethod
    def make(cls, alphabet, alpha, mats, beta, labels=None) -> "Wfa":
        """Build from plain nested sequences of numbers/Fractions."""
        conv = lambda xs: tuple(Fraction(x) for x in xs)
        return cls(tuple(alphabet), len(alpha), conv(alpha),
                   {a: tuple(conv(r) for r in mats[a]) for a in alphabet}, conv(beta),
                   tuple(labels) if labels is not None else None)

    def forward(self, w: str) -> list[Fraction]:
        v = list(self.alpha)
        for a in w:
            v = vec_mat(v, self.mats[a])
        return v

    def value(self, w: str) -> Fraction:
        return dot(self.forward(w), self.beta)

    def label(self, i: int) -> str:
        return self.labels[i] if self.labels else str(i)


def zero_wfa(alphabet: Sequence[str]) -> Wfa:
    return Wfa(tuple(alphabet), 0, (), {a: () for a in alphabet}, ())


# -- observation rows ------------------------------------------------------

def row(w: str, tests: Sequence[str], teacher) -> list[Fraction]:
    return [Fraction(teacher.eval_query(w + t)) for t in tests]


def _block(words, tests, teacher):
    return [row(w, tests, teacher) for w in words]


def table_rank(Q: Collection[str], T: Collection[str], teacher) -> int:
    return rank(_block(Q, sorted_words(T, teacher.alphabet), teacher))


def check_epi_wfa(Q: Collection[str], T: Collection[str], teacher) -> str | None:
    """``None`` if every row of QA lies in the span of the rows of Q, else the least escaping ``qa``."""
    A = teacher.alphabet
    tests = sorted_words(T, A)
    space = RowSpace(len(tests))
    for q in Q:
        space.add(row(q, tests, teacher))
    for qa in sorted_words({q + a for q in Q for a in A} - set(Q), A):
        if not space.contains(row(qa, tests, teacher)):
            return qa
    return None


def check_mono_wfa(Q: Collection[str], T: Collection[str], teacher) -> str | None:
    """``None`` if adding the columns AT leaves the rank unchanged, else the least rank-raising ``at``."""
    A = teacher.alphabet
    tests = sorted_words(T, A)
    base = rank(_block(Q, tests, teacher))
    extra = sorted_words({a + t for t in T for a in A} - set(T), A)
    if rank(_block(Q, tests + extra, teacher)) == base:
        return None
    for at in extra:
        if rank(_block(Q, tests + [at], teacher)) > base:
            return at
    raise AssertionError("rank rose over T u AT but no single column raises it")


def build_hypothesis_wfa(Q: Collection[str], T: Collection[str], teacher) -> Wfa:
    A = teacher.alphabet
    if check_epi_wfa(Q, T, teacher) is not None or check_mono_wfa(Q, T, teacher) is not None:
        raise NotAutomatable("observation pair is not closed and consistent")
    tests = sorted_words(T, A)
    space = RowSpace(len(tests))
    basis: list[str] = []
    for q in sorted_words(Q, A):
        if space.add(row(q, tests, teacher)):
            basis.append(q)
    alpha = space.coordinates(row(EPSILON, tests, teacher))
    mats = {a: tuple(tuple(space.coordinates(row(b + a, tests, teacher))) for b in basis)
            for a in A}
    beta = [Fraction(teacher.eval_query(b)) for b in basis]
    return Wfa(tuple(A), len(basis), tuple(alpha), mats, tuple(beta), tuple(basis))


# -- minimization and equivalence -----------------------------------------

def _forward_reduce(w: Wfa) -> Wfa:
    """Restrict to the span of the reachable vectors ``alpha . M_u``."""
    space = RowSpace(w.dim)
    words: list[str] = []
    queue = deque()
    if space.add(w.alpha):
        words.append(EPSILON)
        queue.append((list(w.alpha), EPSILON))
    while queue:
        v, u = queue.popleft()
        for a in w.alphabet:
            nv = vec_mat(v, w.mats[a])
            if space.add(nv):
                words.append(u + a)
                queue.append((nv, u + a))
    basis = space.generators
    alpha = space.coordinates(w.alpha) if basis else []
    mats = {a: tuple(tuple(space.coordinates(vec_mat(b, w.mats[a]))) for b in basis)
            for a in w.alphabet}
    beta = [dot(b, w.beta) for b in basis]
    return Wfa(w.alphabet, len(basis), tuple(alpha), mats, tuple(beta), tuple(words))


def _reverse(w: Wfa) -> Wfa:
    mats = {a: tuple(zip(*w.mats[a])) if w.dim else () for a in w.alphabet}
    return Wfa(w.alphabet, w.dim, w.beta, mats, w.alpha)


def minimize_wfa(w: Wfa) -> Wfa:
    """Forward (reachability) reduction followed by backward (observability) reduction.

    The backward step is the forward step applied to the transposed automaton;
    the resulting dimension is the rank of the Hankel matrix.
    """
    fwd = _forward_reduce(w)
    both = _forward_reduce(_reverse(fwd))
    out = _reverse(both)
    return Wfa(out.alphabet, out.dim, out.alpha, out.mats, out.beta)


def difference(w1: Wfa, w2: Wfa) -> Wfa:
    """Direct sum computing ``w1(w) - w2(w)``."""
    n1, n2 = w1.dim, w2.dim
    zero = Fraction(0)
    mats = {}
    for a in w1.alphabet:
        rows = [tuple(r) + (zero,) * n2 for r in w1.mats[a]]
        rows += [(zero,) * n1 + tuple(r) for r in w2.mats[a]]
        mats[a] = tuple(rows)
    return Wfa(w1.alphabet, n1 + n2, w1.alpha + w2.alpha, mats,
               w1.beta + tuple(-x for x in w2.beta))


def wfa_equiv(w1: Wfa, w2: Wfa) -> str | None:
    """``None`` if ``w1`` and ``w2`` compute the same function, else the shortest-then-lex differing word.

    Breadth-first closure of the reachable space of the difference automaton;
    every discovered basis vector is tested against the output vector.
    """
    if tuple(w1.alphabet) != tuple(w2.alphabet):
        raise AlphabetMismatch(f"{w1.alphabet} vs {w2.alphabet}")
    d = difference(w1, w2)
    space = RowSpace(d.dim)
    queue = deque()
    if space.add(d.alpha):
        if dot(d.alpha, d.beta) != 0:
            return EPSILON
        queue.append((list(d.alpha), EPSILON))
    while queue:
        v, u = queue.popleft()
        for a in d.alphabet:
            nv = vec_mat(v, d.mats[a])
            if space.add(nv):
                if dot(nv, d.beta) != 0:
                    return u + a
                queue.append((nv, u + a))
    return None


class WfaDomain:
    """Learning domain over a rational-valued teacher."""

    kind = "wfa"

    def __init__(self, teacher):
        self.teacher = teacher

    def factor_size(self, Q, T) -> int:
        return table_rank(Q, T, self.teacher)

    def check_epi(self, Q, T):
        return check_epi_wfa(Q, T, self.teacher)

    def check_mono(self, Q, T):
        return check_mono_wfa(Q, T, self.teacher)

    def build_hypothesis(self, Q, T) -> Wfa:
        return build_hypothesis_wfa(Q, T, self.teacher)

    def grows_states(self, Q, T, qa: str) -> bool:
        return self.factor_size(set(Q) | {qa}, T) > self.factor_size(Q, T)

    def grows_tests(self, Q, T, at: str) -> bool:
        return self.factor_size(Q, set(T) | {at}) > self.factor_size(Q, T)

    def hypothesis_value(self, h: Wfa, w: str) -> Fraction:
        return h.value(w)

    def equivalent(self, h1: Wfa, h2: Wfa) -> bool:
        return wfa_equiv(h1, h2) is None

    def minimal_size(self, target: Wfa) -> int:
        return minimize_wfa(target).dim
