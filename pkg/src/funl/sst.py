"""Subsequential transducers: the partial-output instantiation of the learner.

A row maps test words to output words or ``None`` (undefined). Rows are
compared after stripping their longest common prefix; a change of that
prefix when the test set grows counts as a consistency failure.
"""

from __future__ import annotations

import os
from collections import deque
from dataclasses import dataclass, field
from typing import Collection, Iterable, Mapping, Optional, Sequence

from .errors import AlphabetMismatch, InternalError, NotAutomatable
from .words import EPSILON, sorted_words

Out = Optional[str]


@dataclass(frozen=True, eq=False)
class Sst:
    """Deterministic transducer with optional initial output and per-state final outputs.

    ``initial`` is ``(state, output)`` or ``None`` for the nowhere-defined
    function; ``delta`` maps ``(state, letter)`` to ``(target, output)``;
    ``final`` maps a state to its final output.
    """

    alphabet: tuple[str, ...]
    output_alphabet: tuple[str, ...]
    n_states: int
    initial: tuple[int, str] | None
    delta: Mapping[tuple[int, str], tuple[int, str]]
    final: Mapping[int, str]
    labels: tuple[str, ...] | None = field(default=None, compare=False)

    def __post_init__(self):
        rng = range(self.n_states)
        if self.initial is not None and self.initial[0] not in rng:
            raise ValueError(f"initial state {self.initial[0]} out of range")
        outs = set(self.output_alphabet)
        words = [] if self.initial is None else [self.initial[1]]
        for (s, a), (t, o) in self.delta.items():
            if s not in rng or t not in rng:
                raise ValueError(f"transition ({s}, {a!r}) -> {t} out of range")
            if a not in self.alphabet:
                raise ValueError(f"transition on unknown letter {a!r}")
            words.append(o)
        for s, o in self.final.items():
            if s not in rng:
                raise ValueError(f"final output on unknown state {s}")
            words.append(o)
        for o in words:
            if not set(o) <= outs:
                raise ValueError(f"output {o!r} uses letters outside the output alphabet")

    def transduce(self, w: str) -> Out:
        if self.initial is None:
            return None
        s, out = self.initial
        parts = [out]
        for a in w:
            step = self.delta.get((s, a))
            if step is None:
                return None
            s, o = step
            parts.append(o)
        fin = self.final.get(s)
        if fin is None:
            return None
        parts.append(fin)
        return "".join(parts)

    def label(self, s: int) -> str:
        return self.labels[s] if self.labels else str(s)


def empty_sst(alphabet: Sequence[str], output_alphabet: Sequence[str]) -> Sst:
    return Sst(tuple(alphabet), tuple(output_alphabet), 0, None, {}, {})


# -- lcp / red -------------------------------------------------------------

def lcp_words(words: Iterable[Out]) -> Out:
    """Longest common prefix of the defined words; ``None`` if none is defined."""
    defined = [w for w in words if w is not None]
    if not defined:
        return None
    return os.path.commonprefix(defined)


def lcp(row) -> Out:
    """lcp of a partial row given as a mapping ``test -> output`` or a sequence of outputs."""
    return lcp_words(row.values() if isinstance(row, Mapping) else row)


def red(row):
    """Strip the lcp from every defined entry. Nowhere-defined rows are returned as is."""
    p = lcp(row)
    n = len(p) if p is not None else 0
    if isinstance(row, Mapping):
        return {t: (o[n:] if o is not None else None) for t, o in row.items()}
    return tuple(o[n:] if o is not None else None for o in row)


def strip_prefix(p: str, w: str) -> str:
    """``p^{-1} w``; raises InternalError when ``p`` is not a prefix of ``w``."""
    if not w.startswith(p):
        raise InternalError(f"{p!r} is not a prefix of {w!r}")
    return w[len(p):]


# -- observation rows ------------------------------------------------------

def row(w: str, tests: Collection[str], teacher) -> dict[str, Out]:
    return {t: teacher.eval_query(w + t) for t in tests}


def _vals(w: str, tests: Sequence[str], teacher) -> tuple[Out, ...]:
    return tuple(teacher.eval_query(w + t) for t in tests)


def _defined(vals: Sequence[Out]) -> bool:
    return any(v is not None for v in vals)


def class_count(Q: Collection[str], T: Collection[str], teacher) -> int:
    """Number of ~T classes among words of Q whose row is somewhere defined."""
    tests = sorted_words(T, teacher.alphabet)
    keys = set()
    for q in Q:
        v = _vals(q, tests, teacher)
        if _defined(v):
            keys.add(red(v))
    return len(keys)


def check_epi_sst(Q: Collection[str], T: Collection[str], teacher) -> str | None:
    """``None`` if every defined row of QA is ~T-equivalent to a row of Q, else the least offending ``qa``.

    A ``qa`` whose row is nowhere defined needs no state (the transition is
    simply absent) and never violates closedness.
    """
    A = teacher.alphabet
    tests = sorted_words(T, A)
    seen = {red(_vals(q, tests, teacher)) for q in Q}
    for qa in sorted_words({q + a for q in Q for a in A} - set(Q), A):
        v = _vals(qa, tests, teacher)
        if _defined(v) and red(v) not in seen:
            return qa
    return None


def _mono_violation(Q, tests: list[str], wider: list[str], teacher) -> bool:
    """Whether growing the test list from ``tests`` to ``wider`` changes some lcp or splits some ~ class."""
    groups: dict[tuple, set[tuple]] = {}
    for q in Q:
        narrow = _vals(q, tests, teacher)
        wide = _vals(q, wider, teacher)
        if lcp_words(narrow) != lcp_words(wide):
            return True
        groups.setdefault(red(narrow), set()).add(red(wide))
    return any(len(g) > 1 for g in groups.values())


def check_mono_sst(Q: Collection[str], T: Collection[str], teacher) -> str | None:
    """Consistency plus lcp stability.

    ``None`` if for every q the lcp over T u AT equals the lcp over T
    (undefinedness included) and ~T and ~(T u AT) agree on Q; otherwise the
    least ``at`` whose addition alone breaks one of the two.
    """
    A = teacher.alphabet
    tests = sorted_words(T, A)
    extra = sorted_words({a + t for t in T for a in A} - set(T), A)
    if not _mono_violation(Q, tests, tests + extra, teacher):
        return None
    for at in extra:
        if _mono_violation(Q, tests, tests + [at], teacher):
            return at
    raise InternalError("consistency fails over T u AT but no single test word witnesses it")


def build_hypothesis_sst(Q: Collection[str], T: Collection[str], teacher) -> Sst:
    A = teacher.alphabet
    if check_epi_sst(Q, T, teacher) is not None or check_mono_sst(Q, T, teacher) is not None:
        raise NotAutomatable("observation pair fails closedness, consistency or lcp stability")
    tests = sorted_words(T, A)
    full = tests + sorted_words({a + t for t in T for a in A} - set(T), A)
    state_of: dict[tuple, int] = {}   # reduced row over T -> state
    reps: list[str] = []
    for q in sorted_words(Q, A):
        v = _vals(q, tests, teacher)
        if _defined(v) and red(v) not in state_of:
            state_of[red(v)] = len(reps)
            reps.append(q)
    lam = [lcp_words(_vals(q, full, teacher)) for q in reps]
    delta = {}
    final = {}
    for s, q in enumerate(reps):
        for a in A:
            v = _vals(q + a, tests, teacher)
            rho = lcp_words(v)
            if rho is None:
                continue
            delta[s, a] = (state_of[red(v)], strip_prefix(lam[s], rho))
        fin = teacher.eval_query(q)
        if fin is not None:
            final[s] = strip_prefix(lam[s], fin)
    initial = None
    eps = _vals(EPSILON, tests, teacher)
    if _defined(eps):
        s0 = state_of[red(eps)]
        initial = (s0, lam[s0])
    return Sst(tuple(A), tuple(teacher.output_alphabet), len(reps), initial, delta, final,
               tuple(reps))


# -- minimization and equivalence -----------------------------------------

def _trim(t: Sst) -> tuple[list[int], set[int]]:
    """Reachable states in breadth-first order, and the set of states that can reach a final output."""
    if t.initial is None:
        return [], set()
    order = [t.initial[0]]
    seen = set(order)
    queue = deque(order)
    while queue:
        s = queue.popleft()
        for a in t.alphabet:
            step = t.delta.get((s, a))
            if step and step[0] not in seen:
                seen.add(step[0])
                order.append(step[0])
                queue.append(step[0])
    preds: dict[int, set[int]] = {}
    for (s, _), (u, _) in t.delta.items():
        preds.setdefault(u, set()).add(s)
    live = set(t.final)
    stack = list(live)
    while stack:
        u = stack.pop()
        for s in preds.get(u, ()):
            if s not in live:
                live.add(s)
                stack.append(s)
    return order, live


def residual_lcps(t: Sst, states: Collection[int]) -> dict[int, str]:
    """For each (live) state, the lcp of all outputs its residual transduction produces.

    Computed as the limit of lcps over words of bounded length; the sequence
    is decreasing in the prefix order and stabilizes.
    """
    states = set(states)
    cur: dict[int, Out] = {s: None for s in states}
    while True:
        nxt = {}
        for s in states:
            cands: list[Out] = [t.final.get(s)]
            for a in t.alphabet:
                step = t.delta.get((s, a))
                if step and step[0] in states and cur[step[0]] is not None:
                    cands.append(step[1] + cur[step[0]])
            nxt[s] = lcp_words(cands)
        if nxt == cur:
            break
        cur = nxt
    assert all(v is not None for v in cur.values())
    return cur  # type: ignore[return-value]


def minimize_sst(t: Sst) -> Sst:
    """Trim, make onward (every residual has empty lcp), merge equal residuals.

    States of the result are numbered breadth-first from the initial state.
    """
    order, live = _trim(t)
    states = [s for s in order if s in live]
    if not states:
        return empty_sst(t.alphabet, t.output_alphabet)
    keep = set(states)
    P = residual_lcps(t, keep)
    s0, out0 = t.initial  # type: ignore[misc]
    init_out = out0 + P[s0]
    delta = {}
    for s in states:
        for a in t.alphabet:
            step = t.delta.get((s, a))
            if step and step[0] in keep:
                u, o = step
                delta[s, a] = (u, strip_prefix(P[s], o + P[u]))
    final = {s: strip_prefix(P[s], t.final[s]) for s in states if s in t.final}

    block = {s: 0 for s in states}
    n_blocks = 1
    while True:
        sigs: dict[tuple, int] = {}
        new = {}
        for s in states:
            sig = (final.get(s),) + tuple(
                (block[delta[s, a][0]], delta[s, a][1]) if (s, a) in delta else None
                for a in t.alphabet)
            new[s] = sigs.setdefault((block[s], sig), len(sigs))
        block = new
        if len(sigs) == n_blocks:
            break
        n_blocks = len(sigs)

    number: dict[int, int] = {}
    labels = []
    for s in states:
        if block[s] not in number:
            number[block[s]] = len(number)
            labels.append(t.label(s))
    new_delta = {}
    new_final = {}
    for s in states:
        b = number[block[s]]
        for a in t.alphabet:
            if (s, a) in delta:
                u, o = delta[s, a]
                new_delta[b, a] = (number[block[u]], o)
        if s in final:
            new_final[b] = final[s]
    return Sst(t.alphabet, t.output_alphabet, len(number), (number[block[s0]], init_out),
               new_delta, new_final, tuple(labels))


def sst_isomorphic(t1: Sst, t2: Sst) -> bool:
    """Exact isomorphism of the reachable parts: same shape and identical outputs everywhere."""
    if tuple(t1.alphabet) != tuple(t2.alphabet):
        return False
    if t1.initial is None or t2.initial is None:
        return t1.initial is None and t2.initial is None and t1.n_states == t2.n_states == 0
    if t1.initial[1] != t2.initial[1]:
        return False
    bij = {t1.initial[0]: t2.initial[0]}
    used = {t2.initial[0]}
    queue = deque([t1.initial[0]])
    while queue:
        s = queue.popleft()
        s2 = bij[s]
        if t1.final.get(s) != t2.final.get(s2):
            return False
        for a in t1.alphabet:
            x, y = t1.delta.get((s, a)), t2.delta.get((s2, a))
            if (x is None) != (y is None):
                return False
            if x is None:
                continue
            if x[1] != y[1]:
                return False
            if x[0] in bij:
                if bij[x[0]] != y[0]:
                    return False
            else:
                if y[0] in used:
                    return False
                bij[x[0]] = y[0]
                used.add(y[0])
                queue.append(x[0])
    return len(bij) == t1.n_states == t2.n_states


def _value_at(t: Sst, s: int | None, pending: str) -> Out:
    if s is None or s not in t.final:
        return None
    return pending + t.final[s]


def sst_equiv(t1: Sst, t2: Sst) -> str | None:
    """``None`` if the transductions coincide, else the shortest-then-lex word where they differ.

    Both sides are first brought to canonical onward minimal form; if those
    are isomorphic the answer is yes. Otherwise a breadth-first search over
    the synchronized product, carrying the two pending outputs with their
    common prefix removed, finds the first divergence.
    """
    if tuple(t1.alphabet) != tuple(t2.alphabet):
        raise AlphabetMismatch(f"{t1.alphabet} vs {t2.alphabet}")
    if set(t1.output_alphabet) != set(t2.output_alphabet):
        raise AlphabetMismatch(f"output {t1.output_alphabet} vs {t2.output_alphabet}")
    m1, m2 = minimize_sst(t1), minimize_sst(t2)
    if sst_isomorphic(m1, m2):
        return None

    def start(m: Sst):
        return (None, "") if m.initial is None else m.initial

    def norm(s1, p1, s2, p2):
        if s1 is None or s2 is None:
            return (s1, "", s2, "")
        k = len(os.path.commonprefix([p1, p2]))
        return (s1, p1[k:], s2, p2[k:])

    max_out = max([len(o) for _, o in list(m1.delta.values()) + list(m2.delta.values())]
                  + [len(o) for o in list(m1.final.values()) + list(m2.final.values())] + [0])
    bound = (m1.n_states + 1) * (m2.n_states + 1) * (1 + max_out) + m1.n_states + m2.n_states

    s1, p1 = start(m1)
    s2, p2 = start(m2)
    first = norm(s1, p1, s2, p2)
    seen = {first}
    queue = deque([(first, EPSILON)])
    while queue:
        (s1, p1, s2, p2), w = queue.popleft()
        if _value_at(m1, s1, p1) != _value_at(m2, s2, p2):
            return w
        if len(w) >= bound:
            continue
        for a in m1.alphabet:
            x = m1.delta.get((s1, a)) if s1 is not None else None
            y = m2.delta.get((s2, a)) if s2 is not None else None
            if x is None and y is None:
                continue
            cfg = norm(x[0] if x else None, p1 + x[1] if x else "",
                       y[0] if y else None, p2 + y[1] if y else "")
            if cfg not in seen:
                seen.add(cfg)
                queue.append((cfg, w + a))
    raise InternalError("canonical forms differ but no diverging word was found")


class SstDomain:
    """Learning domain over a partial word-valued teacher."""

    kind = "sst"

    def __init__(self, teacher):
        self.teacher = teacher

    def factor_size(self, Q, T) -> int:
        return class_count(Q, T, self.teacher)

    def check_epi(self, Q, T):
        return check_epi_sst(Q, T, self.teacher)

    def check_mono(self, Q, T):
        return check_mono_sst(Q, T, self.teacher)

    def build_hypothesis(self, Q, T) -> Sst:
        return build_hypothesis_sst(Q, T, self.teacher)

    def grows_states(self, Q, T, qa: str) -> bool:
        return self.factor_size(set(Q) | {qa}, T) > self.factor_size(Q, T)

    def grows_tests(self, Q, T, at: str) -> bool:
        # a changed lcp is a proper refinement even when the class count is unchanged
        tests = sorted_words(T, self.teacher.alphabet)
        return _mono_violation(Q, tests, tests + [at], self.teacher)

    def hypothesis_value(self, h: Sst, w: str) -> Out:
        return h.transduce(w)

    def equivalent(self, h1: Sst, h2: Sst) -> bool:
        return sst_equiv(h1, h2) is None

    def minimal_size(self, target: Sst) -> int:
        return minimize_sst(target).n_states
