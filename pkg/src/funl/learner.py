"""The generic learning loop, parameterized by a learning domain and a teacher.

A domain supplies the three table-level operations the loop needs
(closedness, consistency, hypothesis construction) together with the size
of the factorization of the current table, which the loop uses only for
sanity checks. Basic mode repairs a failed check by adding every one-letter
extension; optimized mode adds a single word that properly enlarges the
factorization.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Callable, Literal, Optional, Protocol

from .errors import CapExceeded, InternalError
from .words import EPSILON, prefixes, sorted_words

DEFAULT_CAP = 10**6

Mode = Literal["basic", "optimized"]


@dataclass(frozen=True)
class ObservationIndex:
    """The pair (Q, T): prefix-closed state words and suffix-closed test words."""

    alphabet: tuple[str, ...]
    Q: frozenset[str] = frozenset({EPSILON})
    T: frozenset[str] = frozenset({EPSILON})

    def __post_init__(self):
        object.__setattr__(self, "alphabet", tuple(self.alphabet))
        object.__setattr__(self, "Q", frozenset(self.Q))
        object.__setattr__(self, "T", frozenset(self.T))
        self.validate()

    def validate(self):
        letters = set(self.alphabet)
        if EPSILON not in self.Q or EPSILON not in self.T:
            raise ValueError("epsilon must belong to both Q and T")
        for q in self.Q:
            if not set(q) <= letters:
                raise ValueError(f"state word {q!r} uses letters outside the alphabet")
            if q and q[:-1] not in self.Q:
                raise ValueError(f"Q is not prefix-closed: {q!r} present, {q[:-1]!r} missing")
        for t in self.T:
            if not set(t) <= letters:
                raise ValueError(f"test word {t!r} uses letters outside the alphabet")
            if t and t[1:] not in self.T:
                raise ValueError(f"T is not suffix-closed: {t!r} present, {t[1:]!r} missing")

    @property
    def QA(self) -> frozenset[str]:
        return frozenset(q + a for q in self.Q for a in self.alphabet)

    @property
    def AT(self) -> frozenset[str]:
        return frozenset(a + t for t in self.T for a in self.alphabet)

    def add_states(self, words) -> "ObservationIndex":
        return ObservationIndex(self.alphabet, self.Q | frozenset(words), self.T)

    def add_tests(self, words) -> "ObservationIndex":
        return ObservationIndex(self.alphabet, self.Q, self.T | frozenset(words))

    def sorted_Q(self) -> list[str]:
        return sorted_words(self.Q, self.alphabet)

    def sorted_T(self) -> list[str]:
        return sorted_words(self.T, self.alphabet)

    def __str__(self):
        show = lambda ws: "{" + ", ".join(w or "ε" for w in ws) + "}"
        return f"Q={show(self.sorted_Q())} T={show(self.sorted_T())}"


@dataclass
class LearnStats:
    eval_queries: int = 0
    equiv_queries: int = 0
    while_iterations: int = 0
    counterexamples: list[str] = field(default_factory=list)


class LearningDomain(Protocol):
    """What the loop needs from an instantiation. ``Q`` and ``T`` are word sets."""

    kind: str
    teacher: Any

    def factor_size(self, Q, T) -> int: ...
    def check_epi(self, Q, T) -> Optional[str]: ...
    def check_mono(self, Q, T) -> Optional[str]: ...
    def build_hypothesis(self, Q, T) -> Any: ...
    def hypothesis_value(self, h, w: str) -> Any: ...
    def equivalent(self, h1, h2) -> bool: ...
    def grows_states(self, Q, T, qa: str) -> bool: ...
    def grows_tests(self, Q, T, at: str) -> bool: ...


@dataclass(frozen=True)
class TraceEvent:
    """One step of a run.

    ``kind`` is ``"epi"`` / ``"mono"`` for a failed closedness / consistency
    check (``word`` is the witness, ``index`` the pair after repair) or
    ``"hypothesis"`` for an equivalence query (``word`` is the counterexample
    or ``None``, ``index`` the pair the hypothesis was built from).
    """

    kind: str
    index: ObservationIndex
    word: Optional[str] = None
    hypothesis: Any = None
    before: Optional[ObservationIndex] = None


Observer = Callable[[TraceEvent], None]


def extend_with_counterexample(index: ObservationIndex, w: str) -> ObservationIndex:
    """Add ``w`` and all its prefixes to Q."""
    return index.add_states(prefixes(w))


def _ensure(index: ObservationIndex, domain: LearningDomain, optimized: bool,
            max_iterations: int, on_event: Optional[Observer], stats: Optional[LearnStats]):
    steps = 0

    def bump():
        nonlocal steps
        steps += 1
        if stats is not None:
            stats.while_iterations += 1
        if steps > max_iterations:
            raise CapExceeded(f"closedness/consistency repair exceeded {max_iterations} steps")

    while True:
        qa = domain.check_epi(index.Q, index.T)
        if qa is not None:
            bump()
            before = index
            if optimized:
                if not domain.grows_states(index.Q, index.T, qa):
                    raise InternalError(f"closedness witness {qa!r} does not enlarge the table")
                index = index.add_states([qa])
            else:
                index = index.add_states(index.QA)
            if on_event:
                on_event(TraceEvent("epi", index, qa, before=before))
        at = domain.check_mono(index.Q, index.T)
        if at is not None:
            bump()
            before = index
            if optimized:
                if not domain.grows_tests(index.Q, index.T, at):
                    raise InternalError(f"consistency witness {at!r} does not refine the table")
                index = index.add_tests([at])
            else:
                index = index.add_tests(index.AT)
            if on_event:
                on_event(TraceEvent("mono", index, at, before=before))
        if qa is None and at is None:
            return index


def ensure_automatable_basic(index: ObservationIndex, domain: LearningDomain, *,
                             max_iterations: int = DEFAULT_CAP, on_event: Optional[Observer] = None,
                             stats: Optional[LearnStats] = None) -> ObservationIndex:
    """Repeat: on a closedness failure add QA to Q, on a consistency failure add AT to T."""
    return _ensure(index, domain, False, max_iterations, on_event, stats)


def ensure_automatable_optimized(index: ObservationIndex, domain: LearningDomain, *,
                                 max_iterations: int = DEFAULT_CAP, on_event: Optional[Observer] = None,
                                 stats: Optional[LearnStats] = None) -> ObservationIndex:
    """Like the basic loop, but each repair adds one witness word (shortest, then lexicographically least)."""
    return _ensure(index, domain, True, max_iterations, on_event, stats)


def funl(teacher, domain: Optional[LearningDomain] = None, mode: Mode = "basic", *,
         max_iterations: int = DEFAULT_CAP, on_event: Optional[Observer] = None):
    """Learn the teacher's target. Returns ``(hypothesis, stats)``.

    ``stats`` is the teacher's own :class:`LearnStats`, so counts accumulate
    across runs sharing a teacher.
    """
    if mode not in ("basic", "optimized"):
        raise ValueError(f"unknown mode {mode!r}")
    if domain is None:
        domain = teacher.domain()
    ensure = ensure_automatable_optimized if mode == "optimized" else ensure_automatable_basic
    stats = teacher.stats
    index = ObservationIndex(tuple(teacher.alphabet))
    for _ in range(max_iterations):
        index = ensure(index, domain, max_iterations=max_iterations, on_event=on_event, stats=stats)
        h = domain.build_hypothesis(index.Q, index.T)
        cex = teacher.equivalence_query(h)
        if on_event:
            on_event(TraceEvent("hypothesis", index, cex, hypothesis=h))
        if cex is None:
            return h, stats
        if cex in index.Q:
            raise InternalError(f"counterexample {cex!r} already in Q; hypothesis should agree on it")
        index = extend_with_counterexample(index, cex)
    raise CapExceeded(f"no convergence after {max_iterations} equivalence queries")
