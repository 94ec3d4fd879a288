"""Minimally adequate teachers backed by a known target automaton."""

from __future__ import annotations

from .dfa import Dfa, DfaDomain, dfa_equiv
from .errors import BadLetter, CapExceeded, DomainMismatch
from .learner import LearnStats
from .sst import Sst, SstDomain, sst_equiv
from .wfa import Wfa, WfaDomain, wfa_equiv


class Teacher:
    """Answers evaluation and equivalence queries about ``target``.

    Evaluation answers are memoized; ``stats.eval_queries`` counts distinct
    words (cache misses). With ``cache=False`` every call is counted.
    ``max_queries`` bounds the number of counted evaluation queries.
    """

    def __init__(self, target: Dfa | Wfa | Sst, cache: bool = True, max_queries: int = 10**6):
        if not isinstance(target, (Dfa, Wfa, Sst)):
            raise DomainMismatch(f"unsupported target type {type(target).__name__}")
        self.target = target
        self.alphabet: tuple[str, ...] = tuple(target.alphabet)
        self.output_alphabet = tuple(getattr(target, "output_alphabet", ()))
        self.use_cache = cache
        self.max_queries = max_queries
        self.cache: dict[str, object] = {}
        self.stats = LearnStats()
        self._letters = set(self.alphabet)

    @property
    def kind(self) -> str:
        return {Dfa: "dfa", Wfa: "wfa", Sst: "sst"}[type(self.target)]

    def _evaluate(self, w: str):
        t = self.target
        if isinstance(t, Dfa):
            return t.accepts(w)
        if isinstance(t, Wfa):
            return t.value(w)
        return t.transduce(w)

    def eval_query(self, w: str):
        if self.use_cache and w in self.cache:
            return self.cache[w]
        bad = set(w) - self._letters
        if bad:
            raise BadLetter(f"letters {sorted(bad)} not in alphabet {self.alphabet}")
        if self.stats.eval_queries >= self.max_queries:
            raise CapExceeded(f"more than {self.max_queries} evaluation queries")
        self.stats.eval_queries += 1
        v = self._evaluate(w)
        if self.use_cache:
            self.cache[w] = v
        return v

    def equivalence_query(self, h: Dfa | Wfa | Sst) -> str | None:
        """``None`` for yes, otherwise the shortest-then-lex counterexample."""
        if type(h) is not type(self.target):
            raise DomainMismatch(f"hypothesis is {type(h).__name__}, target is {type(self.target).__name__}")
        self.stats.equiv_queries += 1
        if isinstance(h, Dfa):
            cex = dfa_equiv(h, self.target)
        elif isinstance(h, Wfa):
            cex = wfa_equiv(h, self.target)
        else:
            cex = sst_equiv(h, self.target)
        if cex is not None:
            self.stats.counterexamples.append(cex)
        return cex

    def domain(self):
        """The learning domain matching this teacher's target type."""
        return {"dfa": DfaDomain, "wfa": WfaDomain, "sst": SstDomain}[self.kind](self)
