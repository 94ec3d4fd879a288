"""Active learning of word automata (DFA, rational WFA, subsequential transducers) from a teacher."""

from .dfa import Dfa, dfa_equiv, minimize_dfa
from .errors import (AlphabetMismatch, AutomatonFormatError, BadLetter, CapExceeded,
                     DomainMismatch, FunlError, InternalError, NotAutomatable)
from .learner import (LearnStats, ObservationIndex, TraceEvent, ensure_automatable_basic,
                      ensure_automatable_optimized, extend_with_counterexample, funl)
from .sst import Sst, lcp, minimize_sst, red, sst_equiv
from .teachers import Teacher
from .wfa import Wfa, minimize_wfa, wfa_equiv

__all__ = [
    "Dfa", "Wfa", "Sst", "Teacher", "ObservationIndex", "LearnStats", "TraceEvent",
    "funl", "extend_with_counterexample", "ensure_automatable_basic", "ensure_automatable_optimized",
    "minimize_dfa", "minimize_wfa", "minimize_sst", "dfa_equiv", "wfa_equiv", "sst_equiv",
    "lcp", "red",
    "FunlError", "CapExceeded", "NotAutomatable", "InternalError", "AlphabetMismatch",
    "DomainMismatch", "BadLetter", "AutomatonFormatError",
]
