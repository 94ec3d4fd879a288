"""Small target automata used across the test modules."""

from fractions import Fraction

from funl.dfa import Dfa, complete_with_sink
from funl.sst import Sst
from funl.wfa import Wfa


def dfa_from(alphabet, n, accepting, delta, initial=0):
    return complete_with_sink(alphabet, n, initial, accepting, delta)[0]


def lang_a() -> Dfa:
    """{a} over {a}: the minimal 3-state automaton."""
    return Dfa(("a",), 3, 0, frozenset({1}), {(0, "a"): 1, (1, "a"): 2, (2, "a"): 2})


def odd_as() -> Dfa:
    """a(aa)* over {a}."""
    return Dfa(("a",), 2, 0, frozenset({1}), {(0, "a"): 1, (1, "a"): 0})


def empty_lang(alphabet=("a",)) -> Dfa:
    return Dfa(tuple(alphabet), 1, 0, frozenset(), {(0, a): 0 for a in alphabet})


def count_a() -> Wfa:
    """f(w) = number of occurrences of a, over {a, b}."""
    return Wfa.make("ab", [1, 0], {"a": [[1, 1], [0, 1]], "b": [[1, 0], [0, 1]]}, [0, 1])


def const_wfa(c, alphabet="a") -> Wfa:
    return Wfa.make(alphabet, [1], {x: [[1]] for x in alphabet}, [c])


def sst_b_plus_one() -> Sst:
    """f(a^n) = b^(n+1) over A = {a}."""
    return Sst(("a",), ("b",), 1, (0, "b"), {(0, "a"): (0, "b")}, {0: ""})


def sst_b_n() -> Sst:
    """f(a^n) = b^n."""
    return Sst(("a",), ("b",), 1, (0, ""), {(0, "a"): (0, "b")}, {0: ""})


def sst_identity() -> Sst:
    return Sst(("a",), ("a",), 1, (0, ""), {(0, "a"): (0, "a")}, {0: ""})


def sst_only_epsilon() -> Sst:
    """Defined only on the empty word, with value b."""
    return Sst(("a",), ("b",), 1, (0, ""), {}, {0: "b"})


def sst_nowhere(alphabet=("a",), out=("b",)) -> Sst:
    return Sst(tuple(alphabet), tuple(out), 0, None, {}, {})


def sst_c_then_d() -> Sst:
    """f(eps) = c, f(a) = d, undefined elsewhere."""
    return Sst(("a",), ("c", "d"), 2, (0, ""), {(0, "a"): (1, "")}, {0: "c", 1: "d"})


def F(x):
    return Fraction(x)
