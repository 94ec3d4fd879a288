import pytest
from hypothesis import given, settings

from funl.dfa import (
    Dfa, build_hypothesis_dfa, check_epi_dfa, check_mono_dfa, complete_with_sink,
    dfa_equiv, dfa_isomorphic, distinct_rows, minimize_dfa, row,
)
from funl.errors import AlphabetMismatch, NotAutomatable
from funl.teachers import Teacher

from helpers import dfa_from, empty_lang, lang_a, odd_as
from oracles import access_words, nerode_class_count, words_upto
from strategies import dfas


@pytest.fixture
def t_a():
    return Teacher(lang_a())


def test_row(t_a):
    assert row("", {""}, t_a) == {"": False}
    assert row("a", {"", "a"}, t_a) == {"": True, "a": False}
    assert row("aaa", set(), t_a) == {}


def test_check_epi(t_a):
    assert check_epi_dfa({""}, {""}, t_a) == "a"
    assert check_epi_dfa({"", "a"}, {""}, t_a) is None
    assert check_epi_dfa({"", "a", "aa"}, {"", "a"}, Teacher(empty_lang())) is None


def test_check_mono(t_a):
    # eps and aa agree on T={eps} but a is in L while aaa is not
    assert check_mono_dfa({"", "a", "aa", "aaa"}, {""}, t_a) == "a"
    assert check_mono_dfa({"", "a"}, {""}, t_a) is None
    assert check_mono_dfa({""}, {"", "a"}, t_a) is None


def test_epi_witness_is_least():
    # L = words containing b: rows of eps and a agree, b differs
    d = dfa_from("ab", 2, [1], {(0, "a"): 0, (0, "b"): 1, (1, "a"): 1, (1, "b"): 1})
    assert check_epi_dfa({""}, {""}, Teacher(d)) == "b"


def test_hypothesis_figure_left(t_a):
    h = build_hypothesis_dfa({"", "a"}, {""}, t_a)
    assert h.n_states == 2
    assert dfa_isomorphic(h, odd_as())
    assert h.labels == ("", "a")
    assert all(h.accepts(w) == (len(w) % 2 == 1) for w in words_upto("a", 9))


def test_hypothesis_figure_right(t_a):
    h = build_hypothesis_dfa({"", "a", "aa", "aaa"}, {"", "a"}, t_a)
    assert h.n_states == 3
    assert dfa_isomorphic(h, lang_a())


def test_hypothesis_empty_language():
    h = build_hypothesis_dfa({""}, {""}, Teacher(empty_lang()))
    assert h.n_states == 1 and not h.accepting and h.delta[0, "a"] == 0


def test_hypothesis_requires_automatable(t_a):
    with pytest.raises(NotAutomatable):
        build_hypothesis_dfa({""}, {""}, t_a)


def test_minimize_figure_right_is_fixed():
    m = minimize_dfa(lang_a())
    assert m.n_states == 3 and dfa_isomorphic(m, lang_a())


def chain4():
    return Dfa(("a",), 4, 0, frozenset({1}), {(0, "a"): 1, (1, "a"): 2, (2, "a"): 3, (3, "a"): 3})


def test_minimize_chain():
    d = chain4()
    expected = nerode_class_count(d.accepts, "a", access_words(d), 4)
    assert expected == 3
    m = minimize_dfa(d)
    assert m.n_states == expected
    assert dfa_isomorphic(m, lang_a())


@given(dfas())
def test_minimize_matches_nerode_oracle(d):
    m = minimize_dfa(d)
    assert m.n_states == nerode_class_count(d.accepts, d.alphabet, access_words(d), d.n_states)
    assert all(m.accepts(w) == d.accepts(w) for w in words_upto(d.alphabet, 6))
    assert dfa_isomorphic(minimize_dfa(m), m)


def test_equiv_examples():
    assert dfa_equiv(odd_as(), lang_a()) == "aaa"
    assert dfa_equiv(lang_a(), lang_a()) is None
    eps_only = Dfa(("a",), 2, 0, frozenset({0}), {(0, "a"): 1, (1, "a"): 1})
    assert dfa_equiv(empty_lang(), eps_only) == ""


def test_equiv_alphabet_mismatch():
    with pytest.raises(AlphabetMismatch):
        dfa_equiv(empty_lang("a"), empty_lang("ab"))


@given(dfas(max_states=3), dfas(max_states=3))
def test_equiv_returns_shortest_lex_difference(d1, d2):
    bound = d1.n_states * d2.n_states
    expected = next((w for w in words_upto("ab", bound) if d1.accepts(w) != d2.accepts(w)), None)
    assert dfa_equiv(d1, d2) == expected


@given(dfas())
def test_distinct_rows_monotone(d):
    t = Teacher(d)
    Q = ["", "a", "ab", "abb"]
    T = ["", "b", "ab"]
    for i in range(1, len(Q)):
        for j in range(1, len(T)):
            base = distinct_rows(Q[:i], T[:j], t)
            assert base <= distinct_rows(Q[:i + 1], T[:j], t)
            assert base <= distinct_rows(Q[:i], T[:j + 1], t)
            assert base <= minimize_dfa(d).n_states


@settings(max_examples=50)
@given(dfas())
def test_transitions_independent_of_representative(d):
    from funl.learner import ObservationIndex, ensure_automatable_basic
    from funl.dfa import DfaDomain
    t = Teacher(d)
    idx = ensure_automatable_basic(ObservationIndex(d.alphabet, {"", "a", "ab"}, {""}), DfaDomain(t))
    h = build_hypothesis_dfa(idx.Q, idx.T, t)
    state = {q: h.run(q) for q in idx.Q}
    for q in idx.Q:
        for a in d.alphabet:
            assert h.delta[state[q], a] == h.run(q + a) == state.get(q + a, h.run(q + a))
            # every representative of q's class leads to the same class
            for q2 in idx.Q:
                if state[q2] == state[q]:
                    assert h.delta[state[q2], a] == h.delta[state[q], a]
    # table consistency
    for q in idx.Q:
        for a in ("",) + d.alphabet:
            for s in idx.T:
                assert h.accepts(q + a + s) == d.accepts(q + a + s)


def test_complete_with_sink():
    d, added = complete_with_sink("ab", 1, 0, [0], {(0, "a"): 0})
    assert added and d.n_states == 2
    assert d.delta[0, "b"] == 1 and d.delta[1, "a"] == 1 and 1 not in d.accepting
    _, added = complete_with_sink("a", 1, 0, [], {(0, "a"): 0})
    assert not added


def test_dfa_rejects_partial_delta():
    with pytest.raises(ValueError):
        Dfa(("a",), 1, 0, frozenset(), {})
