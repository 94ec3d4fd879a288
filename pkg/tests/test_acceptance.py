"""Exit criteria for the package, one test per criterion.

Each test appends a PASS/FAIL line to the acceptance summary printed at the
end of the pytest session. Runs for criteria 2-7 are shared through
module-scoped fixtures and seeded for reproducibility.
"""

import random
import time
from dataclasses import dataclass, field
from typing import Any

import pytest

from conftest import ACCEPTANCE_LINES
from funl.dfa import dfa_isomorphic, minimize_dfa
from funl.generators import random_dfa, random_sst, random_wfa
from funl.learner import ObservationIndex, TraceEvent, funl
from funl.sst import lcp, minimize_sst, red, sst_isomorphic
from funl.teachers import Teacher
from funl.wfa import minimize_wfa
from funl.words import all_words

from helpers import lang_a, odd_as

N_DFA, N_WFA, N_SST = 200, 100, 100
MODES = ("basic", "optimized")


def report(n: int, ok: bool, detail: str):
    ACCEPTANCE_LINES.append(f"criterion {n}: {'PASS' if ok else 'FAIL'}  {detail}")
    print(ACCEPTANCE_LINES[-1])


@dataclass
class Run:
    target: Any
    mode: str
    hypothesis: Any
    events: list[TraceEvent]
    stats: Any
    seconds: float
    minimal: Any = None
    hypotheses: list = field(default_factory=list)


def learn_all(targets, minimize):
    runs = []
    for tgt in targets:
        m = minimize(tgt)
        for mode in MODES:
            events: list[TraceEvent] = []
            t0 = time.perf_counter()
            h, stats = funl(Teacher(tgt), mode=mode, on_event=events.append)
            dt = time.perf_counter() - t0
            runs.append(Run(tgt, mode, h, events, stats, dt, m,
                            [e.hypothesis for e in events if e.kind == "hypothesis"]))
    return runs


@pytest.fixture(scope="module")
def dfa_runs():
    rng = random.Random(20240601)
    return learn_all([random_dfa(rng, max_states=10) for _ in range(N_DFA)], minimize_dfa)


@pytest.fixture(scope="module")
def wfa_runs():
    rng = random.Random(20240602)
    return learn_all([random_wfa(rng, max_dim=5) for _ in range(N_WFA)], minimize_wfa)


@pytest.fixture(scope="module")
def sst_runs():
    rng = random.Random(20240603)
    return learn_all([random_sst(rng, max_states=6, max_out=2, p_missing=0.2) for _ in range(N_SST)],
                     minimize_sst)


def evaluator(x):
    for attr in ("accepts", "value", "transduce"):
        if hasattr(x, attr):
            return getattr(x, attr)
    raise TypeError(x)


# -- criterion 1 -----------------------------------------------------------

def test_c1_golden_trace():
    t0 = time.perf_counter()
    events: list[TraceEvent] = []
    h, stats = funl(Teacher(lang_a()), mode="basic", on_event=events.append)
    dt = time.perf_counter() - t0
    steps = [(e.kind, e.word) for e in events]
    first, last = events[1].hypothesis, events[3].hypothesis
    checks = [
        steps == [("epi", "a"), ("hypothesis", "aaa"), ("mono", "a"), ("hypothesis", None)],
        events[0].index == ObservationIndex(("a",), {"", "a"}, {""}),
        first.n_states == 2 and dfa_isomorphic(first, odd_as()),
        dict(first.delta) == {(0, "a"): 1, (1, "a"): 0} and first.accepting == {1},
        events[2].index == ObservationIndex(("a",), {"", "a", "aa", "aaa"}, {"", "a"}),
        last is h and h.n_states == 3 and dfa_isomorphic(h, lang_a()),
        stats.equiv_queries == 2,
        dt < 1.0,
    ]
    ok = all(checks)
    report(1, ok, f"golden trace {steps}, equiv_queries={stats.equiv_queries}, {dt * 1000:.1f} ms")
    assert ok, checks


# -- criteria 2-4 ----------------------------------------------------------

def test_c2_dfa_roundtrip(dfa_runs):
    good = sum(dfa_isomorphic(r.hypothesis, r.minimal) for r in dfa_runs)
    total = sum(r.seconds for r in dfa_runs)
    per_target = {}
    for i, r in enumerate(dfa_runs):
        per_target.setdefault(i // 2, []).append(dfa_isomorphic(r.hypothesis, r.minimal))
    targets_ok = sum(all(v) for v in per_target.values())
    ok = targets_ok == N_DFA and good == len(dfa_runs) and total < 30.0
    report(2, ok, f"{targets_ok}/{N_DFA} DFAs isomorphic to minimized target in both modes, {total:.2f} s")
    assert ok


def test_c3_wfa_roundtrip(wfa_runs):
    words = all_words("ab", 6)
    per_target = {}
    for i, r in enumerate(wfa_runs):
        f, h = r.target.value, r.hypothesis.value
        ok_run = r.hypothesis.dim == r.minimal.dim and all(h(w) == f(w) for w in words)
        per_target.setdefault(i // 2, []).append(ok_run)
    targets_ok = sum(all(v) for v in per_target.values())
    ok = targets_ok == N_WFA
    report(3, ok, f"{targets_ok}/{N_WFA} WFAs: minimal dimension and exact agreement on |w| <= 6")
    assert ok


def test_c4_sst_roundtrip(sst_runs):
    words = all_words("ab", 6)
    per_target = {}
    for i, r in enumerate(sst_runs):
        f, h = r.target.transduce, r.hypothesis.transduce
        ok_run = sst_isomorphic(r.hypothesis, r.minimal) and all(h(w) == f(w) for w in words)
        per_target.setdefault(i // 2, []).append(ok_run)
    targets_ok = sum(all(v) for v in per_target.values())
    ok = targets_ok == N_SST
    report(4, ok, f"{targets_ok}/{N_SST} SSTs isomorphic to onward minimal form, values agree on |w| <= 6")
    assert ok


# -- criterion 5 -----------------------------------------------------------

def test_c5_basic_vs_optimized(dfa_runs, wfa_runs, sst_runs):
    failures = []
    repairs = 0
    for name, runs in (("dfa", dfa_runs), ("wfa", wfa_runs), ("sst", sst_runs)):
        for i in range(0, len(runs), 2):
            basic, opt = runs[i], runs[i + 1]
            assert (basic.mode, opt.mode) == MODES
            dom = Teacher(basic.target).domain()
            if not dom.equivalent(basic.hypothesis, opt.hypothesis):
                failures.append((name, i // 2, "final hypotheses differ"))
            for e in opt.events:
                if e.kind == "epi":
                    repairs += 1
                    if len(e.index.Q - e.before.Q) != 1 or e.index.T != e.before.T:
                        failures.append((name, i // 2, "epi repair added more than one word"))
                elif e.kind == "mono":
                    repairs += 1
                    if len(e.index.T - e.before.T) != 1 or e.index.Q != e.before.Q:
                        failures.append((name, i // 2, "mono repair added more than one word"))
    ok = not failures
    report(5, ok, f"{N_DFA + N_WFA + N_SST} targets, {repairs} optimized repairs each adding one word; "
                  f"{len(failures)} violations")
    assert ok, failures[:5]


# -- criterion 6 -----------------------------------------------------------

def test_c6_noetherian_bounds(dfa_runs, wfa_runs, sst_runs):
    size = {"dfa": lambda m: m.n_states, "wfa": lambda m: m.dim, "sst": lambda m: m.n_states}
    failures = []
    checked = 0
    for name, runs in (("dfa", dfa_runs), ("wfa", wfa_runs), ("sst", sst_runs)):
        for k, r in enumerate(runs):
            dom = Teacher(r.target).domain()
            bound = size[name](r.minimal)
            prev = ObservationIndex(tuple(r.target.alphabet))
            for e in r.events:
                checked += 1
                if not (prev.Q <= e.index.Q and prev.T <= e.index.T):
                    failures.append((name, k, "index shrank"))
                prev = e.index
                if dom.factor_size(e.index.Q, e.index.T) > bound:
                    failures.append((name, k, "measure above minimal"))
            hs = r.hypotheses
            for i in range(len(hs)):
                for j in range(i + 1, len(hs)):
                    if dom.equivalent(hs[i], hs[j]):
                        failures.append((name, k, f"hypotheses {i} and {j} equivalent"))
    ok = not failures
    report(6, ok, f"{checked} table snapshots within the minimal measure, hypotheses pairwise distinct; "
                  f"{len(failures)} violations")
    assert ok, failures[:5]


# -- criterion 7 -----------------------------------------------------------

def test_c7_hypothesis_consistency(dfa_runs, wfa_runs, sst_runs):
    violations = 0
    checked = 0
    for runs in (dfa_runs, wfa_runs, sst_runs):
        for r in runs:
            L = evaluator(r.target)
            for e in r.events:
                if e.kind != "hypothesis":
                    continue
                H = evaluator(e.hypothesis)
                for q in e.index.Q:
                    for a in ("",) + tuple(r.target.alphabet):
                        for t in e.index.T:
                            checked += 1
                            w = q + a + t
                            if H(w) != L(w):
                                violations += 1
    ok = violations == 0
    report(7, ok, f"{checked} (q, a, t) checks across all hypotheses, {violations} violations")
    assert ok


# -- criterion 8 -----------------------------------------------------------

def test_c8_lcp_red_properties():
    rng = random.Random(8)
    violations = 0
    for _ in range(1000):
        n = rng.randint(0, 6)
        stem = "".join(rng.choice("xy") for _ in range(rng.randint(0, 3)))
        r = tuple(None if rng.random() < 0.3 else stem + "".join(rng.choice("xyz") for _ in range(rng.randint(0, 3)))
                  for _ in range(n))
        rr = red(r)
        p = lcp(r)
        ok = red(rr) == rr
        ok &= [x is None for x in r] == [x is None for x in rr]
        if p is None:
            ok &= all(x is None for x in r) and rr == r and lcp(rr) is None
        else:
            ok &= lcp(rr) == "" and all(x is None or x == p + y for x, y in zip(r, rr))
        violations += not ok
    report(8, violations == 0, f"1000 random partial rows, {violations} violations")
    assert violations == 0


if __name__ == "__main__":
    raise SystemExit(pytest.main([__file__, "-q"]))
