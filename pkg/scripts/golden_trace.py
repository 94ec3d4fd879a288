"""Replay learning of the one-word language {a} over {a}, printing every table repair and hypothesis."""

from funl.dfa import Dfa
from funl.io import dot_export
from funl.learner import ObservationIndex, funl
from funl.teachers import Teacher
from funl.words import fmt

target = Dfa(("a",), 3, 0, frozenset({1}), {(0, "a"): 1, (1, "a"): 2, (2, "a"): 2})


def show(ev):
    if ev.kind == "hypothesis":
        answer = "yes" if ev.word is None else f"no, counterexample {fmt(ev.word)}"
        print(f"hypothesis from {ev.index} ({ev.hypothesis.n_states} states): {answer}")
        print(dot_export(ev.hypothesis))
    else:
        what = "closedness" if ev.kind == "epi" else "consistency"
        print(f"{what} fails, witness {fmt(ev.word)} -> {ev.index}")


if __name__ == "__main__":
    print(f"start {ObservationIndex(target.alphabet)}")
    h, stats = funl(Teacher(target), mode="basic", on_event=show)
    print(f"equivalence queries: {stats.equiv_queries}, evaluation queries: {stats.eval_queries}")
