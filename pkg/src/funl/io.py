"""JSON automaton documents and DOT export.

One document format covers all three automaton kinds, discriminated by
``type``. State indices are JSON integers in values and decimal strings in
map keys. Rationals are strings ``"p/q"`` (``"p"`` when q == 1); transducer
outputs are strings, with JSON ``null`` for undefined.
"""

from __future__ import annotations

import json
import logging
from fractions import Fraction
from typing import Any

from .dfa import Dfa, complete_with_sink
from .errors import AutomatonFormatError
from .linalg import format_rational, parse_rational
from .sst import Sst
from .wfa import Wfa
from .words import fmt

log = logging.getLogger(__name__)

Automaton = Dfa | Wfa | Sst


# -- parsing ---------------------------------------------------------------

def _expect(cond: bool, msg: str, loc: str):
    if not cond:
        raise AutomatonFormatError(msg, loc)


def _int(x, loc: str, n: int | None = None) -> int:
    _expect(isinstance(x, int) and not isinstance(x, bool), f"expected an integer, got {x!r}", loc)
    if n is not None:
        _expect(0 <= x < n, f"state {x} out of range 0..{n - 1}", loc)
    return x


def _state_key(k: str, loc: str, n: int) -> int:
    _expect(k.isdigit(), f"state key must be a decimal index, got {k!r}", loc)
    return _int(int(k), loc, n)


def _alphabet(doc, key: str) -> tuple[str, ...]:
    loc = f"$.{key}"
    letters = doc.get(key)
    _expect(isinstance(letters, list), "expected a list of symbols", loc)
    for i, a in enumerate(letters):
        _expect(isinstance(a, str) and len(a) == 1, f"symbols must be single characters, got {a!r}",
                f"{loc}[{i}]")
    _expect(len(set(letters)) == len(letters), "duplicate symbols", loc)
    return tuple(letters)


def _word(x, letters, loc: str) -> str:
    _expect(isinstance(x, str), f"expected an output word, got {x!r}", loc)
    _expect(set(x) <= set(letters), f"output {x!r} uses letters outside the output alphabet", loc)
    return x


def _rat(x, loc: str) -> Fraction:
    try:
        return parse_rational(x)
    except (ValueError, ZeroDivisionError) as e:
        raise AutomatonFormatError(str(e), loc) from None


def _labels(doc, n: int):
    labels = doc.get("labels")
    if labels is None:
        return None
    _expect(isinstance(labels, list) and len(labels) == n and all(isinstance(s, str) for s in labels),
            f"labels must be a list of {n} strings", "$.labels")
    return tuple(labels)


def _parse_dfa(doc) -> Dfa:
    A = _alphabet(doc, "alphabet")
    n = _int(doc.get("states"), "$.states")
    _expect(n >= 1, "a DFA needs at least one state", "$.states")
    initial = _int(doc.get("initial"), "$.initial", n)
    acc = doc.get("accepting", [])
    _expect(isinstance(acc, list), "expected a list", "$.accepting")
    accepting = [_int(s, f"$.accepting[{i}]", n) for i, s in enumerate(acc)]
    trans = doc.get("transitions", {})
    _expect(isinstance(trans, dict), "expected an object", "$.transitions")
    delta = {}
    for k, row in trans.items():
        loc = f"$.transitions.{k}"
        s = _state_key(k, loc, n)
        _expect(isinstance(row, dict), "expected an object", loc)
        for a, t in row.items():
            _expect(a in A, f"unknown letter {a!r}", f"{loc}.{a}")
            delta[s, a] = _int(t, f"{loc}.{a}", n)
    d, added = complete_with_sink(A, n, initial, accepting, delta, _labels(doc, n))
    if added:
        log.warning("partial DFA completed with a rejecting sink state %d", d.n_states - 1)
    return d


def _parse_wfa(doc) -> Wfa:
    A = _alphabet(doc, "alphabet")
    n = _int(doc.get("dim"), "$.dim")
    _expect(n >= 0, "dimension must be non-negative", "$.dim")

    def vector(key):
        v = doc.get(key)
        _expect(isinstance(v, list) and len(v) == n, f"expected a list of {n} rationals", f"$.{key}")
        return tuple(_rat(x, f"$.{key}[{i}]") for i, x in enumerate(v))

    alpha, beta = vector("alpha"), vector("beta")
    trans = doc.get("transitions")
    _expect(isinstance(trans, dict), "expected an object", "$.transitions")
    mats = {}
    for a in A:
        loc = f"$.transitions.{a}"
        m = trans.get(a)
        _expect(isinstance(m, list) and len(m) == n, f"expected a {n}x{n} matrix", loc)
        rows = []
        for i, r in enumerate(m):
            _expect(isinstance(r, list) and len(r) == n, f"expected a row of {n} rationals", f"{loc}[{i}]")
            rows.append(tuple(_rat(x, f"{loc}[{i}][{j}]") for j, x in enumerate(r)))
        mats[a] = tuple(rows)
    for a in trans:
        _expect(a in A, f"unknown letter {a!r}", f"$.transitions.{a}")
    return Wfa(A, n, alpha, mats, beta, _labels(doc, n))


def _parse_sst(doc) -> Sst:
    A = _alphabet(doc, "alphabet")
    B = _alphabet(doc, "output_alphabet")
    trans = doc.get("transitions", {})
    finals = doc.get("finals", {})
    _expect(isinstance(trans, dict), "expected an object", "$.transitions")
    _expect(isinstance(finals, dict), "expected an object", "$.finals")
    init = doc.get("initial")
    if "states" in doc:
        n = _int(doc["states"], "$.states")
    else:
        mentioned = [int(k) for k in list(trans) + list(finals) if isinstance(k, str) and k.isdigit()]
        for row in trans.values():
            if isinstance(row, dict):
                mentioned += [e["to"] for e in row.values() if isinstance(e, dict) and isinstance(e.get("to"), int)]
        if isinstance(init, dict) and isinstance(init.get("state"), int):
            mentioned.append(init["state"])
        n = max(mentioned, default=-1) + 1
    initial = None
    if init is not None:
        _expect(isinstance(init, dict), "expected {state, out} or null", "$.initial")
        initial = (_int(init.get("state"), "$.initial.state", n), _word(init.get("out", ""), B, "$.initial.out"))
    delta = {}
    for k, row in trans.items():
        loc = f"$.transitions.{k}"
        s = _state_key(k, loc, n)
        _expect(isinstance(row, dict), "expected an object", loc)
        for a, e in row.items():
            _expect(a in A, f"unknown letter {a!r}", f"{loc}.{a}")
            _expect(isinstance(e, dict), "expected {to, out}", f"{loc}.{a}")
            delta[s, a] = (_int(e.get("to"), f"{loc}.{a}.to", n), _word(e.get("out", ""), B, f"{loc}.{a}.out"))
    final = {}
    for k, o in finals.items():
        loc = f"$.finals.{k}"
        s = _state_key(k, loc, n)
        if o is not None:
            final[s] = _word(o, B, loc)
    return Sst(A, B, n, initial, delta, final, _labels(doc, n))


def from_document(doc: Any) -> Automaton:
    _expect(isinstance(doc, dict), "document must be a JSON object", "$")
    kind = doc.get("type")
    parsers = {"dfa": _parse_dfa, "wfa": _parse_wfa, "sst": _parse_sst}
    _expect(kind in parsers, f"type must be one of dfa, wfa, sst; got {kind!r}", "$.type")
    try:
        return parsers[kind](doc)
    except ValueError as e:  # invariant checks in the automaton constructors
        raise AutomatonFormatError(str(e), "$") from None


def parse_automaton(text: str) -> Automaton:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as e:
        raise AutomatonFormatError(e.msg, f"line {e.lineno} column {e.colno}") from None
    return from_document(doc)


# -- serialization ---------------------------------------------------------

def to_document(x: Automaton) -> dict:
    if isinstance(x, Dfa):
        doc = {
            "type": "dfa",
            "alphabet": list(x.alphabet),
            "states": x.n_states,
            "initial": x.initial,
            "accepting": sorted(x.accepting),
            "transitions": {str(s): {a: x.delta[s, a] for a in x.alphabet} for s in range(x.n_states)},
        }
    elif isinstance(x, Wfa):
        doc = {
            "type": "wfa",
            "alphabet": list(x.alphabet),
            "dim": x.dim,
            "alpha": [format_rational(v) for v in x.alpha],
            "transitions": {a: [[format_rational(v) for v in r] for r in x.mats[a]] for a in x.alphabet},
            "beta": [format_rational(v) for v in x.beta],
        }
    elif isinstance(x, Sst):
        trans: dict[str, dict] = {}
        for (s, a), (t, o) in x.delta.items():
            trans.setdefault(str(s), {})[a] = {"to": t, "out": o}
        doc = {
            "type": "sst",
            "alphabet": list(x.alphabet),
            "output_alphabet": list(x.output_alphabet),
            "states": x.n_states,
            "initial": None if x.initial is None else {"state": x.initial[0], "out": x.initial[1]},
            "transitions": trans,
            "finals": {str(s): o for s, o in x.final.items()},
        }
    else:
        raise TypeError(f"not an automaton: {type(x).__name__}")
    if x.labels is not None:
        doc["labels"] = list(x.labels)
    return doc


def serialize_automaton(x: Automaton) -> str:
    """Canonical JSON text: keys sorted (state keys numerically), rationals reduced."""
    doc = _sort(to_document(x))
    body = ",\n".join(f"  {json.dumps(k)}: {json.dumps(v, ensure_ascii=False)}" for k, v in doc.items())
    return "{\n" + body + "\n}\n"


def _sort(obj):
    if isinstance(obj, dict):
        keys = sorted(obj, key=lambda k: (0, int(k), "") if k.isdigit() else (1, 0, k))
        return {k: _sort(obj[k]) for k in keys}
    if isinstance(obj, list):
        return [_sort(v) for v in obj]
    return obj


# -- DOT -------------------------------------------------------------------

def _q(s: str) -> str:
    return '"' + s.replace("\\", "\\\\").replace('"', '\\"') + '"'


def _names(x: Automaton, n: int) -> list[str]:
    return [fmt(x.labels[i]) if x.labels else str(i) for i in range(n)]


def dot_export(x: Automaton) -> str:
    """Graphviz digraph. DFA accepting states are double circles; WFA edges read
    ``a : weight`` (zero weights omitted); SST edges read ``a / output``."""
    lines = ["digraph {", "  rankdir=LR;", "  node [shape=circle];"]
    if isinstance(x, Dfa):
        names = _names(x, x.n_states)
        lines.append("  __start [shape=point];")
        for s in range(x.n_states):
            shape = "doublecircle" if s in x.accepting else "circle"
            lines.append(f"  {_q(names[s])} [shape={shape}];")
        lines.append(f"  __start -> {_q(names[x.initial])};")
        for s in range(x.n_states):
            for a in x.alphabet:
                lines.append(f"  {_q(names[s])} -> {_q(names[x.delta[s, a]])} [label={_q(a)}];")
    elif isinstance(x, Wfa):
        if x.dim == 0:
            lines.append('  empty [shape=plaintext, label="dimension 0: zero function"];')
        names = _names(x, x.dim)
        for i in range(x.dim):
            lab = f"{names[i]}\\nin {format_rational(x.alpha[i])} / out {format_rational(x.beta[i])}"
            lines.append(f"  {_q(names[i])} [label={_q(lab)}];")
        for a in x.alphabet:
            for i in range(x.dim):
                for j in range(x.dim):
                    w = x.mats[a][i][j]
                    if w:
                        lines.append(f"  {_q(names[i])} -> {_q(names[j])} "
                                     f"[label={_q(f'{a} : {format_rational(w)}')}];")
    elif isinstance(x, Sst):
        names = _names(x, x.n_states)
        if x.initial is None:
            lines.append('  empty [shape=plaintext, label="nowhere defined"];')
        for s in range(x.n_states):
            if s in x.final:
                lines.append(f"  {_q(names[s])} [shape=doublecircle, "
                             f"label={_q(names[s] + ' / ' + fmt(x.final[s]))}];")
            else:
                lines.append(f"  {_q(names[s])};")
        if x.initial is not None:
            lines.append("  __start [shape=point];")
            lines.append(f"  __start -> {_q(names[x.initial[0]])} [label={_q(fmt(x.initial[1]))}];")
        for s in range(x.n_states):
            for a in x.alphabet:
                if (s, a) in x.delta:
                    t, o = x.delta[s, a]
                    lines.append(f"  {_q(names[s])} -> {_q(names[t])} [label={_q(f'{a} / {fmt(o)}')}];")
    else:
        raise TypeError(f"not an automaton: {type(x).__name__}")
    lines.append("}")
    return "\n".join(lines) + "\n"
