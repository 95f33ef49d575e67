"""JSON file formats and textual syntaxes for the command-line front-end.

* alphabet file: ``{"vertices": ["a","b"], "edges": [["a","b"]]}``
* automaton file: ``{"states": N, "initial": i, "accepting": [..],
  "transitions": [[src, "a", dst], ...]}`` with labels ``"a"``, ``"a^-1"``,
  or ``""`` for a silent move; only signed generators may appear.
* grammar file: ``{"start": "S", "productions": [["S", ["a","S","b"]],
  ["S", []], ["S", {"automaton": {...}}]]}``.
"""

from __future__ import annotations

import json

from .automata import Nfa
from .errors import InputError
from .grammar import ExtendedCfg
from .letters import SignedGen
from .traces import IndependenceAlphabet


def load_json(path: str):
    try:
        with open(path, "r", encoding="utf-8") as handle:
            return json.load(handle)
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise InputError(f"{path} is not valid JSON: {exc}") from exc


def alphabet_from_dict(data) -> IndependenceAlphabet:
    if not isinstance(data, dict):
        raise InputError("alphabet file must hold a JSON object")
    vertices = data.get("vertices")
    if not isinstance(vertices, list) or not all(isinstance(v, str) for v in vertices):
        raise InputError('"vertices" must be a list of strings')
    edges = data.get("edges", [])
    if not isinstance(edges, list):
        raise InputError('"edges" must be a list of vertex pairs')
    pairs = []
    for e in edges:
        if not (isinstance(e, list) and len(e) == 2):
            raise InputError(f"bad edge entry {e!r}")
        pairs.append((e[0], e[1]))
    return IndependenceAlphabet(tuple(vertices), pairs)


def load_alphabet(path: str) -> IndependenceAlphabet:
    return alphabet_from_dict(load_json(path))


def parse_letter(text: str) -> SignedGen:
    if text.endswith("^-1"):
        name = text[:-3]
        if not name:
            raise InputError(f"bad transition label {text!r}")
        return SignedGen(name, -1)
    return SignedGen(text, 1)


def automaton_from_dict(data) -> Nfa:
    if not isinstance(data, dict):
        raise InputError("automaton file must hold a JSON object")
    try:
        num_states = int(data["states"])
        initial = int(data["initial"])
        accepting = [int(s) for s in data["accepting"]]
        raw = data["transitions"]
    except (KeyError, TypeError, ValueError) as exc:
        raise InputError(f"malformed automaton object: {exc}") from exc
    transitions = set()
    for entry in raw:
        if not (isinstance(entry, list) and len(entry) == 3):
            raise InputError(f"bad transition entry {entry!r}")
        src, label, dst = entry
        if not isinstance(label, str):
            raise InputError(f"transition label must be a string: {entry!r}")
        letter = None if label == "" else parse_letter(label)
        transitions.add((int(src), letter, int(dst)))
    try:
        return Nfa(num_states, initial, frozenset(accepting), frozenset(transitions))
    except InputError:
        raise
    except ValueError as exc:
        raise InputError(str(exc)) from exc


def load_automaton(path: str) -> Nfa:
    return automaton_from_dict(load_json(path))


def grammar_from_dict(data) -> ExtendedCfg:
    if not isinstance(data, dict):
        raise InputError("grammar file must hold a JSON object")
    start = data.get("start")
    raw = data.get("productions")
    if not isinstance(start, str) or not isinstance(raw, list):
        raise InputError('grammar file needs "start" and "productions"')
    heads = set()
    for entry in raw:
        if not (isinstance(entry, list) and len(entry) == 2 and isinstance(entry[0], str)):
            raise InputError(f"bad production entry {entry!r}")
        heads.add(entry[0])
    if start not in heads:
        heads.add(start)

    def symbol(token):
        if not isinstance(token, str):
            raise InputError(f"bad symbol {token!r}")
        return token if token in heads else parse_letter(token)

    terminals = set()
    productions = []
    for head, body in raw:
        if isinstance(body, list):
            rhs = tuple(symbol(t) for t in body)
            terminals |= {s for s in rhs if not isinstance(s, str)}
            productions.append((head, rhs))
        elif isinstance(body, dict) and "automaton" in body:
            aut = body["automaton"]
            if not isinstance(aut, dict):
                raise InputError("regular right-hand side must hold an automaton object")
            relabeled = set()
            try:
                num_states = int(aut["states"])
                initial = int(aut["initial"])
                accepting = [int(s) for s in aut["accepting"]]
                raw_edges = aut["transitions"]
            except (KeyError, TypeError, ValueError) as exc:
                raise InputError(f"malformed right-hand-side automaton: {exc}") from exc
            for entry in raw_edges:
                if not (isinstance(entry, list) and len(entry) == 3):
                    raise InputError(f"bad transition entry {entry!r}")
                src, label, dst = entry
                sym = None if label == "" else symbol(label)
                if sym is not None and not isinstance(sym, str):
                    terminals.add(sym)
                relabeled.add((int(src), sym, int(dst)))
            productions.append(
                (head, Nfa(num_states, initial, frozenset(accepting), frozenset(relabeled)))
            )
        else:
            raise InputError(f"bad production body {body!r}")
    return ExtendedCfg(start, frozenset(heads), frozenset(terminals), tuple(productions))


def load_grammar(path: str) -> ExtendedCfg:
    return grammar_from_dict(load_json(path))
