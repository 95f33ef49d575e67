"""Independent reference deciders used to cross-check the engine.

`benois_member` is an exact decision procedure for rational-subset membership
in free groups (no commuting generators): the automaton is saturated with
silent edges across cancelling letter pairs until a fixpoint, after which a
group element belongs to the subset iff its freely reduced word is accepted.

`bfs_member` is a bounded positive-only search valid over any independence
alphabet; `exponent_sum` is the abelianized necessary-condition filter.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .automata import Nfa
from .errors import InputError
from .letters import SignedGen
from .traces import IndependenceAlphabet, check_word, trace_nf, word_letters


@dataclass(frozen=True)
class OracleVerdict:
    kind: str  # "yes" | "no" | "unknown"
    witness: Optional[tuple] = None

    @property
    def is_yes(self) -> bool:
        return self.kind == "yes"

    @property
    def is_unknown(self) -> bool:
        return self.kind == "unknown"


def free_reduce(word) -> tuple:
    out = []
    for vertex, sign in word:
        if out and out[-1] == (vertex, -sign):
            out.pop()
        else:
            out.append((vertex, sign))
    return tuple(out)


def benois_member(a: Nfa, word, alphabet: IndependenceAlphabet | None = None) -> bool:
    """Exact free-group membership of ``word`` in the image of ``L(a)``."""
    if alphabet is not None:
        if alphabet.edges:
            raise InputError("saturation oracle requires an edge-free alphabet")
        check_word(alphabet, word)
    for label in a.alphabet():
        if not isinstance(label, SignedGen):
            raise InputError("saturation oracle expects signed-generator letters only")

    trans = set(a.transitions)

    def eps_reach(src, edges):
        seen = {src}
        stack = [src]
        eps = {}
        for s, label, d in edges:
            if label is None:
                eps.setdefault(s, []).append(d)
        while stack:
            s = stack.pop()
            for d in eps.get(s, ()):
                if d not in seen:
                    seen.add(d)
                    stack.append(d)
        return seen

    changed = True
    while changed:
        changed = False
        by_label = {}
        for s, label, d in trans:
            if label is not None:
                by_label.setdefault(label, []).append((s, d))
        closures = {s: eps_reach(s, trans) for s in range(a.num_states)}
        for label, pairs in by_label.items():
            partners = by_label.get(label.inverse(), ())
            for p, r in pairs:
                for s, q in partners:
                    if s in closures[r] and (p, None, q) not in trans:
                        trans.add((p, None, q))
                        changed = True

    saturated = Nfa(a.num_states, a.initial, a.accepting, frozenset(trans))
    return saturated.accepts(word_letters(free_reduce(word)))


def bfs_member(
    alphabet: IndependenceAlphabet, a: Nfa, word, maxlen: int
) -> OracleVerdict:
    """Positive-only search: enumerate accepted words up to ``maxlen`` and
    compare normal forms; never answers "no"."""
    if maxlen < 0:
        raise InputError("maxlen must be nonnegative")
    check_word(alphabet, word)
    target = trace_nf(alphabet, word)
    for accepted in sorted(a.enumerate_upto(maxlen), key=lambda w: (len(w), str(w))):
        candidate = tuple((l.vertex, l.sign) for l in accepted)
        if trace_nf(alphabet, candidate) == target:
            return OracleVerdict("yes", candidate)
    return OracleVerdict("unknown")


def exponent_sum(alphabet: IndependenceAlphabet, word) -> tuple:
    """Per-vertex signed letter count, in the alphabet's vertex order."""
    check_word(alphabet, word)
    sums = {v: 0 for v in alphabet.vertices}
    for vertex, sign in word:
        sums[vertex] += sign
    return tuple(sums[v] for v in alphabet.vertices)
