"""Nondeterministic finite automata over mixed alphabets.

Transition labels are arbitrary hashables (``None`` is the silent move); the
membership engine uses :mod:`ggdec.letters` objects, the grammar module also
routes its own symbols through these automata.  All constructions are
functional: every operation returns a fresh automaton.

`nfa_parikh` computes the exact Parikh image of the accepted language by
path/cycle decomposition; `sl_realize` is its one-sided inverse, spelling a
semilinear set back into a canonical regular language.
"""

from __future__ import annotations

from collections import defaultdict, deque
from dataclasses import dataclass

from .errors import InputError, ResourceLimitError
from .letters import PairLetter, letter_key
from .semilinear import (
    CoordSpace,
    LinearSet,
    SemilinearSet,
    Vector,
    sl_empty,
    space_from_letters,
)


def label_sort_key(label):
    try:
        return (0,) + letter_key(label)
    except TypeError:
        return (1, repr(label))


@dataclass(frozen=True)
class Nfa:
    num_states: int
    initial: int
    accepting: frozenset
    transitions: frozenset  # of (src, label-or-None, dst)

    def __post_init__(self):
        object.__setattr__(self, "accepting", frozenset(self.accepting))
        object.__setattr__(self, "transitions", frozenset(self.transitions))
        if self.num_states < 1:
            raise InputError("an automaton needs at least one state")
        if not 0 <= self.initial < self.num_states:
            raise InputError("initial state out of range")
        for s in self.accepting:
            if not 0 <= s < self.num_states:
                raise InputError("accepting state out of range")
        for src, _label, dst in self.transitions:
            if not (0 <= src < self.num_states and 0 <= dst < self.num_states):
                raise InputError("transition endpoint out of range")

    # -- basic queries -----------------------------------------------------

    def alphabet(self) -> tuple:
        return tuple(
            sorted(
                {label for _, label, _ in self.transitions if label is not None},
                key=label_sort_key,
            )
        )

    def _eps_closure(self, states) -> frozenset:
        seen = set(states)
        stack = list(states)
        eps = defaultdict(list)
        for src, label, dst in self.transitions:
            if label is None:
                eps[src].append(dst)
        while stack:
            s = stack.pop()
            for t in eps[s]:
                if t not in seen:
                    seen.add(t)
                    stack.append(t)
        return frozenset(seen)

    def accepts(self, word) -> bool:
        current = self._eps_closure({self.initial})
        step = defaultdict(set)
        for src, label, dst in self.transitions:
            if label is not None:
                step[(src, label)].add(dst)
        for letter in word:
            nxt = set()
            for s in current:
                nxt |= step.get((s, letter), set())
            if not nxt:
                return False
            current = self._eps_closure(nxt)
        return bool(current & self.accepting)

    def enumerate_upto(self, maxlen: int):
        """All accepted words of length <= maxlen (oracle use only)."""
        letters = self.alphabet()
        step = defaultdict(set)
        for src, label, dst in self.transitions:
            if label is not None:
                step[(src, label)].add(dst)
        start = self._eps_closure({self.initial})
        found = set()
        frontier = {(): start}
        for length in range(maxlen + 1):
            for word, states in frontier.items():
                if states & self.accepting:
                    found.add(word)
            if length == maxlen:
                break
            nxt = {}
            for word, states in frontier.items():
                for letter in letters:
                    targets = set()
                    for s in states:
                        targets |= step.get((s, letter), set())
                    if targets:
                        nxt[word + (letter,)] = self._eps_closure(targets)
            frontier = nxt
        return found

    def fingerprint(self):
        return (
            self.num_states,
            self.initial,
            tuple(sorted(self.accepting)),
            tuple(sorted(self.transitions, key=lambda t: (t[0], label_sort_key(t[1]), t[2]))),
        )


# ---------------------------------------------------------------------------
# rational operations
# ---------------------------------------------------------------------------

def from_word(word) -> Nfa:
    word = tuple(word)
    trans = {(i, letter, i + 1) for i, letter in enumerate(word)}
    return Nfa(len(word) + 1, 0, frozenset({len(word)}), frozenset(trans))


def empty_language() -> Nfa:
    return Nfa(1, 0, frozenset(), frozenset())


def union(*automata: Nfa) -> Nfa:
    if not automata:
        return empty_language()
    trans = set()
    accepting = set()
    offset = 1
    for a in automata:
        trans.add((0, None, a.initial + offset))
        for src, label, dst in a.transitions:
            trans.add((src + offset, label, dst + offset))
        accepting |= {s + offset for s in a.accepting}
        offset += a.num_states
    return Nfa(offset, 0, frozenset(accepting), frozenset(trans))


def concat(a: Nfa, b: Nfa) -> Nfa:
    trans = set(a.transitions)
    off = a.num_states
    for src, label, dst in b.transitions:
        trans.add((src + off, label, dst + off))
    for f in a.accepting:
        trans.add((f, None, b.initial + off))
    accepting = frozenset(s + off for s in b.accepting)
    return Nfa(a.num_states + b.num_states, a.initial, accepting, frozenset(trans))


def star(a: Nfa) -> Nfa:
    hub = a.num_states
    trans = set(a.transitions)
    trans.add((hub, None, a.initial))
    for f in a.accepting:
        trans.add((f, None, hub))
    return Nfa(a.num_states + 1, hub, frozenset({hub}), frozenset(trans))


def prepend_word(a: Nfa, word) -> Nfa:
    """Automaton for word . L(a)."""
    return concat(from_word(word), a)


def restrict_alphabet(a: Nfa, letters) -> Nfa:
    letters = set(letters)
    trans = frozenset(
        (src, label, dst)
        for src, label, dst in a.transitions
        if label is None or label in letters
    )
    return Nfa(a.num_states, a.initial, a.accepting, trans)


# ---------------------------------------------------------------------------
# structural reductions
# ---------------------------------------------------------------------------

def trim(a: Nfa) -> Nfa:
    """Keep states reachable from the initial state and co-reachable from
    an accepting state; collapses to a one-state reject automaton if the
    language is empty."""
    fwd = defaultdict(set)
    bwd = defaultdict(set)
    for src, _label, dst in a.transitions:
        fwd[src].add(dst)
        bwd[dst].add(src)

    def explore(seeds, graph):
        seen = set(seeds)
        stack = list(seeds)
        while stack:
            s = stack.pop()
            for t in graph[s]:
                if t not in seen:
                    seen.add(t)
                    stack.append(t)
        return seen

    reach = explore({a.initial}, fwd)
    co = explore(set(a.accepting), bwd)
    alive = reach & co
    if not alive:
        return empty_language()
    order = sorted(alive)
    remap = {s: i for i, s in enumerate(order)}
    trans = frozenset(
        (remap[src], label, remap[dst])
        for src, label, dst in a.transitions
        if src in alive and dst in alive
    )
    accepting = frozenset(remap[s] for s in a.accepting if s in alive)
    return Nfa(len(order), remap[a.initial], accepting, trans)


def collapse_eps_sccs(a: Nfa) -> Nfa:
    """Quotient by mutual silent reachability; preserves the language."""
    eps = defaultdict(set)
    for src, label, dst in a.transitions:
        if label is None:
            eps[src].add(dst)
    # Tarjan-free SCC via double DFS (Kosaraju) on the eps graph
    order = []
    seen = set()
    for root in range(a.num_states):
        if root in seen:
            continue
        stack = [(root, iter(sorted(eps[root])))]
        seen.add(root)
        while stack:
            node, it = stack[-1]
            advanced = False
            for nxt in it:
                if nxt not in seen:
                    seen.add(nxt)
                    stack.append((nxt, iter(sorted(eps[nxt]))))
                    advanced = True
                    break
            if not advanced:
                order.append(node)
                stack.pop()
    reps = {}
    rev = defaultdict(set)
    for src in eps:
        for dst in eps[src]:
            rev[dst].add(src)
    comp = {}
    for node in reversed(order):
        if node in comp:
            continue
        stack = [node]
        comp[node] = node
        while stack:
            s = stack.pop()
            for t in rev[s]:
                if t not in comp:
                    comp[t] = node
                    stack.append(t)
    members = sorted(set(comp.values()))
    remap = {rep: i for i, rep in enumerate(members)}

    def cls(s):
        return remap[comp[s]]

    trans = set()
    for src, label, dst in a.transitions:
        ns, nd = cls(src), cls(dst)
        if label is None and ns == nd:
            continue
        trans.add((ns, label, nd))
    accepting = frozenset(cls(s) for s in a.accepting)
    return Nfa(len(members), cls(a.initial), accepting, frozenset(trans))


# ---------------------------------------------------------------------------
# Parikh image
# ---------------------------------------------------------------------------

def _edge_vector(space: CoordSpace, index, label):
    entries = [0] * space.dimension
    if label is not None:
        entries[index[label]] += 1
    return tuple(entries)


_SEARCH_STEP_CAP = 400_000


def _simple_paths(edges_from, start, goals, space_dim, edge_vecs, path_cap):
    """Distinct (parikh, visited-state-set) pairs over simple paths."""
    out = set()
    steps = 0
    stack = [(start, frozenset({start}), (0,) * space_dim)]
    while stack:
        steps += 1
        if steps > _SEARCH_STEP_CAP:
            raise ResourceLimitError("simple-path search exceeded the step cap")
        node, visited, parikh = stack.pop()
        if node in goals:
            out.add((parikh, visited))
            if len(out) > path_cap:
                raise ResourceLimitError("too many distinct simple paths in Parikh computation")
        for eid, dst in edges_from[node]:
            if dst in visited:
                continue
            vec = edge_vecs[eid]
            stack.append(
                (dst, visited | {dst}, tuple(p + v for p, v in zip(parikh, vec)))
            )
    return out


def _simple_cycles(edges_from, num_states, space_dim, edge_vecs, cycle_cap):
    """Distinct (parikh, state-set) pairs over simple cycles."""
    out = set()
    steps = 0
    for root in range(num_states):
        stack = [(root, frozenset({root}), (0,) * space_dim)]
        while stack:
            steps += 1
            if steps > _SEARCH_STEP_CAP:
                raise ResourceLimitError("simple-cycle search exceeded the step cap")
            node, visited, parikh = stack.pop()
            for eid, dst in edges_from[node]:
                vec = edge_vecs[eid]
                if dst == root:
                    total = tuple(p + v for p, v in zip(parikh, vec))
                    if any(total):
                        out.add((total, visited))
                        if len(out) > cycle_cap:
                            raise ResourceLimitError(
                                "too many simple cycles in Parikh computation"
                            )
                elif dst > root and dst not in visited:
                    stack.append(
                        (dst, visited | {dst}, tuple(p + v for p, v in zip(parikh, vec)))
                    )
    return out


def _connected_subsets(anchor_states, cycles, emit, component_cap):
    """Emit every set of cycles whose union is connected to the anchor set.

    Standard connected-subset enumeration: grow by cycles touching the
    current territory, excluding earlier branch choices to avoid duplicates.
    """
    count = 0

    def rec(chosen, territory, candidates):
        nonlocal count
        emit(chosen)
        count += 1
        if count > component_cap:
            raise ResourceLimitError("semilinear representation exceeds the component cap")
        banned = set()
        for i, (vec, states) in candidates:
            if states & territory:
                rec(
                    chosen + ((vec, states),),
                    territory | states,
                    [
                        (j, c)
                        for j, c in candidates
                        if j != i and j not in banned
                    ],
                )
                banned.add(i)

    rec((), frozenset(anchor_states), list(enumerate(cycles)))


def nfa_parikh(
    a: Nfa,
    space: CoordSpace | None = None,
    *,
    max_states: int = 12,
    cycle_cap: int = 64,
    path_cap: int = 4096,
    component_cap: int = 60000,
) -> SemilinearSet:
    """Exact Parikh image of ``L(a)`` as a semilinear set.

    For every simple path from the initial state to an accepting state and
    every set of simple cycles connected to it through shared states, one
    linear component is emitted: the path's letter counts plus one traversal
    of each chosen cycle as the constant, the cycles' counts as periods.
    Sizes beyond the caps raise :class:`ResourceLimitError`.
    """
    if space is None:
        space = space_from_letters(a.alphabet())
    index = {label: i for i, label in enumerate(space.names)}
    for label in a.alphabet():
        if label not in index:
            raise InputError(f"automaton letter {label!r} outside the coordinate space")

    a = trim(a)
    if not a.accepting:
        return sl_empty(space)
    a = collapse_eps_sccs(a)
    a = trim(a)
    if a.num_states > max_states:
        raise ResourceLimitError(
            f"Parikh computation capped at {max_states} states, got {a.num_states}"
        )

    edges = sorted(a.transitions, key=lambda t: (t[0], t[2], label_sort_key(t[1])))
    edge_vecs = [_edge_vector(space, index, label) for _, label, _ in edges]
    edges_from = defaultdict(list)
    for eid, (src, _label, dst) in enumerate(edges):
        edges_from[src].append((eid, dst))

    paths = _simple_paths(
        edges_from, a.initial, set(a.accepting), space.dimension, edge_vecs, path_cap
    )
    cycles = sorted(
        _simple_cycles(edges_from, a.num_states, space.dimension, edge_vecs, cycle_cap)
    )

    components = set()

    for path_parikh, path_states in sorted(paths):

        def emit(chosen, base=path_parikh):
            const = list(base)
            periods = []
            for vec, _states in chosen:
                for i, e in enumerate(vec):
                    const[i] += e
                periods.append(vec)
            components.add((tuple(const), tuple(sorted(set(periods)))))
            if len(components) > component_cap:
                raise ResourceLimitError(
                    "semilinear representation exceeds the component cap"
                )

        _connected_subsets(path_states, cycles, emit, component_cap)

    comps = [
        LinearSet(
            Vector(space, const),
            tuple(Vector(space, p) for p in periods),
        )
        for const, periods in components
    ]
    return SemilinearSet(space, comps)


# ---------------------------------------------------------------------------
# realization: semilinear set -> canonical regular language
# ---------------------------------------------------------------------------

def _spell(space: CoordSpace, entries) -> tuple:
    word = []
    for label, count in zip(space.names, entries):
        word.extend([label] * count)
    return tuple(word)


def sl_realize(s: SemilinearSet) -> Nfa:
    """Automaton for the language  U_c  w_c . (w_p1)* ... (w_pm)*  where the
    w's spell each vector's letters in coordinate order; its Parikh image is
    extensionally the input set."""
    if s.is_empty():
        return empty_language()
    if s.space.dimension == 0:
        return Nfa(1, 0, frozenset({0}), frozenset())

    trans = set()
    accepting = set()
    counter = [1]  # state 0 is the shared initial state

    def fresh():
        counter[0] += 1
        return counter[0] - 1

    for comp in s.components:
        node = fresh()
        trans.add((0, None, node))
        for letter in _spell(s.space, comp.constant.entries):
            nxt = fresh()
            trans.add((node, letter, nxt))
            node = nxt
        for period in comp.periods:
            loop = fresh()
            trans.add((node, None, loop))
            word = _spell(s.space, period.entries)
            cur = loop
            for letter in word[:-1]:
                nxt = fresh()
                trans.add((cur, letter, nxt))
                cur = nxt
            trans.add((cur, word[-1], loop))
            node = loop
        accepting.add(node)
    return Nfa(counter[0], 0, frozenset(accepting), frozenset(trans))


# ---------------------------------------------------------------------------
# free-product block automaton
# ---------------------------------------------------------------------------

def build_block_nfa(a: Nfa, p: int, q: int, child_letters, level_tag: int, pairs=None) -> Nfa:
    """Automaton for the alternating block shape between states ``p`` and ``q``.

    Accepted words look like  w0 (p1,q1) w1 ... (pk,qk) wk  with k >= 1, the
    w's over ``child_letters`` following the base automaton's transitions and
    each pair letter teleporting from its source to its target state.  The
    second state layer records that at least one pair letter was read.
    ``pairs`` restricts which (source, target) letters exist (default: all).
    """
    if not (0 <= p < a.num_states and 0 <= q < a.num_states):
        raise InputError("block endpoints out of range")
    child_letters = set(child_letters)
    n = a.num_states
    trans = set()
    for src, label, dst in a.transitions:
        if label is None or label in child_letters:
            trans.add((src, label, dst))
            trans.add((src + n, label, dst + n))
    if pairs is None:
        pairs = [(r, s) for r in range(n) for s in range(n)]
    for r, s in pairs:
        letter = PairLetter(level_tag, r, s)
        trans.add((r, letter, s + n))
        trans.add((r + n, letter, s + n))
    return Nfa(2 * n, p, frozenset({q + n}), frozenset(trans))
