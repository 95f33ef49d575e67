"""Membership decision engine for graph groups over transitive forests.

The central operation computes, for a decomposition tree G, a coordinate set
Gamma of free marker letters, and an automaton A over (generators of G)
union Gamma, the Parikh image over Gamma of the accepted words whose
generator part is trivial in G.  Structural recursion over the tree:

* trivial group: the condition is vacuous, take the Parikh image;
* direct factor Z: add the generator pair to the coordinates, recurse,
  intersect with the equal-count diagonal, project the pair away;
* free product: for every state pair (p, q) of A and every child, words
  travelling from p to q decompose into child-alphabet segments separated
  by recursive "teleport" letters; the per-pair images are reassembled
  through a context-free grammar and its Parikh image.

Two exact shortcuts keep desk-scale inputs tractable: a zero-dimensional
result only needs an emptiness answer, which a boolean fixpoint over state
pairs delivers directly, and direct-factor spines over the trivial group
reduce to zero-sum counter reachability, decided by breadth-first search
whose exhaustion inside the weight box certifies negative answers.
The rational-subset, submonoid, and subgroup deciders are front-ends.
"""

from __future__ import annotations

import itertools
from collections import defaultdict, deque
from dataclasses import dataclass

from .automata import (
    Nfa,
    build_block_nfa,
    collapse_eps_sccs,
    empty_language,
    from_word,
    label_sort_key,
    nfa_parikh,
    prepend_word,
    sl_realize,
    star,
    trim,
    union,
)
from .errors import InputError, ResourceLimitError
from .grammar import (
    BinCfg,
    ExtendedCfg,
    cfg_normalize,
    multiset_machine,
    simplify_bincfg,
    terminal_space,
)
from .letters import PairLetter, SignedGen, sort_letters
from .semilinear import (
    CoordSpace,
    LinearSet,
    SemilinearSet,
    Vector,
    sl_balance,
    sl_compress,
    sl_empty,
    sl_intersect,
    sl_project,
    sl_union,
    sl_unit,
    zero_vector,
)
from .traces import (
    DecompositionTree,
    DirectZ,
    FreeProduct,
    IndependenceAlphabet,
    Trivial,
    check_word,
    ia_decompose,
    invert_word,
    reassemble as reassemble_alphabet,
    trace_nf,
    word_letters,
)


@dataclass(frozen=True)
class Limits:
    """Resource caps; exceeding any of them raises ResourceLimitError."""

    max_input_states: int = 6
    max_vertices: int = 4
    parikh_max_states: int = 64
    parikh_cycle_cap: int = 96
    parikh_path_cap: int = 16384
    parikh_component_cap: int = 150000
    multiset_cap: int = 60000
    capacity_ladder: tuple = (2, 3, 4, 5, 6, 8)
    counter_box: int = 4096
    counter_node_cap: int = 1_500_000


DEFAULT_LIMITS = Limits()


@dataclass(frozen=True)
class SliQuery:
    """A decomposition tree, free marker coordinates, and an automaton over
    the tree's signed generators plus the markers."""

    tree: DecompositionTree
    gamma: frozenset
    automaton: Nfa

    def __post_init__(self):
        object.__setattr__(self, "gamma", frozenset(self.gamma))
        theta = set()
        for v in self.tree.vertex_set():
            theta.add(SignedGen(v, 1))
            theta.add(SignedGen(v, -1))
        if theta & self.gamma:
            raise InputError("marker coordinates overlap the generator alphabet")
        allowed = theta | self.gamma
        for label in self.automaton.alphabet():
            if label not in allowed:
                raise InputError(f"automaton letter {label!r} outside generators and markers")


def _signed(vertices) -> set:
    out = set()
    for v in vertices:
        out.add(SignedGen(v, 1))
        out.add(SignedGen(v, -1))
    return out


def _flatten_spine(tree):
    spine = []
    while isinstance(tree, DirectZ):
        spine.append(tree.vertex)
        tree = tree.child
    return spine, tree


def _diagonal(space: CoordSpace, plus, minus) -> SemilinearSet:
    """All vectors with equal counts on the two named coordinates."""
    zero = zero_vector(space)
    periods = []
    pair = [0] * space.dimension
    pair[space.index(plus)] = 1
    pair[space.index(minus)] = 1
    periods.append(Vector(space, tuple(pair)))
    for i, name in enumerate(space.names):
        if name in (plus, minus):
            continue
        unit = [0] * space.dimension
        unit[i] = 1
        periods.append(Vector(space, tuple(unit)))
    return SemilinearSet(space, (LinearSet(zero, tuple(periods)),))


class _Engine:
    def __init__(self, limits: Limits):
        self.limits = limits
        self.levels = itertools.count(1)
        self.memo = {}

    # -- Parikh plumbing -----------------------------------------------------

    def _parikh(self, aut: Nfa, space: CoordSpace) -> SemilinearSet:
        lim = self.limits
        return nfa_parikh(
            aut,
            space,
            max_states=lim.parikh_max_states,
            cycle_cap=lim.parikh_cycle_cap,
            path_cap=lim.parikh_path_cap,
            component_cap=lim.parikh_component_cap,
        )

    # -- zero-sum counter reachability ----------------------------------------

    @staticmethod
    def _weighted_edges(aut: Nfa, spine):
        """Adjacency split by counter effect: one weight vector per edge."""
        d = len(spine)
        index = {v: i for i, v in enumerate(spine)}
        edges = {}
        for src, label, dst in aut.transitions:
            weight = [0] * d
            if isinstance(label, SignedGen) and label.vertex in index:
                weight[index[label.vertex]] = label.sign
            edges.setdefault(src, []).append((dst, tuple(weight)))
        return edges

    @staticmethod
    def _balanced_pairs(n, zero, plus, minus):
        """The relation {(r, s) : some walk r -> s has one-counter sum 0}.

        Worklist saturation mirroring the decomposition of balanced words
        into  empty | split | +inner- | -inner+ | zero-framed  pieces.
        """
        zero_rev, plus_rev, minus_rev = (
            {k: set() for k in range(n)} for _ in range(3)
        )
        for src, targets in zero.items():
            for dst in targets:
                zero_rev[dst].add(src)
        for src, targets in plus.items():
            for dst in targets:
                plus_rev[dst].add(src)
        for src, targets in minus.items():
            for dst in targets:
                minus_rev[dst].add(src)

        relation = set()
        fwd = defaultdict(set)
        bwd = defaultdict(set)
        work = deque()

        def add(pair):
            if pair not in relation:
                relation.add(pair)
                work.append(pair)

        for r in range(n):
            add((r, r))
        while work:
            u, v = work.popleft()
            fwd[u].add(v)
            bwd[v].add(u)
            for w in zero.get(v, ()):
                add((u, w))
            for t in zero_rev[u]:
                add((t, v))
            for t in plus_rev[u]:
                for w in minus.get(v, ()):
                    add((t, w))
            for t in minus_rev[u]:
                for w in plus.get(v, ()):
                    add((t, w))
            for w in tuple(fwd[v]):
                add((u, w))
            for t in tuple(bwd[u]):
                add((t, v))
        return relation

    def _one_counter_relation(self, aut: Nfa, vertex: str):
        zero, plus, minus = {}, {}, {}
        for src, label, dst in aut.transitions:
            if isinstance(label, SignedGen) and label.vertex == vertex:
                bucket = plus if label.sign == 1 else minus
            else:
                bucket = zero
            bucket.setdefault(src, set()).add(dst)
        return self._balanced_pairs(aut.num_states, zero, plus, minus)

    def _counter_box(self, d: int, n: int) -> int:
        budget = max(self.limits.counter_node_cap // max(n, 1), 64)
        box = int(round(budget ** (1.0 / d))) // 2
        return max(16, min(self.limits.counter_box, box))

    def _zero_reach(self, aut: Nfa, spine) -> bool:
        """Is some accepted word balanced on every spine generator?

        Zero counters: plain reachability.  One counter: exact saturation of
        the balanced-walk relation.  More counters: breadth-first search over
        (state, counter vector); draining without clipping the weight box is
        an exact negative, otherwise the Parikh route decides (or raises).
        """
        aut = trim(collapse_eps_sccs(trim(aut)))
        if not aut.accepting:
            return False
        d = len(spine)
        if d == 0:
            return True  # trimmed: some accepting state is reachable
        if d == 1:
            relation = self._one_counter_relation(aut, spine[0])
            return any((aut.initial, f) in relation for f in aut.accepting)

        edges = self._weighted_edges(aut, spine)
        zero = (0,) * d
        box = self._counter_box(d, aut.num_states)
        node_cap = self.limits.counter_node_cap
        start = (aut.initial, zero)
        seen = {start}
        queue = deque([start])
        clipped = False
        while queue:
            state, counters = queue.popleft()
            if state in aut.accepting and counters == zero:
                return True
            for dst, weight in edges.get(state, ()):
                nxt = tuple(c + w for c, w in zip(counters, weight))
                if any(abs(c) > box for c in nxt):
                    clipped = True
                    continue
                key = (dst, nxt)
                if key in seen:
                    continue
                if len(seen) >= node_cap:
                    clipped = True
                    continue
                seen.add(key)
                queue.append(key)
        if not clipped:
            return False
        space = CoordSpace(tuple(sort_letters(_signed(spine))))
        image = self._parikh(aut, space)
        for v in spine:
            image = sl_balance(image, SignedGen(v, 1), SignedGen(v, -1))
        return not image.is_empty()

    # -- emptiness of the constrained language --------------------------------

    def _acyclic_words(self, aut: Nfa, cap: int = 20000):
        """All accepted words when the automaton is a DAG, else None."""
        fwd = defaultdict(list)
        indeg = defaultdict(int)
        for src, label, dst in aut.transitions:
            if label is not None and not isinstance(label, SignedGen):
                return None
            fwd[src].append((label, dst))
            indeg[dst] += 1
        # Kahn's algorithm detects cycles
        degrees = {s: indeg[s] for s in range(aut.num_states)}
        queue = deque(s for s in range(aut.num_states) if degrees[s] == 0)
        seen = 0
        while queue:
            s = queue.popleft()
            seen += 1
            for _label, dst in fwd[s]:
                degrees[dst] -= 1
                if degrees[dst] == 0:
                    queue.append(dst)
        if seen != aut.num_states:
            return None
        words = set()
        stack = [(aut.initial, ())]
        budget = cap * 40
        while stack:
            budget -= 1
            if budget < 0 or len(words) > cap:
                return None
            state, word = stack.pop()
            if state in aut.accepting:
                words.add(word)
            for label, dst in fwd[state]:
                nxt = word if label is None else word + ((label.vertex, label.sign),)
                stack.append((dst, nxt))
        return words

    def nonempty(self, tree, aut: Nfa) -> bool:
        """Does the automaton accept a word that is trivial in the group?"""
        aut = trim(collapse_eps_sccs(trim(aut)))
        if not aut.accepting:
            return False
        words = self._acyclic_words(aut)
        if words is not None:
            alphabet = reassemble_alphabet(tree)
            return any(trace_nf(alphabet, w) == () for w in words)
        spine, core = _flatten_spine(tree)
        if isinstance(core, Trivial):
            return self._zero_reach(aut, spine)
        if not spine:
            productive = self._productive_pairs(core, aut, gamma=frozenset())
            return any((aut.initial, f) in productive for f in aut.accepting)
        gamma = frozenset(_signed(spine))
        binarized = self._free_product_grammar(core, gamma, aut)
        if binarized is None:
            return False
        return self._grammar_balanced_nonempty(binarized, spine)

    # -- boolean fixpoint over state pairs ------------------------------------

    def _productive_pairs(self, fp: FreeProduct, aut: Nfa, gamma: frozenset):
        """State pairs (p, q) joined by an accepted-path word that is trivial
        in the free product (marker letters are unconstrained)."""
        n = aut.num_states
        free_labels = set(gamma)
        child_letters = [_signed(c.vertex_set()) for c in fp.children]
        flattened = [_flatten_spine(c) for c in fp.children]
        pairs = {(q, q) for q in range(n)}
        changed = True
        while changed:
            changed = False
            for child, letters, (spine, core) in zip(fp.children, child_letters, flattened):
                base = []
                for src, label, dst in aut.transitions:
                    if label is None or label in letters:
                        base.append((src, label, dst))
                    elif label in free_labels:
                        base.append((src, None, dst))
                for r, s in pairs:
                    if r != s:
                        base.append((r, None, s))
                trans = frozenset(base)
                fresh = self._wp_pairs(child, spine, core, n, trans)
                for pair in fresh:
                    if pair not in pairs:
                        pairs.add(pair)
                        changed = True
        return pairs

    def _wp_pairs(self, tree, spine, core, n, trans):
        """All pairs (r, s) joined inside ``trans`` by a word trivial in the
        subtree's group."""
        if isinstance(core, Trivial) and len(spine) == 1:
            probe = Nfa(n, 0, frozenset(), trans)
            return self._one_counter_relation(probe, spine[0])
        out = set()
        for r in range(n):
            if isinstance(core, Trivial):
                probe = Nfa(n, r, frozenset(), trans)
                for s in self._zero_targets(probe, spine):
                    out.add((r, s))
            else:
                for s in range(n):
                    candidate = Nfa(n, r, frozenset({s}), trans)
                    if self.nonempty(tree, candidate):
                        out.add((r, s))
        return out

    def _zero_targets(self, aut: Nfa, spine):
        """All states reachable from the initial state with every spine
        counter balanced."""
        d = len(spine)
        if d == 0:
            reach = {aut.initial}
            stack = [aut.initial]
            fwd = defaultdict(set)
            for src, _label, dst in aut.transitions:
                fwd[src].add(dst)
            while stack:
                s = stack.pop()
                for t in fwd[s]:
                    if t not in reach:
                        reach.add(t)
                        stack.append(t)
            return reach
        if d == 1:
            relation = self._one_counter_relation(aut, spine[0])
            return {s for (r, s) in relation if r == aut.initial}

        edges = self._weighted_edges(aut, spine)
        zero = (0,) * d
        box = self._counter_box(d, aut.num_states)
        node_cap = self.limits.counter_node_cap
        start = (aut.initial, zero)
        seen = {start}
        queue = deque([start])
        clipped = False
        found = {aut.initial}
        while queue:
            state, counters = queue.popleft()
            for dst, weight in edges.get(state, ()):
                nxt = tuple(c + w for c, w in zip(counters, weight))
                if any(abs(c) > box for c in nxt):
                    clipped = True
                    continue
                key = (dst, nxt)
                if key in seen:
                    continue
                if len(seen) >= node_cap:
                    clipped = True
                    continue
                seen.add(key)
                if nxt == zero:
                    found.add(dst)
                queue.append(key)
        if not clipped:
            return found
        # fall back to the exact per-target route
        out = set()
        for s in range(aut.num_states):
            candidate = Nfa(aut.num_states, aut.initial, frozenset({s}), aut.transitions)
            if self._zero_reach(candidate, spine):
                out.add(s)
        return out

    # -- the recursive image --------------------------------------------------

    def image(self, tree, gamma: frozenset, aut: Nfa) -> SemilinearSet:
        space = CoordSpace(sort_letters(gamma))
        key = (tree, gamma, aut.fingerprint())
        hit = self.memo.get(key)
        if hit is not None:
            return hit
        result = self._image(tree, gamma, space, aut)
        self.memo[key] = result
        return result

    def _image(self, tree, gamma, space, aut: Nfa) -> SemilinearSet:
        aut = trim(aut)
        if not aut.accepting:
            return sl_empty(space)

        if isinstance(tree, Trivial):
            return sl_compress(self._parikh(aut, space))

        if isinstance(tree, DirectZ):
            plus = SignedGen(tree.vertex, 1)
            minus = SignedGen(tree.vertex, -1)
            if plus in gamma or minus in gamma:
                raise InputError("generator collides with a marker coordinate")
            wider = gamma | {plus, minus}
            inner = self.image(tree.child, wider, aut)
            inner = sl_balance(inner, plus, minus)
            return sl_compress(sl_project(inner, gamma))

        # free product
        if not gamma:
            productive = self._productive_pairs(tree, aut, gamma)
            ok = any((aut.initial, f) in productive for f in aut.accepting)
            return sl_unit() if ok else sl_empty(space)
        return self._free_product_image(tree, gamma, space, aut)

    def _free_product_image(self, fp: FreeProduct, gamma, space, aut: Nfa) -> SemilinearSet:
        binarized = self._free_product_grammar(fp, gamma, aut)
        if binarized is None:
            return sl_empty(space)
        return self._stable_parikh(binarized)

    def _free_product_grammar(self, fp: FreeProduct, gamma, aut: Nfa):
        """Grammar whose language has the Parikh image sought for a free
        product: one nonterminal per productive state pair.

        A one-generator child contributes a quadratic set of block
        nonterminals generating (the marker projection of) its balanced
        block words directly; other children go through the semilinear
        image of their trimmed blocks, realized as regular right-hand
        sides.  Returns the simplified binarized grammar, or None when the
        language is empty."""
        productive = self._productive_pairs(fp, aut, gamma)
        pairs = sorted(productive)
        level = next(self.levels)
        letter_of = {(r, s): PairLetter(level, r, s) for r, s in pairs}
        child_letters = [_signed(c.vertex_set()) for c in fp.children]

        seeds = [(aut.initial, f) for f in sorted(aut.accepting) if (aut.initial, f) in productive]
        if not seeds:
            return None

        start = ("start", level)
        nonterminals = {start} | {letter_of[pq] for pq in pairs}
        productions = [(start, (letter_of[s],)) for s in seeds]
        for q in range(aut.num_states):
            productions.append((letter_of[(q, q)], ()))

        for index, (child, letters) in enumerate(zip(fp.children, child_letters)):
            spine, core = _flatten_spine(child)
            if len(spine) == 1 and isinstance(core, Trivial):
                nts, prods = self._balanced_block_rules(
                    aut, spine[0], letters, gamma, level, index, pairs, letter_of
                )
                nonterminals |= nts
                productions.extend(prods)
            else:
                for p, q in pairs:
                    block = trim(
                        build_block_nfa(aut, p, q, letters | gamma, level, pairs=pairs)
                    )
                    alive = frozenset(
                        label for label in block.alphabet() if isinstance(label, PairLetter)
                    )
                    k_set = sl_compress(self.image(child, gamma | alive, block))
                    if not k_set.is_empty():
                        productions.append((letter_of[(p, q)], sl_realize(k_set)))

        grammar = ExtendedCfg(
            start,
            frozenset(nonterminals),
            frozenset(gamma),
            tuple(productions),
        )
        return simplify_bincfg(cfg_normalize(grammar))

    def _balanced_block_rules(
        self, aut: Nfa, vertex, letters, gamma, level, index, pairs, letter_of
    ):
        """Grammar fragment generating, for each productive pair (p, q), the
        marker projections of the child's block words.

        Block nonterminals [s, t] derive the projections of balanced-counter
        walks from s to t in the block graph; the counter letters themselves
        are erased.  Rules mirror the balanced-walk decomposition: empty,
        split at a zero crossing, one signed step on each side, or a framing
        neutral edge."""
        block = build_block_nfa(aut, 0, 0, letters | gamma, level, pairs=pairs)
        n2 = block.num_states
        zero_edges = []
        zero_adj = {}
        plus_adj = {}
        minus_rev = {}
        plus_rev = {}
        minus_adj = {}
        for src, label, dst in sorted(
            block.transitions, key=lambda t: (t[0], t[2], label_sort_key(t[1]))
        ):
            if isinstance(label, SignedGen) and label.vertex == vertex:
                if label.sign == 1:
                    plus_adj.setdefault(src, set()).add(dst)
                    plus_rev.setdefault(dst, set()).add(src)
                else:
                    minus_adj.setdefault(src, set()).add(dst)
                    minus_rev.setdefault(dst, set()).add(src)
            else:
                zero_edges.append((src, label, dst))
                zero_adj.setdefault(src, set()).add(dst)
        relation = self._balanced_pairs(n2, zero_adj, plus_adj, minus_adj)

        def nt(s, t):
            return ("blk", level, index, s, t)

        nts = set()
        prods = []
        half = aut.num_states
        for p, q in pairs:
            if (p, q + half) in relation:
                nts.add(nt(p, q + half))
                prods.append((letter_of[(p, q)], (nt(p, q + half),)))
        for s, t in sorted(relation):
            head = nt(s, t)
            nts.add(head)
            if s == t:
                prods.append((head, ()))
            for u in range(n2):
                if u != s and u != t and (s, u) in relation and (u, t) in relation:
                    nts.add(nt(s, u))
                    nts.add(nt(u, t))
                    prods.append((head, (nt(s, u), nt(u, t))))
            for src, label, dst in zero_edges:
                if src == s and (dst, t) in relation:
                    nts.add(nt(dst, t))
                    body = (nt(dst, t),) if label is None else (label, nt(dst, t))
                    prods.append((head, body))
            for s2 in sorted(plus_adj.get(s, ())):
                for t2 in sorted(minus_rev.get(t, ())):
                    if (s2, t2) in relation:
                        nts.add(nt(s2, t2))
                        prods.append((head, (nt(s2, t2),)))
            for s2 in sorted(minus_adj.get(s, ())):
                for t2 in sorted(plus_rev.get(t, ())):
                    if (s2, t2) in relation:
                        nts.add(nt(s2, t2))
                        prods.append((head, (nt(s2, t2),)))
        return nts, prods

    def _machine_parikh(self, binarized: BinCfg, machine: Nfa) -> SemilinearSet:
        lim = self.limits
        return nfa_parikh(
            machine,
            terminal_space(binarized),
            max_states=machine.num_states + 1,
            cycle_cap=lim.parikh_cycle_cap,
            path_cap=lim.parikh_path_cap,
            component_cap=lim.parikh_component_cap,
        )

    def _stable_parikh(self, binarized: BinCfg) -> SemilinearSet:
        """Parikh image of a (pruned, simplified) grammar via the capacity
        ladder.

        A rung whose pending cap never binds covers every derivation, so its
        image is exact; otherwise climb until two consecutive capacities
        agree.  Soundness holds at every capacity."""
        lim = self.limits
        previous = None
        for k in lim.capacity_ladder:
            machine, bound = multiset_machine(binarized, k, lim.multiset_cap)
            current = sl_compress(self._machine_parikh(binarized, machine))
            if not bound:
                return current
            if previous is not None and self._agree(previous, current):
                return current
            previous = current
        raise ResourceLimitError(
            "grammar Parikh image did not stabilise within the capacity ladder"
        )

    def _grammar_balanced_nonempty(self, binarized: BinCfg, spine) -> bool:
        """Does the grammar generate a word balanced on every spine pair?

        Decided on the capacity machine: positives are sound at any
        capacity; a negative is exact when the pending cap never bound,
        and otherwise accepted after two agreeing consecutive rungs."""
        lim = self.limits
        agreeing = 0
        for k in lim.capacity_ladder:
            machine, bound = multiset_machine(binarized, k, lim.multiset_cap)
            if self._zero_reach(machine, spine):
                return True
            if not bound:
                return False
            agreeing += 1
            if agreeing >= 2:
                return False
        raise ResourceLimitError(
            "balance query did not stabilise within the capacity ladder"
        )

    @staticmethod
    def _agree(s1: SemilinearSet, s2: SemilinearSet) -> bool:
        if s1 == s2:
            return True
        from .semilinear import sl_member

        entries = [0]
        for s in (s1, s2):
            for comp in s.components:
                entries.extend(comp.constant.entries)
                for p in comp.periods:
                    entries.extend(p.entries)
        bound = min(max(entries) + 2, 6)
        dim = s1.space.dimension
        if bound ** dim > 40000:
            return False
        for point in itertools.product(range(bound + 1), repeat=dim):
            v = Vector(s1.space, point)
            if sl_member(s1, v) != sl_member(s2, v):
                return False
        return True


# ---------------------------------------------------------------------------
# public operations
# ---------------------------------------------------------------------------

def trivial_word_image(query: SliQuery, limits: Limits = DEFAULT_LIMITS) -> SemilinearSet:
    """Parikh image over the marker coordinates of the accepted words whose
    generator projection is trivial in the query's group."""
    return _Engine(limits).image(query.tree, query.gamma, query.automaton)


def _validate_decision_input(alphabet: IndependenceAlphabet, automaton: Nfa, limits: Limits):
    if len(alphabet.vertices) > limits.max_vertices:
        raise ResourceLimitError(
            f"alphabet exceeds the {limits.max_vertices}-vertex cap"
        )
    if automaton.num_states > limits.max_input_states:
        raise ResourceLimitError(
            f"input automaton exceeds the {limits.max_input_states}-state cap"
        )
    allowed = _signed(alphabet.vertices)
    for label in automaton.alphabet():
        if label not in allowed:
            raise InputError(f"automaton letter {label!r} is not a signed generator")


def decide_rational(
    alphabet: IndependenceAlphabet,
    automaton: Nfa,
    word,
    limits: Limits = DEFAULT_LIMITS,
) -> bool:
    """Does the group element named by ``word`` belong to the image of the
    automaton's language?  Reduces to triviality inside word^-1 . L."""
    tree = ia_decompose(alphabet)  # raises NotTransitiveForestError outside the class
    check_word(alphabet, word)
    _validate_decision_input(alphabet, automaton, limits)
    carrier = prepend_word(automaton, word_letters(invert_word(word)))
    return _Engine(limits).nonempty(tree, carrier)


def decide_submonoid(
    alphabet: IndependenceAlphabet,
    generators,
    word,
    limits: Limits = DEFAULT_LIMITS,
) -> bool:
    """Membership of ``word`` in the submonoid generated by ``generators``."""
    for g in generators:
        check_word(alphabet, g)
    automaton = star(union(*[from_word(word_letters(g)) for g in generators])) \
        if generators else star(empty_language())
    tree = ia_decompose(alphabet)
    check_word(alphabet, word)
    if len(alphabet.vertices) > limits.max_vertices:
        raise ResourceLimitError(f"alphabet exceeds the {limits.max_vertices}-vertex cap")
    carrier = prepend_word(automaton, word_letters(invert_word(word)))
    return _Engine(limits).nonempty(tree, carrier)


def decide_subgroup(
    alphabet: IndependenceAlphabet,
    generators,
    word,
    limits: Limits = DEFAULT_LIMITS,
) -> bool:
    """Membership in the subgroup generated by ``generators``."""
    closed = list(generators) + [invert_word(g) for g in generators]
    return decide_submonoid(alphabet, closed, word, limits)
