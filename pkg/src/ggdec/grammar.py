"""Context-free grammars with regular right-hand sides and their Parikh images.

Grammar symbols are arbitrary hashables.  A production's right-hand side is
either a finite tuple of symbols or an :class:`~ggdec.automata.Nfa` whose
transition labels are symbols; the latter stands for the (possibly infinite)
family of productions spelled by its accepted words.

`cfg_parikh` follows the bounded-multiset-automaton route: pending
nonterminals are tracked as a multiset of capped cardinality, terminals are
emitted on the fly, and the Parikh image of the resulting finite automaton is
returned.  Soundness holds for every capacity; completeness at the default
capacity (#nonterminals + 1) is guarded by the enumeration oracle and the
capacity stability checks in the test suite.
"""

from __future__ import annotations

from collections import defaultdict, deque
from dataclasses import dataclass

from .automata import Nfa, label_sort_key, nfa_parikh
from .errors import InputError, ResourceLimitError
from .semilinear import CoordSpace, SemilinearSet, sl_empty, sl_singleton, zero_vector


@dataclass(frozen=True)
class ExtendedCfg:
    start: object
    nonterminals: frozenset
    terminals: frozenset
    productions: tuple  # of (nonterminal, tuple-of-symbols | Nfa)

    def __post_init__(self):
        object.__setattr__(self, "nonterminals", frozenset(self.nonterminals))
        object.__setattr__(self, "terminals", frozenset(self.terminals))
        object.__setattr__(self, "productions", tuple(self.productions))
        if self.start not in self.nonterminals:
            raise InputError("start symbol must be a nonterminal")
        if self.nonterminals & self.terminals:
            raise InputError("nonterminals and terminals overlap")
        declared = self.nonterminals | self.terminals
        for lhs, rhs in self.productions:
            if lhs not in self.nonterminals:
                raise InputError(f"production head {lhs!r} is not a nonterminal")
            symbols = (
                {lab for _, lab, _ in rhs.transitions if lab is not None}
                if isinstance(rhs, Nfa)
                else set(rhs)
            )
            if not symbols <= declared:
                raise InputError(f"undeclared symbols in a right-hand side: {symbols - declared}")


@dataclass(frozen=True)
class BinCfg:
    start: object
    nonterminals: frozenset
    terminals: frozenset
    productions: tuple  # of (nonterminal, tuple of <= 2 symbols)

    def __post_init__(self):
        object.__setattr__(self, "nonterminals", frozenset(self.nonterminals))
        object.__setattr__(self, "terminals", frozenset(self.terminals))
        object.__setattr__(self, "productions", tuple(self.productions))
        if self.start not in self.nonterminals:
            raise InputError("start symbol must be a nonterminal")
        declared = self.nonterminals | self.terminals
        for lhs, rhs in self.productions:
            if lhs not in self.nonterminals or len(rhs) > 2 or not set(rhs) <= declared:
                raise InputError(f"bad binarized production {lhs!r} -> {rhs!r}")


def cfg_normalize(g: ExtendedCfg) -> BinCfg:
    """Expand regular right-hand sides right-linearly, then binarize.

    Every automaton state becomes a fresh chain nonterminal; transitions turn
    into productions and accepting states erase.  The generated language is
    unchanged.
    """
    word_prods = []
    nonterminals = set(g.nonterminals)
    for idx, (lhs, rhs) in enumerate(g.productions):
        if isinstance(rhs, Nfa):
            states = [("rl", idx, s) for s in range(rhs.num_states)]
            nonterminals.update(states)
            word_prods.append((lhs, (("rl", idx, rhs.initial),)))
            for src, label, dst in sorted(
                rhs.transitions, key=lambda t: (t[0], t[2], label_sort_key(t[1]))
            ):
                body = (("rl", idx, dst),) if label is None else (label, ("rl", idx, dst))
                word_prods.append((("rl", idx, src), body))
            for s in sorted(rhs.accepting):
                word_prods.append((("rl", idx, s), ()))
        else:
            word_prods.append((lhs, tuple(rhs)))

    productions = []
    for pidx, (lhs, rhs) in enumerate(word_prods):
        while len(rhs) > 2:
            link = ("bin", pidx, len(rhs))
            nonterminals.add(link)
            productions.append((lhs, (rhs[0], link)))
            lhs, rhs = link, rhs[1:]
        productions.append((lhs, rhs))
    return BinCfg(g.start, frozenset(nonterminals), g.terminals, tuple(productions))


def cfg_enumerate(g: BinCfg, maxlen: int):
    """All terminal words of length <= maxlen derivable from the start symbol,
    by a bottom-up least fixpoint over per-symbol word sets."""
    if maxlen < 0:
        raise InputError("maxlen must be nonnegative")
    lang = {nt: set() for nt in g.nonterminals}

    def words_of(symbol):
        if symbol in g.nonterminals:
            return lang[symbol]
        return {(symbol,)} if maxlen >= 1 else set()

    changed = True
    while changed:
        changed = False
        for lhs, rhs in g.productions:
            if not rhs:
                add = {()}
            elif len(rhs) == 1:
                add = words_of(rhs[0])
            else:
                add = set()
                for u in words_of(rhs[0]):
                    for v in words_of(rhs[1]):
                        if len(u) + len(v) <= maxlen:
                            add.add(u + v)
            before = len(lang[lhs])
            lang[lhs] |= add
            if len(lang[lhs]) != before:
                changed = True
    return set(lang[g.start])


def _prune_useless(g: BinCfg) -> BinCfg | None:
    productive = set()
    changed = True
    while changed:
        changed = False
        for lhs, rhs in g.productions:
            if lhs in productive:
                continue
            if all(s in g.terminals or s in productive for s in rhs):
                productive.add(lhs)
                changed = True
    if g.start not in productive:
        return None
    good = [
        (lhs, rhs)
        for lhs, rhs in g.productions
        if lhs in productive and all(s in g.terminals or s in productive for s in rhs)
    ]
    reachable = {g.start}
    queue = deque([g.start])
    by_lhs = defaultdict(list)
    for lhs, rhs in good:
        by_lhs[lhs].append(rhs)
    while queue:
        nt = queue.popleft()
        for rhs in by_lhs[nt]:
            for s in rhs:
                if s in productive and s not in reachable:
                    reachable.add(s)
                    queue.append(s)
    kept = [(lhs, rhs) for lhs, rhs in good if lhs in reachable]
    return BinCfg(g.start, frozenset(reachable), g.terminals, tuple(kept))


def terminal_space(g) -> CoordSpace:
    return CoordSpace(tuple(sorted(g.terminals, key=label_sort_key)))


def simplify_bincfg(g: BinCfg) -> BinCfg | None:
    """Language-preserving shrinking: drop useless symbols, inline
    nonterminals that have a single unit or empty production, and merge
    nonterminals with identical production bodies.  Returns None when the
    language is empty."""
    current = _prune_useless(g)
    while current is not None:
        bodies = defaultdict(set)
        for lhs, rhs in current.productions:
            bodies[lhs].add(rhs)

        replace = {}
        for nt, rhs_set in bodies.items():
            if nt == current.start or len(rhs_set) != 1:
                continue
            (rhs,) = rhs_set
            if len(rhs) == 1 and rhs[0] != nt:
                replace[nt] = rhs[0]
        # resolve chains a->b->c, guarding against alias cycles
        for nt in list(replace):
            seen = {nt}
            target = replace[nt]
            while target in replace and target not in seen:
                seen.add(target)
                target = replace[target]
            replace[nt] = target if target not in seen else nt

        erase = {
            nt
            for nt, rhs_set in bodies.items()
            if nt != current.start and rhs_set == {()}
        }

        merged = {}
        signature = defaultdict(list)
        for nt, rhs_set in bodies.items():
            signature[frozenset(rhs_set)].append(nt)
        for group in signature.values():
            if len(group) > 1:
                group.sort(key=repr)
                keeper = group[0] if current.start not in group else current.start
                for other in group:
                    if other is not keeper:
                        merged[other] = keeper

        replace = {k: v for k, v in replace.items() if k != v}
        if not replace and not erase and not merged:
            return current

        def rewrite(symbol):
            seen = {symbol}
            original = symbol
            while True:
                nxt = replace.get(symbol, symbol)
                nxt = merged.get(nxt, nxt)
                if nxt == symbol:
                    return symbol
                if nxt in seen:
                    return original  # alias cycle: leave untouched
                seen.add(nxt)
                symbol = nxt

        alias = {nt: rewrite(nt) for nt in current.nonterminals}
        new_prods = set()
        for lhs, rhs in current.productions:
            # aliased heads contribute nothing: a merged head's bodies equal
            # its keeper's, an inlined head's single unit body is the alias
            if alias[lhs] != lhs or lhs in erase:
                continue
            body = tuple(
                alias.get(s, s)
                for s in rhs
                if not (s in current.nonterminals and alias[s] in erase)
            )
            new_prods.add((lhs, body))
        nts = {nt for nt in current.nonterminals if alias[nt] == nt and nt not in erase}
        nts.add(current.start)
        candidate = BinCfg(
            current.start, frozenset(nts), current.terminals, tuple(sorted(new_prods, key=repr))
        )
        current = _prune_useless(candidate)
    return None


def multiset_machine(g: BinCfg, capacity: int, multiset_cap: int):
    """The capacity-bounded pending-nonterminal machine for a pruned grammar.

    Returns (automaton, capacity_bound): when ``capacity_bound`` is False the
    cap never rejected a push, so the machine covers every derivation and
    its Parikh image is exact regardless of the capacity.
    """
    by_lhs = defaultdict(list)
    for lhs, rhs in g.productions:
        by_lhs[lhs].append(rhs)
    key = label_sort_key

    start_ms = (g.start,)
    states = {start_ms: 0}
    trans = set()
    chain_nodes = 0
    capacity_bound = False
    queue = deque([start_ms])
    while queue:
        ms = queue.popleft()
        src = states[ms]
        for pos, nt in enumerate(ms):
            if pos and ms[pos - 1] == nt:
                continue
            rest = ms[:pos] + ms[pos + 1 :]
            for rhs in by_lhs[nt]:
                push = tuple(s for s in rhs if s in g.nonterminals)
                emit = [s for s in rhs if s not in g.nonterminals]
                new_ms = tuple(sorted(rest + push, key=key))
                if len(new_ms) > capacity:
                    capacity_bound = True
                    continue
                if new_ms not in states:
                    if len(states) >= multiset_cap:
                        raise ResourceLimitError(
                            f"multiset machine exceeded {multiset_cap} states at capacity {capacity}"
                        )
                    states[new_ms] = len(states) + chain_nodes
                    queue.append(new_ms)
                dst = states[new_ms]
                if not emit:
                    trans.add((src, None, dst))
                elif len(emit) == 1:
                    trans.add((src, emit[0], dst))
                else:
                    mid = len(states) + chain_nodes
                    chain_nodes += 1
                    trans.add((src, emit[0], mid))
                    trans.add((mid, emit[1], dst))

    total = len(states) + chain_nodes
    accepting = frozenset({states[()]}) if () in states else frozenset()
    return Nfa(total, states[start_ms], accepting, frozenset(trans)), capacity_bound


def cfg_parikh(
    g: BinCfg,
    capacity: int | None = None,
    *,
    multiset_cap: int = 60000,
    parikh_kwargs: dict | None = None,
) -> SemilinearSet:
    """Parikh image of the generated language over the declared terminals.

    ``capacity`` bounds the pending-nonterminal multiset (default: number of
    pruned nonterminals + 1).  A zero-dimensional terminal space collapses to
    an exact emptiness test.
    """
    space = terminal_space(g)
    pruned = simplify_bincfg(g)
    if pruned is None:
        return sl_empty(space)
    g = pruned
    if space.dimension == 0:
        # the language is nonempty and every word erases to the empty tuple
        return sl_singleton(zero_vector(space))

    k = capacity if capacity is not None else len(g.nonterminals) + 1
    if k < 1:
        raise InputError("capacity must be positive")
    automaton, _bound = multiset_machine(g, k, multiset_cap)
    kwargs = dict(
        max_states=automaton.num_states + 1,
        cycle_cap=96,
        path_cap=8192,
        component_cap=120000,
    )
    if parikh_kwargs:
        kwargs.update(parikh_kwargs)
    return nfa_parikh(automaton, space, **kwargs)
