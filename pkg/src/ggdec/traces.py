"""Independence alphabets, group words, and trace normal forms.

An independence alphabet is a finite loop-free undirected graph on generator
names; adjacent generators commute.  Words over signed generators represent
group elements; `trace_nf` computes the canonical representative (the
lexicographically least linearization of the fully cancelled trace), so two
words name the same element exactly when their normal forms coincide.

`ia_is_transitive_forest` / `ia_decompose` recognise the decidable class and
produce the recursive build plan used by the membership engine.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from itertools import combinations

from .errors import InputError, NotTransitiveForestError
from .letters import SignedGen


class IndependenceAlphabet:
    __slots__ = ("vertices", "edges", "_neighbors")

    def __init__(self, vertices, edges=()):
        vertices = tuple(vertices)
        if len(set(vertices)) != len(vertices):
            raise InputError("vertex names must be distinct")
        known = set(vertices)
        norm = set()
        for e in edges:
            u, v = e
            if u == v:
                raise InputError(f"loop at vertex {u!r}")
            if u not in known or v not in known:
                raise InputError(f"edge {e!r} uses an unknown vertex")
            norm.add((u, v) if u <= v else (v, u))
        self.vertices = vertices
        self.edges = frozenset(norm)
        self._neighbors = {v: set() for v in vertices}
        for u, v in self.edges:
            self._neighbors[u].add(v)
            self._neighbors[v].add(u)

    def independent(self, u: str, v: str) -> bool:
        return v in self._neighbors[u]

    def neighbors(self, v: str) -> frozenset:
        return frozenset(self._neighbors[v])

    def induced(self, keep) -> "IndependenceAlphabet":
        keep = [v for v in self.vertices if v in set(keep)]
        kset = set(keep)
        edges = [e for e in self.edges if e[0] in kset and e[1] in kset]
        return IndependenceAlphabet(tuple(keep), edges)

    def components(self):
        seen = set()
        out = []
        for v in self.vertices:
            if v in seen:
                continue
            comp = {v}
            queue = deque([v])
            while queue:
                u = queue.popleft()
                for w in self._neighbors[u]:
                    if w not in comp:
                        comp.add(w)
                        queue.append(w)
            seen |= comp
            out.append(tuple(x for x in self.vertices if x in comp))
        return out

    def __eq__(self, other):
        return (
            isinstance(other, IndependenceAlphabet)
            and self.vertices == other.vertices
            and self.edges == other.edges
        )

    def __hash__(self):
        return hash((self.vertices, self.edges))

    def __repr__(self):
        return f"IndependenceAlphabet({self.vertices!r}, {sorted(self.edges)!r})"


# ---------------------------------------------------------------------------
# group words
# ---------------------------------------------------------------------------

def parse_word(text: str, alphabet: IndependenceAlphabet | None = None) -> tuple:
    """Parse whitespace-separated tokens ``name``, ``name^-1``, ``name^k``,
    ``name^-k`` into a tuple of (vertex, sign) letters."""
    letters = []
    for token in text.split():
        name, _, power = token.partition("^")
        if not name:
            raise InputError(f"bad token {token!r}")
        if power:
            try:
                k = int(power)
            except ValueError:
                raise InputError(f"bad exponent in token {token!r}") from None
            if k == 0:
                raise InputError(f"zero exponent in token {token!r}")
        else:
            k = 1
        sign = 1 if k > 0 else -1
        letters.extend([(name, sign)] * abs(k))
    word = tuple(letters)
    if alphabet is not None:
        check_word(alphabet, word)
    return word


def check_word(alphabet: IndependenceAlphabet, word):
    known = set(alphabet.vertices)
    for vertex, sign in word:
        if vertex not in known:
            raise InputError(f"unknown vertex {vertex!r} in word")
        if sign not in (1, -1):
            raise InputError(f"bad sign {sign!r} in word")


def render_word(word) -> str:
    return " ".join(v if s == 1 else f"{v}^-1" for v, s in word)


def invert_word(word) -> tuple:
    return tuple((v, -s) for v, s in reversed(word))


def word_letters(word) -> tuple:
    """The word as signed-generator alphabet letters."""
    return tuple(SignedGen(v, s) for v, s in word)


# ---------------------------------------------------------------------------
# trace normal form
# ---------------------------------------------------------------------------

def _letter_order(letter):
    vertex, sign = letter
    return (vertex, 0 if sign == 1 else 1)


def trace_nf(alphabet: IndependenceAlphabet, word) -> tuple:
    """Canonical representative of the group element named by ``word``.

    Letters are stacked onto per-vertex piles; a letter landing directly on
    its inverse cancels, otherwise it is pushed together with blocking
    markers on every dependent pile.  The fully cancelled trace is then
    linearized greedily, always taking the least available letter.
    """
    check_word(alphabet, word)
    dependent = {
        v: [u for u in alphabet.vertices if u != v and not alphabet.independent(u, v)]
        for v in alphabet.vertices
    }
    piles = {v: deque() for v in alphabet.vertices}
    for vertex, sign in word:
        pile = piles[vertex]
        if pile and pile[-1] == -sign:
            pile.pop()
            for u in dependent[vertex]:
                piles[u].pop()
        else:
            pile.append(sign)
            for u in dependent[vertex]:
                piles[u].append(0)

    out = []
    while True:
        ready = [
            (v, piles[v][0]) for v in alphabet.vertices if piles[v] and piles[v][0] != 0
        ]
        if not ready:
            break
        vertex, sign = min(ready, key=_letter_order)
        out.append((vertex, sign))
        piles[vertex].popleft()
        for u in dependent[vertex]:
            piles[u].popleft()
    return tuple(out)


def wp(alphabet: IndependenceAlphabet, word) -> bool:
    """True iff the word names the identity element."""
    return trace_nf(alphabet, word) == ()


# ---------------------------------------------------------------------------
# transitive-forest recognition and decomposition
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Trivial:
    def vertex_set(self) -> tuple:
        return ()


@dataclass(frozen=True)
class DirectZ:
    vertex: str
    child: object

    def vertex_set(self) -> tuple:
        return (self.vertex,) + self.child.vertex_set()


@dataclass(frozen=True)
class FreeProduct:
    children: tuple

    def __post_init__(self):
        object.__setattr__(self, "children", tuple(self.children))

    def vertex_set(self) -> tuple:
        out = []
        for c in self.children:
            out.extend(c.vertex_set())
        return tuple(out)


DecompositionTree = Trivial | DirectZ | FreeProduct


def _find_forbidden(alphabet: IndependenceAlphabet):
    """An induced square or 4-path, as an ordered 4-tuple, or None."""
    for quad in combinations(alphabet.vertices, 4):
        sub = alphabet.induced(quad)
        deg = {v: len(sub.neighbors(v)) for v in quad}
        ne = len(sub.edges)
        if ne == 4 and all(deg[v] == 2 for v in quad):
            # order around the square, starting from the least vertex
            start = min(quad)
            nbrs = sorted(sub.neighbors(start))
            second = nbrs[0]
            third = next(iter(sub.neighbors(second) - {start}))
            fourth = next(iter(sub.neighbors(third) - {second}))
            return (start, second, third, fourth), "C4"
        if ne == 3 and sorted(deg.values()) == [1, 1, 2, 2]:
            ends = sorted(v for v in quad if deg[v] == 1)
            a = ends[0]
            b = next(iter(sub.neighbors(a)))
            c = next(iter(sub.neighbors(b) - {a}))
            d = next(iter(sub.neighbors(c) - {b}))
            return (a, b, c, d), "P4"
    return None


def _universal_vertices(alphabet: IndependenceAlphabet):
    n = len(alphabet.vertices)
    return [v for v in alphabet.vertices if len(alphabet.neighbors(v)) == n - 1]


def ia_decompose(alphabet: IndependenceAlphabet) -> DecompositionTree:
    """Recursive build plan: disconnected graphs split as free products,
    a universal vertex peels off as a direct factor of Z.

    Raises :class:`NotTransitiveForestError` with an induced-square/4-path
    witness when the alphabet is outside the class.
    """
    if not alphabet.vertices:
        return Trivial()
    comps = alphabet.components()
    if len(comps) > 1:
        return FreeProduct(tuple(ia_decompose(alphabet.induced(c)) for c in comps))
    universal = _universal_vertices(alphabet)
    if not universal:
        found = _find_forbidden(alphabet)
        if found is None:  # cannot happen on a connected graph without universal vertex
            raise InputError("decomposition failed without a forbidden subgraph")
        witness, kind = found
        raise NotTransitiveForestError(witness, kind)
    u = min(universal)
    rest = alphabet.induced([v for v in alphabet.vertices if v != u])
    return DirectZ(u, ia_decompose(rest))


def ia_is_transitive_forest(alphabet: IndependenceAlphabet):
    """(True, decomposition tree) or (False, ordered 4-vertex witness)."""
    try:
        return True, ia_decompose(alphabet)
    except NotTransitiveForestError as exc:
        return False, exc.witness


def reassemble(tree: DecompositionTree) -> IndependenceAlphabet:
    """Inverse of `ia_decompose` up to vertex order (used for validation)."""
    if isinstance(tree, Trivial):
        return IndependenceAlphabet(())
    if isinstance(tree, DirectZ):
        child = reassemble(tree.child)
        verts = (tree.vertex,) + child.vertices
        edges = set(child.edges) | {(tree.vertex, v) for v in child.vertices}
        return IndependenceAlphabet(verts, edges)
    verts = []
    edges = set()
    for c in tree.children:
        sub = reassemble(c)
        verts.extend(sub.vertices)
        edges |= set(sub.edges)
    return IndependenceAlphabet(tuple(verts), edges)
