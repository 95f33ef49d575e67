"""Linear and semilinear subsets of N^k with named coordinates.

A linear set is a constant vector plus arbitrary N-combinations of finitely
many nonzero period vectors; a semilinear set is a finite union of linear
sets over one coordinate space.  Everything here is immutable and pure.

The Diophantine solver `hilbert_basis` (Contejean-Devie completion) backs
intersection; it is also used directly by the membership engine.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import InputError, SpaceMismatchError
from .letters import letter_key


@dataclass(frozen=True)
class CoordSpace:
    """An ordered tuple of distinct coordinate labels; dimension may be 0."""

    names: tuple

    def __post_init__(self):
        if len(set(self.names)) != len(self.names):
            raise InputError("coordinate labels must be pairwise distinct")
        object.__setattr__(self, "names", tuple(self.names))

    @property
    def dimension(self) -> int:
        return len(self.names)

    def index(self, name) -> int:
        try:
            return self.names.index(name)
        except ValueError:
            raise InputError(f"unknown coordinate label: {name!r}") from None


@dataclass(frozen=True)
class Vector:
    space: CoordSpace
    entries: tuple

    def __post_init__(self):
        object.__setattr__(self, "entries", tuple(int(e) for e in self.entries))
        if len(self.entries) != self.space.dimension:
            raise InputError("entry count does not match the space dimension")
        if any(e < 0 for e in self.entries):
            raise InputError("entries must be natural numbers")

    def is_zero(self) -> bool:
        return all(e == 0 for e in self.entries)

    def __add__(self, other: "Vector") -> "Vector":
        _check_space(self.space, other.space)
        return Vector(self.space, tuple(a + b for a, b in zip(self.entries, other.entries)))


def zero_vector(space: CoordSpace) -> Vector:
    return Vector(space, (0,) * space.dimension)


def _check_space(a: CoordSpace, b: CoordSpace):
    if a.names != b.names:
        raise SpaceMismatchError(f"coordinate spaces differ: {a.names} vs {b.names}")


@dataclass(frozen=True)
class LinearSet:
    """constant + N-combinations of the periods (periods nonzero, deduplicated)."""

    constant: Vector
    periods: tuple = field(default_factory=tuple)

    def __post_init__(self):
        space = self.constant.space
        cleaned = []
        seen = set()
        for p in self.periods:
            _check_space(space, p.space)
            if p.is_zero() or p.entries in seen:
                continue
            seen.add(p.entries)
            cleaned.append(p)
        cleaned.sort(key=lambda p: p.entries)
        object.__setattr__(self, "periods", tuple(cleaned))

    @property
    def space(self) -> CoordSpace:
        return self.constant.space

    def _key(self):
        return (self.constant.entries, tuple(p.entries for p in self.periods))


class SemilinearSet:
    """Finite union of linear sets; an empty component list is the empty set."""

    __slots__ = ("space", "components")

    def __init__(self, space: CoordSpace, components=()):
        comps = []
        seen = set()
        for c in components:
            _check_space(space, c.space)
            key = c._key()
            if key in seen:
                continue
            seen.add(key)
            comps.append(c)
        comps.sort(key=LinearSet._key)
        self.space = space
        self.components = tuple(comps)

    def is_empty(self) -> bool:
        return not self.components

    def __eq__(self, other):
        return (
            isinstance(other, SemilinearSet)
            and self.space.names == other.space.names
            and [c._key() for c in self.components] == [c._key() for c in other.components]
        )

    def __hash__(self):
        return hash((self.space.names, tuple(c._key() for c in self.components)))

    def __repr__(self):
        return f"SemilinearSet({self.space.names!r}, {len(self.components)} components)"


def sl_empty(space: CoordSpace) -> SemilinearSet:
    return SemilinearSet(space, ())


def sl_singleton(v: Vector) -> SemilinearSet:
    return SemilinearSet(v.space, (LinearSet(v),))


def sl_unit() -> SemilinearSet:
    """The nonempty zero-dimensional set (its one member is the empty tuple)."""
    space = CoordSpace(())
    return SemilinearSet(space, (LinearSet(zero_vector(space)),))


def sl_union(*sets: SemilinearSet) -> SemilinearSet:
    if not sets:
        raise InputError("sl_union needs at least one set")
    space = sets[0].space
    comps = []
    for s in sets:
        _check_space(space, s.space)
        comps.extend(s.components)
    return SemilinearSet(space, comps)


def _member_linear(target, periods, limit):
    """Depth-first search for target = sum of chosen period multiples."""
    if all(t == 0 for t in target):
        return True
    if not periods:
        return False
    p = periods[0]
    # tightest sound bound: stay below every coordinate of the residue
    bound = limit
    for t, e in zip(target, p):
        if e:
            bound = min(bound, t // e)
    rest = periods[1:]
    for lam in range(bound + 1):
        residue = tuple(t - lam * e for t, e in zip(target, p))
        if _member_linear(residue, rest, limit):
            return True
    return False


def sl_member(s: SemilinearSet, v: Vector) -> bool:
    _check_space(s.space, v.space)
    limit = max(v.entries, default=0)
    for comp in s.components:
        target = tuple(a - b for a, b in zip(v.entries, comp.constant.entries))
        if any(t < 0 for t in target):
            continue
        if _member_linear(target, [p.entries for p in comp.periods], limit):
            return True
    return False


def sl_project(s: SemilinearSet, keep) -> SemilinearSet:
    """Delete every coordinate whose label is not in `keep` (order preserved)."""
    keep = set(keep)
    for name in keep:
        if name not in s.space.names:
            raise InputError(f"unknown coordinate label: {name!r}")
    idx = [i for i, name in enumerate(s.space.names) if name in keep]
    new_space = CoordSpace(tuple(s.space.names[i] for i in idx))

    def drop(vec: Vector) -> Vector:
        return Vector(new_space, tuple(vec.entries[i] for i in idx))

    comps = [
        LinearSet(drop(c.constant), tuple(drop(p) for p in c.periods))
        for c in s.components
    ]
    return SemilinearSet(new_space, comps)


# ---------------------------------------------------------------------------
# Hilbert basis of A.x = b over the naturals (Contejean-Devie completion)
# ---------------------------------------------------------------------------

def hilbert_basis(matrix, rhs, width=None):
    """Minimal solutions of A.x = b with x over N.

    Returns (inhomogeneous, homogeneous): the minimal solutions of A.x = b
    and the Hilbert basis of A.x = 0.  The full solution set of A.x = b is
    the union, over the first list, of (solution + N-combinations of the
    second list).  Solved by homogenising with one fresh variable and running
    breadth-first Contejean-Devie completion with minimality pruning.
    """
    rows = [tuple(int(e) for e in r) for r in matrix]
    rhs = tuple(int(e) for e in rhs)
    if len(rows) != len(rhs):
        raise InputError("matrix row count does not match right-hand side")
    if rows:
        n = len(rows[0])
        if any(len(r) != n for r in rows):
            raise InputError("ragged matrix")
        if width is not None and width != n:
            raise InputError("width disagrees with the matrix")
    else:
        if width is None:
            raise InputError("width required for a system with no equations")
        n = width

    m = len(rows)
    total = n + 1  # homogenised: A.x - b*x0 = 0
    cols = [tuple(rows[i][j] for i in range(m)) for j in range(n)]
    cols.append(tuple(-rhs[i] for i in range(m)))

    def defect(vec):
        return tuple(
            sum(cols[j][i] * vec[j] for j in range(total)) for i in range(m)
        )

    def dot(u, v):
        return sum(a * b for a, b in zip(u, v))

    basis = []  # minimal nonzero solutions of the homogenised system

    def dominated(vec):
        return any(all(a >= b for a, b in zip(vec, sol)) for sol in basis)

    frontier = []
    for j in range(total):
        unit = tuple(1 if i == j else 0 for i in range(total))
        frontier.append((unit, defect(unit)))
    seen = {vec for vec, _ in frontier}

    while frontier:
        nxt = []
        for vec, d in frontier:
            if all(e == 0 for e in d):
                if not dominated(vec):
                    basis.append(vec)
        for vec, d in frontier:
            if all(e == 0 for e in d):
                continue
            for j in range(total):
                if dot(d, cols[j]) >= 0:
                    continue
                cand = tuple(v + (1 if i == j else 0) for i, v in enumerate(vec))
                if cand in seen or dominated(cand):
                    continue
                seen.add(cand)
                nxt.append((cand, defect(cand)))
        frontier = nxt

    inhom = sorted(vec[:n] for vec in basis if vec[n] == 1)
    homog = sorted(vec[:n] for vec in basis if vec[n] == 0)
    return inhom, homog


def sl_intersect(s1: SemilinearSet, s2: SemilinearSet) -> SemilinearSet:
    """Exact intersection, component pair by component pair.

    For components c1 + P1.lam and c2 + P2.mu, the simultaneous solutions of
    c1 + P1.lam = c2 + P2.mu over N are pushed through lam -> c1 + P1.lam.
    """
    _check_space(s1.space, s2.space)
    space = s1.space
    k = space.dimension
    out = []
    for a in s1.components:
        pa = [p.entries for p in a.periods]
        for b in s2.components:
            pb = [p.entries for p in b.periods]
            m1, m2 = len(pa), len(pb)
            matrix = [
                tuple(pa[j][i] for j in range(m1)) + tuple(-pb[j][i] for j in range(m2))
                for i in range(k)
            ]
            rhs = tuple(b.constant.entries[i] - a.constant.entries[i] for i in range(k))
            inhom, homog = hilbert_basis(matrix, rhs, width=m1 + m2)

            def combo(lam):
                return tuple(
                    sum(lam[j] * pa[j][i] for j in range(m1)) for i in range(k)
                )

            periods = [Vector(space, combo(h)) for h in homog]
            for sol in inhom:
                const = Vector(
                    space,
                    tuple(a.constant.entries[i] + c for i, c in enumerate(combo(sol))),
                )
                out.append(LinearSet(const, tuple(periods)))
    return SemilinearSet(space, out)


def sl_balance(s: SemilinearSet, plus, minus) -> SemilinearSet:
    """Members with equal counts on the two named coordinates.

    Extensionally the intersection with the diagonal set, but solved on one
    equation over each component's period multipliers instead of the full
    combined system.
    """
    ip = s.space.index(plus)
    im = s.space.index(minus)
    out = []
    for comp in s.components:
        coeffs = [p.entries[ip] - p.entries[im] for p in comp.periods]
        rhs = comp.constant.entries[im] - comp.constant.entries[ip]
        inhom, homog = hilbert_basis([coeffs], [rhs], width=len(coeffs))
        periods = []
        for h in homog:
            vec = tuple(
                sum(h[j] * comp.periods[j].entries[i] for j in range(len(h)))
                for i in range(s.space.dimension)
            )
            periods.append(Vector(s.space, vec))
        for lam in inhom:
            const = tuple(
                comp.constant.entries[i]
                + sum(lam[j] * comp.periods[j].entries[i] for j in range(len(lam)))
                for i in range(s.space.dimension)
            )
            out.append(LinearSet(Vector(s.space, const), tuple(periods)))
    return SemilinearSet(s.space, out)


def _linear_subsumes(big: LinearSet, small: LinearSet, limit: int) -> bool:
    """Sufficient check that every member of `small` lies in `big`."""
    target = tuple(a - b for a, b in zip(small.constant.entries, big.constant.entries))
    if any(t < 0 for t in target):
        return False
    big_periods = [p.entries for p in big.periods]
    if not _member_linear(target, big_periods, limit):
        return False
    for p in small.periods:
        if not _member_linear(p.entries, big_periods, max(p.entries, default=0)):
            return False
    return True


def sl_compress(s: SemilinearSet, max_components: int = 400) -> SemilinearSet:
    """Drop components provably contained in another component."""
    comps = list(s.components)
    if len(comps) <= 1 or len(comps) > max_components:
        return s
    # prefer keeping components with more periods (more likely to absorb)
    comps.sort(key=lambda c: (-len(c.periods), c._key()))
    kept = []
    for c in comps:
        limit = max(c.constant.entries, default=0)
        if any(_linear_subsumes(k, c, limit) for k in kept):
            continue
        kept.append(c)
    return SemilinearSet(s.space, kept)


def render_semilinear(s: SemilinearSet) -> str:
    """One line per component: constant, then periods, pipe-separated."""
    if s.is_empty():
        return "EMPTY"
    if s.space.dimension == 0:
        return "UNIT"
    lines = []
    for comp in s.components:
        groups = [" ".join(str(e) for e in comp.constant.entries)]
        for p in comp.periods:
            groups.append(" ".join(str(e) for e in p.entries))
        lines.append(" | ".join(groups))
    return "\n".join(lines)


def space_from_letters(letters) -> CoordSpace:
    return CoordSpace(tuple(sorted(letters, key=letter_key)))
