"""Alphabet letters used on automaton transitions and as coordinate labels.

Three kinds of letters coexist in one mixed alphabet:

* ``SignedGen`` -- a group generator or its inverse (``a`` / ``a^-1``),
* ``Marker`` -- an auxiliary free letter that is not a generator,
* ``PairLetter`` -- a (source state, target state) letter created while
  processing a free product; the ``level`` tag keeps letters from distinct
  recursion frames apart.

Canonical order is SignedGen < Marker < PairLetter, each lexicographic.
"""

from __future__ import annotations

import re
from dataclasses import dataclass


@dataclass(frozen=True)
class SignedGen:
    vertex: str
    sign: int  # +1 or -1

    def __post_init__(self):
        if self.sign not in (1, -1):
            raise ValueError(f"sign must be +1 or -1, got {self.sign}")

    def inverse(self) -> "SignedGen":
        return SignedGen(self.vertex, -self.sign)

    def render(self) -> str:
        return self.vertex if self.sign == 1 else f"{self.vertex}^-1"


_SIGNED_RENDERING = re.compile(r"^.+\^-1$")


@dataclass(frozen=True)
class Marker:
    label: str

    def __post_init__(self):
        # keep marker renderings disjoint from signed-generator renderings
        if _SIGNED_RENDERING.match(self.label):
            raise ValueError(f"marker label {self.label!r} looks like an inverse generator")

    def render(self) -> str:
        return self.label


@dataclass(frozen=True)
class PairLetter:
    level: int
    src: int
    dst: int

    def render(self) -> str:
        return f"({self.src},{self.dst})@{self.level}"


Letter = SignedGen | Marker | PairLetter


def letter_key(letter: Letter):
    """Sort key realising the canonical letter order."""
    if isinstance(letter, SignedGen):
        return (0, letter.vertex, 0 if letter.sign == 1 else 1)
    if isinstance(letter, Marker):
        return (1, letter.label)
    if isinstance(letter, PairLetter):
        return (2, letter.level, letter.src, letter.dst)
    raise TypeError(f"not a letter: {letter!r}")


def sort_letters(letters) -> tuple:
    return tuple(sorted(letters, key=letter_key))


def render_letter(letter: Letter) -> str:
    return letter.render()


def signed_alphabet(vertices) -> tuple:
    """All signed generators over the given vertex names, canonically ordered."""
    out = []
    for v in vertices:
        out.append(SignedGen(v, 1))
        out.append(SignedGen(v, -1))
    return sort_letters(out)
