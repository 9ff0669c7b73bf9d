"""Braid words and Seifert surfaces of braid closures.

A braid word in B_n is a sequence of nonzero integers: letter +i / -i is a
positive / negative crossing of strands i and i+1 (generator index i,
1 <= i <= n-1).  A closed braid bounds the Seifert surface obtained from n
disks (one per strand) joined by one half-twisted band per letter.  The
first homology of that surface has rank c - n + 1 (c letters), with a
canonical cycle basis: consecutive occurrences of the same generator index
bound one loop through the two bands.

Seifert pairing of basis loops, worked out from the disk-and-band model
(letter positions act as cyclic coordinates on each disk boundary):

* a loop through bands of signs (e1, e2) has self-pairing -(e1+e2)/2;
* consecutive loops of one column sharing a band of sign e pair as
  (e+1)/2 / (e-1)/2 (earlier loop first);
* loops of adjacent columns pair off exactly when their band positions
  interleave, contributing a single +-1 on one side;
* all other pairs are zero.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Sequence

from .errors import InputError, PreconditionError
from .seifert import SeifertMatrix


@dataclass(frozen=True)
class BraidWord:
    """A word in the braid group on `strands` strands."""

    strands: int
    letters: tuple

    def __init__(self, strands: int, letters: Sequence[int]):
        if strands < 1:
            raise InputError("strand count must be >= 1")
        letters = tuple(int(x) for x in letters)
        for x in letters:
            if x == 0 or abs(x) > strands - 1:
                raise InputError(
                    f"letter {x} out of range for {strands} strands")
        object.__setattr__(self, "strands", int(strands))
        object.__setattr__(self, "letters", letters)

    def permutation(self) -> tuple:
        """Image of each strand (0-based) under the braid."""
        perm = list(range(self.strands))
        for x in self.letters:
            i = abs(x) - 1
            perm[i], perm[i + 1] = perm[i + 1], perm[i]
        return tuple(perm)

    def writhe(self) -> int:
        return sum(1 if x > 0 else -1 for x in self.letters)

    def mirror(self) -> "BraidWord":
        return BraidWord(self.strands, [-x for x in self.letters])

    def __str__(self):
        return serialize_braid(self)


def parse_braid(text: str) -> BraidWord:
    """Parse "n=3; 1 -2 1 -2" into a braid word."""
    m = re.match(r"^\s*n\s*=\s*(\d+)\s*;(.*)$", text, re.DOTALL)
    if not m:
        raise InputError("expected braid text of the form 'n=<int>; w1 w2 ...'")
    n = int(m.group(1))
    letters = []
    for tok in m.group(2).split():
        try:
            letters.append(int(tok))
        except ValueError:
            raise InputError(f"malformed braid letter {tok!r}") from None
    return BraidWord(n, letters)


def serialize_braid(b: BraidWord) -> str:
    return f"n={b.strands}; " + " ".join(str(x) for x in b.letters)


def closure_is_knot(b: BraidWord) -> bool:
    """True when the braid closure has a single component."""
    perm = b.permutation()
    seen = 0
    i = 0
    for _ in range(b.strands):
        seen += 1
        i = perm[i]
        if i == 0:
            break
    return seen == b.strands


def seifert_matrix_from_braid(b: BraidWord) -> SeifertMatrix:
    """Seifert matrix of the braid closure, on the canonical cycle basis."""
    if not closure_is_knot(b):
        raise PreconditionError("closure is a link")
    occ: dict[int, list[int]] = {i: [] for i in range(1, b.strands)}
    for pos, x in enumerate(b.letters):
        occ[abs(x)].append(pos)
    missing = [i for i, ps in occ.items() if not ps]
    if missing:
        raise PreconditionError(
            "disconnected Seifert surface: generator(s) "
            + ", ".join(str(i) for i in missing) + " never occur")

    sign = [1 if x > 0 else -1 for x in b.letters]
    # loops[(column, j)] -> (top position, bottom position)
    loops = []
    for col in range(1, b.strands):
        ps = occ[col]
        for j in range(len(ps) - 1):
            loops.append((col, ps[j], ps[j + 1]))
    m = len(loops)
    assert m == len(b.letters) - b.strands + 1

    V = [[0] * m for _ in range(m)]
    for idx, (col, top, bot) in enumerate(loops):
        V[idx][idx] = -(sign[top] + sign[bot]) // 2
    for ix in range(m):
        cx, ax, bx = loops[ix]
        for iy in range(ix + 1, m):
            cy, ay, by = loops[iy]
            if cy == cx:
                if ay == bx:  # consecutive loops sharing band bx
                    e = sign[bx]
                    V[ix][iy] = (e + 1) // 2
                    V[iy][ix] = (e - 1) // 2
            elif cy == cx + 1:
                if ax < ay < bx < by:
                    V[iy][ix] = -1
                elif ay < ax < by < bx:
                    V[iy][ix] = 1
            elif cy == cx - 1:
                if ay < ax < by < bx:
                    V[ix][iy] = -1
                elif ax < ay < bx < by:
                    V[ix][iy] = 1
    return SeifertMatrix(V)
