"""Combinatorial gropes, commutator brackets, and Magnus depth.

A grope tree is a rooted tree of surface stages; every stage has genus
g >= 1 and carries g dual pairs of slots, each slot either bare or a child
stage.  The class of a grope mirrors the lower central series: a bare
stage has class 2, and pushing higher stages into slots adds their classes
pairwise.  Symmetric gropes, graded by (half-integer) height, mirror the
derived series; a symmetric grope of height h has class 2^h.

On the group-theory side, formal commutator brackets carry weight (lower
central class) and derived depth, and free-group words get their lower
central depth from the truncated Magnus expansion x -> 1 + X over the free
associative ring.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence, Union

from .errors import BudgetExceededError, InputError, PreconditionError

MAGNUS_RANK_BUDGET = 4
MAGNUS_CUTOFF_BUDGET = 8

Slot = Optional["GropeTree"]  # None = bare


@dataclass(frozen=True)
class GropeTree:
    """A surface stage: `pairs` lists the (a, b) slot pairs, one per genus."""

    pairs: tuple

    def __init__(self, pairs: Sequence):
        pairs = tuple((a, b) for a, b in pairs)
        if not pairs:
            raise InputError("stage genus must be >= 1")
        for a, b in pairs:
            for s in (a, b):
                if s is not None and not isinstance(s, GropeTree):
                    raise InputError("slot must be bare (None) or a GropeTree")
        object.__setattr__(self, "pairs", pairs)

    @property
    def genus(self) -> int:
        return len(self.pairs)

    @classmethod
    def bare(cls, genus: int = 1) -> "GropeTree":
        return cls([(None, None)] * genus)

    def to_json_dict(self) -> dict:
        def slot(s):
            return "bare" if s is None else s.to_json_dict()
        return {"genus": self.genus,
                "pairs": [[slot(a), slot(b)] for a, b in self.pairs]}

    @classmethod
    def from_json_dict(cls, data) -> "GropeTree":
        if not isinstance(data, dict) or "pairs" not in data:
            raise InputError("grope JSON needs a 'pairs' list")
        pairs = []
        for item in data["pairs"]:
            if not isinstance(item, (list, tuple)) or len(item) != 2:
                raise InputError("each pair must be [slot, slot]")
            pairs.append(tuple(cls._slot_from_json(s) for s in item))
        tree = cls(pairs)
        if "genus" in data and data["genus"] != tree.genus:
            raise InputError("genus field disagrees with the pair count")
        return tree

    @classmethod
    def _slot_from_json(cls, s):
        if s == "bare" or s is None:
            return None
        return cls.from_json_dict(s)


def class_of(t: GropeTree) -> int:
    """Grope class: min over dual pairs of the two slot contributions,
    where a bare slot contributes 1 and a child stage its own class."""
    def contrib(s: Slot) -> int:
        return 1 if s is None else class_of(s)
    return min(contrib(a) + contrib(b) for a, b in t.pairs)


def symmetric_grope(h: Union[int, Fraction], genus: int = 1) -> GropeTree:
    """The symmetric grope template of (half-integer) height h >= 1.

    Integer heights attach height-(h-1) gropes to every slot; height
    m + 1/2 attaches height m to one slot of each pair and height m - 1
    to its dual, with height 0 meaning a bare slot.  The convention is
    pinned by class(height 3/2) = 3.
    """
    h = Fraction(h)
    if h < 1 or (2 * h).denominator != 1:
        raise PreconditionError("height must be a half-integer >= 1")
    if genus < 1:
        raise PreconditionError("genus must be >= 1")

    def slot_of_height(hh: Fraction) -> Slot:
        if hh == 0:
            return None
        return symmetric_grope(hh, genus)

    if h == 1:
        return GropeTree.bare(genus)
    if h.denominator == 1:
        child = symmetric_grope(h - 1, genus)
        return GropeTree([(child, child)] * genus)
    m = h - Fraction(1, 2)  # h = m + 1/2 with integer m >= 1
    first = slot_of_height(m)
    second = slot_of_height(m - 1)
    return GropeTree([(first, second)] * genus)


def height_of(t: GropeTree) -> Optional[Fraction]:
    """Height h when t matches the symmetric template of height h for some
    genus profile (slot order within a pair immaterial); None otherwise."""
    def slot_height(s: Slot) -> Optional[Fraction]:
        if s is None:
            return Fraction(0)
        return height_of(s)

    stage: Optional[Fraction] = None
    for a, b in t.pairs:
        ha = slot_height(a)
        hb = slot_height(b)
        if ha is None or hb is None:
            return None
        if ha == hb:
            val = ha + 1
        elif abs(ha - hb) == 1:
            val = max(ha, hb) + Fraction(1, 2)
        else:
            return None
        if stage is None:
            stage = val
        elif stage != val:
            return None
    return stage


# ---------------------------------------------------------------------------
# brackets and free words


class Bracket:
    """Formal commutator expression over named generators."""

    __slots__ = ("left", "right", "name")

    def __init__(self, left=None, right=None, name: Optional[str] = None):
        if name is not None:
            if left is not None or right is not None:
                raise InputError("a generator bracket has no children")
            self.name = name
            self.left = self.right = None
        else:
            if not isinstance(left, Bracket) or not isinstance(right, Bracket):
                raise InputError("commutator needs two bracket children")
            self.left = left
            self.right = right
            self.name = None

    @classmethod
    def generator(cls, name: str) -> "Bracket":
        return cls(name=name)

    @classmethod
    def commutator(cls, left: "Bracket", right: "Bracket") -> "Bracket":
        return cls(left, right)

    @property
    def is_generator(self) -> bool:
        return self.name is not None

    def __str__(self):
        if self.is_generator:
            return self.name
        return f"[{self.left},{self.right}]"

    def __eq__(self, o):
        return (isinstance(o, Bracket) and self.name == o.name
                and self.left == o.left and self.right == o.right)

    def __hash__(self):
        return hash((self.name, self.left, self.right))


def parse_bracket(text: str) -> Bracket:
    """Parse bracket syntax: generators a-z, commutators "[l,r]"."""
    text = text.replace(" ", "")
    pos = 0

    def parse() -> Bracket:
        nonlocal pos
        if pos >= len(text):
            raise InputError("unexpected end of bracket expression")
        ch = text[pos]
        if ch == "[":
            pos += 1
            left = parse()
            if pos >= len(text) or text[pos] != ",":
                raise InputError("expected ',' in commutator")
            pos += 1
            right = parse()
            if pos >= len(text) or text[pos] != "]":
                raise InputError("expected ']' in commutator")
            pos += 1
            return Bracket.commutator(left, right)
        if ch.isalpha() and ch.islower():
            pos += 1
            return Bracket.generator(ch)
        raise InputError(f"unexpected character {ch!r} in bracket expression")

    out = parse()
    if pos != len(text):
        raise InputError("trailing input after bracket expression")
    return out


def weight(b: Bracket) -> int:
    """Lower-central weight: generators weigh 1, commutators add."""
    if b.is_generator:
        return 1
    return weight(b.left) + weight(b.right)


def derived_depth(b: Bracket) -> int:
    """Derived-series depth: 0 for generators, min of the children plus 1."""
    if b.is_generator:
        return 0
    return min(derived_depth(b.left), derived_depth(b.right)) + 1


def bracket_to_grope(b: Bracket) -> GropeTree:
    """Genus-1 stage tree realizing the bracket; class equals the weight."""
    if b.is_generator:
        raise PreconditionError("weight-1 bracket carries no grope")

    def realize(x: Bracket) -> Slot:
        return None if x.is_generator else bracket_to_grope(x)

    return GropeTree([(realize(b.left), realize(b.right))])


@dataclass(frozen=True)
class FreeWord:
    """Freely reduced word in the free group on named generators."""

    generators: tuple  # generator names, rank = len
    letters: tuple     # nonzero ints; sign = inverse, |value|-1 = index

    def __init__(self, generators: Sequence[str], letters: Sequence[int]):
        generators = tuple(generators)
        if len(set(generators)) != len(generators):
            raise InputError("duplicate generator names")
        reduced: list = []
        for x in letters:
            x = int(x)
            if x == 0 or abs(x) > len(generators):
                raise InputError(f"letter {x} out of range")
            if reduced and reduced[-1] == -x:
                reduced.pop()
            else:
                reduced.append(x)
        object.__setattr__(self, "generators", generators)
        object.__setattr__(self, "letters", tuple(reduced))

    @property
    def rank(self) -> int:
        return len(self.generators)

    def inverse(self) -> "FreeWord":
        return FreeWord(self.generators, [-x for x in reversed(self.letters)])

    def __mul__(self, o: "FreeWord") -> "FreeWord":
        if self.generators != o.generators:
            raise InputError("words live over different generator sets")
        return FreeWord(self.generators, self.letters + o.letters)

    def __str__(self):
        if not self.letters:
            return "1"
        out = []
        for x in self.letters:
            name = self.generators[abs(x) - 1]
            out.append(name if x > 0 else f"{name}^-1")
        return " ".join(out)


def parse_free_word(text: str, generators: Optional[Sequence[str]] = None) -> FreeWord:
    """Parse space-separated tokens like "x y x^-1 y^-1"."""
    tokens = text.split()
    names = list(generators) if generators else []
    letters = []
    for tok in tokens:
        if tok.endswith("^-1"):
            base, sgn = tok[:-3], -1
        else:
            base, sgn = tok, 1
        if not (base.isalpha() and base.islower()):
            raise InputError(f"malformed generator token {tok!r}")
        if base not in names:
            if generators is not None:
                raise InputError(f"unknown generator {base!r}")
            names.append(base)
        letters.append(sgn * (names.index(base) + 1))
    if not names:
        names = ["x"]
    return FreeWord(names, letters)


def bracket_word(b: Bracket) -> FreeWord:
    """Expand a bracket into the corresponding free-group word."""
    names: list = []

    def collect(x: Bracket):
        if x.is_generator:
            if x.name not in names:
                names.append(x.name)
        else:
            collect(x.left)
            collect(x.right)

    collect(b)

    def expand(x: Bracket) -> FreeWord:
        if x.is_generator:
            return FreeWord(names, [names.index(x.name) + 1])
        l = expand(x.left)
        r = expand(x.right)
        return l * r * l.inverse() * r.inverse()

    return expand(b)


# ---------------------------------------------------------------------------
# Magnus expansion


def _series_mul(a: dict, b: dict, cutoff: int) -> dict:
    out: dict = {}
    for wa, ca in a.items():
        for wb, cb in b.items():
            if len(wa) + len(wb) >= cutoff:
                continue
            w = wa + wb
            out[w] = out.get(w, 0) + ca * cb
    return {w: c for w, c in out.items() if c}


def magnus_depth(w: FreeWord, cutoff: int = MAGNUS_CUTOFF_BUDGET) -> Optional[int]:
    """Least degree of a nonvanishing term of the Magnus expansion minus 1.

    Each generator maps to 1 + X, inverses to the truncated geometric
    series; the returned k means the word lies in the k-th but not the
    (k+1)-st lower central subgroup.  None means "no term below the
    cutoff", in particular for the identity.
    """
    if w.rank > MAGNUS_RANK_BUDGET:
        raise BudgetExceededError(f"rank {w.rank} exceeds {MAGNUS_RANK_BUDGET}")
    if not 1 <= cutoff <= MAGNUS_CUTOFF_BUDGET:
        raise BudgetExceededError(
            f"cutoff {cutoff} outside 1..{MAGNUS_CUTOFF_BUDGET}")
    acc = {(): 1}
    for x in w.letters:
        g = abs(x) - 1
        if x > 0:
            term = {(): 1, (g,): 1}
        else:
            term = {tuple([g] * k): (-1) ** k for k in range(cutoff)}
        acc = _series_mul(acc, term, cutoff)
    acc.pop((), None)
    if not acc:
        return None
    return min(len(word) for word in acc)
