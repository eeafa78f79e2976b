"""Permutations of {0, ..., n-1} and their action on points and point sets.

Points are 0-based everywhere inside the library.  Text I/O uses the 1-based
cycle notation of the group theory literature, e.g. ``(1,2,3)(4,5)``.

Products act left to right: ``compose(p, q)`` first applies ``p`` then ``q``,
so that ``i^(pq) = (i^p)^q``.  ``p * q`` is the same product.
"""

from __future__ import annotations

import re
from typing import Iterable, Sequence

from .errors import DegreeMismatch, Malformed, OutOfRange, RepeatedPoint

__all__ = [
    "Permutation",
    "PointSet",
    "parse_permutation",
    "compose",
    "inverse",
    "apply_set",
    "fixed_point_count",
]


class Permutation:
    """An immutable bijection of ``range(degree)`` stored as its image tuple."""

    __slots__ = ("images", "_hash")

    def __init__(self, images: Sequence[int], check: bool = True):
        images = tuple(images)
        if check:
            if not images:
                raise ValueError("degree must be at least 1")
            if sorted(images) != list(range(len(images))):
                raise ValueError(f"not a permutation: {images}")
        self.images = images
        self._hash = None

    @classmethod
    def identity(cls, degree: int) -> "Permutation":
        return cls(range(degree))

    @classmethod
    def from_cycles(cls, cycles: Iterable[Sequence[int]], degree: int) -> "Permutation":
        """Build from 0-based disjoint cycles."""
        images = list(range(degree))
        seen = set()
        for cyc in cycles:
            for a in cyc:
                if not 0 <= a < degree:
                    raise OutOfRange(f"point {a + 1} outside 1..{degree}")
                if a in seen:
                    raise RepeatedPoint(f"point {a + 1} occurs twice")
                seen.add(a)
            for a, b in zip(cyc, list(cyc[1:]) + [cyc[0]]):
                images[a] = b
        return cls(images, check=False)

    @property
    def degree(self) -> int:
        return len(self.images)

    def __call__(self, i: int) -> int:
        return self.images[i]

    def __getitem__(self, i: int) -> int:
        return self.images[i]

    def __len__(self) -> int:
        return len(self.images)

    def __mul__(self, other: "Permutation") -> "Permutation":
        return compose(self, other)

    def __invert__(self) -> "Permutation":
        return inverse(self)

    def __pow__(self, e: int) -> "Permutation":
        if e < 0:
            return inverse(self) ** (-e)
        result = Permutation.identity(self.degree)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __eq__(self, other) -> bool:
        return isinstance(other, Permutation) and self.images == other.images

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(self.images)
        return self._hash

    def __lt__(self, other: "Permutation") -> bool:
        return self.images < other.images

    def is_identity(self) -> bool:
        return all(i == x for i, x in enumerate(self.images))

    def cycles(self) -> list[tuple[int, ...]]:
        """Non-trivial cycles, each starting at its smallest point, 0-based."""
        seen = [False] * self.degree
        out = []
        for i in range(self.degree):
            if seen[i] or self.images[i] == i:
                continue
            cyc = [i]
            seen[i] = True
            j = self.images[i]
            while j != i:
                seen[j] = True
                cyc.append(j)
                j = self.images[j]
            out.append(tuple(cyc))
        return out

    def order(self) -> int:
        from math import lcm

        result = 1
        for c in self.cycles():
            result = lcm(result, len(c))
        return result

    def parity(self) -> int:
        """0 for even permutations, 1 for odd ones."""
        return sum(len(c) - 1 for c in self.cycles()) % 2

    def support(self) -> list[int]:
        return [i for i, x in enumerate(self.images) if i != x]

    def __str__(self) -> str:
        cycles = self.cycles()
        if not cycles:
            return "id"
        return "".join("(" + ",".join(str(a + 1) for a in c) + ")" for c in cycles)

    def __repr__(self) -> str:
        return f"Permutation({str(self)!r}, degree={self.degree})"


_CYCLE_RE = re.compile(r"\(([^()]*)\)")


def parse_permutation(text: str, degree: int) -> Permutation:
    """Parse 1-based cycle notation such as ``"(1,2,3)(4,5)"`` or ``"id"``.

    >>> parse_permutation("(1,2,3)", 3).images
    (1, 2, 0)
    """
    if degree < 1:
        raise ValueError("degree must be at least 1")
    s = "".join(text.split())
    if s == "id":
        return Permutation.identity(degree)
    if not s:
        raise Malformed("empty permutation text")
    pos = 0
    cycles = []
    while pos < len(s):
        m = _CYCLE_RE.match(s, pos)
        if m is None:
            raise Malformed(f"unbalanced or unexpected text at offset {pos}: {text!r}")
        body = m.group(1)
        if not body:
            raise Malformed(f"empty cycle in {text!r}")
        entries = []
        for tok in body.split(","):
            if not tok.isdigit():
                raise Malformed(f"bad cycle entry {tok!r} in {text!r}")
            v = int(tok)
            if not 1 <= v <= degree:
                raise OutOfRange(f"point {v} outside 1..{degree}")
            entries.append(v - 1)
        cycles.append(entries)
        pos = m.end()
    return Permutation.from_cycles(cycles, degree)


def compose(p: Permutation, q: Permutation) -> Permutation:
    """The product applying ``p`` first, then ``q``."""
    if p.degree != q.degree:
        raise DegreeMismatch(f"degrees {p.degree} and {q.degree} differ")
    qi = q.images
    return Permutation([qi[x] for x in p.images], check=False)


def inverse(p: Permutation) -> Permutation:
    out = [0] * p.degree
    for i, x in enumerate(p.images):
        out[x] = i
    return Permutation(out, check=False)


def fixed_point_count(p: Permutation) -> int:
    return sum(1 for i, x in enumerate(p.images) if i == x)


class PointSet:
    """A subset of ``range(degree)``.

    The canonical key is a bit mask (bit ``i`` set iff ``i`` is a member) for
    degree <= 64 and the sorted member tuple otherwise.  Comparing masks
    numerically orders equal-size sets colexicographically.
    """

    __slots__ = ("degree", "members")

    def __init__(self, members: Iterable[int], degree: int):
        ms = tuple(sorted(set(members)))
        if ms and not (0 <= ms[0] and ms[-1] < degree):
            raise OutOfRange(f"members {ms} outside 0..{degree - 1}")
        self.degree = degree
        self.members = ms

    @classmethod
    def from_mask(cls, mask: int, degree: int) -> "PointSet":
        return cls(mask_members(mask), degree)

    @property
    def mask(self) -> int:
        m = 0
        for a in self.members:
            m |= 1 << a
        return m

    @property
    def key(self):
        return self.mask if self.degree <= 64 else self.members

    def complement(self) -> "PointSet":
        s = set(self.members)
        return PointSet((i for i in range(self.degree) if i not in s), self.degree)

    def __len__(self) -> int:
        return len(self.members)

    def __iter__(self):
        return iter(self.members)

    def __contains__(self, a: int) -> bool:
        return a in self.members

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, PointSet)
            and self.degree == other.degree
            and self.members == other.members
        )

    def __hash__(self) -> int:
        return hash((self.degree, self.members))

    def __repr__(self) -> str:
        return f"PointSet({list(self.members)}, degree={self.degree})"

    def one_based(self) -> list[int]:
        return [a + 1 for a in self.members]


def mask_members(mask: int) -> list[int]:
    out = []
    i = 0
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return out


def image_mask(images: Sequence[int], mask: int) -> int:
    """Image of a bit-mask set under a permutation given by its image tuple."""
    out = 0
    i = 0
    while mask:
        if mask & 1:
            out |= 1 << images[i]
        mask >>= 1
        i += 1
    return out


def apply_set(p: Permutation, A: PointSet) -> PointSet:
    if p.degree != A.degree:
        raise DegreeMismatch(f"permutation degree {p.degree} vs set degree {A.degree}")
    im = p.images
    return PointSet((im[a] for a in A.members), A.degree)
