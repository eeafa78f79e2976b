"""Set partitions of an indexed domain, their meet, and integer-partition shapes."""

from __future__ import annotations

import json
from collections import Counter
from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import DomainMismatch

__all__ = [
    "Partition",
    "Shape",
    "meet",
    "shape_of",
    "shape_lookup",
    "Lookup",
    "integer_partitions",
]


class Partition:
    """A partition of ``range(domain_size)``.

    Blocks are sorted internally and ordered by their minimum element, so two
    partitions are equal exactly when they have the same blocks.  Block ids
    are dense ``0..r-1`` in that order.
    """

    __slots__ = ("domain_size", "blocks", "block_of")

    def __init__(self, blocks: Iterable[Iterable[int]], domain_size: int | None = None):
        bl = [tuple(sorted(b)) for b in blocks]
        if any(not b for b in bl):
            raise ValueError("blocks must be non-empty")
        bl.sort(key=lambda b: b[0])
        n = sum(len(b) for b in bl) if domain_size is None else domain_size
        block_of = [-1] * n
        for bid, b in enumerate(bl):
            for x in b:
                if not 0 <= x < n or block_of[x] != -1:
                    raise ValueError(f"blocks do not partition range({n})")
                block_of[x] = bid
        if -1 in block_of:
            raise ValueError(f"blocks do not cover range({n})")
        self.domain_size = n
        self.blocks = tuple(bl)
        self.block_of = tuple(block_of)

    @classmethod
    def from_labels(cls, labels: Sequence) -> "Partition":
        """Group indices by equal label."""
        groups: dict = {}
        for i, lab in enumerate(labels):
            groups.setdefault(lab, []).append(i)
        return cls(groups.values(), len(labels))

    @classmethod
    def trivial(cls, n: int) -> "Partition":
        """The one-block partition."""
        return cls([range(n)], n)

    @classmethod
    def discrete(cls, n: int) -> "Partition":
        return cls([[i] for i in range(n)], n)

    def __len__(self) -> int:
        return len(self.blocks)

    def __iter__(self):
        return iter(self.blocks)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Partition)
            and self.domain_size == other.domain_size
            and self.blocks == other.blocks
        )

    def __hash__(self) -> int:
        return hash((self.domain_size, self.blocks))

    def __repr__(self) -> str:
        return f"Partition({[list(b) for b in self.blocks]}, domain_size={self.domain_size})"

    def refines(self, other: "Partition") -> bool:
        """True if every block of ``self`` lies inside one block of ``other``."""
        if self.domain_size != other.domain_size:
            return False
        return all(len({other.block_of[x] for x in b}) == 1 for b in self.blocks)

    def to_json_obj(self) -> dict:
        return {"domain": self.domain_size, "blocks": [[x + 1 for x in b] for b in self.blocks]}

    def to_json(self) -> str:
        return json.dumps(self.to_json_obj())

    @classmethod
    def from_json_obj(cls, obj: dict) -> "Partition":
        return cls([[x - 1 for x in b] for b in obj["blocks"]], obj["domain"])


class Shape(tuple):
    """Weakly decreasing tuple of positive block sizes (an integer partition).

    ``str`` renders parts in increasing order joined by ``+``, e.g. ``1+11``.
    """

    def __new__(cls, parts: Iterable[int] = ()):
        ps = sorted((int(p) for p in parts), reverse=True)
        if any(p <= 0 for p in ps):
            raise ValueError(f"shape parts must be positive: {ps}")
        return super().__new__(cls, ps)

    @classmethod
    def parse(cls, text: str) -> "Shape":
        return cls(int(t) for t in text.split("+"))

    @property
    def total(self) -> int:
        return sum(self)

    def __str__(self) -> str:
        return "+".join(str(p) for p in reversed(self))

    def __repr__(self) -> str:
        return f"Shape({tuple(self)})"

    def graph_name(self) -> str:
        """Clique-union notation, e.g. ``K8 ⊔ K4``."""
        return " ⊔ ".join(f"K{p}" for p in self)


def meet(p1: Partition, p2: Partition) -> Partition:
    """Common refinement: the non-empty pairwise block intersections."""
    if p1.domain_size != p2.domain_size:
        raise DomainMismatch(f"domains {p1.domain_size} and {p2.domain_size} differ")
    return Partition.from_labels(list(zip(p1.block_of, p2.block_of)))


def shape_of(p: Partition) -> Shape:
    return Shape(len(b) for b in p.blocks)


@dataclass(frozen=True)
class Lookup:
    """Outcome of a catalog lookup: ``unique``, ``ambiguous`` or ``not_found``."""

    status: str
    labels: tuple = ()

    @property
    def label(self):
        return self.labels[0] if self.status == "unique" else None


def shape_lookup(shape: Sequence[int], catalog: Iterable[tuple[Sequence[int], object]]) -> Lookup:
    """Find the catalog labels whose shape equals ``shape`` as a multiset."""
    target = Counter(shape)
    hits = tuple(label for s, label in catalog if Counter(s) == target)
    if not hits:
        return Lookup("not_found")
    if len(hits) > 1:
        return Lookup("ambiguous", hits)
    return Lookup("unique", hits)


def integer_partitions(n: int, max_part: int | None = None):
    """Yield all integer partitions of ``n`` as weakly decreasing tuples."""
    if max_part is None:
        max_part = n
    if n == 0:
        yield ()
        return
    for first in range(min(n, max_part), 0, -1):
        for rest in integer_partitions(n - first, first):
            yield (first,) + rest
