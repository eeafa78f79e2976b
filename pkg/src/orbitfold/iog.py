"""Intersection orbital graphs and clique-union recognition.

Two points are adjacent in Γ(G1, G2) when they are distinct and lie in a
common G1-orbit and a common G2-orbit, so Γ is a disjoint union of cliques on
the blocks of the meet of the two orbit partitions.  The graph is stored as
that partition; ``densify`` produces an explicit adjacency for the oracles.
"""

from __future__ import annotations

from math import comb
from typing import Sequence

import numpy as np

from .errors import DegreeMismatch, DomainTooLarge, KTooLarge
from .group import PermutationGroup, point_orbits, subset_domain, subset_orbits
from .partition import Partition, Shape, meet, shape_of

DEFAULT_VERTEX_CAP = 10**6

__all__ = [
    "CliqueUnionGraph",
    "SimpleGraph",
    "intersection_orbital_graph",
    "k_intersection_graph",
    "is_complete",
    "components",
    "densify",
    "satisfies_quadratic_relation",
    "recognize_clique_union",
]


class CliqueUnionGraph:
    """A graph that is a disjoint union of complete graphs, kept as its blocks."""

    def __init__(self, partition: Partition, vertex_labels: Sequence | None = None):
        self.partition = partition
        self.vertex_labels = list(vertex_labels) if vertex_labels is not None else None

    @property
    def vertex_count(self) -> int:
        return self.partition.domain_size

    @property
    def shape(self) -> Shape:
        return shape_of(self.partition)

    @property
    def edge_count(self) -> int:
        return sum(comb(len(b), 2) for b in self.partition.blocks)

    def edges(self):
        """Edges (u, v) with u < v, sorted."""
        out = []
        for b in self.partition.blocks:
            for i, u in enumerate(b):
                for v in b[i + 1:]:
                    out.append((u, v))
        out.sort()
        return out

    def __repr__(self) -> str:
        return f"CliqueUnionGraph({self.shape.graph_name()})"

    def label(self, v: int) -> str:
        if self.vertex_labels is None:
            return str(v + 1)
        lab = self.vertex_labels[v]
        if isinstance(lab, (list, tuple)):
            return "{" + ",".join(str(a + 1) for a in lab) + "}"
        return str(lab)

    def to_edge_list(self) -> str:
        """``u v`` lines, 1-based, sorted."""
        return "".join(f"{u + 1} {v + 1}\n" for u, v in self.edges())

    def to_dot(self, name: str = "iog") -> str:
        lines = [f"graph {name} {{"]
        for bid, b in enumerate(self.partition.blocks):
            lines.append(f"  subgraph cluster_{bid} {{")
            for v in b:
                lines.append(f'    {v + 1} [label="{self.label(v)}"];')
            for i, u in enumerate(b):
                for v in b[i + 1:]:
                    lines.append(f"    {u + 1} -- {v + 1};")
            lines.append("  }")
        lines.append("}")
        return "\n".join(lines) + "\n"


class SimpleGraph:
    """Loop-free undirected graph with adjacency rows stored as bit masks."""

    def __init__(self, vertex_count: int, rows: Sequence[int]):
        if len(rows) != vertex_count:
            raise ValueError("need one adjacency row per vertex")
        for u, r in enumerate(rows):
            if r >> u & 1:
                raise ValueError(f"loop at vertex {u}")
            for v in range(vertex_count):
                if (r >> v & 1) != (rows[v] >> u & 1):
                    raise ValueError("adjacency is not symmetric")
        self.vertex_count = vertex_count
        self.rows = list(rows)

    @classmethod
    def from_edges(cls, n: int, edges) -> "SimpleGraph":
        rows = [0] * n
        for u, v in edges:
            if u == v:
                raise ValueError(f"loop at vertex {u}")
            rows[u] |= 1 << v
            rows[v] |= 1 << u
        return cls(n, rows)

    @classmethod
    def from_code(cls, n: int, code: int) -> "SimpleGraph":
        """Graph whose edge set is bit i of ``code`` for the i-th pair (u<v) in lex order."""
        rows = [0] * n
        i = 0
        for u in range(n):
            for v in range(u + 1, n):
                if code >> i & 1:
                    rows[u] |= 1 << v
                    rows[v] |= 1 << u
                i += 1
        return cls(n, rows)

    @classmethod
    def complete(cls, n: int) -> "SimpleGraph":
        full = (1 << n) - 1
        return cls(n, [full & ~(1 << u) for u in range(n)])

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.rows[u] >> v & 1)

    def degree(self, u: int) -> int:
        return bin(self.rows[u]).count("1")

    def matrix(self) -> np.ndarray:
        n = self.vertex_count
        A = np.zeros((n, n), dtype=np.int64)
        for u, r in enumerate(self.rows):
            for v in range(n):
                if r >> v & 1:
                    A[u, v] = 1
        return A

    def __repr__(self) -> str:
        m = sum(self.degree(u) for u in range(self.vertex_count)) // 2
        return f"SimpleGraph(n={self.vertex_count}, m={m})"


def intersection_orbital_graph(G1: PermutationGroup, G2: PermutationGroup) -> CliqueUnionGraph:
    if G1.degree != G2.degree:
        raise DegreeMismatch(f"degrees {G1.degree} and {G2.degree} differ")
    return CliqueUnionGraph(meet(point_orbits(G1), point_orbits(G2)))


def k_intersection_graph(
    G1: PermutationGroup, G2: PermutationGroup, k: int, cap: int = DEFAULT_VERTEX_CAP
) -> CliqueUnionGraph:
    """Γ_k on the colex-indexed k-subsets; Γ_1 is Γ itself."""
    if G1.degree != G2.degree:
        raise DegreeMismatch(f"degrees {G1.degree} and {G2.degree} differ")
    n = G1.degree
    if not 1 <= k <= n:
        raise KTooLarge(f"k={k} outside 1..{n}")
    if comb(n, k) > cap:
        raise DomainTooLarge(f"C({n},{k}) = {comb(n, k)} exceeds vertex cap {cap}")
    if k == 1:
        return intersection_orbital_graph(G1, G2)
    P = meet(subset_orbits(G1, k, cap), subset_orbits(G2, k, cap))
    dom = subset_domain(n, k)
    return CliqueUnionGraph(P, [tuple(dom.members(i)) for i in range(len(dom))])


def is_complete(g: CliqueUnionGraph) -> bool:
    return len(g.partition.blocks) == 1


def components(g: CliqueUnionGraph) -> list[tuple[int, ...]]:
    return list(g.partition.blocks)


def densify(g: CliqueUnionGraph) -> SimpleGraph:
    n = g.vertex_count
    rows = [0] * n
    for b in g.partition.blocks:
        m = 0
        for v in b:
            m |= 1 << v
        for v in b:
            rows[v] = m & ~(1 << v)
    return SimpleGraph(n, rows)


def satisfies_quadratic_relation(g: SimpleGraph) -> bool:
    """Check A^2 = (D - I)A + D entrywise over the integers."""
    n = g.vertex_count
    if n > 1 << 12:
        raise DomainTooLarge("quadratic relation check is limited to 4096 vertices")
    A = g.matrix()
    deg = A.sum(axis=1)
    lhs = A @ A
    rhs = (deg - 1)[:, None] * A + np.diag(deg)
    return bool(np.array_equal(lhs, rhs))


def recognize_clique_union(g: SimpleGraph) -> Shape | None:
    """Shape of g if every connected component is complete, else None."""
    n = g.vertex_count
    seen = 0
    parts = []
    for s in range(n):
        if seen >> s & 1:
            continue
        comp = 1 << s
        frontier = comp
        while frontier:
            nxt = 0
            m = frontier
            while m:
                low = m & -m
                nxt |= g.rows[low.bit_length() - 1]
                m ^= low
            frontier = nxt & ~comp
            comp |= nxt
        seen |= comp
        size = bin(comp).count("1")
        m = comp
        while m:
            low = m & -m
            v = low.bit_length() - 1
            if g.rows[v] != comp & ~low:
                return None
            m ^= low
        parts.append(size)
    return Shape(parts)
