"""Exact spectra of clique unions and the checks built on them.

Everything here is integer arithmetic.  Characteristic polynomials come from
the division-free Berkowitz algorithm; coefficient lists are constant term
first.  The batched variant runs on int64 arrays, which is exact for the
graph sizes ``ds_scan`` enumerates (|coefficients| < 2**20 for n <= 7).
"""

from __future__ import annotations

import json
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from math import factorial, prod

import numpy as np

from .iog import SimpleGraph, densify, recognize_clique_union, CliqueUnionGraph
from .partition import Partition, Shape, integer_partitions

__all__ = [
    "SpectrumSummary",
    "AutDescription",
    "InvariantTriple",
    "spectrum_from_shape",
    "shape_from_spectrum",
    "char_poly_exact",
    "char_poly_batch",
    "poly_from_spectrum",
    "ds_scan",
    "aut_order",
    "invariants",
]


@dataclass(frozen=True)
class SpectrumSummary:
    """Eigenvalue multiset as (eigenvalue, multiplicity) pairs, eigenvalues descending."""

    pairs: tuple

    def __post_init__(self):
        merged = Counter()
        for ev, m in self.pairs:
            if m <= 0:
                raise ValueError(f"multiplicity of {ev} must be positive")
            merged[int(ev)] += int(m)
        object.__setattr__(self, "pairs", tuple(sorted(merged.items(), reverse=True)))

    @classmethod
    def from_eigenvalues(cls, eigenvalues) -> "SpectrumSummary":
        return cls(tuple(Counter(eigenvalues).items()))

    @property
    def vertex_count(self) -> int:
        return sum(m for _, m in self.pairs)

    def multiplicity(self, ev: int) -> int:
        return dict(self.pairs).get(ev, 0)

    def to_json_obj(self) -> dict:
        return {"pairs": [[ev, m] for ev, m in self.pairs]}

    def to_json(self) -> str:
        return json.dumps(self.to_json_obj())

    @classmethod
    def from_json_obj(cls, obj: dict) -> "SpectrumSummary":
        return cls(tuple((ev, m) for ev, m in obj["pairs"]))

    def __str__(self) -> str:
        return "{" + ", ".join(f"{ev}^{m}" for ev, m in self.pairs) + "}"


@dataclass(frozen=True)
class AutDescription:
    """Aut of a clique union: product over sizes of Sym(size) wr Sym(mult)."""

    factors: tuple  # (component size, number of components of that size), size descending
    order: int

    def __str__(self) -> str:
        return " × ".join(f"S{s} ≀ S{m}" for s, m in self.factors)


@dataclass(frozen=True)
class InvariantTriple:
    chi: int
    omega: int
    alpha: int


def spectrum_from_shape(s) -> SpectrumSummary:
    counts = Counter()
    for part in s:
        if part >= 2:
            counts[part - 1] += 1
            counts[-1] += part - 1
        else:
            counts[0] += 1
    return SpectrumSummary(tuple(counts.items()))


def shape_from_spectrum(sp: SpectrumSummary) -> Shape | None:
    """Invert ``spectrum_from_shape``; None if sp is not a clique-union spectrum."""
    parts = []
    minus_one = 0
    for ev, m in sp.pairs:
        if ev > 0:
            parts.extend([ev + 1] * m)
        elif ev == 0:
            parts.extend([1] * m)
        elif ev == -1:
            minus_one = m
        else:
            return None
    if not parts or minus_one != sum(p - 1 for p in parts):
        return None
    return Shape(parts)


# ---------------------------------------------------------------------------
# characteristic polynomials


def _berkowitz(A: list[list[int]]) -> list[int]:
    """det(xI - A) coefficients, highest degree first."""
    n = len(A)
    p = [1]
    for r in range(n):
        R = A[r][:r]
        col = [1, -A[r][r]]
        v = [A[i][r] for i in range(r)]
        for _ in range(r):
            col.append(-sum(a * b for a, b in zip(R, v)))
            v = [sum(A[i][j] * v[j] for j in range(r)) for i in range(r)]
        p = [sum(col[i - j] * p[j] for j in range(max(0, i - r - 1), min(i, r) + 1)) for i in range(r + 2)]
    return p


def char_poly_exact(g) -> list[int]:
    """Characteristic polynomial of the adjacency matrix, constant term first."""
    if isinstance(g, CliqueUnionGraph):
        g = densify(g)
    n = g.vertex_count
    if n > 64:
        raise ValueError("char_poly_exact supports at most 64 vertices")
    A = [[g.rows[u] >> v & 1 for v in range(n)] for u in range(n)]
    return _berkowitz(A)[::-1]


def char_poly_batch(A: np.ndarray) -> np.ndarray:
    """Berkowitz on a stack of int64 matrices of shape (B, n, n); rows constant first."""
    A = np.asarray(A, dtype=np.int64)
    B, n, _ = A.shape
    p = np.ones((B, 1), dtype=np.int64)
    for r in range(n):
        Ar = A[:, :r, :r]
        R = A[:, r, :r]
        v = A[:, :r, r]
        col = [np.ones(B, dtype=np.int64), -A[:, r, r]]
        for _ in range(r):
            col.append(-np.einsum("bi,bi->b", R, v))
            v = np.einsum("bij,bj->bi", Ar, v)
        newp = np.zeros((B, r + 2), dtype=np.int64)
        for i in range(r + 2):
            for j in range(max(0, i - r - 1), min(i, r) + 1):
                newp[:, i] += col[i - j] * p[:, j]
        p = newp
    return p[:, ::-1]


def poly_mul(a: list[int], b: list[int]) -> list[int]:
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    return out


def poly_from_spectrum(sp: SpectrumSummary) -> list[int]:
    """prod (x - ev)^mult, constant term first."""
    out = [1]
    for ev, m in sp.pairs:
        for _ in range(m):
            out = poly_mul(out, [-ev, 1])
    return out


# ---------------------------------------------------------------------------
# exhaustive DS scan


def _adjacency_batch(n: int, codes: np.ndarray) -> np.ndarray:
    iu, ju = np.triu_indices(n, 1)
    bits = (codes[:, None] >> np.arange(len(iu), dtype=np.int64)) & 1
    A = np.zeros((len(codes), n, n), dtype=np.int64)
    A[:, iu, ju] = bits
    A[:, ju, iu] = bits
    return A


def _clique_union_graph(n: int, shape) -> SimpleGraph:
    blocks, start = [], 0
    for part in shape:
        blocks.append(range(start, start + part))
        start += part
    return densify(CliqueUnionGraph(Partition(blocks, n)))


def _scan_chunk(args):
    n, lo, hi, targets = args
    codes = np.arange(lo, hi, dtype=np.int64)
    polys = char_poly_batch(_adjacency_batch(n, codes))
    matched = []
    for shape, poly in targets:
        hit = np.nonzero(np.all(polys == np.asarray(poly, dtype=np.int64), axis=1))[0]
        matched.extend((tuple(shape), int(codes[h])) for h in hit)
    return matched


CHUNK = 1 << 15


def ds_scan(max_n: int, workers: int = 1) -> dict:
    """Bucket every labeled graph on n <= max_n vertices by characteristic
    polynomial and confirm each graph cospectral with a clique union is that
    clique union.  The report does not depend on ``workers``."""
    if max_n > 7:
        raise ValueError("ds_scan enumerates labeled graphs only up to 7 vertices")
    per_n = []
    counterexamples = []
    total = 0
    for n in range(1, max_n + 1):
        E = n * (n - 1) // 2
        count = 1 << E
        targets = [(s, char_poly_exact(_clique_union_graph(n, s))) for s in integer_partitions(n)]
        jobs = [(n, lo, min(lo + CHUNK, count), targets) for lo in range(0, count, CHUNK)]
        if workers > 1 and len(jobs) > 1:
            with ProcessPoolExecutor(max_workers=workers) as ex:
                results = list(ex.map(_scan_chunk, jobs))
        else:
            results = [_scan_chunk(j) for j in jobs]
        cospectral = 0
        verified = Counter()
        for chunk in results:
            for shape, code in chunk:
                cospectral += 1
                got = recognize_clique_union(SimpleGraph.from_code(n, code))
                if got is not None and tuple(got) == shape:
                    verified[shape] += 1
                else:
                    counterexamples.append(
                        {"n": n, "code": code, "expected_shape": str(Shape(shape)), "got": str(got) if got else None}
                    )
        per_n.append(
            {
                "n": n,
                "graphs": count,
                "clique_union_shapes": len(targets),
                "cospectral_with_clique_union": cospectral,
                "verified_clique_unions": sum(verified.values()),
            }
        )
        total += count
    return {
        "max_n": max_n,
        "total_graphs": total,
        "per_n": per_n,
        "counterexamples": counterexamples,
        "status": "pass" if not counterexamples else "fail",
    }


# ---------------------------------------------------------------------------
# automorphisms and invariants


def aut_order(s) -> AutDescription:
    counts = Counter(s)
    factors = tuple(sorted(counts.items(), reverse=True))
    order = prod(factorial(size) ** m * factorial(m) for size, m in factors)
    return AutDescription(factors, order)


def invariants(s) -> InvariantTriple:
    parts = list(s)
    return InvariantTriple(chi=max(parts), omega=max(parts), alpha=len(parts))
