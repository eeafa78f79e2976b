"""Finitely generated permutation groups.

The stabilizer chain is built with the deterministic Schreier-Sims algorithm
(every Schreier generator is sifted), so orders and chains are reproducible
from run to run.  Subset domains are indexed by colexicographic rank.
"""

from __future__ import annotations

import os
from collections import deque
from itertools import combinations
from math import comb, factorial, gcd, prod
from typing import Iterable, Sequence

from .errors import (
    BadDegree,
    DegreeMismatch,
    DomainTooLarge,
    KTooLarge,
    Malformed,
    NotPrime,
    NotTransitive,
)
from .partition import Partition
from .perm import Permutation, PointSet, image_mask, parse_permutation

MAX_DEGREE = 1 << 16
DEFAULT_PAIR_CAP = 10**7

Perm = tuple  # raw image tuple used on hot paths


def _mul(p: Perm, q: Perm) -> Perm:
    return tuple([q[x] for x in p])


def _inv(p: Perm) -> Perm:
    out = [0] * len(p)
    for i, x in enumerate(p):
        out[x] = i
    return tuple(out)


# ---------------------------------------------------------------------------
# stabilizer chains


class Level:
    """One level of a stabilizer chain: base point, strong generators fixing
    all earlier base points, and the orbit with coset representatives."""

    __slots__ = ("point", "gens", "orbit", "trans", "inv", "checked")

    def __init__(self, point: int, gens: list, degree: int):
        self.point = point
        self.gens = []
        ident = tuple(range(degree))
        self.orbit = [point]
        self.trans = {point: ident}
        self.inv = {point: ident}
        self.checked = set()
        for g in gens:
            self.add_gen(g)

    def add_gen(self, g: Perm) -> None:
        # extend incrementally; existing representatives never change
        self.gens.append(g)
        trans, inv, orbit = self.trans, self.inv, self.orbit
        new = []
        for x in orbit:
            y = g[x]
            if y not in trans:
                t = _mul(trans[x], g)
                trans[y] = t
                inv[y] = _inv(t)
                new.append(y)
        orbit.extend(new)
        i = 0
        while i < len(new):
            x = new[i]
            i += 1
            for s in self.gens:
                y = s[x]
                if y not in trans:
                    t = _mul(trans[x], s)
                    trans[y] = t
                    inv[y] = _inv(t)
                    orbit.append(y)
                    new.append(y)


class StabilizerChain:
    """Base, strong generators and transversals of a permutation group."""

    def __init__(self, degree: int, levels: list[Level]):
        self.degree = degree
        self.levels = levels

    @property
    def base(self) -> list[int]:
        return [lv.point for lv in self.levels]

    @property
    def order(self) -> int:
        return prod(len(lv.orbit) for lv in self.levels)

    def transversal_sizes(self) -> list[int]:
        return [len(lv.orbit) for lv in self.levels]

    def strong_generators(self) -> list[Perm]:
        seen = dict()
        for lv in self.levels:
            for g in lv.gens:
                seen.setdefault(g, None)
        return list(seen)

    def sift(self, h: Perm, start: int = 0) -> tuple[Perm, int]:
        return _sift(self.levels, h, start)

    def contains(self, h: Perm) -> bool:
        res, j = _sift(self.levels, h, 0)
        return j == len(self.levels) and all(i == x for i, x in enumerate(res))

    def tail(self, start: int) -> "StabilizerChain":
        """Chain of the stabilizer of the first ``start`` base points."""
        return StabilizerChain(self.degree, self.levels[start:])

    def elements(self):
        """Iterate over all group elements (use only for small groups)."""
        ident = tuple(range(self.degree))

        def rec(i, acc):
            if i < 0:
                yield acc
                return
            for u in self.levels[i].trans.values():
                yield from rec(i - 1, _mul(acc, u))

        yield from rec(len(self.levels) - 1, ident)


def _sift(levels: list[Level], h: Perm, start: int) -> tuple[Perm, int]:
    for j in range(start, len(levels)):
        lv = levels[j]
        u = lv.inv.get(h[lv.point])
        if u is None:
            return h, j
        h = tuple([u[x] for x in h])
    return h, len(levels)


def schreier_sims(gens: Sequence[Perm], degree: int, base_prefix: Sequence[int] = ()) -> StabilizerChain:
    """Deterministic Schreier-Sims; the base starts with ``base_prefix``."""
    if degree > MAX_DEGREE:
        raise BadDegree(f"degree {degree} exceeds {MAX_DEGREE}")
    ident = tuple(range(degree))
    gens = [g for g in dict.fromkeys(tuple(g) for g in gens) if g != ident]
    base = list(dict.fromkeys(base_prefix))
    for g in gens:
        if all(g[b] == b for b in base):
            base.append(next(i for i in range(degree) if g[i] != i))
    levels = []
    for i, b in enumerate(base):
        fixed = base[:i]
        levels.append(Level(b, [g for g in gens if all(g[c] == c for c in fixed)], degree))

    i = len(levels) - 1
    while i >= 0:
        j = _check_level(levels, i, degree, ident)
        i = i - 1 if j is None else j
    return StabilizerChain(degree, levels)


def _check_level(levels: list[Level], i: int, degree: int, ident: Perm):
    lv = levels[i]
    for beta in list(lv.orbit):
        t = lv.trans[beta]
        for si, s in enumerate(lv.gens):
            key = (beta, si)
            if key in lv.checked:
                continue
            u = lv.inv[s[beta]]
            h = tuple([u[s[x]] for x in t])
            if h != ident:
                y, j = _sift(levels, h, i + 1)
                if y != ident:
                    if j == len(levels):
                        moved = next(p for p in range(degree) if y[p] != p)
                        levels.append(Level(moved, [], degree))
                    for l in range(i + 1, j + 1):
                        levels[l].add_gen(y)
                    return j
            lv.checked.add(key)
    return None


# ---------------------------------------------------------------------------
# groups


class PermutationGroup:
    """A permutation group given by generators, with lazily built chains."""

    def __init__(self, generators: Iterable, degree: int | None = None, name: str | None = None):
        gens = []
        for g in generators:
            gens.append(g.images if isinstance(g, Permutation) else tuple(g))
        if degree is None:
            if not gens:
                raise ValueError("need a degree or at least one generator")
            degree = len(gens[0])
        if degree < 1:
            raise BadDegree("degree must be at least 1")
        for g in gens:
            if len(g) != degree:
                raise DegreeMismatch(f"generator of degree {len(g)} in a group of degree {degree}")
        if not gens:
            gens = [tuple(range(degree))]
        self.degree = degree
        self._gens = tuple(gens)
        self.name = name
        self._chains: dict[tuple, StabilizerChain] = {}

    @property
    def generators(self) -> list[Permutation]:
        return [Permutation(g, check=False) for g in self._gens]

    @property
    def raw_generators(self) -> tuple:
        return self._gens

    def __repr__(self) -> str:
        label = self.name or "PermutationGroup"
        return f"<{label} degree={self.degree} gens={len(self._gens)}>"

    def chain(self, base_prefix: Sequence[int] = ()) -> StabilizerChain:
        key = tuple(base_prefix)
        ch = self._chains.get(key)
        if ch is None:
            if key and () in self._chains:
                gens = self._chains[()].strong_generators()
            else:
                gens = self._gens
            ch = schreier_sims(gens, self.degree, key)
            self._chains[key] = ch
        return ch

    def set_chain(self, chain: StabilizerChain) -> None:
        self._chains[()] = chain

    def order(self) -> int:
        return self.chain().order

    def __contains__(self, p) -> bool:
        return contains(self, p)

    def orbit(self, point: int) -> list[int]:
        return _orbit(self._gens, point)

    def random_element(self, rng) -> Permutation:
        """Uniform random element via the chain (``rng`` is a ``random.Random``)."""
        acc = tuple(range(self.degree))
        for lv in reversed(self.chain().levels):
            acc = _mul(acc, lv.trans[rng.choice(lv.orbit)])
        return Permutation(acc, check=False)

    def elements(self):
        for g in self.chain().elements():
            yield Permutation(g, check=False)


def _orbit(gens, point: int) -> list[int]:
    seen = {point}
    out = [point]
    for x in out:
        for g in gens:
            y = g[x]
            if y not in seen:
                seen.add(y)
                out.append(y)
    return out


def _orbit_labels(n: int, tables) -> list[int]:
    """Label each index by the minimum of its orbit under the index maps."""
    label = [-1] * n
    for start in range(n):
        if label[start] != -1:
            continue
        label[start] = start
        stack = [start]
        while stack:
            x = stack.pop()
            for t in tables:
                y = t[x]
                if label[y] == -1:
                    label[y] = start
                    stack.append(y)
    return label


def build_chain(G: PermutationGroup) -> StabilizerChain:
    return G.chain()


def group_order(G: PermutationGroup) -> int:
    return G.order()


def contains(G: PermutationGroup, p) -> bool:
    images = p.images if isinstance(p, Permutation) else tuple(p)
    if len(images) != G.degree:
        raise DegreeMismatch(f"permutation degree {len(images)} vs group degree {G.degree}")
    return G.chain().contains(images)


def point_orbits(G: PermutationGroup) -> Partition:
    return Partition.from_labels(_orbit_labels(G.degree, G.raw_generators))


def is_transitive(G: PermutationGroup) -> bool:
    return len(G.orbit(0)) == G.degree


# ---------------------------------------------------------------------------
# k-subset domains


def colex_rank(members: Sequence[int]) -> int:
    """Colexicographic rank of a k-subset given by its sorted members."""
    return sum(comb(c, i + 1) for i, c in enumerate(sorted(members)))


class SubsetDomain:
    """All k-subsets of ``range(n)`` indexed by colexicographic rank.

    Subsets are held as bit masks; for equal-size sets numeric mask order is
    colex order, so ``subsets[i]`` has rank ``i``.
    """

    def __init__(self, n: int, k: int):
        if not 1 <= k <= n:
            raise KTooLarge(f"k={k} outside 1..{n}")
        self.n = n
        self.k = k
        self.subsets = sorted(sum(1 << a for a in c) for c in combinations(range(n), k))
        self.index = {m: i for i, m in enumerate(self.subsets)}

    def __len__(self) -> int:
        return len(self.subsets)

    def members(self, i: int) -> list[int]:
        m = self.subsets[i]
        return [a for a in range(self.n) if m >> a & 1]

    def label(self, i: int) -> PointSet:
        return PointSet(self.members(i), self.n)

    def table(self, images: Perm) -> list[int]:
        """The permutation of subset indices induced by a point permutation."""
        idx = self.index
        return [idx[image_mask(images, m)] for m in self.subsets]


_DOMAIN_CACHE: dict = {}


def subset_domain(n: int, k: int) -> SubsetDomain:
    key = (n, k)
    d = _DOMAIN_CACHE.get(key)
    if d is None:
        d = _DOMAIN_CACHE[key] = SubsetDomain(n, k)
    return d


def induced_action(G: PermutationGroup, k: int, cap: int = 10**6) -> PermutationGroup:
    """G acting on the colex-indexed k-subsets, as a group of degree C(n, k)."""
    if not 1 <= k <= G.degree:
        raise KTooLarge(f"k={k} outside 1..{G.degree}")
    if comb(G.degree, k) > cap:
        raise DomainTooLarge(f"C({G.degree},{k}) exceeds cap {cap}")
    dom = subset_domain(G.degree, k)
    return PermutationGroup([dom.table(g) for g in G.raw_generators], len(dom))


def subset_orbits(G: PermutationGroup, k: int, cap: int = 10**6) -> Partition:
    """Orbits of G on k-subsets; block members are colex ranks."""
    H = induced_action(G, k, cap)
    return Partition.from_labels(_orbit_labels(H.degree, H.raw_generators))


def is_k_homogeneous(G: PermutationGroup, k: int) -> bool:
    if not 1 <= k <= G.degree:
        raise KTooLarge(f"k={k} outside 1..{G.degree}")
    if k == 1:
        return is_transitive(G)
    return len(subset_orbits(G, k)) == 1


def restrict(G: PermutationGroup, points: Sequence[int]) -> PermutationGroup:
    """Action of G on an invariant set of points, relabelled 0..m-1 in the given order."""
    pos = {p: i for i, p in enumerate(points)}
    gens = []
    for g in G.raw_generators:
        try:
            gens.append([pos[g[p]] for p in points])
        except KeyError:
            raise ValueError("point set is not invariant under the group") from None
    return PermutationGroup(gens, len(points))


# ---------------------------------------------------------------------------
# stabilizers, suborbits, primitivity


def pointwise_stabilizer(G: PermutationGroup, S) -> PermutationGroup:
    """Subgroup fixing every point of S, read off a chain whose base starts with S."""
    pts = sorted(S.members if isinstance(S, PointSet) else S)
    ch = G.chain(pts)
    tail = ch.tail(len(pts))
    gens = tail.strong_generators()
    H = PermutationGroup(gens or [tuple(range(G.degree))], G.degree)
    H.set_chain(tail if tail.levels else StabilizerChain(G.degree, []))
    return H


def set_orbit(G: PermutationGroup, S, cap: int | None = None) -> list[int]:
    """Orbit of a point set (as bit masks, in discovery order) under G."""
    start = S.mask if isinstance(S, PointSet) else S
    seen = {start}
    out = [start]
    gens = G.raw_generators
    for m in out:
        for g in gens:
            y = image_mask(g, m)
            if y not in seen:
                seen.add(y)
                out.append(y)
                if cap is not None and len(out) > cap:
                    from .errors import OrbitCapExceeded

                    raise OrbitCapExceeded(f"orbit exceeds {cap} sets")
    return out


def suborbits(G: PermutationGroup, omega: int) -> Partition:
    """Orbits of the point stabilizer of omega; the rank is the block count."""
    if not is_transitive(G):
        raise NotTransitive("suborbits need a transitive group")
    return point_orbits(pointwise_stabilizer(G, [omega]))


def rank(G: PermutationGroup) -> int:
    return len(suborbits(G, 0))


def minimal_block(G: PermutationGroup, a: int, b: int) -> Partition:
    """Finest G-invariant partition with a and b in the same block."""
    n = G.degree
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    gens = G.raw_generators
    parent[find(b)] = find(a)
    queue = deque([(a, b)])
    while queue:
        x, y = queue.popleft()
        for g in gens:
            u, v = find(g[x]), find(g[y])
            if u != v:
                parent[v] = u
                queue.append((u, v))
    return Partition.from_labels([find(x) for x in range(n)])


def is_primitive(G: PermutationGroup) -> bool:
    if not is_transitive(G):
        raise NotTransitive("primitivity is defined for transitive groups")
    n = G.degree
    if n <= 2:
        return True
    reps = {blk[0] for blk in suborbits(G, 0).blocks} - {0}
    return all(len(minimal_block(G, 0, b)) == 1 for b in sorted(reps))


# ---------------------------------------------------------------------------
# orbitals


class Orbital:
    __slots__ = ("index", "size", "self_paired", "diagonal", "paired_with", "representative")

    def __init__(self, index, size, self_paired, diagonal, paired_with, representative):
        self.index = index
        self.size = size
        self.self_paired = self_paired
        self.diagonal = diagonal
        self.paired_with = paired_with
        self.representative = representative

    def __repr__(self) -> str:
        kind = "diagonal" if self.diagonal else ("self-paired" if self.self_paired else "paired")
        return f"Orbital({self.index}, size={self.size}, {kind})"


class OrbitalDecomposition:
    """Orbits of a group on ordered pairs of a domain of size ``domain_size``.

    ``labels[a * domain_size + b]`` is the orbital index of the pair (a, b);
    orbitals are numbered by their first pair in row-major order.
    """

    def __init__(self, domain_size: int, labels: list[int], orbitals: list[Orbital]):
        self.domain_size = domain_size
        self.labels = labels
        self.orbitals = orbitals

    def __len__(self) -> int:
        return len(self.orbitals)

    @property
    def rank(self) -> int:
        return len(self.orbitals)

    def adjacency(self, index: int) -> list[int]:
        """Out-neighbourhoods of the orbital digraph as bit masks."""
        N = self.domain_size
        lab = self.labels
        rows = []
        for a in range(N):
            m = 0
            off = a * N
            for b in range(N):
                if lab[off + b] == index:
                    m |= 1 << b
            rows.append(m)
        return rows


def orbitals_on(G: PermutationGroup, k: int = 1, cap: int = DEFAULT_PAIR_CAP) -> OrbitalDecomposition:
    """Orbitals of G on points (k=1) or on the colex-indexed k-subsets."""
    H = G if k == 1 else induced_action(G, k)
    return orbitals(H, cap)


def orbitals(G: PermutationGroup, cap: int = DEFAULT_PAIR_CAP) -> OrbitalDecomposition:
    N = G.degree
    if N * N > cap:
        raise DomainTooLarge(f"{N * N} ordered pairs exceed cap {cap}")
    gens = G.raw_generators
    lab = [-1] * (N * N)
    reps = []
    for start in range(N * N):
        if lab[start] != -1:
            continue
        oid = len(reps)
        reps.append(start)
        lab[start] = oid
        stack = [start]
        while stack:
            p = stack.pop()
            a, b = divmod(p, N)
            for g in gens:
                q = g[a] * N + g[b]
                if lab[q] == -1:
                    lab[q] = oid
                    stack.append(q)
    sizes = [0] * len(reps)
    for x in lab:
        sizes[x] += 1
    out = []
    for oid, p in enumerate(reps):
        a, b = divmod(p, N)
        partner = lab[b * N + a]
        out.append(Orbital(oid, sizes[oid], partner == oid, a == b, partner, (a, b)))
    return OrbitalDecomposition(N, lab, out)


# ---------------------------------------------------------------------------
# standard families


def symmetric_group(n: int) -> PermutationGroup:
    if n < 2:
        raise BadDegree("symmetric_group needs n >= 2")
    gens = [Permutation.from_cycles([[0, 1]], n)]
    if n > 2:
        gens.append(Permutation.from_cycles([list(range(n))], n))
    G = PermutationGroup(gens, n, name=f"Sym({n})")
    _validate_order(G, factorial(n))
    return G


def alternating_group(n: int) -> PermutationGroup:
    if n < 3:
        raise BadDegree("alternating_group needs n >= 3")
    tail = list(range(2, n))
    if n % 2:
        gens = [[[0, 1, 2]], [tail] if len(tail) > 1 else []]
    else:
        gens = [[[0, 1, 2]], [[0, 1], tail]]
    G = PermutationGroup([Permutation.from_cycles(c, n) for c in gens], n, name=f"Alt({n})")
    _validate_order(G, factorial(n) // 2)
    return G


def cyclic_group(n: int) -> PermutationGroup:
    return PermutationGroup([Permutation.from_cycles([list(range(n))], n)] if n > 1 else [], n, name=f"C({n})")


def _is_prime(p: int) -> bool:
    return p >= 2 and all(p % d for d in range(2, int(p**0.5) + 1))


def _primitive_root(p: int) -> int:
    if p == 2:
        return 1
    factors = {q for q in range(2, p) if (p - 1) % q == 0 and _is_prime(q)}
    return next(g for g in range(2, p) if all(pow(g, (p - 1) // q, p) != 1 for q in factors))


def projective_linear_group(p: int, extended: bool = False) -> PermutationGroup:
    """PSL(2,p) (or PGL(2,p) when ``extended``) on the projective line.

    Points 0..p-1 are the field elements and point p is infinity.
    """
    if not _is_prime(p):
        raise NotPrime(f"{p} is not prime")
    if p > 61:
        raise BadDegree("projective_linear_group supports p <= 61")
    inf = p
    shift = [(z + 1) % p for z in range(p)] + [inf]
    invert = [inf if z == 0 else (-pow(z, -1, p)) % p for z in range(p)] + [0]
    gens = [shift, invert]
    if extended:
        lam = _primitive_root(p)
        gens.append([(lam * z) % p for z in range(p)] + [inf])
    label = "PGL" if extended else "PSL"
    G = PermutationGroup(gens, p + 1, name=f"{label}(2,{p})")
    full = p * (p * p - 1)
    _validate_order(G, full if extended else full // gcd(2, p - 1))
    return G


def _validate_order(G: PermutationGroup, expected: int) -> None:
    got = G.order()
    if got != expected:
        raise AssertionError(f"{G.name}: order {got}, expected {expected}")


# ---------------------------------------------------------------------------
# group files


def parse_group_text(text: str, name: str | None = None) -> PermutationGroup:
    """Parse the ``degree <n>`` / ``gen <cycles>`` format (1-based, ``#`` comments)."""
    degree = None
    gens = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        word, _, rest = line.partition(" ")
        if degree is None:
            if word != "degree":
                raise Malformed(f"line {lineno}: expected 'degree <n>'")
            try:
                degree = int(rest.strip())
            except ValueError:
                raise Malformed(f"line {lineno}: bad degree {rest!r}") from None
            if not 1 <= degree <= MAX_DEGREE:
                raise BadDegree(f"degree {degree} out of range")
        elif word == "gen":
            gens.append(parse_permutation(rest, degree))
        else:
            raise Malformed(f"line {lineno}: expected 'gen <cycle-notation>'")
    if degree is None:
        raise Malformed("missing 'degree' line")
    return PermutationGroup(gens, degree, name=name)


def load_group(path: str | os.PathLike, name: str | None = None) -> PermutationGroup:
    with open(path, encoding="utf-8") as fh:
        return parse_group_text(fh.read(), name=name)


def format_group(G: PermutationGroup, comment: str | None = None) -> str:
    lines = []
    if comment:
        lines.extend(f"# {c}" for c in comment.splitlines())
    lines.append(f"degree {G.degree}")
    lines.extend(f"gen {g}" for g in G.generators)
    return "\n".join(lines) + "\n"
