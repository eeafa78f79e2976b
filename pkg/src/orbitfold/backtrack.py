"""Setwise stabilizers by backtrack search over a stabilizer chain.

The chain is rebuilt with the points of S first in the base.  A node at depth
``l`` fixes the images of the first ``l`` base points, i.e. a coset
``G^(l) * T`` of the level-``l`` stabilizer.  Two tests prune it:

* a base point in S must go into S, one outside S must stay outside;
* for every orbit O of ``G^(l)``, ``|S & O|`` must equal ``|S & O^T|``,
  because every completion of the node permutes O.

Coset representatives already reachable by the subgroup found so far are
skipped, so a successful search adds exactly one generator.
"""

from __future__ import annotations

from .errors import SearchBudgetExceeded
from .group import PermutationGroup, _mul, _orbit, _orbit_labels, schreier_sims
from .perm import PointSet

DEFAULT_NODE_BUDGET = 10**8

__all__ = ["setwise_stabilizer", "DEFAULT_NODE_BUDGET"]


class _Search:
    def __init__(self, G: PermutationGroup, smask: int, budget: int):
        self.n = G.degree
        self.smask = smask
        self.budget = budget
        self.nodes = 0
        pts = [i for i in range(self.n) if smask >> i & 1]
        chain = G.chain(pts)
        self.chain = chain
        self.levels = chain.levels
        self.base = chain.base
        # orbits of each level group G^(l), with the count of S-points in each
        self.orbit_tests = []
        for l in range(len(self.levels) + 1):
            gens = self.levels[l].gens if l < len(self.levels) else []
            labels = _orbit_labels(self.n, gens)
            blocks: dict[int, list[int]] = {}
            for x, lab in enumerate(labels):
                blocks.setdefault(lab, []).append(x)
            tests = []
            for blk in blocks.values():
                tests.append((blk, sum(1 for x in blk if smask >> x & 1)))
            self.orbit_tests.append(tests)

    def consistent(self, l: int, T) -> bool:
        s = self.smask
        for blk, want in self.orbit_tests[l]:
            got = 0
            for x in blk:
                if s >> T[x] & 1:
                    got += 1
            if got != want:
                return False
        return True

    def find(self, l: int, T):
        """An element of the coset G^(l) * T mapping S to itself, or None."""
        if not self.consistent(l, T):
            return None
        if l == len(self.levels):
            return T
        lv = self.levels[l]
        s = self.smask
        in_s = s >> lv.point & 1
        for delta in lv.orbit:
            self.nodes += 1
            if self.nodes > self.budget:
                raise SearchBudgetExceeded(f"backtrack exceeded {self.budget} nodes")
            if (s >> T[delta] & 1) != in_s:
                continue
            r = self.find(l + 1, _mul(lv.trans[delta], T))
            if r is not None:
                return r
        return None

    def run(self):
        s = self.smask
        kgens: list = []
        order = 1
        for i in reversed(range(len(self.levels))):
            lv = self.levels[i]
            b = lv.point
            covered = set(_orbit(kgens, b))
            failed: list[int] = []
            for gamma in sorted(lv.orbit):
                if gamma in covered or (s >> gamma & 1) != (s >> b & 1):
                    continue
                if failed and any(f in set(_orbit(kgens, gamma)) for f in failed):
                    continue
                g = self.find(i + 1, lv.trans[gamma])
                if g is None:
                    failed.append(gamma)
                else:
                    kgens.append(g)
                    covered = set(_orbit(kgens, b))
            order *= len(covered)
        return kgens, order


def setwise_stabilizer(G: PermutationGroup, S, budget: int = DEFAULT_NODE_BUDGET) -> PermutationGroup:
    """The subgroup of G mapping the point set S onto itself."""
    members = S.members if isinstance(S, PointSet) else sorted(set(S))
    smask = 0
    for a in members:
        smask |= 1 << a
    if not members or len(members) == G.degree:
        return G
    search = _Search(G, smask, budget)
    kgens, order = search.run()
    ident = tuple(range(G.degree))
    H = PermutationGroup(kgens or [ident], G.degree)
    chain = schreier_sims(kgens, G.degree, search.base)
    if chain.order != order:
        raise AssertionError(f"stabilizer chain order {chain.order} != search order {order}")
    H.set_chain(chain)
    H.search_nodes = search.nodes
    return H
