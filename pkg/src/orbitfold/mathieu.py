"""Mathieu groups: validated data, Steiner blocks, the maximal-subgroup
catalogue, orbit-shape classification, degree-12 recognition, and the
strongly-regular-graph check on point-stabilizer orbitals.

Intransitive catalogue subgroups are built as stabilizers of combinatorial
objects (points, sets, Steiner blocks), never shipped as generator words.
Whenever a set must be chosen, the colexicographically first qualifying one
is taken, so every report is reproducible byte for byte.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from functools import lru_cache
from math import comb, factorial
from pathlib import Path

from .backtrack import DEFAULT_NODE_BUDGET, setwise_stabilizer
from .errors import (
    BadDegree,
    DegreeMismatch,
    MissingData,
    NotFound,
    NotTransitive,
    UnexpectedOrbitShape,
    UnknownLabel,
    ValidationFailed,
)
from .group import (
    PermutationGroup,
    induced_action,
    is_k_homogeneous,
    is_primitive,
    is_transitive,
    load_group,
    orbitals,
    point_orbits,
    pointwise_stabilizer,
    projective_linear_group,
    restrict,
    set_orbit,
    subset_domain,
    subset_orbits,
)
from .iog import CliqueUnionGraph, intersection_orbital_graph
from .partition import Shape, shape_lookup, shape_of
from .perm import PointSet, image_mask
from .spectral import AutDescription, InvariantTriple, SpectrumSummary, aut_order, invariants, spectrum_from_shape

PACKAGE_DATA = Path(__file__).with_name("data")


def data_dir() -> Path:
    env = os.environ.get("ORBITFOLD_DATA")
    return Path(env) if env else PACKAGE_DATA


# ---------------------------------------------------------------------------
# validated data


@dataclass(frozen=True)
class ValidationRule:
    name: str
    degree: int
    order: int
    homogeneity: int  # transitive on k-subsets for every k up to this value


RULES = {
    "m11": ValidationRule("m11", 11, 7920, 4),
    "m12": ValidationRule("m12", 12, 95040, 5),
    "m24": ValidationRule("m24", 24, 244823040, 5),
}


def validate(G: PermutationGroup, rule: ValidationRule) -> None:
    if G.degree != rule.degree:
        raise ValidationFailed(f"{rule.name}: degree {G.degree}, expected {rule.degree}")
    if G.order() != rule.order:
        raise ValidationFailed(f"{rule.name}: order {G.order()}, expected {rule.order}")
    falling = 1
    for k in range(1, rule.homogeneity + 1):
        falling *= rule.degree - k + 1
        if rule.order % falling:
            raise ValidationFailed(f"{rule.name}: order not divisible by {falling}")
        if not is_k_homogeneous(G, k):
            raise ValidationFailed(f"{rule.name}: not {k}-homogeneous")


@lru_cache(maxsize=None)
def _load_validated(path: str, name: str) -> PermutationGroup:
    G = load_group(path, name=name.upper())
    validate(G, RULES[name])
    return G


def load_validated_group(name: str) -> PermutationGroup:
    """Parse ``<data dir>/<name>.grp`` and check it against its validation rule."""
    name = name.lower()
    if name not in RULES:
        raise UnknownLabel(f"no validation rule for {name!r}")
    path = data_dir() / f"{name}.grp"
    if not path.is_file():
        raise MissingData(f"missing data file {path}")
    return _load_validated(str(path), name)


def ambient_name(G: PermutationGroup) -> str | None:
    for rule in RULES.values():
        if G.degree == rule.degree and G.order() == rule.order:
            return rule.name
    return None


# ---------------------------------------------------------------------------
# Steiner blocks

# ambient degree -> (seed size, size of the complement orbit that completes a block)
_BLOCK_RULE = {11: (4, 1), 12: (5, 1), 24: (5, 3)}


def derive_block(G: PermutationGroup, S) -> PointSet:
    """Complete a t-set to the unique Steiner block containing it.

    The stabilizer of S has exactly one orbit of the expected size on the
    complement of S (size 1 for M11 and M12, 3 for M24); S plus that orbit
    is the pentad, hexad or octad through S.
    """
    S = S if isinstance(S, PointSet) else PointSet(S, G.degree)
    rule = _BLOCK_RULE.get(G.degree)
    if rule is None or len(S) != rule[0]:
        raise UnexpectedOrbitShape(f"no block rule for degree {G.degree} and |S| = {len(S)}")
    K = setwise_stabilizer(G, S)
    outside = [b for b in point_orbits(K).blocks if b[0] not in S]
    hits = [b for b in outside if len(b) == rule[1]]
    if len(hits) != 1:
        sizes = sorted(len(b) for b in outside)
        raise UnexpectedOrbitShape(f"complement orbits {sizes} do not single out a block")
    return PointSet(list(S) + list(hits[0]), G.degree)


def enumerate_blocks(G: PermutationGroup, seed_block: PointSet, cap: int = 10**5) -> list[PointSet]:
    """All images of a block under G, sorted colexicographically."""
    masks = sorted(set_orbit(G, seed_block.mask, cap=cap))
    return [PointSet.from_mask(m, G.degree) for m in masks]


def derive_dodecad(octads: list[PointSet]) -> PointSet:
    """Symmetric difference of the first two octads meeting in exactly 2 points."""
    masks = sorted(o.mask for o in octads)
    degree = octads[0].degree if octads else 24
    for i, a in enumerate(masks):
        for b in masks[i + 1:]:
            if bin(a & b).count("1") == 2:
                return PointSet.from_mask(a ^ b, degree)
    raise NotFound("no pair of octads meets in exactly 2 points")


def derive_trio(octads: list[PointSet]) -> tuple[PointSet, PointSet, PointSet]:
    """First octad, first octad disjoint from it, and the complementary octad."""
    masks = sorted(o.mask for o in octads)
    if not masks:
        raise NotFound("empty octad list")
    degree = octads[0].degree
    members = set(masks)
    full = (1 << degree) - 1
    b1 = masks[0]
    for b2 in masks:
        if b1 & b2 == 0:
            b3 = full & ~(b1 | b2)
            if b3 in members:
                return tuple(PointSet.from_mask(m, degree) for m in (b1, b2, b3))
    raise NotFound("no octad trio through the first octad")


@lru_cache(maxsize=None)
def _blocks(name: str) -> tuple:
    G = load_validated_group(name)
    seed = range(_BLOCK_RULE[G.degree][0])
    return tuple(enumerate_blocks(G, derive_block(G, seed)))


def steiner_blocks(name: str) -> list[PointSet]:
    """Pentads of M11, hexads of M12 or octads of M24."""
    return list(_blocks(name.lower()))


# ---------------------------------------------------------------------------
# catalogue


@dataclass(frozen=True)
class CatalogEntry:
    ambient: str
    class_label: str
    structure: str
    claimed_shape: Shape
    construction: tuple
    note: str = ""

    @property
    def claimed_spectrum(self) -> SpectrumSummary:
        return spectrum_from_shape(self.claimed_shape)

    @property
    def transitive(self) -> bool:
        return len(self.claimed_shape) == 1

    @property
    def title(self) -> str:
        return f"{self.class_label} ({self.structure})"


def _e(ambient, label, structure, shape, construction, note=""):
    return CatalogEntry(ambient, label, structure, Shape(shape), construction, note)


CATALOG = {
    "m11": [
        _e("m11", "point stabilizer", "M10", (10, 1), ("points", (0,))),
        _e("m11", "pair stabilizer", "2·S4", (9, 2), ("points", (0, 1)),
           "computed order 144 is |M9:2|; the order of 2·S4 is 48"),
        _e("m11", "triple stabilizer", "M9:2", (8, 3), ("points", (0, 1, 2)),
           "computed order 48 is |2·S4|; the order of M9:2 is 144"),
        _e("m11", "pentad stabilizer", "S5", (6, 5), ("block",)),
        _e("m11", "transitive", "PSL(2,11)", (11,), ("psl_search", 660)),
    ],
    "m12": [
        _e("m12", "point stabilizer", "M11", (11, 1), ("points", (0,))),
        _e("m12", "pair stabilizer", "M10:2", (10, 2), ("points", (0, 1))),
        _e("m12", "triple stabilizer", "3^2:2.S4", (9, 3), ("points", (0, 1, 2))),
        _e("m12", "tetrad stabilizer", "Q8:S4", (8, 4), ("points", (0, 1, 2, 3))),
        _e("m12", "transitive", "PSL(2,11)", (12,), ("psl", 11)),
    ],
    "m24": [
        _e("m24", "point stabilizer", "M23", (23, 1), ("points", (0,))),
        _e("m24", "pair stabilizer", "M22:2", (22, 2), ("points", (0, 1))),
        _e("m24", "sextet stabilizer", "PSL(3,4):S3", (21, 3), ("points", (0, 1, 2)),
           "built as a 3-set stabilizer; a sextet stabilizer conventionally denotes 2^6:3.S6"),
        _e("m24", "octad stabilizer", "2^4:A8", (16, 8), ("octad",)),
        _e("m24", "trio stabilizer", "2^6:(PSL2(7) x S3)", (8, 8, 8), ("ordered_trio",),
           "ordered-trio stabilizer; the unordered trio stabilizer is not computed"),
        _e("m24", "dodecad stabilizer", "M12:2", (12, 12), ("dodecad",),
           "computed order 95040 is |M12|; M12:2 also swaps the dodecad with its complement"),
        _e("m24", "transitive", "PSL(2,23)", (24,), ("psl", 23)),
    ],
}


def catalog_entry(ambient: str, class_label: str) -> CatalogEntry:
    ambient = ambient.lower()
    if ambient not in CATALOG:
        raise UnknownLabel(f"unknown ambient {ambient!r}")
    for e in CATALOG[ambient]:
        if class_label in (e.class_label, e.structure, e.title):
            return e
    raise UnknownLabel(f"{ambient}: no catalogue entry {class_label!r}")


def _psl_in(G: PermutationGroup, order: int) -> PermutationGroup:
    """First subgroup <c, x> of the target order, with c the first generator
    and x running over G in chain order."""
    c = G.raw_generators[0]
    for x in G.chain().elements():
        H = PermutationGroup([c, x], G.degree)
        if H.order() == order:
            return H
    raise NotFound(f"no 2-generated subgroup of order {order} through the first generator")


def catalog_object(entry: CatalogEntry):
    """The stabilized object behind an intransitive entry, as a tuple of PointSets."""
    G = load_validated_group(entry.ambient)
    kind = entry.construction[0]
    if kind == "points":
        return (PointSet(entry.construction[1], G.degree),)
    if kind == "block":
        return (derive_block(G, range(_BLOCK_RULE[G.degree][0])),)
    if kind == "octad":
        return (steiner_blocks("m24")[0],)
    if kind == "dodecad":
        return (derive_dodecad(steiner_blocks("m24")),)
    if kind == "ordered_trio":
        return derive_trio(steiner_blocks("m24"))
    return None


@lru_cache(maxsize=None)
def _build(ambient: str, class_label: str, budget: int) -> PermutationGroup:
    entry = catalog_entry(ambient, class_label)
    G = load_validated_group(ambient)
    kind = entry.construction[0]
    if kind == "psl":
        H = projective_linear_group(entry.construction[1])
    elif kind == "psl_search":
        H = _psl_in(G, entry.construction[1])
    else:
        H = G
        for S in catalog_object(entry)[:2]:
            H = setwise_stabilizer(H, S, budget)
    H.name = entry.structure
    return H


def build_catalog_subgroup(ambient: str, class_label: str, budget: int = DEFAULT_NODE_BUDGET) -> PermutationGroup:
    entry = catalog_entry(ambient, class_label)
    return _build(entry.ambient, entry.class_label, budget)


# ---------------------------------------------------------------------------
# classification


@dataclass
class ClassificationResult:
    status: str  # "classified", "transitive_ambiguous" or "unknown_shape"
    shape: Shape
    spectrum: SpectrumSummary
    aut: AutDescription
    invariants: InvariantTriple
    graph: CliqueUnionGraph
    entry: CatalogEntry | None = None
    candidates: tuple = ()

    @property
    def label(self) -> str | None:
        return self.entry.title if self.entry else None

    def to_json_obj(self) -> dict:
        return {
            "status": self.status,
            "label": self.label,
            "candidates": [c.title for c in self.candidates],
            "shape": str(self.shape),
            "graph": self.shape.graph_name(),
            "spectrum": self.spectrum.to_json_obj()["pairs"],
            "aut_order": self.aut.order,
            "aut": str(self.aut),
            "chi": self.invariants.chi,
            "omega": self.invariants.omega,
            "alpha": self.invariants.alpha,
        }


def classify(ambient: PermutationGroup, H: PermutationGroup, catalog: list[CatalogEntry] | None = None) -> ClassificationResult:
    """Fingerprint H by the clique shape of Γ(ambient, H) and look it up."""
    if ambient.degree != H.degree:
        raise DegreeMismatch(f"degrees {ambient.degree} and {H.degree} differ")
    if not is_transitive(ambient):
        raise NotTransitive("the ambient group must be transitive")
    if catalog is None:
        name = ambient_name(ambient)
        catalog = CATALOG[name] if name else []
    g = intersection_orbital_graph(ambient, H)
    shape = g.shape
    result = ClassificationResult(
        status="unknown_shape",
        shape=shape,
        spectrum=spectrum_from_shape(shape),
        aut=aut_order(shape),
        invariants=invariants(shape),
        graph=g,
    )
    hit = shape_lookup(shape, [(e.claimed_shape, e) for e in catalog])
    if len(shape) == 1:
        result.status = "transitive_ambiguous"
        result.candidates = tuple(e for e in catalog if e.transitive)
    elif hit.status == "unique":
        result.status = "classified"
        result.entry = hit.label
    elif hit.status == "ambiguous":
        result.candidates = hit.labels
    return result


def _row(entry, claimed_shape, computed_shape, order, status, **extra) -> dict:
    row = {
        "entry": entry,
        "claimed_shape": str(claimed_shape) if claimed_shape is not None else None,
        "computed_shape": str(computed_shape),
        "computed_order": order,
        "spectrum": spectrum_from_shape(computed_shape).to_json_obj()["pairs"],
        "status": status,
    }
    row.update(extra)
    return row


def _object_orbit_size(G: PermutationGroup, objects) -> int:
    """Size of the G-orbit of an ordered tuple of point sets."""
    start = tuple(o.mask for o in objects)
    seen = {start}
    queue = [start]
    gens = G.raw_generators
    for t in queue:
        for g in gens:
            y = tuple(image_mask(g, m) for m in t)
            if y not in seen:
                seen.add(y)
                queue.append(y)
    return len(seen)


def verify_catalog(name: str, budget: int = DEFAULT_NODE_BUDGET) -> dict:
    """Build every catalogue subgroup and compare its fingerprint to the claim."""
    name = name.lower()
    G = load_validated_group(name)
    rows = []
    shapes = []
    for entry in CATALOG[name]:
        H = build_catalog_subgroup(name, entry.class_label, budget)
        res = classify(G, H)
        computed = res.shape
        order = H.order()
        ok = computed == entry.claimed_shape
        extra = {"subgroup": entry.title}
        objects = catalog_object(entry)
        if objects is not None:
            orbit = _object_orbit_size(G, objects)
            extra["object"] = [o.one_based() for o in objects]
            extra["object_orbit"] = orbit
            extra["orbit_stabilizer"] = orbit * order == G.order()
            ok = ok and extra["orbit_stabilizer"]
        else:
            extra["contained_in_ambient"] = all(g in G for g in H.generators)
            ok = ok and extra["contained_in_ambient"]
        if entry.note:
            extra["note"] = entry.note
        rows.append(_row(entry.title, entry.claimed_shape, computed, order, "pass" if ok else "fail", **extra))
        shapes.append(computed)
    intransitive = [s for s in shapes if len(s) > 1]
    spectra = [spectrum_from_shape(s) for s in shapes]
    blocks = steiner_blocks(name)
    block_name = {"m11": "pentads", "m12": "hexads", "m24": "octads"}[name]
    block_size = len(blocks[0])
    block_ok = len(blocks) * order_of_block_stabilizer(G, blocks[0], budget) == G.order()
    report = {
        "ambient": name,
        "degree": G.degree,
        "order": G.order(),
        "rows": rows,
        "intransitive_shapes_distinct": len(set(intransitive)) == len(intransitive),
        "spectra_distinct": len(set(spectra)) == len(spectra),
        "blocks": {"kind": block_name, "size": block_size, "count": len(blocks), "orbit_stabilizer": block_ok},
    }
    passed = (
        all(r["status"] == "pass" for r in rows)
        and report["intransitive_shapes_distinct"]
        and report["spectra_distinct"]
        and block_ok
    )
    report["status"] = "pass" if passed else "fail"
    return report


def order_of_block_stabilizer(G: PermutationGroup, block: PointSet, budget: int = DEFAULT_NODE_BUDGET) -> int:
    return setwise_stabilizer(G, block, budget).order()


# ---------------------------------------------------------------------------
# degree-12 recognition

CANDIDATES_12 = {
    "A12": factorial(12) // 2,
    "S12": factorial(12),
    "PSL(2,11)": 660,
    "PGL(2,11)": 1320,
    "M12": 95040,
}


def _witness(G: PermutationGroup, k: int, want: Shape, budget: int, proxy=None):
    """Scan k-subset orbit representatives for a set stabilizer of the wanted shape.

    Returns (representative, stabilizer, shape, proxy result) for the first
    representative whose stabilizer has the wanted shape and passes the
    proxy; failing that, the first one with the wanted shape; else None.
    """
    dom = subset_domain(G.degree, k)
    first = None
    for blk in subset_orbits(G, k).blocks:
        S = PointSet(dom.members(blk[0]), G.degree)
        K = setwise_stabilizer(G, S, budget)
        shape = shape_of(point_orbits(K))
        if shape != want:
            continue
        verdict = proxy(G, S, K) if proxy else None
        found = (S, K, shape, verdict)
        if proxy is None or verdict["passed"]:
            return found
        if first is None:
            first = found
    return first


def _tetrad_proxy(G: PermutationGroup, S: PointSet, K: PermutationGroup) -> dict:
    """Stand-in for maximality of a 4+8 set stabilizer.

    The 4-set must lie in a single orbit of all C(12,4) sets (|K| = |G|/495),
    and the subgroup fixing it pointwise must act regularly on the other 8
    points.  A giant (Alt or Sym) fails the second test: its 4-set stabilizer
    is the full intransitive product with a Sym(8) or Alt(8) factor.
    """
    orbit_full = K.order() * comb(G.degree, len(S)) == G.order()
    kernel = pointwise_stabilizer(K, S)
    rest = [x for x in range(G.degree) if x not in S]
    regular = kernel.order() == len(rest) and len(kernel.orbit(rest[0])) == len(rest)
    return {
        "orbit_is_all_4_sets": orbit_full,
        "pointwise_kernel_order": kernel.order(),
        "kernel_regular_on_complement": regular,
        "passed": orbit_full and regular,
    }


def recognize_degree12(G: PermutationGroup, budget: int = DEFAULT_NODE_BUDGET) -> dict:
    if G.degree != 12:
        raise BadDegree(f"degree {G.degree}, expected 12")
    order = G.order()
    transitive = is_transitive(G)
    primitive = transitive and is_primitive(G)
    witnesses = []
    stab = pointwise_stabilizer(G, [0])
    stab_shape = shape_of(point_orbits(stab))
    w1 = stab_shape == Shape((11, 1))
    witnesses.append(_row("point stabilizer", Shape((11, 1)), stab_shape, stab.order(), "pass" if w1 else "fail"))
    three_orbits = len(subset_orbits(stab, 3))

    w2 = _witness(G, 4, Shape((8, 4)), budget, _tetrad_proxy)
    if w2 is None:
        witnesses.append(_row("4+8 set stabilizer", Shape((8, 4)), Shape((12,)), None, "fail", shape_found=False))
        w2_ok = False
    else:
        S, K, shape, proxy = w2
        w2_ok = proxy["passed"]
        witnesses.append(
            _row("4+8 set stabilizer", Shape((8, 4)), shape, K.order(), "pass" if w2_ok else "fail",
                 set=S.one_based(), shape_found=True, maximality_proxy=proxy)
        )

    w3 = _witness(G, 6, Shape((6, 6)), budget)
    if w3 is None:
        witnesses.append(_row("6+6 set stabilizer", Shape((6, 6)), Shape((12,)), None, "fail", shape_found=False))
        w3_ok = False
    else:
        S, K, shape, _ = w3
        w3_ok = True
        witnesses.append(_row("6+6 set stabilizer", Shape((6, 6)), shape, K.order(), "pass", set=S.one_based(), shape_found=True))

    all_pass = primitive and w1 and w2_ok and w3_ok and three_orbits == 2
    consistent = [name for name, o in CANDIDATES_12.items() if o == order and (name == "M12") == all_pass]
    return {
        "degree": 12,
        "order": order,
        "primitive": primitive,
        "point_stabilizer_3subset_orbits": three_orbits,
        "witnesses": witnesses,
        "candidates_consistent": consistent,
        "verdict": "M12" if all_pass else "not-M12",
    }


# ---------------------------------------------------------------------------
# strong regularity and Steiner rigidity


def srg_parameters(rows: list[int]) -> tuple[int, int, int, int] | None:
    """(v, k, lambda, mu) if the graph with these adjacency masks is strongly
    regular, else None.  Complete and edgeless graphs count as strongly
    regular here; callers decide on degeneracy."""
    v = len(rows)
    degs = {bin(r).count("1") for r in rows}
    if len(degs) > 1:
        return None
    k = degs.pop() if degs else 0
    lam = mu = None
    for a in range(v):
        ra = rows[a]
        for b in range(a + 1, v):
            c = bin(ra & rows[b]).count("1")
            if ra >> b & 1:
                if lam is None:
                    lam = c
                elif lam != c:
                    return None
            else:
                if mu is None:
                    mu = c
                elif mu != c:
                    return None
    return (v, k, lam if lam is not None else 0, mu if mu is not None else 0)


def steiner_rigidity_check(G: PermutationGroup, omega: int, ks=(2, 3, 4)) -> dict:
    """For each k: orbits of G_omega on k-subsets (two expected) and the
    orbital graphs of G_omega on the k-subsets avoiding omega, each of which
    must be a strongly regular graph that is neither complete nor edgeless."""
    if G.degree != 12:
        raise BadDegree(f"degree {G.degree}, expected 12")
    if not is_transitive(G):
        raise NotTransitive("rigidity check needs a transitive group")
    H = pointwise_stabilizer(G, [omega])
    levels = []
    for k in ks:
        count = len(subset_orbits(H, k))
        dom = subset_domain(G.degree, k)
        avoid = [i for i, m in enumerate(dom.subsets) if not m >> omega & 1]
        A = restrict(induced_action(H, k), avoid)
        dec = orbitals(A)
        graphs = []
        ok = count == 2
        for orb in dec.orbitals:
            if orb.diagonal:
                continue
            info = {"size": orb.size, "self_paired": orb.self_paired}
            if orb.self_paired:
                rows = dec.adjacency(orb.index)
                params = srg_parameters(rows)
                valency = orb.size // len(avoid)
                degenerate = valency in (0, len(avoid) - 1)
                info.update(valency=valency, srg=list(params) if params else None, degenerate=degenerate)
                ok = ok and params is not None and not degenerate
            else:
                info.update(valency=orb.size // len(avoid), srg=None, degenerate=False)
                ok = False
            graphs.append(info)
        levels.append(
            {
                "k": k,
                "orbit_count": count,
                "vertices": len(avoid),
                "rank": dec.rank,
                "orbitals": graphs,
                "status": "pass" if ok else "fail",
            }
        )
    return {
        "degree": G.degree,
        "point": omega + 1,
        "order": G.order(),
        "levels": levels,
        "status": "pass" if all(l["status"] == "pass" for l in levels) else "fail",
    }
