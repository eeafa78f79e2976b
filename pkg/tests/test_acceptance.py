"""Acceptance gate: one test per criterion, each at its stated tolerance.

Run with ``pytest tests/test_acceptance.py -v``; the terminal summary prints
one PASS/FAIL line per criterion.
"""

import random
import time
from math import factorial

import numpy as np

from orbitfold.group import (
    PermutationGroup,
    alternating_group,
    projective_linear_group,
    symmetric_group,
)
from orbitfold.iog import SimpleGraph, densify, is_complete, k_intersection_graph, recognize_clique_union, satisfies_quadratic_relation
from orbitfold.mathieu import (
    build_catalog_subgroup,
    classify,
    load_validated_group,
    recognize_degree12,
    steiner_blocks,
    steiner_rigidity_check,
    verify_catalog,
)
from orbitfold.partition import Shape, integer_partitions
from orbitfold.perm import Permutation
from orbitfold.spectral import (
    SpectrumSummary,
    aut_order,
    char_poly_exact,
    ds_scan,
    poly_from_spectrum,
    shape_from_spectrum,
    spectrum_from_shape,
)


def _rows(report):
    return {r["entry"]: r for r in report["rows"]}


def test_criterion_01_m12_fingerprints():
    t0 = time.perf_counter()
    G = load_validated_group("m12")
    want = {
        "point stabilizer": ("1+11", 7920),
        "pair stabilizer": ("2+10", 1440),
        "triple stabilizer": ("3+9", 432),
        "tetrad stabilizer": ("4+8", 192),
        "PSL(2,11)": ("12", 660),
    }
    for label, (shape, order) in want.items():
        H = build_catalog_subgroup("m12", label)
        assert str(classify(G, H).shape) == shape
        assert H.order() == order
    assert time.perf_counter() - t0 < 10


def test_criterion_02_m24_fingerprints():
    t0 = time.perf_counter()
    G = load_validated_group("m24")
    want = {
        "point stabilizer": ("1+23", 10200960),
        "pair stabilizer": ("2+22", 887040),
        "sextet stabilizer": ("3+21", 120960),
        "octad stabilizer": ("8+16", 322560),
        "dodecad stabilizer": ("12+12", 95040),
        "PSL(2,23)": ("24", 6072),
    }
    for label, (shape, order) in want.items():
        H = build_catalog_subgroup("m24", label)
        assert str(classify(G, H).shape) == shape
        assert H.order() == order
    trio = build_catalog_subgroup("m24", "trio stabilizer")
    assert str(classify(G, trio).shape) == "8+8+8"
    assert len(steiner_blocks("m24")) == 759
    report = verify_catalog("m24")
    assert report["blocks"]["orbit_stabilizer"]
    assert all(r["orbit_stabilizer"] for r in report["rows"] if "orbit_stabilizer" in r)
    assert report["status"] == "pass"
    assert time.perf_counter() - t0 < 300


def test_criterion_03_m11_fingerprints():
    t0 = time.perf_counter()
    report = verify_catalog("m11")
    shapes = sorted(r["computed_shape"] for r in report["rows"])
    assert shapes == sorted(["1+10", "2+9", "3+8", "5+6", "11"])
    assert all(r["computed_shape"] == r["claimed_shape"] for r in report["rows"])
    assert report["blocks"]["count"] == 66
    rows = _rows(report)
    # label/order mismatches are reported next to the shapes
    assert "note" in rows["pair stabilizer (2·S4)"] and rows["pair stabilizer (2·S4)"]["computed_order"] == 144
    assert "note" in rows["triple stabilizer (M9:2)"] and rows["triple stabilizer (M9:2)"]["computed_order"] == 48
    assert time.perf_counter() - t0 < 10


LISTED_SPECTRA = {
    "m12": {
        "1+11": {10: 1, -1: 10, 0: 1},
        "2+10": {9: 1, 1: 1, -1: 10},
        "3+9": {8: 1, 2: 1, -1: 10},
        "4+8": {7: 1, 3: 1, -1: 10},
        "12": {11: 1, -1: 11},
    },
    "m24": {
        "1+23": {22: 1, -1: 22, 0: 1},
        "2+22": {21: 1, 1: 1, -1: 22},
        "3+21": {20: 1, 2: 1, -1: 22},
        "8+16": {15: 1, 7: 1, -1: 22},
        "8+8+8": {7: 3, -1: 21},
        "12+12": {11: 2, -1: 22},
        "24": {23: 1, -1: 23},
    },
}


def test_criterion_04_spectral_tables():
    assert sum(len(v) for v in LISTED_SPECTRA.values()) == 12
    for name, table in LISTED_SPECTRA.items():
        report = verify_catalog(name)
        computed = {r["computed_shape"]: dict(map(tuple, r["spectrum"])) for r in report["rows"]}
        assert computed == table
    G = load_validated_group("m12")
    for label in ("point stabilizer", "pair stabilizer", "triple stabilizer", "tetrad stabilizer", "PSL(2,11)"):
        res = classify(G, build_catalog_subgroup("m12", label))
        listed = SpectrumSummary(tuple(LISTED_SPECTRA["m12"][str(res.shape)].items()))
        assert char_poly_exact(densify(res.graph)) == poly_from_spectrum(listed)


def test_criterion_05_ds_scan():
    t0 = time.perf_counter()
    six = ds_scan(6)
    assert six["per_n"][-1]["graphs"] == 32768
    assert six["counterexamples"] == [] and six["status"] == "pass"
    seven = ds_scan(7)
    assert seven["per_n"][-1]["graphs"] == 2**21
    assert seven["counterexamples"] == [] and seven["status"] == "pass"
    assert time.perf_counter() - t0 < 300


def test_criterion_06_quadratic_relation_equivalence():
    disagreements = 0
    for n in range(1, 7):
        for code in range(1 << (n * (n - 1) // 2)):
            g = SimpleGraph.from_code(n, code)
            if satisfies_quadratic_relation(g) != (recognize_clique_union(g) is not None):
                disagreements += 1
    assert disagreements == 0


def reconstruction_corpus(n, seed=0, random_count=200):
    """Sym(n), Alt(n), every cyclic subgroup, and seeded 2-generated subgroups."""
    corpus = [symmetric_group(n), alternating_group(n)]
    seen = set()
    for g in symmetric_group(n).elements():
        C = PermutationGroup([g], n)
        key = frozenset(e.images for e in C.elements())
        if key not in seen:
            seen.add(key)
            corpus.append(C)
    rng = random.Random(seed)
    for _ in range(random_count):
        gens = [rng.sample(range(n), n) for _ in range(2)]
        corpus.append(PermutationGroup(gens, n))
    return corpus


def test_criterion_07_strong_reconstruction():
    t0 = time.perf_counter()
    mismatches = []
    for n in (5, 6):
        A = alternating_group(n)
        giants = {factorial(n) // 2, factorial(n)}
        for G in reconstruction_corpus(n):
            complete = all(is_complete(k_intersection_graph(A, G, k)) for k in range(1, n))
            if complete != (G.order() in giants):
                mismatches.append((n, G.order()))
    assert time.perf_counter() - t0 < 30
    assert mismatches == []


def test_criterion_08_degree12_recognition():
    assert recognize_degree12(load_validated_group("m12"))["verdict"] == "M12"
    for G in (symmetric_group(12), alternating_group(12)):
        assert recognize_degree12(G)["verdict"] == "not-M12"
    for G in (projective_linear_group(11), projective_linear_group(11, extended=True)):
        rep = recognize_degree12(G)
        assert rep["verdict"] == "not-M12"
        assert rep["point_stabilizer_3subset_orbits"] >= 3


def test_criterion_09_steiner_rigidity():
    t0 = time.perf_counter()
    rep = steiner_rigidity_check(load_validated_group("m12"), 0)
    assert [l["orbit_count"] for l in rep["levels"]] == [2, 2, 2]
    k2 = rep["levels"][0]
    assert k2["vertices"] == 55
    valency_24 = [o for o in k2["orbitals"] if o["valency"] == 24]
    assert valency_24, f"valencies at k=2: {[o['valency'] for o in k2['orbitals']]}"
    assert all(o["srg"] is not None and not o["degenerate"] for o in valency_24)
    sym = steiner_rigidity_check(symmetric_group(12), 0)
    sym_k2 = sym["levels"][0]["orbitals"]
    assert any(o["degenerate"] or o["srg"] is None for o in sym_k2), "Sym(12) passes non-degeneracy at k=2"
    assert time.perf_counter() - t0 < 60


def _brute_aut(shape):
    import itertools

    blocks, start = [], 0
    labels = []
    for i, p in enumerate(shape):
        labels.extend([i] * p)
    lab = np.array(labels)
    A = (lab[:, None] == lab[None, :]).astype(np.int64) - np.eye(len(lab), dtype=np.int64)
    P = np.array(list(itertools.permutations(range(len(lab)))))
    return int(np.all(A[P[:, :, None], P[:, None, :]] == A, axis=(1, 2)).sum())


def test_criterion_10_formula_cross_checks():
    for n in range(1, 9):
        for s in integer_partitions(n):
            assert aut_order(Shape(s)).order == _brute_aut(s)
    of_24 = [Shape(s) for s in integer_partitions(24)]
    assert len(of_24) == 1575
    shapes = [Shape(s) for n in range(1, 25) for s in integer_partitions(n)]
    assert all(shape_from_spectrum(spectrum_from_shape(s)) == s for s in shapes)
