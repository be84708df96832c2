"""Acceptance criteria, one test per criterion.

Each test is self-contained and checks an end-to-end property or a
worked example bit-exactly; `pytest -v` prints one pass/fail line per
criterion.
"""

import random
from fractions import Fraction
from itertools import combinations

from treepairfan import cones, oracles, rigidity, trees, ultrametrics
from treepairfan.clade_graphs import clade_graph
from treepairfan.cones import (
    CladeSet,
    clade_set_of,
    dim_KS,
    f_system,
    in_cone_KS,
)
from treepairfan.oracles import exact_rank
from treepairfan.rigidity import (
    SimpleGraph,
    build_certificate,
    generic_rigidity_rank,
    henneberg_decompose,
    is_laman,
    min_rigid_by_search,
    pebble_rank,
    verify_certificate,
)
from treepairfan.trees import from_clades
from treepairfan.ultrametrics import PairVector, m_matrix, v_vector

from helpers import (
    random_binary_tree,
    random_face,
    random_weighted_tree,
    sample_inside,
    sample_perturbed,
    verify_intersection,
)

CATERPILLAR = from_clades(4, [[1, 2], [1, 2, 3]])
REF_T1 = CATERPILLAR
REF_T2 = from_clades(4, [[1, 3], [2, 4]])


def all_tp4_faces():
    rooted = trees.enumerate_rooted_trees(4)
    faces = set()
    for a in rooted:
        for b in rooted:
            faces.add(clade_set_of(a, b))
    return sorted(faces, key=lambda f: sorted(map(trees.clade_key, f.clades)))


def test_criterion_01_topology_reproduction():
    d = PairVector.from_values(4, [-2, 1, 4, 1, 4, 4])
    w = ultrametrics.topology(d)
    assert w.tree == CATERPILLAR
    assert w.weights == {frozenset({1, 2}): Fraction(-2),
                         frozenset({1, 2, 3}): Fraction(1),
                         frozenset({1, 2, 3, 4}): Fraction(4)}
    rows, cols = m_matrix(w.tree)
    assert [sorted(c) for c in cols] == [[1, 2], [1, 2, 3], [1, 2, 3, 4]]
    assert rows == [[1, 0, 0],
                    [0, 1, 0],
                    [0, 0, 1],
                    [0, 1, 0],
                    [0, 0, 1],
                    [0, 0, 1]]


def test_criterion_02_clade_graph_reproduction():
    g = clade_graph(REF_T1, REF_T2)
    assert len(g.vertices) == 6
    assert len(g.edges) == 6
    trivial = frozenset(range(1, 5))
    doubled = sorted(pair for pair, a, b in g.edges
                     if a == (0, trivial) and b == (1, trivial))
    assert doubled == [(1, 4), (3, 4)]
    face = clade_set_of(REF_T1, REF_T2)
    assert g.graphic_rank() == 5 == len(face.clades) == dim_KS(face)


def test_criterion_03_sixleaf_hdescription():
    face = CladeSet(6,
                    [[1, 2], [1, 2, 3], [5, 6], [4, 5, 6]],
                    [[1, 4], [1, 3, 4], [2, 6], [2, 5, 6]])
    system = f_system(face)
    got = {(row.rel, row.tag,
            frozenset((p, v) for p, v in row.coeffs.items()))
           for row in system.rows}

    def row(rel, tag, coeffs):
        return (rel, tag, frozenset((p, Fraction(v))
                                    for p, v in coeffs.items()))

    expected = {
        # pair identifications within the class of 123456 (rep d[1,5])
        row("eq", "pair", {(1, 6): 1, (1, 5): -1}),
        row("eq", "pair", {(2, 4): 1, (1, 5): -1}),
        row("eq", "pair", {(3, 5): 1, (1, 5): -1}),
        row("eq", "pair", {(3, 6): 1, (1, 5): -1}),
        # within the class of 456 (rep d[4,5])
        row("eq", "pair", {(4, 6): 1, (4, 5): -1}),
        # cycle equality for 13 = 123 ∩ 134
        row("eq", "cycle", {(1, 3): 1, (2, 3): -1, (3, 4): -1, (1, 5): 1}),
        # facet inequalities, one per nontrivial member of S
        row("le", "facet", {(1, 2): 1, (2, 3): -1}),
        row("le", "facet", {(1, 4): 1, (3, 4): -1}),
        row("le", "facet", {(5, 6): 1, (4, 5): -1, (2, 5): -1, (1, 5): 1}),
        row("le", "facet", {(2, 6): 1, (2, 5): -1}),
        row("le", "facet", {(2, 3): 1, (1, 5): -1}),
        row("le", "facet", {(3, 4): 1, (1, 5): -1}),
        row("le", "facet", {(4, 5): 1, (1, 5): -1}),
        row("le", "facet", {(2, 5): 1, (1, 5): -1}),
    }
    assert got == expected


def test_criterion_04_hv_equivalence():
    rng = random.Random(404)
    faces = all_tp4_faces()
    faces += [random_face(rng, rng.choice([5, 6])) for _ in range(200)]
    for face in faces:
        system = f_system(face)
        for _ in range(50):
            d = sample_inside(rng, face)
            assert in_cone_KS(d, face)[0] == system.satisfied_by(d) == True
        for _ in range(50):
            d = sample_perturbed(rng, face)
            assert in_cone_KS(d, face)[0] == system.satisfied_by(d)


def test_criterion_05_dimension_proposition():
    def check(t1, t2):
        face = clade_set_of(t1, t2)
        g = clade_graph(t1, t2)
        size = len(face.clades)
        assert dim_KS(face) == size
        assert g.graphic_rank() == size
        assert exact_rank(g.incidence_matrix()) == size

    for n in (4, 5):
        binaries = list(trees.enumerate_binary_trees(n))
        for t1 in binaries:
            for t2 in binaries:
                check(t1, t2)
    rng = random.Random(505)
    for _ in range(1000):
        check(random_binary_tree(rng, 8), random_binary_tree(rng, 8))


def test_criterion_06_intersection_proposition():
    faces = all_tp4_faces()
    f_cache = {}
    member_cache = {}
    for i, face in enumerate(faces):
        for other in faces[i:]:
            assert verify_intersection(face, other, f_cache, member_cache)


def test_criterion_07_laman_equivalence():
    for n in range(2, 7):
        for g in oracles.catalog_tight_graphs(n):
            laman = is_laman(g)[0]
            assert laman == is_laman(g, method="subsets")[0]
            assert laman == bool(henneberg_decompose(g))
            assert laman == (pebble_rank(g) == 2 * n - 3)
            assert laman == (generic_rigidity_rank(g) == 2 * n - 3)
            found = min_rigid_by_search(g)
            assert laman == (found is not None)
            if laman:
                cert = build_certificate(g)
                assert verify_certificate(g, cert.t1, cert.t2)
                assert verify_certificate(g, *found)


def test_criterion_08_certificate_soundness_n7():
    graphs = oracles.catalog_henneberg_graphs(7)
    assert len(graphs) == 70
    for g in graphs:
        cert = build_certificate(g)
        assert verify_certificate(g, cert.t1, cert.t2)


def test_criterion_09_ultrametric_round_trip():
    rng = random.Random(909)
    for _ in range(10 ** 4):
        n = rng.randint(2, 10)
        w = random_weighted_tree(rng, n, binary=rng.random() < 0.5)
        assert ultrametrics.topology(ultrametrics.evaluate(w)) == w


def test_criterion_10_tree_counts():
    expected = {2: 1, 3: 3, 4: 15, 5: 105, 6: 945}
    for n, want in expected.items():
        got = {t.clades for t in trees.enumerate_binary_trees(n)}
        assert len(got) == want
        oracle = set(oracles.binary_clade_families(range(1, n + 1)))
        assert got == oracle
