import random
from fractions import Fraction

import pytest

from treepairfan import oracles, trees
from treepairfan.errors import BoundExceeded, DependentGenerators
from treepairfan.oracles import (
    binary_clade_families,
    canonical_form,
    catalog_henneberg_graphs,
    catalog_tight_graphs,
    exact_rank,
    rooted_clade_families,
    solve_simplicial,
)
from treepairfan.rigidity import is_laman
from treepairfan.ultrametrics import m_matrix, ones_vector, v_vector

from helpers import random_rooted_tree


class TestExactRank:
    def test_reference_matrix(self):
        rows, _ = m_matrix(trees.from_clades(4, [[1, 2], [1, 2, 3]]))
        assert exact_rank(rows) == 3

    def test_zero(self):
        assert exact_rank([[0, 0], [0, 0]]) == 0
        assert exact_rank([]) == 0

    def test_fraction_entries(self):
        m = [[Fraction(1, 2), 1], [Fraction(1, 4), Fraction(1, 2)]]
        assert exact_rank(m) == 1

    def test_random_against_fraction_path(self):
        rng = random.Random(4)
        for _ in range(50):
            rows = rng.randint(1, 6)
            cols = rng.randint(1, 6)
            m = [[rng.randint(-5, 5) for _ in range(cols)] for _ in range(rows)]
            as_fr = [[Fraction(x) for x in row] for row in m]
            assert exact_rank(m) == exact_rank(as_fr)


class TestSolveSimplicial:
    def test_single_generator(self):
        g = v_vector(4, {1, 2}).scale(-1)
        coeffs, lam = solve_simplicial([g], g)
        assert coeffs == [1] and lam == 0

    def test_lineality(self):
        g = v_vector(4, {1, 2}).scale(-1)
        coeffs, lam = solve_simplicial([g], ones_vector(4))
        assert coeffs == [0] and lam == 1

    def test_round_trip(self):
        rng = random.Random(5)
        gens = [v_vector(4, {1, 2}).scale(-1),
                v_vector(4, {1, 2, 3}).scale(-1),
                v_vector(4, {2, 4}).scale(-1)]
        for _ in range(30):
            ts = [Fraction(rng.randint(0, 9), rng.randint(1, 3))
                  for _ in gens]
            lam = Fraction(rng.randint(-4, 4))
            d = ones_vector(4).scale(lam)
            for t, g in zip(ts, gens):
                d = d + g.scale(t)
            coeffs, got_lam = solve_simplicial(gens, d)
            assert coeffs == ts and got_lam == lam

    def test_dependent_rejected(self):
        g = v_vector(4, {1, 2}).scale(-1)
        with pytest.raises(DependentGenerators):
            solve_simplicial([g, g.scale(2)], g)

    def test_outside_span(self):
        g = v_vector(4, {1, 2}).scale(-1)
        assert solve_simplicial([g], v_vector(4, {3, 4})) is None


class TestTreeOracles:
    def test_binary_matches_enumerator(self):
        for n in range(2, 6):
            a = {t.clades for t in trees.enumerate_binary_trees(n)}
            b = set(binary_clade_families(range(1, n + 1)))
            assert a == b

    def test_rooted_matches_enumerator(self):
        for n in range(2, 6):
            a = {t.clades for t in trees.enumerate_rooted_trees(n)}
            b = set(rooted_clade_families(range(1, n + 1)))
            assert a == b

    def test_rooted_counts(self):
        for n, want in [(3, 4), (4, 26), (5, 236)]:
            fams = rooted_clade_families(range(1, n + 1))
            assert len(fams) == len(set(fams)) == want


class TestCanonicalForm:
    def test_isomorphic_relabelings(self):
        rng = random.Random(6)
        base = [(1, 2), (1, 3), (2, 3), (3, 4), (4, 5)]
        want = canonical_form(5, base)
        for _ in range(30):
            perm = list(range(1, 6))
            rng.shuffle(perm)
            relabel = {i + 1: perm[i] for i in range(5)}
            edges = [tuple(sorted((relabel[u], relabel[v]))) for u, v in base]
            assert canonical_form(5, edges) == want

    def test_distinguishes_nonisomorphic(self):
        path = [(1, 2), (2, 3), (3, 4)]
        star = [(1, 2), (1, 3), (1, 4)]
        assert canonical_form(4, path) != canonical_form(4, star)


class TestCatalogs:
    def test_n2_n3(self):
        assert len(list(catalog_tight_graphs(2))) == 1
        got = list(catalog_tight_graphs(3))
        assert len(got) == 1 and len(got[0].edges) == 3

    def test_n4_n5_counts(self):
        got = list(catalog_tight_graphs(4))
        # every 5-edge graph on 4 vertices is K4 minus one edge
        assert len(got) == 1
        assert sum(1 for g in got if is_laman(g)[0]) == 1
        got5 = list(catalog_tight_graphs(5))
        assert len(got5) == 4
        assert sum(1 for g in got5 if is_laman(g)[0]) == 3

    def test_henneberg_counts(self):
        assert len(catalog_henneberg_graphs(4)) == 1
        assert len(catalog_henneberg_graphs(5)) == 3
        assert len(catalog_henneberg_graphs(6)) == 13

    def test_henneberg_graphs_are_laman(self):
        for g in catalog_henneberg_graphs(6):
            assert is_laman(g)[0]

    def test_bounds(self):
        with pytest.raises(BoundExceeded):
            list(catalog_tight_graphs(8))
        with pytest.raises(BoundExceeded):
            catalog_henneberg_graphs(9)


class TestJacobian:
    def test_incidence_agreement(self):
        from treepairfan.clade_graphs import clade_graph
        rng = random.Random(7)
        for _ in range(100):
            n = rng.randint(3, 8)
            t1 = random_rooted_tree(rng, n)
            t2 = random_rooted_tree(rng, n)
            g = clade_graph(t1, t2)
            assert exact_rank(g.incidence_matrix()) == g.graphic_rank()
