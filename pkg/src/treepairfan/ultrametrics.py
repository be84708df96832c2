"""Pair-indexed rational vectors and the ultrametric cone machinery.

A PairVector assigns an exact rational to every unordered pair of the
leaf set 1..n.  Ultrametric recognition, topology recovery, and the
characteristic vectors spanning the linear hull of a topology's cone
all live here.
"""

from __future__ import annotations

import json
from fractions import Fraction
from itertools import combinations

from .errors import NotUltrametric, TooSmall
from .trees import RootedTree, WeightedRootedTree, clade_key


def all_pairs(n):
    """Unordered pairs of 1..n in lexicographic order."""
    return list(combinations(range(1, n + 1), 2))


class PairVector:
    """Immutable rational vector indexed by unordered pairs of 1..n."""

    __slots__ = ("n", "entries", "_hash")

    def __init__(self, n, entries):
        if n < 2:
            raise TooSmall("pair vectors need n >= 2")
        expected = set(all_pairs(n))
        fixed = {}
        for k, v in entries.items():
            u, w = sorted(k)
            fixed[(u, w)] = Fraction(v)
        if set(fixed) != expected:
            raise ValueError("need exactly one entry per pair of 1..%d" % n)
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "entries", fixed)
        object.__setattr__(self, "_hash",
                           hash((n, tuple(fixed[p] for p in all_pairs(n)))))

    def __setattr__(self, *args):
        raise AttributeError("PairVector is immutable")

    @classmethod
    def from_values(cls, n, values):
        """Build from a flat list in lexicographic pair order."""
        pairs = all_pairs(n)
        if len(values) != len(pairs):
            raise ValueError("expected %d values" % len(pairs))
        return cls(n, dict(zip(pairs, values)))

    def __getitem__(self, pair):
        u, v = sorted(pair)
        return self.entries[(u, v)]

    def values(self):
        return [self.entries[p] for p in all_pairs(self.n)]

    def __eq__(self, other):
        return (isinstance(other, PairVector)
                and self.n == other.n and self.entries == other.entries)

    def __hash__(self):
        return self._hash

    def __add__(self, other):
        if not isinstance(other, PairVector) or other.n != self.n:
            return NotImplemented
        return PairVector(self.n, {p: self.entries[p] + other.entries[p]
                                   for p in self.entries})

    def __sub__(self, other):
        if not isinstance(other, PairVector) or other.n != self.n:
            return NotImplemented
        return PairVector(self.n, {p: self.entries[p] - other.entries[p]
                                   for p in self.entries})

    def scale(self, a):
        a = Fraction(a)
        return PairVector(self.n, {p: a * v for p, v in self.entries.items()})

    def __repr__(self):
        return "PairVector(%d, %s)" % (self.n, self.values())

    def to_json(self):
        keys = {"%d,%d" % p: str(self.entries[p]) for p in all_pairs(self.n)}
        return json.dumps({"n": self.n, "pairs": keys})

    @classmethod
    def from_json(cls, text):
        data = json.loads(text)
        entries = {}
        for key, val in data["pairs"].items():
            u, v = (int(x) for x in key.split(","))
            entries[(u, v)] = Fraction(val)
        return cls(data["n"], entries)


def constant_vector(n, value=0):
    return PairVector(n, {p: Fraction(value) for p in all_pairs(n)})


def ones_vector(n):
    return constant_vector(n, 1)


def is_ultrametric(d):
    """Three-point condition: the two largest of every triple's values agree."""
    for u, v, w in combinations(range(1, d.n + 1), 3):
        a, b, c = sorted([d[(u, v)], d[(u, w)], d[(v, w)]])
        if b != c:
            return False
    return True


def evaluate(w):
    """Pair vector of a weighted tree: each pair gets its MRCA's weight."""
    tree = w.tree
    leaves = sorted(tree.leaves)
    if leaves != list(range(1, len(leaves) + 1)):
        raise ValueError("evaluation needs leaves 1..n")
    entries = {}
    for u, v in combinations(leaves, 2):
        entries[(u, v)] = w.weights[tree.smallest_clade({u, v})]
    return PairVector(len(leaves), entries)


def topology(d):
    """Recover the unique weighted tree witness of an ultrametric.

    Clades are the threshold clusters: for each distinct entry t, the
    size->=2 classes of the transitive closure of "d_uv < t".  Equal
    weights along a chain cannot occur, so the witness is unique.
    """
    if not is_ultrametric(d):
        raise NotUltrametric("input fails the three-point condition")
    n = d.n
    ground = list(range(1, n + 1))
    clades = set()
    for t in set(d.entries.values()):
        parent = {x: x for x in ground}

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for (u, v), val in d.entries.items():
            if val < t:
                parent[find(u)] = find(v)
        groups = {}
        for x in ground:
            groups.setdefault(find(x), set()).add(x)
        for g in groups.values():
            if len(g) >= 2:
                clades.add(frozenset(g))
    tree = RootedTree(ground, clades)
    weights = {}
    for c in tree.clades:
        weights[c] = max(d[(u, v)] for u, v in combinations(sorted(c), 2))
    return WeightedRootedTree(tree, weights)


def v_vector(n, c):
    """Characteristic vector of the pairs inside clade c."""
    c = frozenset(c)
    if len(c) < 2:
        raise TooSmall("v_vector needs |C| >= 2")
    return PairVector(n, {(u, v): Fraction(1 if u in c and v in c else 0)
                          for u, v in all_pairs(n)})


def m_vector(t, c):
    """Indicator of pairs whose smallest clade in t is exactly c."""
    c = frozenset(c)
    if c not in t.clades:
        from .errors import UnknownClade
        raise UnknownClade("%s not a clade of the tree" % sorted(c))
    n = t.n
    return PairVector(n, {(u, v): Fraction(1 if t.smallest_clade({u, v}) == c
                                           else 0)
                          for u, v in all_pairs(n)})


def m_matrix(t):
    """Rows indexed by pairs (lex order), one column per clade in
    canonical order.  Entries are 0/1 ints."""
    cols = t.sorted_clades()
    rows = []
    for u, v in all_pairs(t.n):
        small = t.smallest_clade({u, v})
        rows.append([1 if small == c else 0 for c in cols])
    return rows, cols


def in_cone_KT(d, t):
    """Membership of d in the closed cone of ultrametrics with topology
    coarsening to t.

    Affine test: d must be constant on each fiber of smallest_clade and
    the clade values weakly increasing along containment.  Returns
    (True, {clade: value}) or (False, reason).
    """
    if sorted(t.leaves) != list(range(1, d.n + 1)):
        raise ValueError("tree and vector leaf sets differ")
    fiber_value = {}
    for u, v in all_pairs(d.n):
        c = t.smallest_clade({u, v})
        val = d[(u, v)]
        if c in fiber_value and fiber_value[c] != val:
            return False, "pairs under clade %s carry different values" % sorted(c)
        fiber_value[c] = val
    for c in t.clades:
        p = t.parent(c)
        if p is not None and fiber_value[c] > fiber_value[p]:
            return False, ("value %s on %s exceeds %s on parent %s"
                           % (fiber_value[c], sorted(c),
                              fiber_value[p], sorted(p)))
    return True, fiber_value


def cone_decomposition(d, t):
    """Express d in cone K_T as m*v_[n] - sum t_C v_C with t_C >= 0.

    Returns (m, {clade: t_C}) or None if d is outside the cone.
    """
    ok, vals = in_cone_KT(d, t)
    if not ok:
        return None
    m = vals[t.leaves]
    coeffs = {}
    for c in t.clades:
        p = t.parent(c)
        if p is not None:
            coeffs[c] = vals[p] - vals[c]
    return m, coeffs
