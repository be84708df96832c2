"""Faces of the tree-pair complex and their cones.

A face is a union of the clade families of two trees on 1..n; its cone
is generated by the negated characteristic vectors of the nontrivial
clades, modulo the all-ones lineality direction.  This module carries
the v-description membership test, the clade-intersection poset, and
the h-description (pair identifications, facet inequalities via
inclusion-exclusion over parents, and cycle equalities).
"""

from __future__ import annotations

import json
from fractions import Fraction
from itertools import combinations

from .errors import DependentGenerators, LeafMismatch, SearchBoundExceeded, TooSmall
from .trees import RootedTree, clade_key, enumerate_binary_trees
from .ultrametrics import PairVector, all_pairs, v_vector


def _crossing(a, b):
    inter = a & b
    return bool(inter) and inter != a and inter != b


class CladeSet:
    """A face of the tree-pair complex: two laminar families, merged.

    The trivial clade is always present in both families.  The stored
    2-coloring witnesses membership in the complex.
    """

    __slots__ = ("n", "family1", "family2", "clades")

    def __init__(self, n, family1, family2):
        full = frozenset(range(1, n + 1))
        fam1 = frozenset(frozenset(c) for c in family1) | {full}
        fam2 = frozenset(frozenset(c) for c in family2) | {full}
        for fam in (fam1, fam2):
            for c in fam:
                if len(c) < 2:
                    raise TooSmall("clades must have >= 2 members")
                if not c <= full:
                    raise ValueError("clade %s outside 1..%d" % (sorted(c), n))
            for a in fam:
                for b in fam:
                    if _crossing(a, b):
                        raise ValueError("family is not laminar: %s crosses %s"
                                         % (sorted(a), sorted(b)))
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "family1", fam1)
        object.__setattr__(self, "family2", fam2)
        object.__setattr__(self, "clades", fam1 | fam2)

    def __setattr__(self, *args):
        raise AttributeError("CladeSet is immutable")

    @property
    def full(self):
        return frozenset(range(1, self.n + 1))

    def nontrivial(self):
        """S minus the trivial clade, canonically ordered."""
        return sorted((c for c in self.clades if c != self.full), key=clade_key)

    def sorted_clades(self):
        return sorted(self.clades, key=clade_key)

    def trees(self):
        """A witnessing tree pair."""
        return (RootedTree(self.full, self.family1),
                RootedTree(self.full, self.family2))

    def __eq__(self, other):
        return (isinstance(other, CladeSet) and self.n == other.n
                and self.clades == other.clades)

    def __hash__(self):
        return hash((self.n, self.clades))

    def __repr__(self):
        return "CladeSet(%s)" % ["".join(map(str, sorted(c)))
                                 for c in self.sorted_clades()]

    def to_json(self):
        clades = self.sorted_clades()
        coloring = []
        for c in clades:
            in1 = c in self.family1
            in2 = c in self.family2
            coloring.append(2 if in1 and in2 else (0 if in1 else 1))
        return json.dumps({"n": self.n,
                           "clades": [sorted(c) for c in clades],
                           "coloring": coloring})

    @classmethod
    def from_json(cls, text):
        data = json.loads(text)
        fam1, fam2 = [], []
        for c, color in zip(data["clades"], data["coloring"]):
            if color in (0, 2):
                fam1.append(frozenset(c))
            if color in (1, 2):
                fam2.append(frozenset(c))
        return cls(data["n"], fam1, fam2)


def clade_set_of(t1, t2):
    """The face clade(T1) | clade(T2)."""
    if t1.leaves != t2.leaves:
        raise LeafMismatch("trees have different leaf sets")
    leaves = sorted(t1.leaves)
    if leaves != list(range(1, len(leaves) + 1)):
        raise ValueError("faces live on leaf sets 1..n")
    return CladeSet(len(leaves), t1.clades, t2.clades)


def is_tp_face(n, sets):
    """Decide whether a family splits into two laminar families.

    Builds the crossing-conflict graph and 2-colors its components.
    Returns (True, (T1, T2)) with a witnessing tree pair, or (False, None).
    """
    full = frozenset(range(1, n + 1))
    members = [frozenset(s) for s in set(frozenset(s) for s in sets)]
    for s in members:
        if len(s) < 2:
            raise TooSmall("members must have >= 2 elements")
    if full not in members:
        members.append(full)
    color = {}
    for start in members:
        if start in color:
            continue
        color[start] = 0
        queue = [start]
        while queue:
            a = queue.pop()
            for b in members:
                if not _crossing(a, b):
                    continue
                if b not in color:
                    color[b] = 1 - color[a]
                    queue.append(b)
                elif color[b] == color[a]:
                    return False, None
    fam1 = [s for s in members if color[s] == 0]
    fam2 = [s for s in members if color[s] == 1]
    # bipartite coloring leaves each class crossing-free, hence laminar
    face = CladeSet(n, fam1, fam2)
    return True, face.trees()


class CIPoset:
    """Clade intersection poset: the face plus pairwise intersections,
    ordered by inclusion; a join-semilattice with top 1..n."""

    __slots__ = ("n", "face", "elements", "added")

    def __init__(self, face):
        elements = set(face.clades)
        new = set()
        while True:
            fresh = set()
            pool = sorted(elements | new, key=clade_key)
            for a, b in combinations(pool, 2):
                inter = a & b
                if len(inter) >= 2 and inter not in elements and inter not in new:
                    fresh.add(inter)
            if not fresh:
                break
            if new:
                # faces of the complex close after a single round
                raise AssertionError("intersection closure took more than one round")
            new = fresh
        # every added element must be an intersection of two face members
        for e in new:
            witnesses = [(a, b) for a, b in combinations(face.sorted_clades(), 2)
                         if a & b == e]
            assert witnesses, "added element is not a two-member intersection"
        object.__setattr__(self, "n", face.n)
        object.__setattr__(self, "face", face)
        object.__setattr__(self, "elements", frozenset(elements | new))
        object.__setattr__(self, "added", frozenset(new))

    def __setattr__(self, *args):
        raise AttributeError("CIPoset is immutable")

    def sorted_elements(self):
        return sorted(self.elements, key=clade_key)

    def parents(self, c):
        """Elements covering c."""
        ups = [d for d in self.elements if c < d]
        return sorted((d for d in ups if not any(e < d for e in ups if c < e)),
                      key=clade_key)

    def join(self, a, b):
        """Minimum common upper bound."""
        ups = [d for d in self.elements if a <= d and b <= d]
        best = min(ups, key=len)
        assert all(best <= d for d in ups), "join is not unique"
        return best

    def bar(self, i, j):
        """Inclusion-minimal element containing the pair {i, j}."""
        if i == j:
            raise ValueError("need two distinct leaves")
        s = {i, j}
        best = None
        for d in self.elements:
            if s <= d and (best is None or len(d) < len(best)):
                best = d
        return best


def cip(face):
    return CIPoset(face)


class Row:
    """One linear relation over pair coordinates: coeffs . d (rel) 0."""

    __slots__ = ("coeffs", "rel", "tag")

    def __init__(self, coeffs, rel, tag):
        self.coeffs = {p: Fraction(v) for p, v in coeffs.items() if v != 0}
        self.rel = rel  # "eq" or "le"
        self.tag = tag  # "pair", "facet", or "cycle"

    def value(self, d):
        return sum((v * d[p] for p, v in self.coeffs.items()), Fraction(0))

    def holds(self, d):
        val = self.value(d)
        return val == 0 if self.rel == "eq" else val <= 0

    def text(self):
        terms = []
        for p in sorted(self.coeffs):
            v = self.coeffs[p]
            mag = "" if abs(v) == 1 else "%s*" % abs(v)
            if not terms:
                sign = "-" if v < 0 else ""
                terms.append("%s%sd[%d,%d]" % (sign, mag, p[0], p[1]))
            else:
                sign = "-" if v < 0 else "+"
                terms.append("%s %sd[%d,%d]" % (sign, mag, p[0], p[1]))
        rel = "= 0" if self.rel == "eq" else "<= 0"
        return "%s %s" % (" ".join(terms), rel)


class LinearSystem:
    """The h-description of a face's cone."""

    __slots__ = ("n", "rows", "pair_classes")

    def __init__(self, n, rows, pair_classes):
        self.n = n
        self.rows = rows
        self.pair_classes = pair_classes

    def satisfied_by(self, d):
        return all(row.holds(d) for row in self.rows)

    def to_text(self):
        return "\n".join(row.text() for row in self.rows)

    def to_json(self):
        return json.dumps({
            "n": self.n,
            "rows": [{"coeffs": {"%d,%d" % p: str(v)
                                 for p, v in sorted(row.coeffs.items())},
                      "rel": row.rel, "tag": row.tag}
                     for row in self.rows],
        })


def f_system(face):
    """Equations and inequalities cutting out the face's cone.

    Emits coordinate identifications for pairs sharing a minimal poset
    element, one inclusion-exclusion facet inequality per nontrivial
    face member, and the matching equality for each added poset element.
    """
    poset = cip(face)
    classes = {}
    for u, v in all_pairs(face.n):
        classes.setdefault(poset.bar(u, v), []).append((u, v))
    # every poset element owns at least one pair
    for c in poset.elements:
        assert c in classes, "poset element %s owns no pair" % sorted(c)
    rep = {c: min(ps) for c, ps in classes.items()}
    rows = []
    for c in sorted(classes, key=clade_key):
        for p in classes[c]:
            if p != rep[c]:
                rows.append(Row({p: 1, rep[c]: -1}, "eq", "pair"))
    for c in poset.sorted_elements():
        if c == face.full:
            continue
        parents = poset.parents(c)
        r = len(parents)
        coeffs = {}
        for size in range(r + 1):
            for idx in combinations(range(r), size):
                if not idx:
                    elem = c
                else:
                    elem = parents[idx[0]]
                    for i in idx[1:]:
                        elem = poset.join(elem, parents[i])
                p = rep[elem]
                coeffs[p] = coeffs.get(p, 0) + (-1) ** size
        if c in face.clades:
            rows.append(Row(coeffs, "le", "facet"))
        else:
            rows.append(Row(coeffs, "eq", "cycle"))
    return LinearSystem(face.n, rows, classes)


# -- exact v-description membership --------------------------------------


def _solve_exact(columns, target):
    """Solve sum x_j col_j = target exactly; unique solution or None.

    Raises DependentGenerators if the columns are linearly dependent.
    """
    m = len(target)
    k = len(columns)
    aug = [[Fraction(columns[j][i]) for j in range(k)] + [Fraction(target[i])]
           for i in range(m)]
    pivots = []
    row = 0
    for col in range(k):
        piv = next((r for r in range(row, m) if aug[r][col] != 0), None)
        if piv is None:
            raise DependentGenerators("cone generators are linearly dependent")
        aug[row], aug[piv] = aug[piv], aug[row]
        inv = 1 / aug[row][col]
        aug[row] = [x * inv for x in aug[row]]
        for r in range(m):
            if r != row and aug[r][col] != 0:
                f = aug[r][col]
                aug[r] = [x - f * y for x, y in zip(aug[r], aug[row])]
        pivots.append(row)
        row += 1
    for r in range(row, m):
        if aug[r][k] != 0:
            return None
    return [aug[r][k] for r in pivots]


def in_cone_KS(d, face):
    """Membership of d in the face's simplicial cone (plus lineality).

    Returns (True, ({clade: t_C}, lineality)) when d is a nonnegative
    combination of the negated clade vectors plus a multiple of the
    all-ones vector, else (False, reason).
    """
    gens = face.nontrivial()
    cols = [[-x for x in v_vector(face.n, c).values()] for c in gens]
    cols.append([Fraction(1)] * len(all_pairs(face.n)))
    sol = _solve_exact(cols, d.values())
    if sol is None:
        return False, "outside the linear hull"
    coeffs = dict(zip(gens, sol[:-1]))
    for c, t in coeffs.items():
        if t < 0:
            return False, "negative coefficient on clade %s" % sorted(c)
    return True, (coeffs, sol[-1])


def dim_KS(face):
    """Affine dimension of the cone, lineality included."""
    return len(face.clades)


def intersect_faces(face, other):
    """The face whose clade set is the intersection of the two inputs."""
    if face.n != other.n:
        raise LeafMismatch("faces on different ground sets")
    common = face.clades & other.clades
    return CladeSet(face.n,
                    face.family1 & common,
                    face.family2 & common)


_BINARY_CACHE = {}


def _binary_trees(n):
    if n not in _BINARY_CACHE:
        _BINARY_CACHE[n] = list(enumerate_binary_trees(n))
    return _BINARY_CACHE[n]


def in_trop_cm2(d, max_n=6):
    """Decide whether d is a sum of two ultrametrics.

    Exhaustive search over pairs of rooted binary trees in canonical
    order; the first witnessing pair is returned together with the two
    summands.  Returns (True, (T1, T2, u1, u2)) or (False, None).
    """
    if d.n > max_n:
        raise SearchBoundExceeded("n=%d above the configured bound %d"
                                  % (d.n, max_n))
    trees = _binary_trees(d.n)
    zero = {p: Fraction(0) for p in all_pairs(d.n)}
    for t1 in trees:
        for t2 in trees:
            face = clade_set_of(t1, t2)
            ok, res = in_cone_KS(d, face)
            if not ok:
                continue
            coeffs, lam = res
            u1 = dict(zero)
            u2 = dict(zero)
            for p in u1:
                u1[p] += lam
            for c, t in coeffs.items():
                dest = u1 if c in t1.clades else u2
                for p in all_pairs(d.n):
                    if p[0] in c and p[1] in c:
                        dest[p] -= t
            u1 = PairVector(d.n, u1)
            u2 = PairVector(d.n, u2)
            assert u1 + u2 == d
            return True, (t1, t2, u1, u2)
    return False, None
