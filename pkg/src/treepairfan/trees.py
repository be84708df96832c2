"""Rooted leaf-labeled trees stored as laminar clade families.

A tree on leaf set L is identified with the family of its clades (the
leaf sets below internal vertices).  The trivial clade L is always
stored; singletons never are.  All values are immutable.
"""

from __future__ import annotations

import json
from fractions import Fraction

from .errors import (
    BadLeaf,
    NotLaminar,
    TooSmall,
    UnknownClade,
    WeightOrderViolated,
)


def clade_key(c):
    """Canonical sort key for a clade: size, then member list."""
    return (len(c), tuple(sorted(c)))


def _nested_or_disjoint(a, b):
    inter = a & b
    return not inter or inter == a or inter == b


class RootedTree:
    """Immutable rooted tree on an arbitrary finite leaf set of ints."""

    __slots__ = ("leaves", "clades", "_hash")

    def __init__(self, leaves, clades):
        leaves = frozenset(leaves)
        if not leaves:
            raise TooSmall("leaf set must be nonempty")
        stored = set()
        for c in clades:
            c = frozenset(c)
            if len(c) < 2:
                raise TooSmall("clades must have at least 2 members: %s" % sorted(c))
            if not c <= leaves:
                raise BadLeaf("clade %s mentions leaves outside %s"
                              % (sorted(c), sorted(leaves)))
            stored.add(c)
        if len(leaves) >= 2:
            stored.add(leaves)
        for a in stored:
            for b in stored:
                if not _nested_or_disjoint(a, b):
                    raise NotLaminar("clades %s and %s cross"
                                     % (sorted(a), sorted(b)))
        object.__setattr__(self, "leaves", leaves)
        object.__setattr__(self, "clades", frozenset(stored))
        object.__setattr__(self, "_hash", hash((leaves, self.clades)))

    def __setattr__(self, *args):
        raise AttributeError("RootedTree is immutable")

    @property
    def n(self):
        return len(self.leaves)

    def sorted_clades(self):
        """Clades in canonical (size, lexicographic) order."""
        return sorted(self.clades, key=clade_key)

    def nontrivial_clades(self):
        """Stored clades minus the trivial clade, canonically ordered."""
        return [c for c in self.sorted_clades() if c != self.leaves]

    def __eq__(self, other):
        return (isinstance(other, RootedTree)
                and self.leaves == other.leaves
                and self.clades == other.clades)

    def __hash__(self):
        return self._hash

    def __repr__(self):
        parts = ["".join(str(x) for x in sorted(c)) for c in self.sorted_clades()]
        return "RootedTree({%s})" % ", ".join(parts)

    # -- queries ---------------------------------------------------------

    def is_binary(self):
        """True iff every internal vertex has exactly two children."""
        return len(self.clades) == self.n - 1 or self.n == 1

    def smallest_clade(self, s):
        """Inclusion-minimal stored clade containing the set s.

        For a singleton s that is a leaf, returns the singleton itself.
        """
        s = frozenset(s)
        if not s:
            raise TooSmall("smallest_clade of empty set")
        if not s <= self.leaves:
            raise BadLeaf("%s not within leaf set" % sorted(s))
        if len(s) == 1:
            return s
        best = self.leaves
        for c in self.clades:
            if s <= c and len(c) < len(best):
                best = c
        return best

    def parent(self, c):
        """Smallest stored clade strictly containing c (None for the root)."""
        c = frozenset(c)
        if c == self.leaves:
            return None
        best = None
        for d in self.clades:
            if c < d and (best is None or len(d) < len(best)):
                best = d
        return best

    def children(self, c):
        """Maximal stored clades and singleton leaves directly below c."""
        c = frozenset(c)
        if c not in self.clades:
            raise UnknownClade("%s is not a stored clade" % sorted(c))
        subs = [d for d in self.clades if d < c]
        tops = [d for d in subs if not any(d < e for e in subs)]
        covered = set().union(*tops) if tops else set()
        tops.extend(frozenset([x]) for x in c - covered)
        return sorted(tops, key=clade_key)

    # -- constructions ---------------------------------------------------

    def restrict(self, s):
        """Restriction to leaf subset s, collapsing degree-2 vertices."""
        s = frozenset(s)
        if len(s) < 2:
            raise TooSmall("restriction needs at least 2 leaves")
        if not s <= self.leaves:
            raise BadLeaf("%s not within leaf set" % sorted(s))
        new = {c & s for c in self.clades if len(c & s) >= 2}
        return RootedTree(s, new)

    def attach_leaf(self, c, v):
        """Attach new leaf v so that c | {v} becomes a clade.

        c must be a stored clade or a singleton leaf.
        """
        c = frozenset(c)
        if v in self.leaves:
            raise BadLeaf("leaf %s already present" % v)
        if c not in self.clades and not (len(c) == 1 and c <= self.leaves):
            raise UnknownClade("%s is neither a stored clade nor a leaf"
                               % sorted(c))
        grown = set()
        for d in self.clades:
            grown.add(d | {v} if c < d else d)
        grown.add(c | {v})
        return RootedTree(self.leaves | {v}, grown)


def from_clades(n, clades):
    """Build the tree on leaves 1..n with the given nontrivial clades."""
    if n < 1:
        raise TooSmall("n must be positive")
    return RootedTree(range(1, n + 1), clades)


def star_tree(n):
    """The tree with no nontrivial clades."""
    return from_clades(n, [])


def enumerate_binary_trees(n, leaves=None):
    """Yield every rooted binary tree on leaves 1..n exactly once.

    Generated by leaf insertion: leaf k goes above any node of a tree on
    the first k-1 leaves, or above the old root.  Counts are the double
    factorials 1, 3, 15, 105, ...
    """
    if leaves is None:
        if n < 2:
            raise TooSmall("need n >= 2")
        leaves = list(range(1, n + 1))
    else:
        leaves = sorted(leaves)
        if len(leaves) < 2:
            raise TooSmall("need at least 2 leaves")

    def gen(k):
        if k == 2:
            yield RootedTree(leaves[:2], [])
            return
        v = leaves[k - 1]
        for t in gen(k - 1):
            # 2k-3 spots: above each stored clade (the trivial clade
            # gives a new root) and above each leaf
            for c in t.sorted_clades():
                yield t.attach_leaf(c, v)
            for x in sorted(t.leaves):
                yield t.attach_leaf([x], v)

    return gen(len(leaves))


def enumerate_rooted_trees(n):
    """All rooted trees (any arity) on leaves 1..n, each exactly once.

    Every topology is a clade subset of some binary tree, so we take
    subsets of binary trees' nontrivial clades and deduplicate.
    """
    if n < 2:
        raise TooSmall("need n >= 2")
    from itertools import combinations as _comb

    seen = set()
    out = []
    for t in enumerate_binary_trees(n):
        nontrivial = t.nontrivial_clades()
        for k in range(len(nontrivial) + 1):
            for keep in _comb(nontrivial, k):
                fam = frozenset(keep) | {t.leaves}
                if fam not in seen:
                    seen.add(fam)
                    out.append(RootedTree(t.leaves, fam))
    return out


# -- weighted trees ------------------------------------------------------


class WeightedRootedTree:
    """A rooted tree whose stored clades carry rational weights.

    Weights must strictly increase along containment chains toward the
    root; equal consecutive weights would make the witness non-unique.
    """

    __slots__ = ("tree", "weights")

    def __init__(self, tree, weights):
        weights = {frozenset(c): Fraction(w) for c, w in weights.items()}
        if set(weights) != set(tree.clades):
            raise UnknownClade("weights must be given for exactly the stored clades")
        for c in tree.clades:
            p = tree.parent(c)
            if p is not None and weights[c] >= weights[p]:
                raise WeightOrderViolated(
                    "weight of %s (%s) not below its parent's (%s)"
                    % (sorted(c), weights[c], weights[p]))
        object.__setattr__(self, "tree", tree)
        object.__setattr__(self, "weights", weights)

    def __setattr__(self, *args):
        raise AttributeError("WeightedRootedTree is immutable")

    def __eq__(self, other):
        return (isinstance(other, WeightedRootedTree)
                and self.tree == other.tree
                and self.weights == other.weights)

    def __hash__(self):
        return hash((self.tree, tuple(sorted(self.weights.items(),
                                             key=lambda kv: clade_key(kv[0])))))

    def __repr__(self):
        parts = ["%s->%s" % ("".join(map(str, sorted(c))), self.weights[c])
                 for c in self.tree.sorted_clades()]
        return "WeightedRootedTree(%s)" % ", ".join(parts)


# -- serialization -------------------------------------------------------


def to_json(tree):
    """JSON text for a tree on leaves 1..n."""
    return json.dumps({
        "n": tree.n,
        "clades": [sorted(c) for c in tree.nontrivial_clades()],
    })


def tree_from_json(text):
    data = json.loads(text)
    return from_clades(data["n"], [frozenset(c) for c in data["clades"]])


def weighted_to_json(w):
    """JSON text for a weighted tree; clade keys are comma-joined members."""
    return json.dumps({
        "n": w.tree.n,
        "clades": [sorted(c) for c in w.tree.nontrivial_clades()],
        "weights": {",".join(str(x) for x in sorted(c)): str(w.weights[c])
                    for c in w.tree.sorted_clades()},
    })


def weighted_from_json(text):
    data = json.loads(text)
    tree = from_clades(data["n"], [frozenset(c) for c in data["clades"]])
    weights = {}
    for key, val in data["weights"].items():
        weights[frozenset(int(x) for x in key.split(","))] = Fraction(val)
    return WeightedRootedTree(tree, weights)


def to_newick(tree):
    """Newick text with integer leaves and no branch lengths."""

    def render(c):
        if len(c) == 1:
            return str(next(iter(c)))
        kids = sorted(tree.children(c), key=lambda k: (min(k), len(k)))
        return "(%s)" % ",".join(render(k) for k in kids)

    if tree.n == 1:
        return "%s;" % next(iter(tree.leaves))
    return render(tree.leaves) + ";"


def from_newick(text):
    text = text.strip()
    if text.endswith(";"):
        text = text[:-1]
    clades = []

    def parse(s, pos):
        if s[pos] == "(":
            members = set()
            pos += 1
            while True:
                got, pos = parse(s, pos)
                members |= got
                if s[pos] == ",":
                    pos += 1
                    continue
                if s[pos] == ")":
                    pos += 1
                    break
            members = frozenset(members)
            if len(members) >= 2:
                clades.append(members)
            return members, pos
        j = pos
        while j < len(s) and s[j] not in ",()":
            j += 1
        return frozenset([int(s[pos:j])]), j

    leaves, end = parse(text, 0)
    if end != len(text):
        raise ValueError("trailing characters in Newick input")
    return RootedTree(leaves, clades)
