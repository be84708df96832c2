"""Bipartite clade (multi)graphs of a tree pair, and their matroid rank.

Vertices are (side, clade) with side 0 for the first tree and 1 for the
second; the two copies of a shared clade stay distinct.  Each edge
carries the leaf pair that generated it, so parallel edges survive.
"""

from __future__ import annotations

import json
from itertools import combinations

from .errors import LeafMismatch, NotSubgraph
from .trees import clade_key


def _vertex_key(v):
    side, clade = v
    return (side, clade_key(clade))


class CladeGraph:
    """Multigraph on the clades of two trees; one edge per leaf pair."""

    __slots__ = ("t1", "t2", "vertices", "edges")

    def __init__(self, t1, t2, pairs):
        if t1.leaves != t2.leaves:
            raise LeafMismatch("trees have different leaf sets")
        vertices = [(0, c) for c in t1.sorted_clades()]
        vertices += [(1, c) for c in t2.sorted_clades()]
        edges = []
        for u, v in sorted(pairs):
            edges.append(((u, v),
                          (0, t1.smallest_clade({u, v})),
                          (1, t2.smallest_clade({u, v}))))
        object.__setattr__(self, "t1", t1)
        object.__setattr__(self, "t2", t2)
        object.__setattr__(self, "vertices", tuple(vertices))
        object.__setattr__(self, "edges", tuple(edges))

    def __setattr__(self, *args):
        raise AttributeError("CladeGraph is immutable")

    def components(self):
        """Partition of the vertex set into connected components.

        Components are canonicalized by their smallest (side, clade)
        member and returned as a list of frozensets in that order.
        """
        parent = {v: v for v in self.vertices}

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for _, a, b in self.edges:
            ra, rb = find(a), find(b)
            if ra != rb:
                parent[ra] = rb
        groups = {}
        for v in self.vertices:
            groups.setdefault(find(v), set()).add(v)
        comps = [frozenset(g) for g in groups.values()]
        comps.sort(key=lambda g: min(_vertex_key(v) for v in g))
        return comps

    def graphic_rank(self):
        """Vertices minus connected components."""
        return len(self.vertices) - len(self.components())

    def is_spanning_tree(self):
        return (len(self.components()) == 1
                and len(self.edges) == len(self.vertices) - 1)

    def incidence_matrix(self):
        """0/1 matrix, one row per edge, one column per vertex."""
        index = {v: i for i, v in enumerate(self.vertices)}
        rows = []
        for _, a, b in self.edges:
            row = [0] * len(self.vertices)
            row[index[a]] = 1
            row[index[b]] = 1
            rows.append(row)
        return rows

    def to_dot(self):
        lines = ["graph cladegraph {", "  rankdir=LR;"]

        def name(v):
            side, clade = v
            return '"%s:%s"' % ("L" if side == 0 else "R",
                                "".join(str(x) for x in sorted(clade)))

        for v in self.vertices:
            lines.append("  %s;" % name(v))
        for (u, w), a, b in self.edges:
            lines.append('  %s -- %s [label="%d%d"];' % (name(a), name(b), u, w))
        lines.append("}")
        return "\n".join(lines)

    def to_json(self):
        return json.dumps({
            "vertices": [[side, sorted(c)] for side, c in self.vertices],
            "edges": [[[u, v], [a[0], sorted(a[1])], [b[0], sorted(b[1])]]
                      for (u, v), a, b in self.edges],
        })


def clade_graph(t1, t2):
    """Full clade graph: one edge for every pair of leaves."""
    pairs = list(combinations(sorted(t1.leaves), 2))
    return CladeGraph(t1, t2, pairs)


def restricted_clade_graph(t1, t2, h):
    """Clade graph with one edge per edge of the graph h."""
    if frozenset(h.vertices) != t1.leaves:
        raise LeafMismatch("graph vertices and tree leaves differ")
    return CladeGraph(t1, t2, sorted(h.edges))


def induced_hom(h_sub, h, t1, t2):
    """Vertex map of restricted clade graphs induced by a subgraph.

    Sends each clade C of the restriction of t_i to V(h_sub) to the
    smallest clade of t_i containing C.  Verifies that the map is
    injective and carries edges to equally-labeled edges.
    """
    if not (set(h_sub.vertices) <= set(h.vertices)
            and h_sub.edges <= h.edges):
        raise NotSubgraph("first graph is not a subgraph of the second")
    r1 = t1.restrict(h_sub.vertices)
    r2 = t2.restrict(h_sub.vertices)
    small = restricted_clade_graph(r1, r2, h_sub)
    big = restricted_clade_graph(t1, t2, h)
    trees = (t1, t2)
    mapping = {}
    for side, c in small.vertices:
        mapping[(side, c)] = (side, trees[side].smallest_clade(c))
    if len(set(mapping.values())) != len(mapping):
        raise AssertionError("induced map is not injective")
    big_edges = {pair: (a, b) for pair, a, b in big.edges}
    for pair, a, b in small.edges:
        if big_edges[pair] != (mapping[a], mapping[b]):
            raise AssertionError("edge %s does not map to its counterpart" % (pair,))
    return mapping
