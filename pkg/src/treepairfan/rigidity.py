"""Planar rigidity: sparsity checking, Henneberg moves, and tree-pair
certificates.

A graph on n vertices is minimally generically rigid in the plane
exactly when some pair of rooted binary trees turns its restricted
clade graph into a spanning tree; this module builds and checks such
certificates.
"""

from __future__ import annotations

import json
import random
from itertools import combinations

from . import oracles
from .clade_graphs import restricted_clade_graph
from .errors import (
    DuplicateVertex,
    LeafMismatch,
    MissingEdge,
    NotBinary,
    NotHenneberg,
    SearchBoundExceeded,
    TooSmall,
)
from .trees import RootedTree, enumerate_binary_trees


class SimpleGraph:
    """Undirected simple graph on an arbitrary finite vertex set of ints."""

    __slots__ = ("vertices", "edges")

    def __init__(self, n, edges, vertices=None):
        if vertices is None:
            vertices = range(1, n + 1)
        vertices = frozenset(vertices)
        fixed = set()
        for e in edges:
            u, v = sorted(e)
            if u == v:
                raise ValueError("loops are not allowed")
            if u not in vertices or v not in vertices:
                raise ValueError("edge (%s, %s) outside vertex set" % (u, v))
            fixed.add((u, v))
        object.__setattr__(self, "vertices", vertices)
        object.__setattr__(self, "edges", frozenset(fixed))

    def __setattr__(self, *args):
        raise AttributeError("SimpleGraph is immutable")

    @property
    def n(self):
        return len(self.vertices)

    def degree(self, v):
        return sum(1 for e in self.edges if v in e)

    def neighbors(self, v):
        return sorted(u + w - v for u, w in self.edges if v in (u, w))

    def has_edge(self, u, v):
        return tuple(sorted((u, v))) in self.edges

    def remove_vertex(self, v):
        return SimpleGraph(0, [e for e in self.edges if v not in e],
                           self.vertices - {v})

    def with_edge(self, u, v):
        return SimpleGraph(0, set(self.edges) | {tuple(sorted((u, v)))},
                           self.vertices)

    def without_edge(self, u, v):
        e = tuple(sorted((u, v)))
        if e not in self.edges:
            raise MissingEdge("edge %s absent" % (e,))
        return SimpleGraph(0, self.edges - {e}, self.vertices)

    def induced(self, subset):
        subset = frozenset(subset)
        return SimpleGraph(0, [e for e in self.edges
                               if e[0] in subset and e[1] in subset], subset)

    def __eq__(self, other):
        return (isinstance(other, SimpleGraph)
                and self.vertices == other.vertices
                and self.edges == other.edges)

    def __hash__(self):
        return hash((self.vertices, self.edges))

    def __repr__(self):
        return "SimpleGraph(V=%s, E=%s)" % (sorted(self.vertices),
                                            sorted(self.edges))

    def to_json(self):
        return json.dumps({"n": self.n, "edges": [list(e) for e in sorted(self.edges)]})

    @classmethod
    def from_json(cls, text):
        data = json.loads(text)
        return cls(data["n"], [tuple(e) for e in data["edges"]])

    @classmethod
    def from_edge_list(cls, text):
        """Parse "u v" lines; vertex set is 1..max label."""
        edges = []
        top = 0
        for line in text.splitlines():
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            u, v = (int(x) for x in line.split())
            edges.append((u, v))
            top = max(top, u, v)
        return cls(top, edges)


# -- (2,3)-pebble game ----------------------------------------------------


class PebbleGame:
    """The (2,3)-pebble game; accepted edges form an independent set of
    the generic planar rigidity matroid."""

    def __init__(self, vertices):
        self.pebbles = {v: 2 for v in vertices}
        self.out = {v: set() for v in vertices}

    def _free_pebble(self, start, forbidden):
        """Move one pebble to start along reversed directed paths."""
        prev = {start: None}
        stack = [start]
        while stack:
            u = stack.pop()
            for w in sorted(self.out[u]):
                if w in prev:
                    continue
                prev[w] = u
                if self.pebbles[w] > 0 and w not in forbidden:
                    self.pebbles[w] -= 1
                    self.pebbles[start] += 1
                    while prev[w] is not None:
                        p = prev[w]
                        self.out[p].remove(w)
                        self.out[w].add(p)
                        w = p
                    return True
                stack.append(w)
        return False

    def reachable(self, seeds):
        seen = set(seeds)
        stack = list(seeds)
        while stack:
            u = stack.pop()
            for w in self.out[u]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        return seen

    def try_insert(self, u, v):
        """Accept the edge if it is independent; returns True on accept."""
        while self.pebbles[u] + self.pebbles[v] < 4:
            if self._free_pebble(u, {v}):
                continue
            if self._free_pebble(v, {u}):
                continue
            return False
        self.pebbles[u] -= 1
        self.out[u].add(v)
        return True


def pebble_rank(h):
    """Rank of E(H) in the generic planar rigidity matroid."""
    game = PebbleGame(h.vertices)
    rank = 0
    for u, v in sorted(h.edges):
        if game.try_insert(u, v):
            rank += 1
    return rank


def is_laman(h, method="pebble"):
    """Laman test: 2n-3 edges and (2,3)-sparsity of every subgraph.

    Returns (verdict, violating_vertex_subset_or_None).  The "subsets"
    method checks every vertex subset directly (oracle, small n only);
    "pebble" plays the (2,3)-pebble game.
    """
    if h.n < 2:
        raise TooSmall("Laman check needs n >= 2")
    target = 2 * h.n - 3
    if method == "subsets":
        verts = sorted(h.vertices)
        for size in range(2, h.n + 1):
            for subset in combinations(verts, size):
                limit = 2 * size - 3
                count = sum(1 for e in h.edges
                            if e[0] in subset and e[1] in subset)
                if count > limit:
                    return False, frozenset(subset)
        if len(h.edges) != target:
            return False, None
        return True, None
    if method != "pebble":
        raise ValueError("unknown method %r" % method)
    game = PebbleGame(h.vertices)
    for u, v in sorted(h.edges):
        if not game.try_insert(u, v):
            return False, frozenset(game.reachable([u, v]))
    if len(h.edges) != target:
        return False, None
    return True, None


# -- Henneberg moves ------------------------------------------------------


class HennebergMove:
    """Type 1 adds a degree-2 vertex; Type 2 splits an edge."""

    __slots__ = ("kind", "new_vertex", "neighbors", "removed_edge")

    def __init__(self, kind, new_vertex, neighbors, removed_edge=None):
        neighbors = tuple(sorted(neighbors))
        if kind == 1:
            if len(neighbors) != 2 or removed_edge is not None:
                raise ValueError("type-1 move takes 2 neighbors and no edge")
        elif kind == 2:
            removed_edge = tuple(sorted(removed_edge))
            if len(neighbors) != 3 or not set(removed_edge) <= set(neighbors):
                raise ValueError("type-2 move removes an edge between two of "
                                 "its 3 neighbors")
        else:
            raise ValueError("kind must be 1 or 2")
        self.kind = kind
        self.new_vertex = new_vertex
        self.neighbors = neighbors
        self.removed_edge = removed_edge

    def __repr__(self):
        if self.kind == 1:
            return "HennebergMove(1, v=%s, nbrs=%s)" % (self.new_vertex,
                                                        self.neighbors)
        return "HennebergMove(2, v=%s, nbrs=%s, removed=%s)" % (
            self.new_vertex, self.neighbors, self.removed_edge)


def henneberg_apply(h, move):
    """Apply a move; the edge count grows by exactly two."""
    if move.new_vertex in h.vertices:
        raise DuplicateVertex("vertex %s already present" % move.new_vertex)
    for w in move.neighbors:
        if w not in h.vertices:
            raise ValueError("neighbor %s not in the graph" % w)
    edges = set(h.edges)
    if move.kind == 2:
        if move.removed_edge not in edges:
            raise MissingEdge("edge %s absent" % (move.removed_edge,))
        edges.remove(move.removed_edge)
    for w in move.neighbors:
        edges.add(tuple(sorted((w, move.new_vertex))))
    return SimpleGraph(0, edges, h.vertices | {move.new_vertex})


class HennebergDecomposition:
    """Replayable construction: start from K2 on base and apply moves."""

    __slots__ = ("base", "moves")

    def __init__(self, base, moves):
        self.base = tuple(sorted(base))
        self.moves = list(moves)

    def __bool__(self):
        return True

    def replay(self):
        g = SimpleGraph(0, [self.base], self.base)
        for move in self.moves:
            g = henneberg_apply(g, move)
        return g


class DecompositionFailure:
    """Falsy failure value carrying the obstruction."""

    __slots__ = ("reason",)

    def __init__(self, reason):
        self.reason = reason

    def __bool__(self):
        return False

    def __repr__(self):
        return "DecompositionFailure(%r)" % self.reason


def henneberg_decompose(h):
    """Peel the graph down to K2, recording the reversed moves.

    Peels the smallest degree-2 vertex when one exists, otherwise the
    smallest degree-3 vertex with a missing edge among its neighbors
    (the smallest missing pair is reinserted).  Returns a
    HennebergDecomposition, or a falsy DecompositionFailure.
    """
    g = h
    reversed_moves = []
    while len(g.vertices) > 2:
        if len(g.edges) != 2 * len(g.vertices) - 3:
            return DecompositionFailure(
                "edge count %d differs from 2n-3 = %d on %d vertices"
                % (len(g.edges), 2 * len(g.vertices) - 3, len(g.vertices)))
        deg = {v: g.degree(v) for v in g.vertices}
        two = sorted(v for v in g.vertices if deg[v] == 2)
        if two:
            v = two[0]
            reversed_moves.append(HennebergMove(1, v, g.neighbors(v)))
            g = g.remove_vertex(v)
            continue
        done = False
        for v in sorted(v for v in g.vertices if deg[v] == 3):
            nbrs = g.neighbors(v)
            missing = [(x, y) for x, y in combinations(nbrs, 2)
                       if not g.has_edge(x, y)]
            if missing:
                x, y = missing[0]
                reversed_moves.append(HennebergMove(2, v, nbrs, (x, y)))
                g = g.remove_vertex(v).with_edge(x, y)
                done = True
                break
        if not done:
            return DecompositionFailure("no peelable degree-2 or degree-3 vertex")
    if len(g.edges) != 1:
        return DecompositionFailure("peeling did not end at K2")
    dec = HennebergDecomposition(tuple(g.vertices), reversed(reversed_moves))
    assert dec.replay() == h
    return dec


# -- tree-pair certificates ----------------------------------------------


class Certificate:
    """A verifying binary tree pair plus the per-move case trace."""

    __slots__ = ("t1", "t2", "trace")

    def __init__(self, t1, t2, trace):
        self.t1 = t1
        self.t2 = t2
        self.trace = list(trace)

    def to_json(self, graph=None):
        data = {
            "t1": {"leaves": sorted(self.t1.leaves),
                   "clades": [sorted(c) for c in self.t1.nontrivial_clades()]},
            "t2": {"leaves": sorted(self.t2.leaves),
                   "clades": [sorted(c) for c in self.t2.nontrivial_clades()]},
            "trace": self.trace,
        }
        if graph is not None:
            data["clade_graph_dot"] = restricted_clade_graph(
                self.t1, self.t2, graph).to_dot()
        return json.dumps(data, indent=2)


def verify_certificate(h, t1, t2):
    """The certificate criterion: the restricted clade graph is a tree."""
    if t1.leaves != frozenset(h.vertices) or t2.leaves != frozenset(h.vertices):
        raise LeafMismatch("tree leaves differ from graph vertices")
    if not (t1.is_binary() and t2.is_binary()):
        raise NotBinary("certificate trees must be binary")
    return restricted_clade_graph(t1, t2, h).is_spanning_tree()


def _closest_pair(tree, a, b, c):
    """The unique pair among {a,b,c} whose smallest clade omits the third
    leaf; exists because the tree is binary."""
    for x, y, z in ((a, b, c), (a, c, b), (b, c, a)):
        if z not in tree.smallest_clade({x, y}):
            return frozenset((x, y))
    raise AssertionError("no closest pair; tree not binary on the triple")


def _extend_for_move(g, t1, t2, move):
    """Grow the tree pair through one Henneberg move; returns
    (t1, t2, case_tag)."""
    v = move.new_vertex
    if move.kind == 1:
        a, b = move.neighbors
        return t1.attach_leaf({a}, v), t2.attach_leaf({b}, v), "type1"
    a, b = move.removed_edge
    (c,) = set(move.neighbors) - set(move.removed_edge)
    cp1 = _closest_pair(t1, a, b, c)
    cp2 = _closest_pair(t2, a, b, c)
    ab = frozenset((a, b))
    if cp1 == ab and cp2 == ab:
        cut = g.without_edge(a, b)
        comps = restricted_clade_graph(t1, t2, cut).components()
        assert len(comps) == 2
        v1 = (0, t1.smallest_clade({a, b, c}))
        v2 = (1, t2.smallest_clade({a, b, c}))
        shared = next((comp for comp in comps if v1 in comp and v2 in comp),
                      None)
        if shared is None:
            # case 1: the two triple-clades straddle the cut
            return (t1.attach_leaf({a}, v),
                    t2.attach_leaf(t2.smallest_clade({a, b}), v),
                    "case1")
        # case 2: one side's pair-clade sits in the opposite component
        if (0, t1.smallest_clade({a, b})) not in shared:
            return (t1.attach_leaf({a}, v), t2.attach_leaf({c}, v), "case2")
        assert (1, t2.smallest_clade({a, b})) not in shared
        return (t1.attach_leaf({c}, v), t2.attach_leaf({a}, v), "case2-swapped")
    # case 3: in some tree the third neighbor is closer to one endpoint
    for role, tree, other in ((2, t2, t1), (1, t1, t2)):
        cp = cp2 if role == 2 else cp1
        if c in cp:
            (x,) = cp - {c}
            grown = tree.attach_leaf(tree.smallest_clade({x, c}), v)
            kept = other.attach_leaf({x}, v)
            if role == 2:
                return kept, grown, "case3"
            return grown, kept, "case3-swapped"
    raise AssertionError("case dispatch fell through")


def build_certificate(h):
    """Constructive certificate via Henneberg induction.

    Follows the case analysis of the inductive proof; each step's case
    tag is recorded.  The result is verified before it is returned.
    """
    dec = henneberg_decompose(h)
    if not dec:
        raise NotHenneberg(dec.reason)
    base = dec.base
    t1 = RootedTree(base, [])
    t2 = RootedTree(base, [])
    g = SimpleGraph(0, [base], base)
    trace = []
    for move in dec.moves:
        t1, t2, tag = _extend_for_move(g, t1, t2, move)
        g = henneberg_apply(g, move)
        trace.append(tag)
        assert restricted_clade_graph(t1, t2, g).is_spanning_tree()
    assert verify_certificate(h, t1, t2)
    return Certificate(t1, t2, trace)


def min_rigid_by_search(h, max_n=6):
    """Exhaustive certificate search over binary tree pairs.

    Returns the first verifying (T1, T2) in canonical enumeration
    order, or None.
    """
    verts = sorted(h.vertices)
    n = len(verts)
    if n > max_n:
        raise SearchBoundExceeded("n=%d above the configured bound %d"
                                  % (n, max_n))
    if n == 1:
        return None
    edges = sorted(h.edges)
    if len(edges) != 2 * n - 3:
        return None
    trees = list(enumerate_binary_trees(n, verts))
    # pair -> clade index, per tree
    tables = []
    for t in trees:
        clades = t.sorted_clades()
        index = {c: i for i, c in enumerate(clades)}
        tables.append({e: index[t.smallest_clade(e)] for e in edges})
    size = n - 1
    for i1, t1 in enumerate(trees):
        tab1 = tables[i1]
        for i2, t2 in enumerate(trees):
            tab2 = tables[i2]
            parent = list(range(2 * size))
            ok = True
            for e in edges:
                x = tab1[e]
                y = tab2[e] + size
                while parent[x] != x:
                    parent[x] = parent[parent[x]]
                    x = parent[x]
                while parent[y] != y:
                    parent[y] = parent[parent[y]]
                    y = parent[y]
                if x == y:
                    ok = False
                    break
                parent[x] = y
            if ok:
                return t1, t2
    return None


def generic_rigidity_rank(h, rng=None, retries=3):
    """Rank of the edge set in the generic planar rigidity matroid.

    Computed by the pebble game and cross-checked against the exact
    rank of the framework Jacobian at random integer points; a rank
    drop (nongeneric draw) triggers a resample.
    """
    if h.n < 2:
        raise TooSmall("rigidity rank needs n >= 2")
    expected = pebble_rank(h)
    rng = rng or random.Random()
    for _ in range(retries + 1):
        got = oracles.rigidity_jacobian_rank(h, rng)
        if got == expected:
            return expected
    raise AssertionError("Jacobian rank %d kept disagreeing with pebble rank %d"
                         % (got, expected))
