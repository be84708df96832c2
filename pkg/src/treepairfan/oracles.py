"""Independent brute-force references used by tests and acceptance runs.

Nothing here depends on the optimized code paths, so agreement checks
between the two are meaningful.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations, permutations, product

from .errors import BoundExceeded, DependentGenerators


# -- exact dense rational linear algebra ----------------------------------


def exact_rank(matrix):
    """Rank over the rationals.

    Integer matrices go through fraction-free (Bareiss) elimination;
    anything else falls back to plain Gaussian elimination on
    Fractions.
    """
    if not matrix or not matrix[0]:
        return 0
    if all(isinstance(x, int) for row in matrix for x in row):
        return _bareiss_rank([list(row) for row in matrix])
    m = [[Fraction(x) for x in row] for row in matrix]
    rows, cols = len(m), len(m[0])
    rank = 0
    for col in range(cols):
        piv = next((r for r in range(rank, rows) if m[r][col] != 0), None)
        if piv is None:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        for r in range(rank + 1, rows):
            if m[r][col] != 0:
                f = m[r][col] / m[rank][col]
                m[r] = [a - f * b for a, b in zip(m[r], m[rank])]
        rank += 1
        if rank == rows:
            break
    return rank


def _bareiss_rank(m):
    rows, cols = len(m), len(m[0])
    rank = 0
    prev = 1
    for col in range(cols):
        piv = next((r for r in range(rank, rows) if m[r][col] != 0), None)
        if piv is None:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        pivot = m[rank][col]
        for r in range(rank + 1, rows):
            for c in range(cols):
                if c == col:
                    continue
                m[r][c] = (m[r][c] * pivot - m[r][col] * m[rank][c]) // prev
            m[r][col] = 0
        prev = pivot
        rank += 1
        if rank == rows:
            break
    return rank


def solve_simplicial(generators, d):
    """Unique coefficients with d = sum t_i g_i + lineality * ones.

    Generators are PairVectors, assumed independent modulo the all-ones
    vector.  Returns (coefficients list, lineality) or None when d lies
    outside the span.
    """
    cols = [g.values() for g in generators]
    cols.append([Fraction(1)] * len(d.values()))
    target = d.values()
    rows = len(target)
    k = len(cols)
    aug = [[Fraction(cols[j][i]) for j in range(k)] + [Fraction(target[i])]
           for i in range(rows)]
    pivot_rows = []
    lead = 0
    for col in range(k):
        piv = next((r for r in range(lead, rows) if aug[r][col] != 0), None)
        if piv is None:
            raise DependentGenerators("generators dependent modulo lineality")
        aug[lead], aug[piv] = aug[piv], aug[lead]
        inv = 1 / aug[lead][col]
        aug[lead] = [x * inv for x in aug[lead]]
        for r in range(rows):
            if r != lead and aug[r][col] != 0:
                f = aug[r][col]
                aug[r] = [x - f * y for x, y in zip(aug[r], aug[lead])]
        pivot_rows.append(lead)
        lead += 1
    for r in range(lead, rows):
        if aug[r][k] != 0:
            return None
    sol = [aug[r][k] for r in pivot_rows]
    return sol[:-1], sol[-1]


# -- rigidity Jacobian -----------------------------------------------------


def rigidity_jacobian_rank(h, rng, box=2 ** 31):
    """Exact rank of the squared-distance Jacobian at a random integer
    point configuration in the plane."""
    verts = sorted(h.vertices)
    index = {v: i for i, v in enumerate(verts)}
    xs = [rng.randrange(box) for _ in verts]
    ys = [rng.randrange(box) for _ in verts]
    rows = []
    for u, v in sorted(h.edges):
        i, j = index[u], index[v]
        row = [0] * (2 * len(verts))
        row[2 * i] = 2 * (xs[i] - xs[j])
        row[2 * i + 1] = 2 * (ys[i] - ys[j])
        row[2 * j] = -row[2 * i]
        row[2 * j + 1] = -row[2 * i + 1]
        rows.append(row)
    return exact_rank(rows)


# -- exhaustive tree enumeration by splits/partitions ----------------------


def binary_clade_families(leaves):
    """All rooted binary trees on the leaf set, as clade frozensets.

    Recursion over root splits, independent of the leaf-insertion
    enumerator in the trees module.
    """
    leaves = tuple(sorted(leaves))
    if len(leaves) == 1:
        return [frozenset()]
    if len(leaves) == 2:
        return [frozenset([frozenset(leaves)])]
    first, rest = leaves[0], leaves[1:]
    out = []
    for k in range(0, len(rest)):
        for extra in combinations(rest, k):
            left = frozenset((first,) + extra)
            right = frozenset(leaves) - left
            if not right:
                continue
            for fam_l in binary_clade_families(left):
                for fam_r in binary_clade_families(right):
                    out.append(fam_l | fam_r | {frozenset(leaves)})
    return out


def _set_partitions(items):
    """Unordered partitions of a list, as lists of tuples."""
    if not items:
        yield []
        return
    first, rest = items[0], items[1:]
    for k in range(len(rest) + 1):
        for mates in combinations(rest, k):
            block = (first,) + mates
            remaining = [x for x in rest if x not in mates]
            for sub in _set_partitions(remaining):
                yield [block] + sub


def rooted_clade_families(leaves):
    """All rooted trees (any arity) on the leaf set, as clade frozensets."""
    leaves = tuple(sorted(leaves))
    if len(leaves) == 1:
        return [frozenset()]
    out = []
    for part in _set_partitions(list(leaves)):
        if len(part) < 2:
            continue
        for combo in product(*[rooted_clade_families(b) for b in part]):
            fam = frozenset(leaves)
            merged = {fam}
            for sub in combo:
                merged |= sub
            out.append(frozenset(merged))
    return out


# -- small-graph catalogs ---------------------------------------------------


def canonical_form(n, edges):
    """Canonical edge tuple: minimum relabeling among the permutations
    that sort vertices by descending degree."""
    verts = list(range(1, n + 1))
    deg = {v: 0 for v in verts}
    for u, v in edges:
        deg[u] += 1
        deg[v] += 1
    classes = {}
    for v in verts:
        classes.setdefault(deg[v], []).append(v)
    ordered = [classes[d] for d in sorted(classes, reverse=True)]
    best = None
    for assignment in product(*[permutations(cls) for cls in ordered]):
        mapping = {}
        label = 1
        for chunk in assignment:
            for v in chunk:
                mapping[v] = label
                label += 1
        relabeled = tuple(sorted(tuple(sorted((mapping[u], mapping[v])))
                                 for u, v in edges))
        if best is None or relabeled < best:
            best = relabeled
    return best


def catalog_tight_graphs(n):
    """All isomorphism classes of graphs on n vertices with 2n-3 edges."""
    if n > 7:
        raise BoundExceeded("catalog limited to n <= 7")
    from .rigidity import SimpleGraph

    pairs = list(combinations(range(1, n + 1), 2))
    m = 2 * n - 3
    seen = set()
    for combo in combinations(pairs, m):
        key = canonical_form(n, combo)
        if key not in seen:
            seen.add(key)
            yield SimpleGraph(n, key)


def catalog_henneberg_graphs(n):
    """All isomorphism classes reachable from K2 by Henneberg moves."""
    if n > 8:
        raise BoundExceeded("catalog limited to n <= 8")
    from .rigidity import SimpleGraph, HennebergMove, henneberg_apply

    current = {(1, 2): SimpleGraph(2, [(1, 2)])}
    for size in range(3, n + 1):
        grown = {}
        for g in current.values():
            moves = [HennebergMove(1, size, pair)
                     for pair in combinations(range(1, size), 2)]
            for e in sorted(g.edges):
                for w in range(1, size):
                    if w not in e:
                        moves.append(HennebergMove(2, size, e + (w,), e))
            for move in moves:
                new = henneberg_apply(g, move)
                key = canonical_form(size, sorted(new.edges))
                if key not in grown:
                    grown[key] = SimpleGraph(size, key)
        current = grown
    return list(current.values())
