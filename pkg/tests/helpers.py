"""Shared test utilities: random generators and exact polyhedral checks."""

from fractions import Fraction

from treepairfan import cones, trees, ultrametrics
from treepairfan.cones import in_cone_KS, intersect_faces
from treepairfan.oracles import exact_rank
from treepairfan.trees import RootedTree, WeightedRootedTree
from treepairfan.ultrametrics import v_vector


def random_binary_tree(rng, n, leaves=None):
    """Uniform-ish binary tree by random leaf insertion."""
    if leaves is None:
        leaves = list(range(1, n + 1))
    t = RootedTree(leaves[:2], [])
    for v in leaves[2:]:
        spots = t.sorted_clades() + [frozenset([x]) for x in sorted(t.leaves)]
        t = t.attach_leaf(rng.choice(spots), v)
    return t


def random_rooted_tree(rng, n):
    """Random topology: random binary tree with random clades dropped."""
    t = random_binary_tree(rng, n)
    keep = [c for c in t.nontrivial_clades() if rng.random() < 0.7]
    return RootedTree(t.leaves, keep + [t.leaves])


def random_weighted_tree(rng, n, binary=True):
    """Random tree with strictly increasing rational weights."""
    t = random_binary_tree(rng, n) if binary else random_rooted_tree(rng, n)
    weights = {}
    for c in sorted(t.clades, key=len):
        below = [weights[d] for d in t.clades if d < c]
        floor = max(below) if below else Fraction(rng.randint(-20, 0))
        weights[c] = floor + Fraction(rng.randint(1, 12), rng.randint(1, 5))
    return WeightedRootedTree(t, weights)


def random_face(rng, n):
    return cones.clade_set_of(random_rooted_tree(rng, n),
                              random_rooted_tree(rng, n))


def sample_inside(rng, face):
    """Random point of K_S: nonnegative generator combo plus lineality."""
    n = face.n
    d = ultrametrics.constant_vector(n, Fraction(rng.randint(-6, 6)))
    for c in face.nontrivial():
        d = d - v_vector(n, c).scale(Fraction(rng.randint(0, 8), rng.randint(1, 3)))
    return d


def sample_perturbed(rng, face):
    """Inside point nudged in a random coordinate direction."""
    d = sample_inside(rng, face)
    entries = dict(d.entries)
    pairs = sorted(entries)
    for _ in range(rng.randint(1, 3)):
        p = rng.choice(pairs)
        entries[p] += Fraction(rng.choice([-3, -2, -1, 1, 2, 3]),
                               rng.randint(1, 2))
    return ultrametrics.PairVector(face.n, entries)


# -- exact cone computations for the intersection property -----------------


def null_space(rows, k):
    """Basis of the null space of the given rows in Q^k."""
    m = [[Fraction(x) for x in row] for row in rows]
    pivots = []
    lead = 0
    for col in range(k):
        piv = next((r for r in range(lead, len(m)) if m[r][col] != 0), None)
        if piv is None:
            continue
        m[lead], m[piv] = m[piv], m[lead]
        inv = 1 / m[lead][col]
        m[lead] = [x * inv for x in m[lead]]
        for r in range(len(m)):
            if r != lead and m[r][col] != 0:
                f = m[r][col]
                m[r] = [x - f * y for x, y in zip(m[r], m[lead])]
        pivots.append(col)
        lead += 1
    basis = []
    free = [c for c in range(k) if c not in pivots]
    for fc in free:
        vec = [Fraction(0)] * k
        vec[fc] = Fraction(1)
        for r, pc in enumerate(pivots):
            vec[pc] = -m[r][fc]
        basis.append(vec)
    return basis


def _dot(a, b):
    return sum((x * y for x, y in zip(a, b)), Fraction(0))


def extreme_rays(eq_rows, ineq_rows, k):
    """Extreme rays of the pointed cone {x: eq x = 0, ineq x <= 0} in Q^k.

    Brute force over (dim-1)-subsets of active inequalities; assumes the
    cone is pointed (here it always sits inside an orthant).
    """
    from itertools import combinations

    basis = null_space(eq_rows, k)
    kk = len(basis)
    if kk == 0:
        return []
    proj = [[_dot(row, b) for b in basis] for row in ineq_rows]

    def lift(r):
        out = [Fraction(0)] * k
        for coef, b in zip(r, basis):
            for i in range(k):
                out[i] += coef * b[i]
        return tuple(out)

    rays = set()
    if kk == 1:
        for s in (1, -1):
            r = [Fraction(s)]
            if all(_dot(p, r) <= 0 for p in proj):
                rays.add(lift(r))
        return [r for r in rays if any(r)]
    for subset in combinations(range(len(proj)), kk - 1):
        ns = null_space([proj[i] for i in subset], kk)
        if len(ns) != 1:
            continue
        for s in (1, -1):
            r = [s * x for x in ns[0]]
            if all(_dot(p, r) <= 0 for p in proj):
                rays.add(lift(r))
    return [r for r in rays if any(r)]


def cone_rays_within(face, other, f_other):
    """Extreme rays of K_face intersected with K_other, in the t-coordinates
    of K_face (lineality quotiented out)."""
    gens = face.nontrivial()
    k = len(gens)
    cols = [[-x for x in v_vector(face.n, c).values()] for c in gens]
    pairs = ultrametrics.all_pairs(face.n)
    index = {p: i for i, p in enumerate(pairs)}
    eq_rows, ineq_rows = [], []
    for row in f_other.rows:
        trow = []
        for j in range(k):
            val = Fraction(0)
            for p, coef in row.coeffs.items():
                val += coef * cols[j][index[p]]
            trow.append(val)
        (eq_rows if row.rel == "eq" else ineq_rows).append(trow)
    for j in range(k):
        neg = [Fraction(0)] * k
        neg[j] = Fraction(-1)
        ineq_rows.append(neg)
    return gens, extreme_rays(eq_rows, ineq_rows, k)


def verify_intersection(face, other, f_cache, member_cache):
    """Check K_face ∩ K_other = K_(face ∩ other) exactly.

    Containment one way is generator membership; the reverse is a rank
    identity on the spanning vectors, with an extreme-ray enumeration as
    fallback when the spans are not in general position.
    """
    common = intersect_faces(face, other)

    def member(c, f):
        key = (c, f)
        if key not in member_cache:
            d = v_vector(f.n, c).scale(-1)
            member_cache[key] = in_cone_KS(d, f)[0]
        return member_cache[key]

    # generators of the intersection face lie in both cones
    for c in common.nontrivial():
        if not (member(c, face) and member(c, other)):
            return False
    # a generator of either cone inside the other one must be shared
    for c in face.nontrivial():
        if member(c, other) and c not in common.clades:
            return False
    for c in other.nontrivial():
        if member(c, face) and c not in common.clades:
            return False
    if common.clades in (face.clades, other.clades):
        return True
    # rank identity: the two spans meet exactly in the common span
    union = sorted(face.clades | other.clades, key=trees.clade_key)
    stack = [[int(x) for x in v_vector(face.n, c).values()] for c in union]
    if exact_rank(stack) == (len(face.clades) + len(other.clades)
                             - len(common.clades)):
        return True
    return rays_stay_in_common(face, other, common, f_cache)


def rays_stay_in_common(face, other, common, f_cache):
    """Every extreme ray of K_face ∩ K_other is supported on the common
    clades (exact polyhedral fallback / cross-check)."""
    if other not in f_cache:
        f_cache[other] = cones.f_system(other)
    gens, rays = cone_rays_within(face, other, f_cache[other])
    for ray in rays:
        support = {gens[j] for j in range(len(gens)) if ray[j] != 0}
        if not support <= common.clades:
            return False
        if any(x < 0 for x in ray):
            return False
    return True
