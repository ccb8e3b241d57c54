"""Standard matroid families, the augmented built matroid, chordal building
sets on Boolean matroids, and the stable-tree model for M0,n+1 γ-vectors.
"""

from itertools import combinations

from .building import BuiltMatroid, simplify_built
from .errors import BadParameters
from .lattice import GeomLattice, Matroid, bits, lattice_of_flats, popcount


def make_uniform(r, n):
    if not (1 <= r <= n and n <= 64):
        raise BadParameters(f"uniform({r},{n})")
    return Matroid(n, lambda s: min(r, popcount(s)))


def make_boolean(n):
    if not (1 <= n <= 64):
        raise BadParameters(f"boolean({n})")
    return Matroid(n, popcount)


def make_graphic(edges, n_vertices=None):
    """Cycle matroid of a multigraph given as a list of vertex pairs; loops
    are rejected (the matroid must be loopless)."""
    edges = [tuple(e) for e in edges]
    if not edges or any(len(e) != 2 or e[0] == e[1] for e in edges):
        raise BadParameters(f"graphic({edges})")
    verts = sorted({v for e in edges for v in e})
    if n_vertices is not None and n_vertices < len(verts):
        raise BadParameters("n_vertices smaller than the support")
    vid = {v: i for i, v in enumerate(verts)}

    def rank(s):
        parent = list(range(len(verts)))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        r = 0
        for i in bits(s):
            a, b = find(vid[edges[i][0]]), find(vid[edges[i][1]])
            if a != b:
                parent[a] = b
                r += 1
        return r

    return Matroid(len(edges), rank)


def braid_edges(n):
    """Edges of the complete graph on 1..n in lexicographic order — the ⊴
    used for braid (partition-lattice) built matroids."""
    return [(i, j) for i in range(1, n + 1) for j in range(i + 1, n + 1)]


def make_partition(n):
    """The rank-(n-1) matroid of the partition lattice Π_n (the cycle matroid
    of the complete graph on n vertices, edges in lexicographic order)."""
    if not (2 <= n <= 8):
        raise BadParameters(f"partition({n})")
    return make_graphic(braid_edges(n))


def built_from_matroid(m, bset="min", order=None):
    """Lattice + building set in one step; non-simple matroids are simplified
    first (elements collapse onto atoms, order positions follow the earliest
    element)."""
    from .building import g_max, g_min

    lat = lattice_of_flats(m)
    if lat.simple():
        if bset == "min":
            chosen = g_min(lat)
        elif bset == "max":
            chosen = g_max(lat)
        else:
            chosen = frozenset(bset)
        return BuiltMatroid(lat, chosen, order)
    if bset == "min":
        chosen = g_min(lat)
    elif bset == "max":
        chosen = g_max(lat)
    else:
        chosen = frozenset(bset)
    bm, _ = simplify_built(lat, chosen, tuple(order) if order else tuple(range(lat.n)))
    return bm


# ---------------------------------------------------------------------------
# augmented built matroids


def augmented_built_matroid(m, order=None):
    """The free coextension of m with the augmented building set.

    The new element is label 0 (and ⊴-least by default); original element i
    becomes i+1.  The building set consists of every flat of m joined with
    the new element, plus all atoms.
    """
    n, r = m.n, m.rank((1 << m.n) - 1)
    full = (1 << n) - 1

    def rank_dual(s):
        return popcount(s) + m.rank(full & ~s) - r

    # free extension of the dual by a new element f, then dualize back
    rk_dual = n - r

    def rank_ext(s):
        base = rank_dual(s >> 1)
        if s & 1 and base < rk_dual:
            base += 1
        return base

    full_ext = (1 << (n + 1)) - 1

    def rank_aug(s):
        return popcount(s) + rank_ext(full_ext & ~s) - rk_dual

    aug = Matroid(n + 1, rank_aug)
    lat = lattice_of_flats(aug)
    mlat = lattice_of_flats(m)
    bset = {(f << 1) | 1 for f in mlat.flats}
    bset.update(lat.flats[i] for i in lat.by_rank[1])
    if order is None:
        order = tuple(range(n + 1))
    return BuiltMatroid(lat, frozenset(bset), order)


# ---------------------------------------------------------------------------
# chordal building sets on Boolean matroids


def chordal_building_sets(n):
    """All building sets on B_n closed under taking prefixes (initial
    segments of each member); these are exactly the ones complete for the
    natural order.  Enumerated by a forest walk with join-closure
    obligations propagated forward."""
    if not (2 <= n <= 5):
        raise BadParameters(f"chordal_building_sets({n})")
    atoms = [1 << i for i in range(n)]
    nodes = []
    for k in range(2, n + 1):
        for c in combinations(range(n), k):
            nodes.append(sum(1 << i for i in c))
    nodes.sort(key=lambda s: (popcount(s), s))
    prefix = {}
    for s in nodes:
        top = max(bits(s))
        prefix[s] = s & ~(1 << top)  # drop the largest element
    node_set = set(nodes)
    out = []

    def go(i, included, obligations):
        if i == len(nodes):
            if not obligations:
                out.append(frozenset(atoms) | included)
            return
        s = nodes[i]
        must = s in obligations
        can = popcount(prefix[s]) < 2 or prefix[s] in included
        if must and not can:
            return
        if not must:
            go(i + 1, included, obligations)
        if can:
            new_obl = set(obligations) - {s}
            ok = True
            for t in included:
                if t & s and not (t & ~s == 0 or s & ~t == 0):
                    u = t | s
                    assert u in node_set
                    new_obl.add(u)
            if ok:
                go(i + 1, included | {s}, frozenset(new_obl))

    go(0, frozenset(), frozenset())
    return sorted(out, key=lambda g: (len(g), sorted(g)))


# ---------------------------------------------------------------------------
# stable trees for M0,n+1


def binary_trees(n):
    """Rooted binary trees with leaves labeled 1..n, built by leaf insertion;
    represented as nested pairs with int leaves.  (2n-3)!! trees."""
    if not (2 <= n <= 9):
        raise BadParameters(f"binary_trees({n})")
    trees = [(1, 2)]
    for leaf in range(3, n + 1):
        nxt = []
        for t in trees:
            for u in _insertions(t, leaf):
                nxt.append(u)
        trees = nxt
    return trees


def _insertions(t, leaf):
    yield (t, leaf)  # subdivide the root stem
    if isinstance(t, tuple):
        a, b = t
        for ia in _insertions(a, leaf):
            yield (ia, b)
        for ib in _insertions(b, leaf):
            yield (a, ib)


def _min_leaf(t):
    if isinstance(t, int):
        return t
    return min(_min_leaf(t[0]), _min_leaf(t[1]))


def tree_descent_data(t):
    """(descents, bottoms, doubles) over internal vertices of a rooted binary
    tree; the root carries no descent.

    The label of an internal vertex is the larger of its children's minimal
    leaves; a vertex is a descent when its label exceeds its parent's.
    A bottom descent has two leaf children; a double descent has at least one
    internal child and all internal children are descents.
    """
    descents = []
    bottoms = []
    doubles = []

    def label(v):
        return max(_min_leaf(v[0]), _min_leaf(v[1]))

    def walk(v, parent_label, is_root):
        if isinstance(v, int):
            return
        lv = label(v)
        is_desc = (not is_root) and lv > parent_label
        kids = [c for c in v if isinstance(c, tuple)]
        if is_desc:
            descents.append(v)
            if not kids:
                bottoms.append(v)
            elif all(label(c) > lv for c in kids):
                doubles.append(v)
        for c in v:
            walk(c, lv, False)

    walk(t, None, True)
    return descents, bottoms, doubles


def stable_trees(n):
    """(tree, descent count) for every stable tree on leaves 1..n."""
    out = []
    for t in binary_trees(n):
        des, bot, dbl = tree_descent_data(t)
        if not bot and not dbl:
            out.append((t, len(des)))
    return out


def m0n_gamma(n):
    """γ-vector of the Poincaré polynomial of M0,n+1 via stable trees."""
    counts = {}
    for _, d in stable_trees(n):
        counts[d] = counts.get(d, 0) + 1
    if not counts:
        return []
    out = [0] * (max(counts) + 1)
    for d, c in counts.items():
        out[d] = c
    return out
