"""Building sets on geometric lattices and the built-matroid operations.

A building set is a frozenset of nonzero flats containing every irreducible
flat and closed under joins of meeting pairs.  A BuiltMatroid bundles a simple
lattice, a building set and a total order on the ground elements (the order
drives chain constructions and completeness).
"""

from dataclasses import dataclass
from itertools import permutations

from .errors import (
    ImproperCut,
    JoinClosureViolation,
    MissingIrreducible,
    NotAFlat,
    NotContained,
    NotFlag,
    NotGCompatible,
    CutContainsAtom,
    Stuck,
    TooLarge,
)
from .lattice import GeomLattice, ModularCut, bits, popcount, validate_modular_cut


def g_min(lat):
    """The minimal building set: all irreducible flats."""
    return frozenset(f for f in lat.flats if f and lat.is_irreducible(f))


def g_max(lat):
    """The maximal building set: all nonzero flats."""
    return frozenset(f for f in lat.flats if f)


def validate_building_set(lat, s):
    """Check s is a building set on lat; returns it as a frozenset.

    Raises MissingIrreducible(F) or JoinClosureViolation((G, G')) on failure.
    """
    s = frozenset(s)
    for f in s:
        if not lat.is_flat(f):
            raise NotAFlat(f"{f:b} is not a flat")
        if f == 0:
            raise NotAFlat("the bottom flat cannot belong to a building set")
    for f in sorted(g_min(lat)):
        if f not in s:
            raise MissingIrreducible(f)
    members = sorted(s)
    for i, a in enumerate(members):
        for b in members[i + 1 :]:
            if a & b and not (a & ~b == 0 or b & ~a == 0):
                if lat.join(a, b) not in s:
                    raise JoinClosureViolation((a, b))
    return s


def building_set_structural_check(lat, s):
    """Definition via interval products: for every flat F with factors
    G_1..G_k, ranks add up and every flat below F is the join of its meets
    with the factors.  Used as a cross-check against validate_building_set."""
    for f in lat.flats:
        if f == 0:
            continue
        fac = factors_in(lat, s, f)
        if sum(lat.rank_of(g) for g in fac) != lat.rank_of(f):
            return False
        for h in lat.flats:
            if h & ~f:
                continue
            j = 0
            for g in fac:
                j = lat.join(j, h & g)
            if j != h:
                return False
    return True


def factors_in(lat, s, f):
    """Maximal elements of s weakly below f, sorted by (rank, mask)."""
    below = [g for g in s if g & ~f == 0]
    out = [g for g in below if not any(g != h and g & ~h == 0 for h in below)]
    return sorted(out, key=lambda g: (lat.rank_of(g), g))


class BuiltMatroid:
    """A simple geometric lattice with a building set and a ground order."""

    def __init__(self, lat, bset, order=None, validate=True):
        self.lat = lat
        self.n = lat.n
        self.bset = frozenset(bset)
        self.order = tuple(order) if order is not None else tuple(range(lat.n))
        if validate:
            assert lat.simple(), "built matroids are kept simple internally"
            assert sorted(self.order) == list(range(lat.n)), "order must permute 0..n-1"
            validate_building_set(lat, self.bset)
        self.pos = {e: i for i, e in enumerate(self.order)}
        self.maxg = tuple(
            sorted(
                g
                for g in self.bset
                if not any(g != h and g & ~h == 0 for h in self.bset)
            )
        )
        self.irreducible = lat.full in self.bset
        self.rank = lat.rk

    def factors(self, f):
        return factors_in(self.lat, self.bset, f)

    def key(self):
        """Canonical relabeling by the order; usable as a memo key."""
        relabel = {e: i for i, e in enumerate(self.order)}

        def remap(mask):
            out = 0
            for e in bits(mask):
                out |= 1 << relabel[e]
            return out

        flats = tuple(sorted(remap(f) for f in self.lat.flats))
        bset = tuple(sorted(remap(f) for f in self.bset))
        return (self.n, flats, bset)

    def __eq__(self, other):
        return (
            isinstance(other, BuiltMatroid)
            and self.n == other.n
            and self.lat.flats == other.lat.flats
            and self.lat.ranks == other.lat.ranks
            and self.bset == other.bset
            and self.order == other.order
        )

    def __repr__(self):
        return f"BuiltMatroid(n={self.n}, rank={self.rank}, |G|={len(self.bset)})"


def _compress_map(keep_mask):
    """Map old element -> new element for the kept positions, low bits first."""
    out = {}
    for i, e in enumerate(bits(keep_mask)):
        out[e] = i
    return out


def _remap_mask(mask, emap):
    out = 0
    for e in bits(mask):
        out |= 1 << emap[e]
    return out


def simplify_built(lat, bset, order):
    """Collapse parallel classes: new elements are the atoms of lat.

    Returns (BuiltMatroid, elem_map) where elem_map sends an old element to
    its new label.  If lat is already simple this is just a relabeling by
    identity (the same lattice object is reused).
    """
    if lat.simple():
        return BuiltMatroid(lat, bset, order, validate=False), {
            e: e for e in range(lat.n)
        }
    pos = {e: i for i, e in enumerate(order)}
    atom_masks = sorted((lat.flats[i] for i in lat.atoms), key=lambda a: min(bits(a)))
    label = {a: i for i, a in enumerate(atom_masks)}

    def remap(mask):
        out = 0
        for a, i in label.items():
            if a & ~mask == 0:
                out |= 1 << i
        return out

    flats = [(remap(f), lat.rank_of(f)) for f in lat.flats]
    sub = GeomLattice(len(atom_masks), flats)
    new_bset = frozenset(remap(f) for f in bset)
    by_pos = sorted(atom_masks, key=lambda a: min(pos[e] for e in bits(a)))
    new_order = tuple(label[a] for a in by_pos)
    elem_map = {}
    for a, i in label.items():
        for e in bits(a):
            elem_map[e] = i
    return BuiltMatroid(sub, new_bset, new_order, validate=False), elem_map


def restrict(bm, f):
    """Restriction to the interval [0, f] with the induced building set."""
    lat = bm.lat
    if not lat.is_flat(f):
        raise NotAFlat(f"{f:b} is not a flat")
    emap = _compress_map(f)
    flats = [(_remap_mask(g, emap), lat.rank_of(g)) for g in lat.flats_below(f)]
    sub = GeomLattice(popcount(f), flats)
    bset = frozenset(_remap_mask(g, emap) for g in bm.bset if g & ~f == 0)
    order = tuple(emap[e] for e in bm.order if f >> e & 1)
    return BuiltMatroid(sub, bset, order)


def contract(bm, f):
    """Contraction at a flat, simplified: new elements are the covers of f."""
    lat = bm.lat
    if not lat.is_flat(f):
        raise NotAFlat(f"{f:b} is not a flat")
    covers = lat.covers(f)
    # order the new elements by the earliest old element they swallow
    keyed = sorted(covers, key=lambda c: min(bm.pos[e] for e in bits(c & ~f)))
    by_label = sorted(keyed, key=lambda c: min(bits(c & ~f)))
    label = {c: i for i, c in enumerate(by_label)}
    rf = lat.rank_of(f)
    flats = []
    for g in lat.flats:
        if f & ~g:
            continue
        mask = 0
        for c in covers:
            if c & ~g == 0:
                mask |= 1 << label[c]
        flats.append((mask, lat.rank_of(g) - rf))
    sub = GeomLattice(len(covers), flats)
    bset = set()
    for g in bm.bset:
        j = lat.join(f, g)
        if j == f:
            continue
        mask = 0
        for c in covers:
            if c & ~j == 0:
                mask |= 1 << label[c]
        bset.add(mask)
    order = tuple(label[c] for c in keyed)
    return BuiltMatroid(sub, frozenset(bset), order)


def delete_element(bm, e):
    """Single-element deletion (bit e dropped, higher bits shifted down)."""
    assert e in range(bm.n)
    from .lattice import delete_lattice

    lat = bm.lat
    sub, drop = delete_lattice(lat, e)
    low = (1 << e) - 1

    def lift(mask):
        return (mask & low) | ((mask >> e) << (e + 1))

    bset = frozenset(
        f for f in sub.flats if f and lat.closure(lift(f)) in bm.bset
    )
    order = tuple(x if x < e else x - 1 for x in bm.order if x != e)
    return BuiltMatroid(sub, bset, order)


def extend(bm, cut, validate_cut=True):
    """Single-element extension along a modular cut; the new element is
    appended as n and becomes the order-greatest element.

    The cut may be empty (the new element is a coloop).  Raises ImproperCut if
    the bottom flat lies in the cut and NotGCompatible if some minimal cut
    element is outside the building set.
    """
    lat = bm.lat
    if isinstance(cut, ModularCut):
        mc = cut
    else:
        mc = validate_modular_cut(lat, cut) if validate_cut else ModularCut(
            frozenset(cut), 0 not in cut, bool(cut), True
        )
    cutset = mc.flats
    if not mc.proper:
        raise ImproperCut("the bottom flat lies in the cut")
    minimal = [f for f in cutset if not any(g != f and g & ~f == 0 for g in cutset)]
    for f in minimal:
        if f not in bm.bset:
            raise NotGCompatible(f)
    n = bm.n
    bit = 1 << n
    collar = {
        f
        for f in lat.flats
        if f not in cutset and any(g in cutset for g in lat.covers(f))
    }
    flats = []
    for f in lat.flats:
        if f in cutset:
            flats.append((f | bit, lat.rank_of(f)))
        else:
            flats.append((f, lat.rank_of(f)))
            if f not in collar:
                flats.append((f | bit, lat.rank_of(f) + 1))
    big = GeomLattice(n + 1, flats)
    bset = {f | bit if f in cutset else f for f in bm.bset}
    bset.add(big.closure(bit))
    order = bm.order + (n,)
    out = BuiltMatroid(big, frozenset(bset), order, validate=False)
    validate_building_set(big, out.bset)
    assert big.simple(), "extension along an atom-containing cut is not simple"
    return out


def truncate(bm, cut, validate_cut=True):
    """Truncation along a proper nonempty atom-free modular cut.

    Flats in the cut drop rank by one; the collar (flats outside the cut with
    a cover inside it) disappears.  An empty cut is the identity.
    """
    lat = bm.lat
    if isinstance(cut, ModularCut):
        mc = cut
    else:
        mc = validate_modular_cut(lat, cut) if validate_cut else ModularCut(
            frozenset(cut), 0 not in cut, bool(cut), True
        )
    cutset = mc.flats
    if not cutset:
        return bm
    if not mc.proper:
        raise ImproperCut("the bottom flat lies in the cut")
    if not mc.atom_free:
        raise CutContainsAtom(sorted(f for f in cutset if lat.rank_of(f) == 1))
    collar = {
        f
        for f in lat.flats
        if f not in cutset and any(g in cutset for g in lat.covers(f))
    }
    flats = [
        (f, lat.rank_of(f) - (1 if f in cutset else 0))
        for f in lat.flats
        if f not in collar
    ]
    sub = GeomLattice(lat.n, flats)
    bset = frozenset(g for g in bm.bset if g not in collar)
    out, _ = simplify_built(sub, bset, bm.order)
    validate_building_set(out.lat, out.bset)
    return out


# ---------------------------------------------------------------------------
# chains and completeness


def tl_chain(bm, f, g):
    """The order-least saturated-ish chain from flat f up to flat g:
    closures of f plus successive order-smallest elements of g - f.
    The returned list starts at f and ends at g."""
    lat = bm.lat
    assert f & ~g == 0, "need f <= g"
    elems = sorted(bits(g & ~f), key=lambda e: bm.pos[e])
    chain = [f]
    cur = f
    for e in elems:
        if cur >> e & 1:
            continue
        cur = lat.join(cur, lat.flats[lat.atom_of_elem[e]])
        if cur != chain[-1]:
            chain.append(cur)
    assert chain[-1] == g
    return chain


def is_complete(bm, mode="fast"):
    """Whether every building-set element's bottom chain stays inside the set.

    mode="fast" checks chains from the bottom flat only; mode="definitive"
    checks every interval [F, G] against the contracted building set.  The two
    agree (the bottom-chain criterion is equivalent); both are kept so tests
    can cross-check.
    """
    lat = bm.lat
    if mode == "fast":
        for g in bm.bset:
            for x in tl_chain(bm, 0, g)[1:]:
                if x not in bm.bset:
                    return False
        return True
    if mode == "definitive":
        for f in lat.flats:
            images = None
            for g in bm.bset:
                if f & ~g or f == g:
                    continue
                if images is None:
                    images = {lat.join(f, h) for h in bm.bset} - {f}
                for x in tl_chain(bm, f, g)[1:]:
                    if x not in images:
                        return False
        return True
    raise ValueError(f"unknown mode {mode!r}")


def find_complete_order(bm):
    """Search all ground orders for one making the built matroid complete.

    Only for n <= 8; returns the lexicographically least witness or None.
    """
    if bm.n > 8:
        raise TooLarge(f"order search needs n <= 8, got {bm.n}")
    for perm in permutations(range(bm.n)):
        cand = BuiltMatroid(bm.lat, bm.bset, perm, validate=False)
        if is_complete(cand):
            return perm
    return None


# ---------------------------------------------------------------------------
# flagness


def flag_nonface_witness(bm):
    """An antichain of size >= 3 with pairwise joins outside the building set
    whose total join lies inside it, or None if the complex is flag."""
    lat = bm.lat
    members = sorted(bm.bset, key=lambda f: (lat.rank_of(f), f))

    def grow(chosen, join_so_far, start):
        if len(chosen) >= 3 and join_so_far in bm.bset:
            return list(chosen)
        for i in range(start, len(members)):
            c = members[i]
            ok = True
            for a in chosen:
                if a & ~c == 0 or c & ~a == 0:
                    ok = False
                    break
                if lat.join(a, c) in bm.bset:
                    ok = False
                    break
            if not ok:
                continue
            got = grow(chosen + [c], lat.join(join_so_far, c), i + 1)
            if got:
                return got
        return None

    return grow([], 0, 0)


def is_flag(bm):
    return flag_nonface_witness(bm) is None


# ---------------------------------------------------------------------------
# filtrations between building sets


@dataclass
class Filtration:
    """A chain of building sets from small to big, one flat added per step."""

    bsets: list  # list of frozensets, len = steps + 1
    added: list  # flat added at each step
    binary: list  # whether the added flat has exactly 2 factors in the prior set


def _removal_chain(bm, small, pick):
    lat = bm.lat
    small = frozenset(small)
    if not small <= bm.bset:
        raise NotContained(sorted(small - bm.bset))
    validate_building_set(lat, small)
    chain = [bm.bset]
    cur = set(bm.bset)
    while frozenset(cur) != small:
        g = pick(lat, cur, small)
        if g is None:
            raise Stuck(sorted(cur - small))
        cur.discard(g)
        validate_building_set(lat, frozenset(cur))
        chain.append(frozenset(cur))
    chain.reverse()
    added = []
    binary = []
    for prev, nxt in zip(chain, chain[1:]):
        (f,) = tuple(nxt - prev)
        added.append(f)
        binary.append(len(factors_in(lat, prev, f)) == 2)
    return Filtration(bsets=chain, added=added, binary=binary)


def is_removable(bm, g):
    """Whether bset minus g is still a building set."""
    if g not in bm.bset:
        return False
    try:
        validate_building_set(bm.lat, bm.bset - {g})
    except (MissingIrreducible, JoinClosureViolation):
        return False
    return True


def filtration(bm, small):
    """Filtration from small up to bm.bset removing minimal elements in
    reverse; every intermediate set is validated."""

    def pick(lat, cur, small):
        extra = cur - small
        if not extra:
            return None
        mins = [f for f in extra if not any(g != f and g & ~f == 0 for g in extra)]
        for f in sorted(mins):
            trial = frozenset(cur - {f})
            try:
                validate_building_set(lat, trial)
            except (MissingIrreducible, JoinClosureViolation):
                continue
            return f
        return None

    return _removal_chain(bm, small, pick)


def binary_filtration(bm, small):
    """Binary filtration from small up to bm.bset (requires bm flag).

    Greedily removes a lattice-maximal removable element (smallest mask on
    ties); raises NotFlag if bm is not flag and Stuck if the greedy jams.
    """
    if not is_flag(bm):
        raise NotFlag(flag_nonface_witness(bm))

    def pick(lat, cur, small):
        cand = [
            f
            for f in cur - small
            if is_removable(BuiltMatroid(lat, frozenset(cur), validate=False), f)
        ]
        if not cand:
            return None
        maxima = [f for f in cand if not any(g != f and f & ~g == 0 for g in cand)]
        return min(maxima)

    filt = _removal_chain(bm, small, pick)
    if not all(filt.binary):
        raise Stuck("non-binary step in greedy filtration")
    return filt
