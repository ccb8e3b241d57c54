"""Matroid families, chordal building sets, augmented built matroids, and
the stable-tree model, cross-checked against the oracles."""

from collections import Counter

import pytest

import oracles
from helpers import mask_of, set_of

from chowpoly.building import BuiltMatroid, is_complete, validate_building_set
from chowpoly.chow import chow_polynomial
from chowpoly.errors import BadParameters, ChowpolyError
from chowpoly.families import (
    augmented_built_matroid,
    binary_trees,
    braid_edges,
    built_from_matroid,
    chordal_building_sets,
    m0n_gamma,
    make_boolean,
    make_graphic,
    make_partition,
    make_uniform,
    stable_trees,
    tree_descent_data,
)
from chowpoly.lattice import lattice_of_flats, popcount


FLAT_COUNT_CASES = [
    ("U25", make_uniform(2, 5), 5, oracles.uniform_rank(2)),
    ("B5", make_boolean(5), 5, oracles.boolean_rank),
    ("Pi4", make_partition(4), 6, oracles.graphic_rank(oracles.partition_edges(4))),
    (
        "path3+e",
        make_graphic([(0, 1), (1, 2), (3, 4)]),
        3,
        oracles.graphic_rank([(0, 1), (1, 2), (3, 4)]),
    ),
]


@pytest.mark.parametrize(
    "name,m,n,orank", FLAT_COUNT_CASES, ids=[c[0] for c in FLAT_COUNT_CASES]
)
def test_flat_sets_match_oracle(name, m, n, orank):
    lat = lattice_of_flats(m)
    assert {set_of(f) for f in lat.flats} == set(oracles.all_flats(n, orank))


def test_bad_parameters():
    for call in (
        lambda: make_uniform(0, 3),
        lambda: make_uniform(4, 3),
        lambda: make_boolean(0),
        lambda: make_graphic([]),
        lambda: make_graphic([(1, 1)]),
        lambda: make_graphic([(0, 1, 2)]),
        lambda: make_partition(1),
        lambda: make_partition(9),
        lambda: chordal_building_sets(6),
        lambda: chordal_building_sets(1),
        lambda: binary_trees(1),
        lambda: binary_trees(10),
    ):
        with pytest.raises(BadParameters):
            call()


def test_partition_is_complete_graph():
    assert braid_edges(3) == [(1, 2), (1, 3), (2, 3)]
    m = make_partition(4)
    assert m.n == 6
    lat = lattice_of_flats(m)
    assert len(lat.flats) == 15  # Bell(4)
    assert lat.rank_of(lat.full) == 3


def test_chordal_counts():
    assert [len(chordal_building_sets(n)) for n in (2, 3, 4, 5)] == [
        2,
        8,
        73,
        2344,
    ]


def test_chordal_sets_are_prefix_closed():
    for n in (3, 4):
        for g in chordal_building_sets(n):
            for s in g:
                if popcount(s) < 2:
                    continue
                pre = s & ~(1 << max(i for i in range(n) if s >> i & 1))
                assert popcount(pre) < 2 or pre in g, (n, sorted(g), s)


@pytest.mark.parametrize("n", [3, 4])
def test_chordal_equals_complete_for_natural_order(n):
    lat = lattice_of_flats(make_boolean(n))
    nz = [f for f in lat.flats if f]
    found = set()
    for pick in range(1 << len(nz)):
        s = frozenset(nz[i] for i in range(len(nz)) if pick >> i & 1)
        try:
            validate_building_set(lat, s)
        except ChowpolyError:
            continue
        if is_complete(BuiltMatroid(lat, s, validate=False)):
            found.add(s)
    assert found == set(chordal_building_sets(n))


def _canon(t):
    if isinstance(t, int):
        return t
    a, b = _canon(t[0]), _canon(t[1])
    if min(oracles.tree_leaves(a)) > min(oracles.tree_leaves(b)):
        a, b = b, a
    return (a, b)


def test_binary_tree_counts_and_sets():
    want = {2: 1, 3: 3, 4: 15, 5: 105, 6: 945}
    for n, cnt in want.items():
        trees = binary_trees(n)
        assert len(trees) == cnt, n
        assert len({_canon(t) for t in trees}) == cnt, n
    for n in (2, 3, 4, 5):
        got = {_canon(t) for t in binary_trees(n)}
        want_trees = {
            _canon(t) for t in oracles.binary_trees(range(1, n + 1))
        }
        assert got == want_trees, n


def test_tree_descents_match_oracle():
    for n in (3, 4, 5):
        ours = Counter(
            len(tree_descent_data(t)[0]) for t in binary_trees(n)
        )
        oracle = Counter(
            oracles.tree_descents(t)
            for t in oracles.binary_trees(range(1, n + 1))
        )
        assert ours == oracle, n
        for t in binary_trees(n):
            assert len(tree_descent_data(t)[0]) == oracles.tree_descents(t)


def test_stable_trees_golden():
    assert stable_trees(2) == [((1, 2), 0)]
    assert stable_trees(3) == [(((1, 2), 3), 0)]
    assert sorted(d for _, d in stable_trees(4)) == [0, 1, 1, 1]


def test_m0n_gamma_values():
    assert m0n_gamma(2) == [1]
    assert m0n_gamma(3) == [1]
    assert m0n_gamma(4) == [1, 3]
    assert m0n_gamma(5) == [1, 13]
    assert m0n_gamma(6) == [1, 38, 45]


def test_augmented_goldens():
    bm = augmented_built_matroid(make_uniform(1, 1))
    assert bm.n == 2 and bm.rank == 2
    assert chow_polynomial(bm) == [1, 1]
    assert is_complete(bm)

    bm = augmented_built_matroid(make_boolean(2))
    assert bm.n == 3 and bm.rank == 3
    assert len(bm.lat.flats) == 8  # the augmented matroid of B2 is B3
    assert bm.order[0] == 0  # the new element is order-least
    assert is_complete(bm)
    assert bm.irreducible


def test_augmented_always_complete():
    for m in (
        make_uniform(2, 3),
        make_uniform(2, 4),
        make_boolean(3),
        make_partition(3),
    ):
        bm = augmented_built_matroid(m)
        assert is_complete(bm)
        assert bm.irreducible
        assert 1 in bm.bset  # the new element's atom


def test_built_from_matroid_simplifies():
    bm = built_from_matroid(make_uniform(1, 3), "min")
    assert bm.n == 1 and bm.rank == 1
    assert chow_polynomial(bm) == [1]
