"""Conversions between the package's bitmask world and the oracles'
frozenset world, plus a few instance builders shared across test modules."""

from chowpoly import BuiltMatroid, built_from_matroid, make_boolean, make_uniform
from chowpoly.lattice import bits, lattice_of_flats


def mask_of(elems):
    m = 0
    for e in elems:
        m |= 1 << e
    return m


def set_of(mask):
    return frozenset(bits(mask))


def sets_of(masks):
    return frozenset(set_of(m) for m in masks)


def masks_of(families):
    return frozenset(mask_of(f) for f in families)


def boolean_built(n, bset_masks, order=None):
    lat = lattice_of_flats(make_boolean(n))
    return BuiltMatroid(lat, frozenset(bset_masks), order)


def b4_flag_built(order=None):
    """The rank-4 Boolean instance with building set
    {1, 2, 3, 4, 12, 34, 1234} (1-based element names)."""
    return boolean_built(4, {0b0001, 0b0010, 0b0100, 0b1000, 0b0011, 0b1100, 0b1111}, order)


def u33_max():
    return built_from_matroid(make_uniform(3, 3), "max")
