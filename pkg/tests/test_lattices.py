import random
from fractions import Fraction

import pytest

from helpers import covolume_from_generators
from quatorders.errors import DegenerateLatticeError
from quatorders.lattices import (
    canonicalize,
    contains,
    coordinates,
    index_in,
    is_sublattice,
    lattice_scale,
    lattice_sum,
)


def test_identity_is_fixed():
    rows = [(1, 0, 0, 0), (0, 1, 0, 0), (0, 0, 1, 0), (0, 0, 0, 1)]
    lat = canonicalize(rows)
    assert lat.num == tuple(tuple(r) for r in rows)
    assert lat.den == 1


def test_gcd_of_leading_generators():
    gens = [(2, 0, 0, 0), (3, 0, 0, 0), (0, 1, 0, 0), (0, 0, 1, 0), (0, 0, 0, 1)]
    lat = canonicalize(gens)
    assert lat.num[0] == (1, 0, 0, 0)


def test_canonicalize_derived_example():
    gens = [(2, 0, 0, 0), (1, 1, 0, 0), (0, 0, 2, 0), (0, 0, 1, 1)]
    lat = canonicalize(gens)
    # independent oracle: each generator has integer coordinates in the
    # canonical basis, and the covolume matches the minor-gcd computation
    for g in gens:
        assert coordinates(lat, g) is not None
    assert lat.covolume() == covolume_from_generators(gens) == 4


def test_rank_deficient_rejected():
    with pytest.raises(DegenerateLatticeError):
        canonicalize([(1, 0, 0, 0), (0, 1, 0, 0), (1, 1, 0, 0), (2, 3, 0, 0)])


def test_canonicalize_idempotent_and_basis_independent():
    rng = random.Random(7)
    for _ in range(150):
        gens = [[rng.randint(-9, 9) for _ in range(4)] for _ in range(rng.randint(4, 7))]
        try:
            lat = canonicalize(gens)
        except DegenerateLatticeError:
            continue
        assert canonicalize(lat.rows()) == lat
        shuffled = gens[:]
        rng.shuffle(shuffled)
        i, j = rng.randrange(len(gens)), rng.randrange(len(gens))
        if i != j:
            t = rng.randint(-3, 3)
            shuffled[i] = [a + t * b for a, b in zip(shuffled[i], shuffled[j])]
        assert canonicalize(shuffled + gens) == lat
        # oracle agreement on membership and covolume
        assert lat.covolume() == covolume_from_generators(gens)
        for g in gens:
            assert contains(lat, g)


def test_scaling_commutes():
    rng = random.Random(9)
    for _ in range(50):
        gens = [[rng.randint(-6, 6) for _ in range(4)] for _ in range(5)]
        try:
            lat = canonicalize(gens)
        except DegenerateLatticeError:
            continue
        lam = Fraction(rng.randint(1, 5), rng.randint(1, 5)) * rng.choice([1, -1])
        scaled = canonicalize([[x * lam for x in row] for row in gens])
        assert scaled == lattice_scale(lat, lam)


def test_sum_and_index():
    a = canonicalize([(2, 0, 0, 0), (0, 2, 0, 0), (0, 0, 2, 0), (0, 0, 0, 2)])
    b = canonicalize([(1, 1, 0, 0), (0, 2, 0, 0), (0, 0, 1, 0), (0, 0, 0, 1)])
    s = lattice_sum(a, b)
    assert is_sublattice(a, s) and is_sublattice(b, s)
    assert index_in(a, s) == a.covolume() / s.covolume()


def test_membership_with_denominators():
    lat = canonicalize([(Fraction(1, 2), Fraction(1, 2), Fraction(1, 2), Fraction(1, 2)),
                        (0, 1, 0, 0), (0, 0, 1, 0), (0, 0, 0, 1)])
    assert contains(lat, (1, 0, 0, 0))
    assert contains(lat, (Fraction(1, 2),) * 4)
    assert not contains(lat, (Fraction(1, 2), 0, 0, 0))
    assert coordinates(lat, (Fraction(1, 3), 0, 0, 0)) is None
