"""Full-rank lattices in Q^4 in a canonical Hermite form.

A lattice is stored as an integer 4x4 HNF matrix together with one
positive denominator, reduced so the matrix content is coprime to the
denominator. Two generator sets span the same lattice iff they
canonicalize to the identical object.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm

from .errors import DegenerateLatticeError
from .intmat import adjugate, det, hnf

DIM = 4


@dataclass(frozen=True)
class CanonicalLatticeBasis:
    """Rows of num/den form the canonical basis of the lattice."""

    num: tuple  # 4x4 tuple of int tuples, in HNF
    den: int  # positive, coprime to the matrix content

    def rows(self):
        """Basis rows as Fraction 4-vectors."""
        return [tuple(Fraction(x, self.den) for x in row) for row in self.num]

    def int_rows(self):
        return [list(row) for row in self.num]

    def covolume(self) -> Fraction:
        d = 1
        for i in range(DIM):
            d *= self.num[i][i]
        return Fraction(d, self.den**DIM)

    def to_json(self):
        return [[str(Fraction(x, self.den)) for x in row] for row in self.num]


def _freeze(num, den):
    return CanonicalLatticeBasis(tuple(tuple(r) for r in num), den)


def canonicalize(generators) -> CanonicalLatticeBasis:
    """Canonical basis of the Z-span of rational 4-vector generators."""
    den = 1
    gens = []
    for g in generators:
        row = [Fraction(x) for x in g]
        if len(row) != DIM:
            raise DegenerateLatticeError("generators must be 4-vectors")
        gens.append(row)
        for x in row:
            den = lcm(den, x.denominator)
    int_rows = [[int(x * den) for x in row] for row in gens]
    basis = hnf(int_rows)
    if len(basis) != DIM:
        raise DegenerateLatticeError(f"rank {len(basis)} < 4")
    g = den
    for row in basis:
        for x in row:
            g = gcd(g, x)
    if g > 1:
        basis = [[x // g for x in row] for row in basis]
        den //= g
    return _freeze(basis, den)


def from_int_rows(rows, den: int = 1) -> CanonicalLatticeBasis:
    return canonicalize([[Fraction(x, den) for x in row] for row in rows])


def contains(lat: CanonicalLatticeBasis, vec) -> bool:
    """Membership of a rational 4-vector via triangular back-substitution."""
    coeffs = coordinates(lat, vec)
    return coeffs is not None


def coordinates(lat: CanonicalLatticeBasis, vec):
    """Integer coordinates of vec w.r.t. the canonical basis, or None.

    Solves w @ num = den * vec exactly; num is upper triangular.
    """
    target = [Fraction(v) * lat.den for v in vec]
    w = [Fraction(0)] * DIM
    for i in range(DIM):
        piv = lat.num[i][i]
        c = target[i] / piv
        if c.denominator != 1:
            return None
        w[i] = c
        for j in range(i, DIM):
            target[j] -= c * lat.num[i][j]
    if any(target):
        return None
    return [int(x) for x in w]


def lattice_sum(a: CanonicalLatticeBasis, b: CanonicalLatticeBasis) -> CanonicalLatticeBasis:
    return canonicalize(a.rows() + b.rows())


def lattice_scale(a: CanonicalLatticeBasis, s) -> CanonicalLatticeBasis:
    s = Fraction(s)
    if s == 0:
        raise DegenerateLatticeError("scaling a lattice by zero")
    return canonicalize([[x * s for x in row] for row in a.rows()])


def is_sublattice(a: CanonicalLatticeBasis, b: CanonicalLatticeBasis) -> bool:
    """Whether a is contained in b."""
    return all(contains(b, row) for row in a.rows())


def index_in(a: CanonicalLatticeBasis, b: CanonicalLatticeBasis):
    """[b : a] as a Fraction of covolumes (integer when a is inside b)."""
    return a.covolume() / b.covolume()


def inverse_times_den(num):
    """(adjugate, det) of an integer matrix: num^-1 = adj/det exactly."""
    d = det(num)
    if d == 0:
        raise DegenerateLatticeError("singular matrix")
    return adjugate([list(r) for r in num]), d
