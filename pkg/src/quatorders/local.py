"""Per-prime structure of a quaternion order: Jacobson radical, residual
type, Gorenstein/Bass/basic deciders, idealizer chain, the two-element
generation dimension of the radical, the R + pJ decomposition of
non-basic orders, and the minimal non-Gorenstein superorder construction.

The radical of the 4-dimensional algebra O/pO is computed by the
iterated characteristic-coefficient chain that stays valid in small
characteristic: with n = dim A and l maximal with p^l <= n,

    I_{-1} = A,   I_e = {x in I_{e-1} : f_e(xy) = 0 for all y in I_{e-1}},

where f_e(z) is the coefficient of lambda^(n - p^e) in the
characteristic polynomial of left multiplication by z; then I_l = rad A.
For p <= ORACLE_PRIME_BOUND every call cross-checks the result against
the largest-nilpotent-ideal brute force.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from functools import lru_cache
from math import lcm

from .errors import (
    CapacityError,
    HypothesisViolationError,
    InputError,
    InternalConsistencyError,
)
from .forms import TernaryForm, form_content, ramified_nonbasic_normal_form
from .gfp import kernel, rref
from .intmat import identity
from .lattices import canonicalize, contains, is_sublattice
from .numtheory import is_prime, legendre, valuation
from .orders import (
    GoodBasisOrder,
    QuatLattice,
    good_basis_change,
    is_integral_lattice,
    is_order,
    lattice_index,
    lattice_product,
    lattice_scale,
    left_order,
    mul_vec,
    normalize_good_basis,
    nrd_vec,
    reduced_discriminant,
    right_order,
    trd_vec,
    unit_lattice,
)

ORACLE_PRIME_BOUND = 7
BRUTEFORCE_PRIME_BOUND = 13
EICHLER_PRIME_BOUND = 7


class ResidualType(Enum):
    QuaternionQuotient = "quaternion_quotient"
    ResiduallySplit = "split"
    ResiduallyInert = "inert"
    ResiduallyRamified = "ramified"


def _check_prime(p: int) -> None:
    if not is_prime(p):
        raise InputError(f"{p} is not prime")


# ---------------------------------------------------------------------------
# radical of a finite-dimensional algebra over Z/p


def _charpoly(mat, p):
    """Coefficients [c_0, ..., c_n] of det(lambda I - M) mod p."""
    n = len(mat)
    total = [0] * (n + 1)
    for perm in itertools.permutations(range(n)):
        sign = 1
        seen = list(perm)
        for i in range(n):
            while seen[i] != i:
                j = seen[i]
                seen[i], seen[j] = seen[j], seen[i]
                sign = -sign
        poly = [1]
        for i in range(n):
            lin = ((-mat[i][perm[i]]) % p, 1 if perm[i] == i else 0)
            new = [0] * (len(poly) + 1)
            for d, coef in enumerate(poly):
                if coef:
                    new[d] = (new[d] + coef * lin[0]) % p
                    new[d + 1] = (new[d + 1] + coef * lin[1]) % p
            poly = new
        for d, coef in enumerate(poly):
            total[d] = (total[d] + sign * coef) % p
    return total


def _left_mul_rows(tab, vec, p, dim):
    """Rows r -> coords of vec * e_r (same charpoly as left multiplication)."""
    rows = []
    for r in range(dim):
        out = [0] * dim
        for m in range(dim):
            xm = vec[m]
            if xm:
                trow = tab[m][r]
                for c in range(dim):
                    out[c] = (out[c] + xm * trow[c]) % p
        rows.append(out)
    return rows


def _mul_modp(tab, x, y, p, dim):
    out = [0] * dim
    for m in range(dim):
        xm = x[m]
        if xm:
            row = tab[m]
            for k in range(dim):
                yk = y[k]
                if yk:
                    f = xm * yk
                    t = row[k]
                    for c in range(dim):
                        out[c] = (out[c] + f * t[c]) % p
    return tuple(out)


def _fr_radical(tab, p, dim):
    """Radical basis (rref rows) of the algebra with structure table tab."""
    level = 0
    while p ** (level + 1) <= dim:
        level += 1
    space = [tuple(row) for row in identity(dim)]
    for e in range(level + 1):
        if not space:
            break
        pe = p**e
        coeff_index = dim - pe
        cond = []
        for y in space:
            row = []
            for x in space:
                prod = _mul_modp(tab, x, y, p, dim)
                mat = _left_mul_rows(tab, prod, p, dim)
                row.append(_charpoly(mat, p)[coeff_index])
            cond.append(row)
        # conditions on t with x = sum t_j space_j: for each y, sum_j t_j cond[y][j] = 0
        cmat = [[cond[k][j] for k in range(len(space))] for j in range(len(space))]
        ker = kernel(cmat, p)
        space = [
            tuple(sum(t[j] * space[j][c] for j in range(len(space))) % p for c in range(dim))
            for t in ker
        ]
        space, _ = rref(space, p)
        space = [tuple(r) for r in space]
    return space


def _nilpotent(tab, x, p, dim):
    sq = _mul_modp(tab, x, x, p, dim)
    fourth = _mul_modp(tab, sq, sq, p, dim)
    if dim <= 4:
        return not any(fourth)
    raise InternalConsistencyError("nilpotency test sized for dim <= 4")


def _bruteforce_radical(tab, p, dim):
    """rad = {x : x*y nilpotent for all y}, by exhaustive enumeration."""
    elements = list(itertools.product(range(p), repeat=dim))
    nil = {x for x in elements if _nilpotent(tab, x, p, dim)}
    rad = [x for x in nil if all(_mul_modp(tab, x, y, p, dim) in nil for y in elements)]
    rows, _ = rref(rad, p) if rad else ([], [])
    return [tuple(r) for r in rows]


@lru_cache(maxsize=None)
def _structure_table(coeffs, p):
    units = ((1, 0, 0, 0), (0, 1, 0, 0), (0, 0, 1, 0), (0, 0, 0, 1))
    reduced = tuple(x % p for x in coeffs)
    return tuple(
        tuple(tuple(x % p for x in mul_vec(reduced, em, ek)) for ek in units) for em in units
    )


def _radical_rows(coeffs, p):
    """Basis (rref rows over Z/p) of rad(O/pO), certified.

    Everything here depends only on the coefficients mod p, so the work
    is shared across the whole congruence class.
    """
    return _radical_rows_mod(tuple(x % p for x in coeffs), p)


@lru_cache(maxsize=None)
def _radical_rows_mod(rcoeffs, p):
    tab = _structure_table(rcoeffs, p)
    rad = _fr_radical(tab, p, 4)
    if p <= ORACLE_PRIME_BOUND:
        brute = _bruteforce_radical(tab, p, 4)
        if rad != brute:
            raise InternalConsistencyError(
                f"radical mismatch at p={p} for {rcoeffs}: chain {rad} vs brute {brute}"
            )
    # two-sided ideal property inside O/pO
    for x in rad:
        for em in range(4):
            e = tuple(1 if c == em else 0 for c in range(4))
            for prod in (_mul_modp(tab, x, e, p, 4), _mul_modp(tab, e, x, p, 4)):
                red, _ = rref(list(rad) + [prod], p)
                if len(red) != len(rad):
                    raise InternalConsistencyError(f"radical not an ideal at p={p}: {rcoeffs}")
    # nilpotency mod p: every fourfold product of radical rows vanishes
    pairs = [_mul_modp(tab, x, y, p, 4) for x in rad for y in rad]
    for u in pairs:
        for v in pairs:
            if any(_mul_modp(tab, u, v, p, 4)):
                raise InternalConsistencyError(f"rad^4 not inside pO at p={p}: {rcoeffs}")
    _semisimple_quotient_check_mod(rcoeffs, p, tuple(rad))
    return tuple(rad)


def _quotient_table(coeffs, p, rad_rows):
    """Structure constants of (O/pO)/rad in a chosen transversal basis.

    Returns (table, reps, one) where one holds the quotient coordinates
    of the image of 1.
    """
    dim_rad = len(rad_rows)
    dim_q = 4 - dim_rad
    full = [list(r) for r in rad_rows]
    reps = []
    for c in range(4):
        e = [1 if i == c else 0 for i in range(4)]
        red, _ = rref(full + [e], p)
        if len(red) > len(full):
            full = red
            reps.append(tuple(e))
        if len(reps) == dim_q:
            break
    basis = [list(r) for r in rad_rows] + [list(r) for r in reps]
    tab4 = _structure_table(coeffs, p)

    def coords_in_basis(vec):
        # solve coords @ basis = vec by eliminating the transposed system
        work = [[basis[r][c] for r in range(4)] + [vec[c] % p] for c in range(4)]
        red, pivots = rref(work, p)
        coords = [0] * 4
        for r, c in enumerate(pivots):
            if c < 4:
                coords[c] = red[r][4]
            elif red[r][4]:
                raise InternalConsistencyError("vector outside quotient basis span")
        return coords

    table = [[None] * dim_q for _ in range(dim_q)]
    for a in range(dim_q):
        for b in range(dim_q):
            prod = _mul_modp(tab4, reps[a], reps[b], p, 4)
            coords = coords_in_basis(list(prod))
            table[a][b] = tuple(coords[dim_rad + t] for t in range(dim_q))
    one = tuple(coords_in_basis([1, 0, 0, 0])[dim_rad + t] for t in range(dim_q))
    return tuple(tuple(row) for row in table), reps, one


def _semisimple_quotient_check_mod(rcoeffs, p, rad_rows):
    if len(rad_rows) == 4:
        raise InternalConsistencyError("radical cannot be the whole algebra")
    table, _, _ = _quotient_table(rcoeffs, p, rad_rows)
    dim_q = 4 - len(rad_rows)
    if _fr_radical(table, p, dim_q):
        raise InternalConsistencyError(
            f"quotient by the radical is not semisimple at p={p} for {rcoeffs}"
        )
    return True


def radical(order: GoodBasisOrder, p: int) -> QuatLattice:
    """Jacobson radical of O at p as a lattice: pO <= rad <= O."""
    _check_prime(p)
    return _radical_lattice(order, p)


@lru_cache(maxsize=None)
def _radical_basis_mod(rcoeffs, p):
    rows = [list(r) for r in _radical_rows_mod(rcoeffs, p)]
    gens = rows + [[p if j == i else 0 for j in range(4)] for i in range(4)]
    basis = canonicalize(gens)
    # pO <= rad <= O holds by construction; the two-sidedness, rad^4 and
    # semisimple-quotient postconditions were certified mod p, which is
    # equivalent for any order in this congruence class
    if basis.den != 1:
        raise InternalConsistencyError("radical lattice escaped the order")
    return basis


def _radical_lattice(order: GoodBasisOrder, p: int) -> QuatLattice:
    rcoeffs = tuple(x % p for x in order.coeffs())
    return QuatLattice(order, _radical_basis_mod(rcoeffs, p))


def residual_type(order: GoodBasisOrder, p: int) -> ResidualType:
    """Classify O/rad O: dimension 4, 1, or 2 (split vs inert)."""
    _check_prime(p)
    return _residual_type_mod(tuple(x % p for x in order.coeffs()), p)


@lru_cache(maxsize=None)
def _residual_type_mod(coeffs, p) -> ResidualType:
    rad_rows = _radical_rows_mod(coeffs, p)
    dim_q = 4 - len(rad_rows)
    if dim_q == 4:
        return ResidualType.QuaternionQuotient
    if dim_q == 1:
        return ResidualType.ResiduallyRamified
    if dim_q != 2:
        raise InternalConsistencyError(f"semisimple quotient of dimension {dim_q}")
    table, _, one = _quotient_table(coeffs, p, rad_rows)
    # quotient is commutative of dimension 2: kappa x kappa iff it has a
    # nontrivial idempotent iff the minimal polynomial of a generator splits
    if not any(one):
        raise InternalConsistencyError("image of 1 vanishes in the quotient")
    gen = None
    for cand in ((1, 0), (0, 1)):
        red, _ = rref([list(one), list(cand)], p)
        if len(red) == 2:
            gen = cand
            break
    if gen is None:
        raise InternalConsistencyError("no generator for the 2-dimensional quotient")
    sq = _mul_modp(table, gen, gen, p, 2)
    # sq = s*one + r*gen  =>  minimal polynomial T^2 - r T - s
    mat = [[one[0], one[1]], [gen[0], gen[1]]]
    work = [[mat[0][0], mat[1][0], sq[0]], [mat[0][1], mat[1][1], sq[1]]]
    red, pivots = rref(work, p)
    s_coef, r_coef = 0, 0
    for r, c in enumerate(pivots):
        if c == 0:
            s_coef = red[r][2]
        elif c == 1:
            r_coef = red[r][2]
    if _quadratic_has_root(r_coef, s_coef, p):
        return ResidualType.ResiduallySplit
    return ResidualType.ResiduallyInert


def _quadratic_has_root(r, s, p):
    """Whether T^2 - r T - s has a root mod p."""
    if p == 2:
        return any((t * t - r * t - s) % 2 == 0 for t in (0, 1))
    disc = (r * r + 4 * s) % p
    if disc == 0:
        raise InternalConsistencyError("inseparable quadratic in semisimple quotient")
    return legendre(disc, p) == 1


def is_gorenstein_local(order: GoodBasisOrder, p: int) -> bool:
    """Gorenstein at p iff the associated form is p-primitive."""
    _check_prime(p)
    return form_content(order.form) % p != 0


@lru_cache(maxsize=None)
def radical_idealizer_lattice(order: GoodBasisOrder, p: int) -> QuatLattice:
    rad = _radical_lattice(order, p)
    left = left_order(rad)
    right = right_order(rad)
    if left.basis != right.basis:
        raise InternalConsistencyError(
            f"left and right orders of the radical differ at p={p} for {order.coeffs()}"
        )
    if not is_sublattice(unit_lattice(order).basis, left.basis):
        raise InternalConsistencyError("radical idealizer does not contain the order")
    return left


@lru_cache(maxsize=None)
def _radical_idealizer_normalized(order: GoodBasisOrder, p: int):
    lat = radical_idealizer_lattice(order, p)
    return normalize_good_basis(lat)


def radical_idealizer(order: GoodBasisOrder, p: int) -> GoodBasisOrder:
    """Good-basis presentation of the left (= right) order of rad O."""
    _check_prime(p)
    return _radical_idealizer_normalized(order, p)[0]


def idealizer_chain(order: GoodBasisOrder, p: int) -> list[GoodBasisOrder]:
    """O <= O^(1) <= ... until the terminal order is hereditary at p."""
    _check_prime(p)
    chain = [order]
    guard = valuation(reduced_discriminant(order), p) + 2
    while valuation(reduced_discriminant(chain[-1]), p) > 1:
        nxt = radical_idealizer(chain[-1], p)
        ratio = Fraction(reduced_discriminant(chain[-1]), reduced_discriminant(nxt))
        if ratio <= 1 or not _is_prime_power(ratio, p):
            raise InternalConsistencyError(
                f"idealizer step index {ratio} is not a positive power of {p}"
            )
        chain.append(nxt)
        if len(chain) > guard:
            raise InternalConsistencyError("idealizer chain exceeded its length bound")
    return chain


def _is_prime_power(x: Fraction, p: int) -> bool:
    if x.denominator != 1:
        return False
    n = x.numerator
    while n % p == 0:
        n //= p
    return n == 1


def is_bass_local(order: GoodBasisOrder, p: int) -> bool:
    """Bass at p: O and its radical idealizer are both Gorenstein.

    Maximal, residually split, and residually inert orders are always
    basic hence Bass, so only the residually ramified case needs the
    idealizer test.
    """
    _check_prime(p)
    if residual_type(order, p) != ResidualType.ResiduallyRamified:
        return True
    if not is_gorenstein_local(order, p):
        return False
    return is_gorenstein_local(radical_idealizer(order, p), p)


# ---------------------------------------------------------------------------
# brute-force basic test (independent oracle)


def _valid_r_table(coeffs, p):
    """valid[t][n]: some r mod p^2 has p | t - 2r and p^2 | n - r t + r^2."""
    p2 = p * p
    table = [[False] * p2 for _ in range(p2)]
    for t in range(p2):
        for r in range(p2):
            if (t - 2 * r) % p:
                continue
            n_hit = (r * t - r * r) % p2
            # n - r t + r^2 = 0 mod p2  <=>  n = r t - r^2
            table[t][n_hit] = True
    return table


@lru_cache(maxsize=None)
def is_basic_bruteforce(order: GoodBasisOrder, p: int) -> bool:
    """Existence of alpha with no r satisfying p | trd(alpha - r) and
    p^2 | nrd(alpha - r), over a full transversal of O/p^2 O."""
    _check_prime(p)
    if p > BRUTEFORCE_PRIME_BOUND:
        raise CapacityError(f"brute-force basic test capped at p <= {BRUTEFORCE_PRIME_BOUND}")
    coeffs = order.coeffs()
    p2 = p * p
    a, b, c, u, v, w = (x % p2 for x in coeffs)
    valid = _valid_r_table(coeffs, p)
    if p <= 3:
        nrd0_c = (
            (b * c) % p2, (a * c) % p2, (a * b) % p2,
            (u * v - c * w) % p2, (u * w - b * v) % p2, (v * w - a * u) % p2,
        )
        bcc, acc, abc, xyc, xzc, yzc = nrd0_c
        for x in range(p2):
            for y in range(p2):
                for z in range(p2):
                    s = (u * x + v * y + w * z) % p2
                    n0 = (
                        bcc * x * x + acc * y * y + abc * z * z
                        + xyc * x * y + xzc * x * z + yzc * y * z
                    ) % p2
                    for t in range(p2):
                        td = (2 * t + s) % p2
                        nd = (t * t + t * s + n0) % p2
                        if not valid[td][nd]:
                            return True
        return False
    return _is_basic_bruteforce_numpy(coeffs, p, valid)


def _is_basic_bruteforce_numpy(coeffs, p, valid):
    import numpy as np

    p2 = p * p
    a, b, c, u, v, w = (x % p2 for x in coeffs)
    vt = np.array(valid, dtype=bool)
    xs = np.arange(p2, dtype=np.int64)
    x, y, z = np.meshgrid(xs, xs, xs, indexing="ij")
    s = (u * x + v * y + w * z) % p2
    n0 = (
        (b * c) * x * x + (a * c) * y * y + (a * b) * z * z
        + (u * v - c * w) * x * y + (u * w - b * v) * x * z + (v * w - a * u) * y * z
    ) % p2
    s = s.ravel()
    n0 = n0.ravel()
    for t in range(p2):
        td = (2 * t + s) % p2
        nd = (t * t + t * s + n0) % p2
        if not vt[td, nd].all():
            return True
    return False


def two_generation_dim(order: GoodBasisOrder, p: int):
    """dim over Z/p of rad O / (rad O)^2 for local-ring orders, else None."""
    _check_prime(p)
    rt = residual_type(order, p)
    if rt in (ResidualType.QuaternionQuotient, ResidualType.ResiduallySplit):
        return None
    rad = _radical_lattice(order, p)
    sq = lattice_product(rad, rad)
    index = lattice_index(sq, rad)
    if index.denominator != 1:
        raise InternalConsistencyError("rad^2 is not inside rad")
    n, d = index.numerator, 0
    while n % p == 0:
        n //= p
        d += 1
    if n != 1:
        raise InternalConsistencyError("[rad : rad^2] is not a power of p")
    return d


@lru_cache(maxsize=None)
def _chosen_r_table(p):
    """First r mod p^2 with p | t - 2r and p^2 | n - rt + r^2, per (t, n);
    -1 where no r exists."""
    p2 = p * p
    table = [[-1] * p2 for _ in range(p2)]
    for r in range(p2):
        for t in range(p2):
            if (t - 2 * r) % p:
                continue
            n = (r * t - r * r) % p2
            if table[t][n] < 0:
                table[t][n] = r
    return table


def eichler_decomposition(order: GoodBasisOrder, p: int):
    """Integral lattice J with O = Z + pJ when O is not basic, else None.

    J is generated by 1, pO and the integral elements (alpha - r)/p over
    a transversal of O/p^2 O; the span saturates quickly, so candidates
    already inside the current lattice are skipped.
    """
    _check_prime(p)
    if p > EICHLER_PRIME_BOUND:
        raise CapacityError(f"R + pJ decomposition capped at p <= {EICHLER_PRIME_BOUND}")
    coeffs = order.coeffs()
    p2 = p * p
    r_table = _chosen_r_table(p)
    rows = [[Fraction(1), Fraction(0), Fraction(0), Fraction(0)]]
    for i in range(4):
        rows.append([Fraction(p) if j == i else Fraction(0) for j in range(4)])
    current = canonicalize(rows)
    for vec in itertools.product(range(p2), repeat=4):
        t = trd_vec(coeffs, vec) % p2
        n = nrd_vec(coeffs, vec) % p2
        r_found = r_table[t][n]
        if r_found < 0:
            return None
        beta = (Fraction(vec[0] - r_found, p), Fraction(vec[1], p),
                Fraction(vec[2], p), Fraction(vec[3], p))
        if not contains(current, beta):
            rows.append(list(beta))
            current = canonicalize(rows)
    j_lat = QuatLattice(order, current)
    if not is_integral_lattice(j_lat):
        raise InternalConsistencyError("R + pJ decomposition produced a non-integral J")
    pj = lattice_scale(j_lat, p)
    rebuilt = canonicalize([[1, 0, 0, 0]] + [list(r) for r in pj.rows()])
    if rebuilt != unit_lattice(order).basis:
        raise InternalConsistencyError("Z + pJ does not rebuild the order")
    return j_lat


@dataclass(frozen=True)
class SuperorderWitness:
    order: GoodBasisOrder  # normalized presentation of O'
    lattice: QuatLattice  # O' in the coordinates of the input order
    case_tag: str
    recipe_form: TernaryForm  # coefficients produced by the divide-and-scale recipe


def superorder_witness_data(order: GoodBasisOrder, p: int) -> SuperorderWitness:
    """Minimal superorder O' of a Gorenstein, residually ramified,
    non-basic order: index p, non-Gorenstein, equal to the radical
    idealizer."""
    _check_prime(p)
    if not is_gorenstein_local(order, p):
        raise HypothesisViolationError("order is not Gorenstein at p")
    if residual_type(order, p) != ResidualType.ResiduallyRamified:
        raise HypothesisViolationError("order is not residually ramified at p")
    if is_bass_local(order, p):
        raise HypothesisViolationError("order is basic at p")
    qf, umat, tag = ramified_nonbasic_normal_form(order.form, p)
    a, b, c, u, v, w = qf.coeffs()
    if tag == "i":
        if u % (p * p):
            raise InternalConsistencyError("case-i normal form has p^2 not dividing u")
        recipe = TernaryForm(p * a, b // p, c // p, u // p, 0, w)
        new_row = 1
    else:
        recipe = TernaryForm(a // p, p * b, c // p, u, 0, 0)
        new_row = 2
    if any(x % p for x in recipe.coeffs()):
        raise InternalConsistencyError("superorder recipe coefficients not all divisible by p")
    _, rows = good_basis_change(order, umat)
    gen = rows[new_row]
    den = 1
    for x in gen:
        den = lcm(den, Fraction(x).denominator)
    if den % p == 0:
        raise InternalConsistencyError("normal-form basis has p in its denominators")
    scaled = [Fraction(x) * den / p for x in gen]
    sup = QuatLattice(order, canonicalize([list(scaled)] + identity(4)))
    if not is_order(sup):
        raise InternalConsistencyError("superorder recipe did not produce an order")
    if lattice_index(unit_lattice(order), sup) != p:
        raise InternalConsistencyError("superorder index is not exactly p")
    if sup.basis != radical_idealizer_lattice(order, p).basis:
        raise InternalConsistencyError("superorder differs from the radical idealizer")
    normalized, _ = normalize_good_basis(sup)
    if form_content(normalized.form) % p:
        raise InternalConsistencyError("superorder is Gorenstein at p, expected otherwise")
    if reduced_discriminant(normalized) * p != reduced_discriminant(order):
        raise InternalConsistencyError("superorder discriminant did not drop by p")
    return SuperorderWitness(normalized, sup, tag, recipe)


def superorder_witness(order: GoodBasisOrder, p: int) -> GoodBasisOrder:
    return superorder_witness_data(order, p).order


@dataclass
class RadicalSampleReport:
    prime: int
    applicable: bool
    strengthened: bool  # non-basic assertions were exercised
    checked: int
    violations: list


def radical_element_properties(order: GoodBasisOrder, p: int, samples=None) -> RadicalSampleReport:
    """For alpha in rad O: p | trd, p | nrd and alpha^2 in pO; for
    non-basic orders additionally p^2 | nrd and alpha^2 in p rad O.

    samples defaults to a full transversal of rad / p rad.
    """
    _check_prime(p)
    rt = residual_type(order, p)
    if rt in (ResidualType.QuaternionQuotient, ResidualType.ResiduallySplit):
        return RadicalSampleReport(p, False, False, 0, [])
    coeffs = order.coeffs()
    rad = _radical_lattice(order, p)
    if samples is None:
        base = rad.rows()
        samples = []
        for cvec in itertools.product(range(p), repeat=4):
            samples.append([sum(Fraction(cvec[i]) * base[i][c] for i in range(4))
                            for c in range(4)])
    if p <= BRUTEFORCE_PRIME_BOUND:
        nonbasic = not is_basic_bruteforce(order, p)
    else:
        nonbasic = not is_bass_local(order, p)
    punit = lattice_scale(unit_lattice(order), p)
    prad = lattice_scale(rad, p)
    violations = []
    for alpha in samples:
        t = Fraction(trd_vec(coeffs, alpha))
        n = Fraction(nrd_vec(coeffs, alpha))
        sq = mul_vec(coeffs, alpha, alpha)
        if t % p != 0:
            violations.append((tuple(alpha), "p does not divide trd"))
        if n % p != 0:
            violations.append((tuple(alpha), "p does not divide nrd"))
        if not contains(punit.basis, sq):
            violations.append((tuple(alpha), "alpha^2 not in pO"))
        if nonbasic:
            if n % (p * p) != 0:
                violations.append((tuple(alpha), "p^2 does not divide nrd"))
            if not contains(prad.basis, sq):
                violations.append((tuple(alpha), "alpha^2 not in p rad"))
    return RadicalSampleReport(p, True, nonbasic, len(samples), violations)


# ---------------------------------------------------------------------------
# per-prime report


@dataclass
class LocalReport:
    prime: int
    residual_type: ResidualType
    gorenstein: bool
    bass: bool
    basic_structural: bool
    basic_bruteforce: bool | None  # None when p exceeds the oracle capacity
    rad_two_gen_dim: int | None
    chain_discrds: list
    eichler_j: QuatLattice | None
    eichler_computed: bool
    superorder: GoodBasisOrder | None
    oracle_agreement: bool | None

    def to_json(self):
        data = {
            "p": self.prime,
            "residual_type": self.residual_type.value,
            "gorenstein": self.gorenstein,
            "bass": self.bass,
            "basic_bruteforce": self.basic_bruteforce,
            "rad_two_gen_dim": self.rad_two_gen_dim,
            "chain_discrds": list(self.chain_discrds),
        }
        if self.eichler_computed:
            data["eichler_j"] = None if self.eichler_j is None else self.eichler_j.to_json()
        if self.superorder is not None:
            data["superorder_form"] = self.superorder.form.to_json()
        data["oracle_agreement"] = self.oracle_agreement
        return data


def local_report(order: GoodBasisOrder, p: int, strict: bool = True) -> LocalReport:
    """Run every local decider at p and cross-check the oracles."""
    _check_prime(p)
    rt = residual_type(order, p)
    gor = is_gorenstein_local(order, p)
    bass = is_bass_local(order, p)
    chain = idealizer_chain(order, p)
    chain_discrds = [reduced_discriminant(o) for o in chain]
    two_gen = two_generation_dim(order, p)
    basic_bf = None
    if p <= BRUTEFORCE_PRIME_BOUND:
        basic_bf = is_basic_bruteforce(order, p)
    eichler_j, eichler_done = None, False
    if p <= EICHLER_PRIME_BOUND:
        eichler_j = eichler_decomposition(order, p)
        eichler_done = True
    witness = None
    if gor and rt == ResidualType.ResiduallyRamified and not bass:
        witness = superorder_witness(order, p)
    agreement = None
    if basic_bf is not None:
        agreement = basic_bf == bass
        if eichler_done:
            agreement = agreement and ((eichler_j is None) == basic_bf)
        if strict and not agreement:
            raise InternalConsistencyError(
                f"oracle disagreement at p={p} for {order.coeffs()}: "
                f"bass={bass} bruteforce={basic_bf} eichler_none={eichler_j is None}"
            )
    return LocalReport(
        prime=p,
        residual_type=rt,
        gorenstein=gor,
        bass=bass,
        basic_structural=bass,
        basic_bruteforce=basic_bf,
        rad_two_gen_dim=two_gen,
        chain_discrds=chain_discrds,
        eichler_j=eichler_j,
        eichler_computed=eichler_done,
        superorder=witness,
        oracle_agreement=agreement,
    )
