"""Quaternion orders presented by a good basis 1, i, j, k.

The six structure constants (a, b, c, u, v, w) double as the ternary
form coefficients; the multiplication table is

    i^2 = u i - bc        j k = a (u - i)
    j^2 = v j - ac        k i = b (v - j)
    k^2 = w k - ab        i j = c (w - k)

with the remaining three products forced by the conjugation
anti-automorphism (e.g. j i = -uv + v i + u j + c k). Elements are
coordinate 4-vectors (t, x, y, z) meaning t + x i + y j + z k.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import gcd

from .errors import (
    DegenerateFormError,
    InputError,
    InternalConsistencyError,
    NotAnOrderError,
)
from .forms import TernaryForm, half_discriminant
from .intmat import adjugate, det, identity, xgcd
from .lattices import (
    CanonicalLatticeBasis,
    canonicalize,
    contains,
    coordinates,
    lattice_scale as _basis_scale,
    lattice_sum as _basis_sum,
)
from .numtheory import perfect_square_root


@dataclass(frozen=True)
class GoodBasisOrder:
    form: TernaryForm

    def coeffs(self):
        return self.form.coeffs()

    def to_json(self):
        return {"form": self.form.to_json()}


@dataclass(frozen=True)
class QuatElement:
    t: Fraction
    x: Fraction
    y: Fraction
    z: Fraction

    @classmethod
    def of(cls, t, x=0, y=0, z=0) -> "QuatElement":
        return cls(Fraction(t), Fraction(x), Fraction(y), Fraction(z))

    def coords(self):
        return (self.t, self.x, self.y, self.z)

    def to_json(self):
        return [str(c) for c in self.coords()]

    @classmethod
    def from_json(cls, data) -> "QuatElement":
        if not isinstance(data, (list, tuple)) or len(data) != 4:
            raise InputError("an element is a 4-element list [t,x,y,z]")
        return cls(*(Fraction(str(c)) for c in data))


@lru_cache(maxsize=None)
def _mul_table(coeffs):
    """Products e_m * e_k of the non-unit basis vectors as 4-vectors."""
    a, b, c, u, v, w = coeffs
    return (
        ((-b * c, u, 0, 0), (c * w, 0, 0, -c), (-u * w, w, b, u)),
        ((-u * v, v, u, c), (-a * c, 0, v, 0), (a * u, -a, 0, 0)),
        ((b * v, 0, -b, 0), (-v * w, a, w, v), (-a * b, 0, 0, w)),
    )


def mul_vec(coeffs, xv, yv):
    """Product of two coordinate 4-vectors (exact, int or Fraction)."""
    table = _mul_table(coeffs)
    t0, x0 = xv[0], yv[0]
    out = [
        t0 * x0,
        t0 * yv[1] + x0 * xv[1],
        t0 * yv[2] + x0 * xv[2],
        t0 * yv[3] + x0 * xv[3],
    ]
    for m in (1, 2, 3):
        xm = xv[m]
        if xm:
            row = table[m - 1]
            for k in (1, 2, 3):
                yk = yv[k]
                if yk:
                    f = xm * yk
                    tm = row[k - 1]
                    out[0] += f * tm[0]
                    out[1] += f * tm[1]
                    out[2] += f * tm[2]
                    out[3] += f * tm[3]
    return out


def trd_vec(coeffs, vec):
    _, _, _, u, v, w = coeffs
    return 2 * vec[0] + u * vec[1] + v * vec[2] + w * vec[3]


def nrd_vec(coeffs, vec):
    a, b, c, u, v, w = coeffs
    t, x, y, z = vec
    pure_trace = u * x + v * y + w * z
    nrd0 = (
        b * c * x * x + a * c * y * y + a * b * z * z
        + (u * v - c * w) * x * y + (u * w - b * v) * x * z + (v * w - a * u) * y * z
    )
    return t * t + t * pure_trace + nrd0


def conj_vec(coeffs, vec):
    _, _, _, u, v, w = coeffs
    t, x, y, z = vec
    return [t + u * x + v * y + w * z, -x, -y, -z]


def multiply(order: GoodBasisOrder, alpha: QuatElement, beta: QuatElement) -> QuatElement:
    return QuatElement(*mul_vec(order.coeffs(), alpha.coords(), beta.coords()))


def trd(order: GoodBasisOrder, alpha: QuatElement) -> Fraction:
    return Fraction(trd_vec(order.coeffs(), alpha.coords()))


def nrd(order: GoodBasisOrder, alpha: QuatElement) -> Fraction:
    return Fraction(nrd_vec(order.coeffs(), alpha.coords()))


def conj(order: GoodBasisOrder, alpha: QuatElement) -> QuatElement:
    return QuatElement(*(Fraction(c) for c in conj_vec(order.coeffs(), alpha.coords())))


def elem_disc(order: GoodBasisOrder, alpha: QuatElement) -> Fraction:
    t = trd(order, alpha)
    return t * t - 4 * nrd(order, alpha)


def check_associativity(order: GoodBasisOrder) -> None:
    """Verify (e_i e_j) e_k == e_i (e_j e_k) on all 64 basis triples."""
    coeffs = order.coeffs()
    basis = [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]]
    prods = [[mul_vec(coeffs, ei, ej) for ej in basis] for ei in basis]
    for i in range(4):
        for j in range(4):
            for k in range(4):
                lhs = mul_vec(coeffs, prods[i][j], basis[k])
                rhs = mul_vec(coeffs, basis[i], prods[j][k])
                if lhs != rhs:
                    raise InternalConsistencyError(
                        f"associativity fails on triple {(i, j, k)} for {coeffs}"
                    )


def clifford_order(q: TernaryForm) -> GoodBasisOrder:
    """Even Clifford order of Q: structure constants are Q's coefficients."""
    order = GoodBasisOrder(q)
    check_associativity(order)
    return order


def order_form(order: GoodBasisOrder) -> TernaryForm:
    """Inverse of clifford_order on good-basis data."""
    return order.form


def gram_matrix(order: GoodBasisOrder):
    """Entries trd(e_i e_j) on the basis 1, i, j, k."""
    a, b, c, u, v, w = order.coeffs()
    return (
        (2, u, v, w),
        (u, u * u - 2 * b * c, c * w, b * v),
        (v, c * w, v * v - 2 * a * c, a * u),
        (w, b * v, a * u, w * w - 2 * a * b),
    )


@lru_cache(maxsize=None)
def _discrd_cached(coeffs):
    g = gram_matrix(GoodBasisOrder(TernaryForm(*coeffs)))
    d = det([list(r) for r in g])
    root = perfect_square_root(abs(d))
    if root is None:
        raise InternalConsistencyError(f"|det Gram| = {abs(d)} is not a perfect square")
    return root


def gram_and_discrd(order: GoodBasisOrder):
    """(Gram matrix, reduced discriminant); |det Gram| = discrd^2."""
    return gram_matrix(order), _discrd_cached(order.coeffs())


def reduced_discriminant(order: GoodBasisOrder) -> int:
    disc = _discrd_cached(order.coeffs())
    if disc != abs(half_discriminant(order.form)):
        raise InternalConsistencyError(
            f"Gram discriminant {disc} != |half discriminant| for {order.coeffs()}"
        )
    return disc


@dataclass(frozen=True)
class QuatLattice:
    ambient: GoodBasisOrder
    basis: CanonicalLatticeBasis

    def rows(self):
        return self.basis.rows()

    def to_json(self):
        return self.basis.to_json()


def unit_lattice(order: GoodBasisOrder) -> QuatLattice:
    return QuatLattice(order, canonicalize(identity(4)))


def lattice_from_rows(order: GoodBasisOrder, rows) -> QuatLattice:
    return QuatLattice(order, canonicalize(rows))


def _same_ambient(a: QuatLattice, b: QuatLattice):
    if a.ambient != b.ambient:
        raise InputError("lattices live in different ambient orders")


def lattice_sum(a: QuatLattice, b: QuatLattice) -> QuatLattice:
    _same_ambient(a, b)
    return QuatLattice(a.ambient, _basis_sum(a.basis, b.basis))


def lattice_scale(a: QuatLattice, s) -> QuatLattice:
    return QuatLattice(a.ambient, _basis_scale(a.basis, s))


def lattice_product(a: QuatLattice, b: QuatLattice) -> QuatLattice:
    """Lattice generated by all products xy with x in a, y in b."""
    _same_ambient(a, b)
    coeffs = a.ambient.coeffs()
    rows = []
    for x in a.rows():
        for y in b.rows():
            rows.append(mul_vec(coeffs, x, y))
    return QuatLattice(a.ambient, canonicalize(rows))


def lattice_contains(lat: QuatLattice, vec) -> bool:
    return contains(lat.basis, vec)


def lattice_index(sub: QuatLattice, sup: QuatLattice) -> Fraction:
    """[sup : sub] as a covolume ratio."""
    _same_ambient(sub, sup)
    return sub.basis.covolume() / sup.basis.covolume()


def is_order(lat: QuatLattice) -> bool:
    """1 in L and L closed under multiplication."""
    if not contains(lat.basis, (1, 0, 0, 0)):
        return False
    coeffs = lat.ambient.coeffs()
    rows = lat.rows()
    for x in rows:
        for y in rows:
            if not contains(lat.basis, mul_vec(coeffs, x, y)):
                return False
    return True


def is_integral_lattice(lat: QuatLattice) -> bool:
    """Every element integral: trd, nrd integral on a basis plus all
    mixed traces trd(x conj(y)) integral."""
    coeffs = lat.ambient.coeffs()
    rows = lat.rows()
    for x in rows:
        if Fraction(trd_vec(coeffs, x)).denominator != 1:
            return False
        if Fraction(nrd_vec(coeffs, x)).denominator != 1:
            return False
    for idx, x in enumerate(rows):
        for y in rows[idx + 1:]:
            mixed = trd_vec(coeffs, mul_vec(coeffs, x, conj_vec(coeffs, y)))
            if Fraction(mixed).denominator != 1:
                return False
    return True


def _right_mul_matrix(coeffs, beta):
    """Matrix M with x @ M = x * beta on coordinate rows."""
    basis = ((1, 0, 0, 0), (0, 1, 0, 0), (0, 0, 1, 0), (0, 0, 0, 1))
    return [mul_vec(coeffs, e, beta) for e in basis]


def _left_mul_matrix(coeffs, beta):
    """Matrix M with x @ M = beta * x on coordinate rows."""
    basis = ((1, 0, 0, 0), (0, 1, 0, 0), (0, 0, 1, 0), (0, 0, 0, 1))
    return [mul_vec(coeffs, beta, e) for e in basis]


def _frac_mat_inverse(rows):
    """Exact inverse of a 4x4 Fraction matrix."""
    d = det(rows)
    if d == 0:
        raise InputError("singular matrix")
    adj = adjugate(rows)
    return [[Fraction(x) / d for x in row] for row in adj]


def _solve_multiplier_lattice(lat: QuatLattice, mats):
    """{x : x @ M has integer coordinates w.r.t. lat, for all M in mats}."""
    rows = lat.rows()
    binv = _frac_mat_inverse([list(r) for r in rows])
    # phi: 4 x 16 rational, columns grouped per basis row of lat
    phi = [[Fraction(0)] * 16 for _ in range(4)]
    for idx, m in enumerate(mats):
        s = [[sum(Fraction(m[r][t]) * binv[t][c] for t in range(4)) for c in range(4)]
             for r in range(4)]
        for r in range(4):
            for c in range(4):
                phi[r][4 * idx + c] = s[r][c]
    # greedy choice of 4 independent columns
    chosen = []
    probe: list[list[Fraction]] = []
    for c in range(16):
        col = [phi[r][c] for r in range(4)]
        test = probe + [list(col)]
        if _rank(test) == len(test):
            probe = test
            chosen.append(c)
            if len(chosen) == 4:
                break
    if len(chosen) < 4:
        raise InternalConsistencyError("multiplier system is rank deficient")
    s_mat = [[phi[r][c] for c in chosen] for r in range(4)]
    s_inv = _frac_mat_inverse(s_mat)
    # overlattice: rows of the right inverse of phi
    g_rows = []
    for pos, c in enumerate(chosen):
        _ = c
        g_rows.append(s_inv[pos])
    lam0 = canonicalize(g_rows)
    b0 = lam0.rows()
    # integrality conditions on coordinates w.r.t. lam0
    n = [[sum(Fraction(b0[r][t]) * phi[t][c] for t in range(4)) for c in range(16)]
         for r in range(4)]
    e = 1
    for row in n:
        for x in row:
            e = e * x.denominator // gcd(e, x.denominator)
    c_int = [[int(x * e) for x in row] for row in n]
    from .intmat import left_kernel

    stacked = c_int + [[e if j == i else 0 for j in range(16)] for i in range(16)]
    kern = left_kernel(stacked)
    w_rows = [k[:4] for k in kern]
    final = []
    for wr in w_rows:
        final.append([sum(Fraction(wr[t]) * b0[t][c] for t in range(4)) for c in range(4)])
    return QuatLattice(lat.ambient, canonicalize(final))


def _rank(rows):
    work = [list(r) for r in rows]
    rank = 0
    ncols = len(work[0]) if work else 0
    for c in range(ncols):
        piv = next((i for i in range(rank, len(work)) if work[i][c]), None)
        if piv is None:
            continue
        work[rank], work[piv] = work[piv], work[rank]
        for i in range(len(work)):
            if i != rank and work[i][c]:
                f = Fraction(work[i][c]) / work[rank][c]
                work[i] = [x - f * y for x, y in zip(work[i], work[rank])]
        rank += 1
    return rank


def left_order(lat: QuatLattice) -> QuatLattice:
    """{x : x L is contained in L}."""
    coeffs = lat.ambient.coeffs()
    mats = [_right_mul_matrix(coeffs, beta) for beta in lat.rows()]
    result = _solve_multiplier_lattice(lat, mats)
    _check_multiplier(result, lat, left=True)
    return result


def right_order(lat: QuatLattice) -> QuatLattice:
    """{x : L x is contained in L}."""
    coeffs = lat.ambient.coeffs()
    mats = [_left_mul_matrix(coeffs, beta) for beta in lat.rows()]
    result = _solve_multiplier_lattice(lat, mats)
    _check_multiplier(result, lat, left=False)
    return result


def _check_multiplier(result: QuatLattice, lat: QuatLattice, left: bool) -> None:
    coeffs = lat.ambient.coeffs()
    if not is_order(result):
        raise InternalConsistencyError("multiplier lattice is not an order")
    for x in result.rows():
        for y in lat.rows():
            prod = mul_vec(coeffs, x, y) if left else mul_vec(coeffs, y, x)
            if not contains(lat.basis, prod):
                raise InternalConsistencyError("multiplier lattice fails containment")


def codifferent(order: GoodBasisOrder) -> QuatLattice:
    """Dual of the order under the trace pairing (rows of Gram^-1)."""
    g = [list(r) for r in gram_matrix(order)]
    d = det(g)
    adj = adjugate(g)
    rows = [[Fraction(x, d) for x in row] for row in adj]
    return QuatLattice(order, canonicalize(rows))


def complete_unimodular(w):
    """Integer matrix with determinant +-1 whose first row is w (gcd 1)."""
    w = list(w)
    n = len(w)
    if n == 1:
        return [[w[0]]]
    g = 0
    for x in w[1:]:
        g = gcd(g, x)
    if g == 0:
        rows = [[0] * n for _ in range(n)]
        rows[0] = list(w)
        seen = 0
        for r in range(1, n):
            seen += 1
            rows[r][seen] = 1
        return rows
    x, y, gg = xgcd(w[0], g)
    sub = complete_unimodular([t // g for t in w[1:]])
    rows = [list(w)]
    rows.append([-y] + [x * t for t in sub[0]])
    for extra in sub[1:]:
        rows.append([0] + list(extra))
    if gg != 1:
        raise InputError("vector is not primitive")
    return rows


def normalize_good_basis(lat: QuatLattice):
    """Convert an order-lattice to a good-basis presentation.

    Returns (GoodBasisOrder, transition) where the transition rows are
    the new basis 1, i, j, k in ambient coordinates.
    """
    if not is_order(lat):
        raise NotAnOrderError("lattice is not an order")
    coeffs = lat.ambient.coeffs()
    w = coordinates(lat.basis, (1, 0, 0, 0))
    g = 0
    for x in w:
        g = gcd(g, x)
    if g != 1:
        raise InternalConsistencyError("1 is not primitive in the order lattice")
    wmat = complete_unimodular(w)
    base = lat.rows()
    f = [[sum(Fraction(wmat[r][t]) * base[t][c] for t in range(4)) for c in range(4)]
         for r in range(4)]
    assert f[0] == [1, 0, 0, 0]
    finv = _frac_mat_inverse(f)

    def in_f_coords(vec):
        out = [sum(Fraction(vec[t]) * finv[t][c] for t in range(4)) for c in range(4)]
        if any(x.denominator != 1 for x in out):
            raise InternalConsistencyError("product leaves the order lattice")
        return [int(x) for x in out]

    p1 = in_f_coords(mul_vec(coeffs, f[2], f[3]))
    p2 = in_f_coords(mul_vec(coeffs, f[3], f[1]))
    p3 = in_f_coords(mul_vec(coeffs, f[1], f[2]))
    if p1[2] != p2[1] or p1[3] != p3[1] or p2[3] != p3[2]:
        raise InternalConsistencyError("good-basis translation system is inconsistent")
    x0, y0, z0 = p2[3], p1[3], p1[2]
    ivec = [f[1][0] - x0, f[1][1], f[1][2], f[1][3]]
    jvec = [f[2][0] - y0, f[2][1], f[2][2], f[2][3]]
    kvec = [f[3][0] - z0, f[3][1], f[3][2], f[3][3]]

    def as_int(x):
        x = Fraction(x)
        if x.denominator != 1:
            raise InternalConsistencyError("non-integral structure constant")
        return int(x)

    u = as_int(trd_vec(coeffs, ivec))
    v = as_int(trd_vec(coeffs, jvec))
    w_ = as_int(trd_vec(coeffs, kvec))
    trans = [[Fraction(1), Fraction(0), Fraction(0), Fraction(0)],
             [Fraction(c) for c in ivec],
             [Fraction(c) for c in jvec],
             [Fraction(c) for c in kvec]]
    tinv = _frac_mat_inverse(trans)

    def in_good_coords(vec):
        return [sum(Fraction(vec[t]) * tinv[t][c] for t in range(4)) for c in range(4)]

    jk = in_good_coords(mul_vec(coeffs, jvec, kvec))
    ki = in_good_coords(mul_vec(coeffs, kvec, ivec))
    ij = in_good_coords(mul_vec(coeffs, ivec, jvec))
    a = as_int(-jk[1])
    b = as_int(-ki[2])
    c = as_int(-ij[3])
    try:
        new_form = TernaryForm(a, b, c, u, v, w_)
    except DegenerateFormError as exc:
        raise InternalConsistencyError(f"normalization degenerated: {exc}") from exc
    # the full sixteen-entry table must match the extracted constants
    new_coeffs = new_form.coeffs()
    vecs = [trans[0], trans[1], trans[2], trans[3]]
    for m in range(4):
        for k in range(4):
            ambient = mul_vec(coeffs, vecs[m], vecs[k])
            table = mul_vec(new_coeffs, _unit(m), _unit(k))
            mapped = [sum(Fraction(table[t]) * trans[t][cc] for t in range(4))
                      for cc in range(4)]
            if [Fraction(x) for x in ambient] != mapped:
                raise InternalConsistencyError(
                    f"good-basis table mismatch at ({m},{k}) for {coeffs}"
                )
    new_order = GoodBasisOrder(new_form)
    lattice_gram = [[trd_vec(coeffs, mul_vec(coeffs, r1, r2)) for r2 in base] for r1 in base]
    lat_det = det([[Fraction(x) for x in row] for row in lattice_gram])
    if abs(lat_det) != reduced_discriminant(new_order) ** 2:
        raise InternalConsistencyError("reduced discriminant changed under normalization")
    return new_order, [tuple(r) for r in trans]


def _unit(m):
    e = [0, 0, 0, 0]
    e[m] = 1
    return e


_SCALAR_PART = None  # placeholder to keep module-level names tidy


def good_basis_change(order: GoodBasisOrder, umat):
    """Good basis of the transformed form Q o U inside the given order.

    U (rational 3x3, rows = new form basis in old coordinates) induces
    the basis 1, i', j', k' with vector parts given by cross products of
    the rows of U. Returns (new_coeffs, rows) where new_coeffs is the
    rational 6-tuple of Q o U and rows are ambient coordinates of the
    new basis.
    """
    a, b, c, u, v, w = order.coeffs()
    umat = [[Fraction(x) for x in row] for row in umat]
    sigma = ((Fraction(a), Fraction(0), Fraction(v)),
             (Fraction(w), Fraction(b), Fraction(0)),
             (Fraction(0), Fraction(u), Fraction(c)))

    def cross(r, s):
        return (r[1] * s[2] - r[2] * s[1], r[2] * s[0] - r[0] * s[2], r[0] * s[1] - r[1] * s[0])

    def scalar(r, s):
        return sum(r[si] * s[ti] * sigma[si][ti] for si in range(3) for ti in range(3))

    pairs = ((1, 2), (2, 0), (0, 1))
    rows = [(Fraction(1), Fraction(0), Fraction(0), Fraction(0))]
    for r_idx, s_idx in pairs:
        sc = scalar(umat[r_idx], umat[s_idx])
        cr = cross(umat[r_idx], umat[s_idx])
        rows.append((sc, cr[0], cr[1], cr[2]))
    from .forms import _transform_coeffs

    new_coeffs = _transform_coeffs((a, b, c, u, v, w), umat)
    # verify the transported basis satisfies the transported table
    coeffs = order.coeffs()
    for m in range(4):
        for k in range(4):
            ambient = mul_vec(coeffs, rows[m], rows[k])
            table = mul_vec(new_coeffs, _unit(m), _unit(k))
            mapped = [sum(Fraction(table[t]) * rows[t][cc] for t in range(4))
                      for cc in range(4)]
            if [Fraction(x) for x in ambient] != mapped:
                raise InternalConsistencyError("transported good basis fails its table")
    return new_coeffs, rows
