"""Ternary quadratic forms over Z: content, half-discriminant, change of
basis, and p-local normal forms.

A form is Q(x,y,z) = a x^2 + b y^2 + c z^2 + u yz + v xz + w xy, stored
as the integer 6-tuple (a, b, c, u, v, w). Degenerate forms (vanishing
half-discriminant) are rejected at construction.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm

from .errors import DegenerateFormError, HypothesisViolationError, InputError
from .numtheory import is_prime, sqrt_mod


def half_disc_tuple(a, b, c, u, v, w):
    """4abc + uvw - a u^2 - b v^2 - c w^2 (works for int or Fraction)."""
    return 4 * a * b * c + u * v * w - a * u * u - b * v * v - c * w * w


@dataclass(frozen=True)
class TernaryForm:
    a: int
    b: int
    c: int
    u: int
    v: int
    w: int

    def __post_init__(self):
        for x in self.coeffs():
            if not isinstance(x, int):
                raise InputError("form coefficients must be integers")
        if half_disc_tuple(*self.coeffs()) == 0:
            raise DegenerateFormError(f"degenerate form {self.coeffs()}")

    def coeffs(self):
        return (self.a, self.b, self.c, self.u, self.v, self.w)

    def __call__(self, x, y, z):
        a, b, c, u, v, w = self.coeffs()
        return a * x * x + b * y * y + c * z * z + u * y * z + v * x * z + w * x * y

    def to_json(self):
        return list(self.coeffs())

    @classmethod
    def from_json(cls, data) -> "TernaryForm":
        if not isinstance(data, (list, tuple)) or len(data) != 6:
            raise InputError("a form is a 6-element list [a,b,c,u,v,w]")
        try:
            coeffs = [int(x) for x in data]
        except (TypeError, ValueError) as exc:
            raise InputError(f"non-integer form coefficient in {data}") from exc
        for orig, val in zip(data, coeffs):
            if isinstance(orig, float) and orig != val:
                raise InputError(f"non-integer form coefficient {orig}")
        return cls(*coeffs)


def form_content(q: TernaryForm) -> int:
    """gcd of the six coefficients; the form is primitive iff this is 1."""
    g = 0
    for x in q.coeffs():
        g = gcd(g, x)
    return g


def half_discriminant(q: TernaryForm) -> int:
    return half_disc_tuple(*q.coeffs())


def _q_eval(coeffs, vec):
    a, b, c, u, v, w = coeffs
    x, y, z = vec
    return a * x * x + b * y * y + c * z * z + u * y * z + v * x * z + w * x * y


def _q_polar(coeffs, r, s):
    both = tuple(ri + si for ri, si in zip(r, s))
    return _q_eval(coeffs, both) - _q_eval(coeffs, r) - _q_eval(coeffs, s)


def _transform_coeffs(coeffs, umat):
    """Coefficients of Q(v @ umat): rows of umat are the new basis vectors."""
    r0, r1, r2 = umat
    return (
        _q_eval(coeffs, r0),
        _q_eval(coeffs, r1),
        _q_eval(coeffs, r2),
        _q_polar(coeffs, r1, r2),
        _q_polar(coeffs, r0, r2),
        _q_polar(coeffs, r0, r1),
    )


def _det3(m):
    return (
        m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
        - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
        + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
    )


def _mat3_mul(a, b):
    return tuple(
        tuple(sum(a[i][k] * b[k][j] for k in range(3)) for j in range(3)) for i in range(3)
    )


_ID3 = ((Fraction(1), Fraction(0), Fraction(0)),
        (Fraction(0), Fraction(1), Fraction(0)),
        (Fraction(0), Fraction(0), Fraction(1)))


def _as_frac_mat(umat):
    return tuple(tuple(Fraction(x) for x in row) for row in umat)


def transform(q: TernaryForm, umat) -> TernaryForm:
    """The form Q o U. U's rows are the new basis in old coordinates.

    U may be rational, but must be invertible and yield integer
    coefficients; half_discriminant picks up a factor det(U)^2.
    """
    u = _as_frac_mat(umat)
    if _det3(u) == 0:
        raise InputError("singular change of basis")
    new = _transform_coeffs(q.coeffs(), u)
    if any(x.denominator != 1 for x in new):
        raise InputError("transform does not yield an integral form")
    return TernaryForm(*(int(x) for x in new))


def _val_frac(x, p) -> int | float:
    """p-adic valuation of a Fraction (inf for 0)."""
    x = Fraction(x)
    if x == 0:
        return math.inf
    e, n = 0, x.numerator
    while n % p == 0:
        n //= p
        e += 1
    d = x.denominator
    while d % p == 0:
        d //= p
        e -= 1
    return e


def _swap_xy():
    return ((0, 1, 0), (1, 0, 0), (0, 0, 1))


def _swap_xz():
    return ((0, 0, 1), (0, 1, 0), (1, 0, 0))


def _swap_yz():
    return ((1, 0, 0), (0, 0, 1), (0, 1, 0))


class _Reducer:
    """Tracks a cumulative change of basis while reducing a form."""

    def __init__(self, q: TernaryForm, p: int):
        self.p = p
        self.coeffs = tuple(Fraction(x) for x in q.coeffs())
        self.u = _ID3

    def apply(self, step):
        step = _as_frac_mat(step)
        self.coeffs = _transform_coeffs(self.coeffs, step)
        self.u = _mat3_mul(step, self.u)

    def val(self, i):
        return _val_frac(self.coeffs[i], self.p)


def _split_off_axis(red: _Reducer):
    """Reduce to the shape (a1, b1, c1, u1, 0, 0) by an orthogonal split.

    Splits off a one-dimensional block into the x slot; the (y,z) slot
    keeps a binary form whose cross coefficient survives only at p = 2.
    """
    p = red.p
    sigma = min(red.val(i) for i in range(6))
    if p != 2:
        # make some diagonal coefficient attain the minimal valuation
        if min(red.val(i) for i in range(3)) > sigma:
            for idx, step_pair in (
                (3, (((1, 0, 0), (0, 1, 1), (0, 0, 1)), ((1, 0, 0), (0, 1, -1), (0, 0, 1)))),
                (4, (((1, 0, 1), (0, 1, 0), (0, 0, 1)), ((1, 0, -1), (0, 1, 0), (0, 0, 1)))),
                (5, (((1, 1, 0), (0, 1, 0), (0, 0, 1)), ((1, -1, 0), (0, 1, 0), (0, 0, 1)))),
            ):
                if red.val(idx) == sigma:
                    plus, minus = step_pair
                    probe = _transform_coeffs(red.coeffs, _as_frac_mat(plus))
                    red.apply(plus if min(_val_frac(x, p) for x in probe[:3]) == sigma else minus)
                    break
        diag_at = next(i for i in range(3) if red.val(i) == sigma)
        if diag_at == 1:
            red.apply(_swap_xy())
        elif diag_at == 2:
            red.apply(_swap_xz())
        a = red.coeffs[0]
        red.apply(((1, 0, 0), (-red.coeffs[5] / (2 * a), 1, 0), (0, 0, 1)))
        red.apply(((1, 0, 0), (0, 1, 0), (-red.coeffs[4] / (2 * a), 0, 1)))
        # now handle the (b, c, u) binary: diagonalize
        sigma2 = min(red.val(i) for i in (1, 2, 3))
        if red.val(1) > sigma2 and red.val(2) > sigma2:
            plus = ((1, 0, 0), (0, 1, 1), (0, 0, 1))
            probe = _transform_coeffs(red.coeffs, _as_frac_mat(plus))
            if _val_frac(probe[1], p) == sigma2:
                red.apply(plus)
            else:
                red.apply(((1, 0, 0), (0, 1, -1), (0, 0, 1)))
        if red.val(1) > red.val(2):
            red.apply(_swap_yz())
        b = red.coeffs[1]
        red.apply(((1, 0, 0), (0, 1, 0), (0, -red.coeffs[3] / (2 * b), 1)))
        return
    # p = 2: find a diagonal slot whose adjacent crosses are strictly deeper
    adj = {0: (5, 4), 1: (5, 3), 2: (4, 3)}
    pick = next(
        (d for d in range(3)
         if red.val(d) == sigma and all(red.val(t) > sigma for t in adj[d])),
        None,
    )
    if pick is not None:
        if pick == 1:
            red.apply(_swap_xy())
        elif pick == 2:
            red.apply(_swap_xz())
        a = red.coeffs[0]
        red.apply(((1, 0, 0), (-red.coeffs[5] / (2 * a), 1, 0), (0, 0, 1)))
        red.apply(((1, 0, 0), (0, 1, 0), (-red.coeffs[4] / (2 * a), 0, 1)))
        return
    # an even binary block carries the minimum; move it to the (x,y) slot
    if red.val(5) != sigma:
        if red.val(4) == sigma:
            red.apply(_swap_yz())
        else:
            red.apply(_swap_xz())
    assert red.val(5) == sigma
    a, b, c, u, v, w = red.coeffs
    d = 4 * a * b - w * w
    alpha = (u * w - 2 * b * v) / d
    beta = (v * w - 2 * a * u) / d
    red.apply(((alpha, beta, 1), (1, 0, 0), (0, 1, 0)))


def local_normal_form(q: TernaryForm, p: int) -> tuple[TernaryForm, tuple]:
    """Normal form (a1, b1, c1, u1, 0, 0) at p, with u1 = 0 for odd p.

    Returns (Q1, U) where U has p-unit determinant and Q1 equals
    s^2 * (Q o U) for a p-coprime integer s clearing denominators; the
    p-adic valuations of content and half-discriminant are preserved.
    """
    if not is_prime(p):
        raise InputError(f"{p} is not prime")
    red = _Reducer(q, p)
    _split_off_axis(red)
    coeffs = red.coeffs
    assert coeffs[4] == 0 and coeffs[5] == 0
    if p != 2:
        assert coeffs[3] == 0
    s = 1
    for x in coeffs:
        s = lcm(s, Fraction(x).denominator)
    if s % p == 0:
        raise InputError(f"internal: denominator not coprime to {p}")
    out = TernaryForm(*(int(x * s * s) for x in coeffs))
    # consistency: the recorded transform reproduces the output up to s^2
    check = _transform_coeffs(tuple(Fraction(x) for x in q.coeffs()), red.u)
    assert tuple(x * s * s for x in check) == tuple(Fraction(x) for x in out.coeffs())
    assert _val_frac(_det3(red.u), p) == 0
    cv = min(_val_frac(x, p) for x in q.coeffs())
    assert min(_val_frac(x, p) for x in out.coeffs()) == cv
    assert _val_frac(half_discriminant(out), p) == _val_frac(half_discriminant(q), p)
    return out, red.u


def _case_tag(coeffs, p):
    """Case tag 'i'/'ii' if the ramified-nonbasic shape predicates hold."""
    a, b, c, u, v, w = coeffs
    if v != 0 or u % p or w % p or c % (p * p):
        return None
    case_i = a % p != 0 and b % (p * p) == 0
    case_ii = a % (p * p) == 0 and b % p != 0 and w == 0
    if case_i == case_ii:
        return None
    return "i" if case_i else "ii"


def ramified_nonbasic_normal_form(q: TernaryForm, p: int):
    """Good-basis shape for Gorenstein, residually ramified, non-basic
    orders: (a, b, c, u, 0, w) with p | u, w and p^2 | c, landing in
    case 'i' (a a p-unit, p^2 | b) or case 'ii' (p^2 | a, b a p-unit,
    w = 0).

    Returns (form, U, tag). Raises HypothesisViolationError as soon as a
    constructive step contradicts the assumed predicates.
    """
    if not is_prime(p):
        raise InputError(f"{p} is not prime")
    from .local import is_bass_local, residual_type
    from .orders import clifford_order

    if form_content(q) % p == 0:
        raise HypothesisViolationError(f"form is not p-primitive at {p} (not Gorenstein)")
    order = clifford_order(q)
    rt = residual_type(order, p)
    if rt.name != "ResiduallyRamified":
        raise HypothesisViolationError(f"order is {rt.name}, not residually ramified, at {p}")
    if is_bass_local(order, p):
        raise HypothesisViolationError(f"order is basic at {p}")

    tag = _case_tag(q.coeffs(), p)
    if tag is not None:
        return q, _ID3, tag

    q1, u_total = local_normal_form(q, p)
    red = _Reducer(q1, p)

    def fail(msg):
        raise HypothesisViolationError(msg)

    if p != 2:
        units = [i for i in range(3) if red.val(i) == 0]
        if not units:
            fail("no unit diagonal coefficient (not Gorenstein)")
        if len(units) > 1:
            fail("two unit diagonal coefficients (not residually ramified)")
        if units[0] == 1:
            red.apply(_swap_xy())
        elif units[0] == 2:
            red.apply(_swap_xz())
        if red.val(1) < 2 or red.val(2) < 2:
            fail("p^2 does not divide both non-unit diagonal coefficients (order is basic)")
    else:
        if red.val(3) < 1:
            fail("cross coefficient u is odd (order is basic or not ramified)")
        if red.val(2) >= 1:
            pass
        elif red.val(1) >= 1:
            red.apply(_swap_yz())
        else:
            b1 = int(red.coeffs[1])
            c1 = int(red.coeffs[2])
            s1 = sqrt_mod((-c1 * pow(b1, -1, p)) % p, p)
            if s1 is None:
                fail("residue -c/b is not a square (not residually ramified)")
            red.apply(((1, 0, 0), (0, 1, 0), (0, s1, 1)))
        if red.val(2) < 2:
            fail("p^2 does not divide c (order is basic)")
        if red.val(0) >= 1:
            if red.val(1) >= 1:
                fail("all coefficients divisible by p (not Gorenstein)")
            if red.val(0) < 2:
                fail("p^2 does not divide a (order is basic)")
        else:
            a2 = int(red.coeffs[0])
            b2 = int(red.coeffs[1])
            s2 = sqrt_mod((-b2 * pow(a2, -1, p)) % p, p)
            if s2 is None:
                fail("residue -b/a is not a square (not residually ramified)")
            if s2:
                red.apply(((1, 0, 0), (s2, 1, 0), (0, 0, 1)))
            if red.val(1) < 2:
                fail("p^2 does not divide b (order is basic)")

    coeffs = red.coeffs
    assert all(Fraction(x).denominator == 1 for x in coeffs)
    out = TernaryForm(*(int(x) for x in coeffs))
    tag = _case_tag(out.coeffs(), p)
    if tag is None:
        raise HypothesisViolationError("normal form failed its own shape predicates")
    return out, _mat3_mul(red.u, u_total), tag


def random_unimodular3(rng, steps: int = 6):
    """Random element of GL3(Z) as a product of elementary matrices."""
    m = [[1, 0, 0], [0, 1, 0], [0, 0, 1]]
    for _ in range(steps):
        kind = rng.randrange(3)
        if kind == 0:
            i, j = rng.sample(range(3), 2)
            m[i], m[j] = m[j], m[i]
        elif kind == 1:
            i = rng.randrange(3)
            m[i] = [-x for x in m[i]]
        else:
            i, j = rng.sample(range(3), 2)
            t = rng.randint(-2, 2)
            m[i] = [x + t * y for x, y in zip(m[i], m[j])]
    return tuple(tuple(row) for row in m)
