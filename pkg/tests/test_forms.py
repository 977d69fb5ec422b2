import random
from fractions import Fraction

import pytest

from helpers import (
    form_to_poly,
    left_mul_matrix,
    poly_to_form_coeffs,
    substitute_linear,
)
from quatorders.errors import DegenerateFormError, HypothesisViolationError, InputError
from quatorders.forms import (
    TernaryForm,
    _transform_coeffs,
    _val_frac,
    form_content,
    half_disc_tuple,
    half_discriminant,
    local_normal_form,
    ramified_nonbasic_normal_form,
    random_unimodular3,
    transform,
)
from quatorders.numtheory import valuation


def gram_discrd_oracle(coeffs):
    """Reduced discriminant via traces of the regular representation:
    trd(x) = Tr(L_x) / 2, independent of the closed trace formula."""
    units = [(1, 0, 0, 0), (0, 1, 0, 0), (0, 0, 1, 0), (0, 0, 0, 1)]
    from quatorders.orders import mul_vec

    gram = []
    for a in units:
        row = []
        for b in units:
            prod = mul_vec(coeffs, a, b)
            tr = sum(left_mul_matrix(coeffs, prod)[r][r] for r in range(4))
            row.append(Fraction(tr, 2))
        gram.append(row)
    from helpers import det4

    d = det4(gram)
    import math

    root = math.isqrt(abs(int(d)))
    assert root * root == abs(int(d))
    return root


def test_construction_rejects_degenerate():
    with pytest.raises(DegenerateFormError):
        TernaryForm(0, 0, 0, 0, 0, 0)
    with pytest.raises(DegenerateFormError):
        TernaryForm(1, 1, 0, 0, 0, 0)


def test_form_content_examples():
    assert form_content(TernaryForm(1, 1, 1, 0, 0, 0)) == 1
    assert form_content(TernaryForm(0, 0, -2, 0, 0, 2)) == 2
    assert form_content(TernaryForm(2, 4, 6, 0, 2, 8)) == 2


def test_half_discriminant_examples_against_gram_oracle():
    for coeffs, expected in [
        ((1, 1, 1, 0, 0, 0), 4),
        ((0, 0, -1, 0, 0, 1), 1),
        ((1, 1, 1, 1, 1, 1), 2),
    ]:
        q = TernaryForm(*coeffs)
        assert abs(half_discriminant(q)) == expected
        assert gram_discrd_oracle(coeffs) == expected


def test_transform_identity_and_swap():
    q = TernaryForm(2, 3, 5, 1, 0, 0)
    ident = ((1, 0, 0), (0, 1, 0), (0, 0, 1))
    assert transform(q, ident) == q
    swap_yz = ((1, 0, 0), (0, 0, 1), (0, 1, 0))
    assert transform(q, swap_yz) == TernaryForm(2, 5, 3, 1, 0, 0)


def test_transform_shear_matches_symbolic_substitution():
    rng = random.Random(12)
    for _ in range(100):
        coeffs = tuple(rng.randint(-5, 5) for _ in range(6))
        if half_disc_tuple(*coeffs) == 0:
            continue
        q = TernaryForm(*coeffs)
        u = random_unimodular3(rng)
        result = transform(q, u)
        poly = substitute_linear(form_to_poly(coeffs), u)
        assert poly_to_form_coeffs(poly) == tuple(Fraction(x) for x in result.coeffs())


def test_transform_scales_half_discriminant_by_det_squared():
    rng = random.Random(13)
    shear = ((1, 0, 0), (1, 1, 0), (0, 0, 1))  # x -> x, y -> y + x, z -> z
    q = TernaryForm(1, 1, 1, 0, 0, 1)
    assert transform(q, shear).coeffs() == (1, 3, 1, 0, 0, 3)
    for _ in range(100):
        coeffs = tuple(rng.randint(-4, 4) for _ in range(6))
        if half_disc_tuple(*coeffs) == 0:
            continue
        q = TernaryForm(*coeffs)
        u = random_unimodular3(rng)
        from helpers import det4

        d3 = (
            u[0][0] * (u[1][1] * u[2][2] - u[1][2] * u[2][1])
            - u[0][1] * (u[1][0] * u[2][2] - u[1][2] * u[2][0])
            + u[0][2] * (u[1][0] * u[2][1] - u[1][1] * u[2][0])
        )
        assert half_discriminant(transform(q, u)) == d3 * d3 * half_discriminant(q)
        assert form_content(transform(q, u)) == form_content(q)


def test_transform_rejects_singular():
    q = TernaryForm(1, 1, 1, 0, 0, 0)
    with pytest.raises(InputError):
        transform(q, ((1, 0, 0), (1, 0, 0), (0, 0, 1)))


def test_local_normal_form_diagonal_fixed_point():
    q = TernaryForm(1, -1, 2, 0, 0, 0)
    q1, u = local_normal_form(q, 5)
    assert q1 == q
    assert u == ((1, 0, 0), (0, 1, 0), (0, 0, 1))


def test_local_normal_form_split_form_at_5():
    q = TernaryForm(0, 0, -1, 0, 0, 1)
    q1, u = local_normal_form(q, 5)
    a1, b1, c1, u1, v1, w1 = q1.coeffs()
    assert (u1, v1, w1) == (0, 0, 0)
    # half-discriminant 1 times a square of a 5-unit
    hd = half_discriminant(q1)
    assert valuation(hd, 5) == 0
    _assert_roundtrip(q, q1, u, 5)


def test_local_normal_form_all_ones_at_2():
    q = TernaryForm(1, 1, 1, 1, 1, 1)
    q1, u = local_normal_form(q, 2)
    assert q1.v == 0 and q1.w == 0
    assert valuation(half_discriminant(q1), 2) == 1
    _assert_roundtrip(q, q1, u, 2)


def _assert_roundtrip(q, q1, u, p):
    moved = _transform_coeffs(tuple(Fraction(x) for x in q.coeffs()),
                              tuple(tuple(Fraction(x) for x in r) for r in u))
    ratios = {Fraction(new) / old for new, old in zip(q1.coeffs(), moved) if old != 0}
    assert len(ratios) == 1
    lam = ratios.pop()
    assert _val_frac(lam, p) == 0
    import math

    assert math.isqrt(lam.numerator) ** 2 == lam.numerator
    assert math.isqrt(lam.denominator) ** 2 == lam.denominator


def test_local_normal_form_preserves_valuations():
    rng = random.Random(5)
    for _ in range(150):
        coeffs = tuple(rng.randint(-20, 20) for _ in range(6))
        if half_disc_tuple(*coeffs) == 0:
            continue
        q = TernaryForm(*coeffs)
        for p in (2, 3, 7):
            q1, u = local_normal_form(q, p)
            assert valuation(form_content(q1), p) == valuation(form_content(q), p)
            assert valuation(half_discriminant(q1), p) == valuation(half_discriminant(q), p)
            _assert_roundtrip(q, q1, u, p)


def first_gorenstein_ramified_nonbasic(bound, p):
    import itertools

    from quatorders.local import ResidualType, is_basic_bruteforce, residual_type
    from quatorders.orders import GoodBasisOrder

    for coeffs in itertools.product(range(-bound, bound + 1), repeat=6):
        if half_disc_tuple(*coeffs) == 0:
            continue
        order = GoodBasisOrder(TernaryForm(*coeffs))
        if form_content(order.form) % p == 0:
            continue
        if residual_type(order, p) != ResidualType.ResiduallyRamified:
            continue
        if is_basic_bruteforce(order, p):
            continue
        return order.form
    raise AssertionError("no qualifying form found")


def test_ramified_normal_form_shape_predicates():
    q = first_gorenstein_ramified_nonbasic(2, 2)
    out, u, tag = ramified_nonbasic_normal_form(q, 2)
    a, b, c, uu, vv, ww = out.coeffs()
    assert vv == 0 and uu % 2 == 0 and ww % 2 == 0 and c % 4 == 0
    if tag == "i":
        assert a % 2 != 0 and b % 4 == 0
    else:
        assert a % 4 == 0 and b % 2 != 0 and ww == 0


def test_ramified_normal_form_fast_path():
    # already in case-(i) shape: a unit, 4 | b, 4 | c, u = w = 0, and the
    # associated order is Gorenstein, ramified, non-basic
    q = TernaryForm(-1, 4, 4, 0, 0, 0)
    out, u, tag = ramified_nonbasic_normal_form(q, 2)
    assert out == q and tag == "i"
    assert u == tuple(tuple(Fraction(x) for x in row) for row in
                      ((1, 0, 0), (0, 1, 0), (0, 0, 1)))


def test_ramified_normal_form_rejects_split():
    with pytest.raises(HypothesisViolationError):
        ramified_nonbasic_normal_form(TernaryForm(0, 0, -1, 0, 0, 1), 2)


def test_split_is_detected_by_idempotent_search():
    # oracle for the previous test: O/rad of the split order contains a
    # nontrivial idempotent mod 2
    from quatorders.gfp import in_row_space
    from quatorders.local import _radical_rows
    from quatorders.orders import mul_vec

    coeffs = (0, 0, -1, 0, 0, 1)
    rad = _radical_rows(coeffs, 2)
    import itertools

    found = False
    for vec in itertools.product(range(2), repeat=4):
        sq = [x % 2 for x in mul_vec(coeffs, vec, vec)]
        diff = [(s - v) % 2 for s, v in zip(sq, vec)]
        if in_row_space(diff, rad, 2):
            trivial = in_row_space(vec, rad, 2) or in_row_space(
                [(vec[0] - 1) % 2] + [v % 2 for v in vec[1:]], rad, 2
            )
            if not trivial:
                found = True
    assert found


def test_json_roundtrip():
    q = TernaryForm(1, -2, 3, 0, 5, -6)
    assert TernaryForm.from_json(q.to_json()) == q
    with pytest.raises(InputError):
        TernaryForm.from_json([1, 2, 3])
    with pytest.raises(InputError):
        TernaryForm.from_json([1, 2, 3, 4, 5, 6.5])
