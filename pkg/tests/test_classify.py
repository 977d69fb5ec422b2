import itertools
import random

import pytest

from quatorders.classify import (
    classify,
    cross_validate,
    find_quadratic_witnesses,
    has_any_witness,
    is_fundamental_discriminant,
)
from quatorders.errors import CapacityError
from quatorders.forms import TernaryForm, half_disc_tuple
from quatorders.local import is_bass_local
from quatorders.numtheory import factor_trial
from quatorders.orders import GoodBasisOrder, clifford_order, elem_disc

M2 = clifford_order(TernaryForm(0, 0, -1, 0, 0, 1))
LIP = clifford_order(TernaryForm(1, 1, 1, 0, 0, 0))
ALL1 = clifford_order(TernaryForm(1, 1, 1, 1, 1, 1))
Z2M2 = clifford_order(TernaryForm(0, 0, -2, 0, 0, 2))


def brute_fundamental(d):
    """Independent (slow) fundamental-discriminant test: d classifies an
    integrally closed free quadratic ring iff d = 0, 1 mod 4, and no
    proper "conductor square" divides it compatibly."""
    if d == 0 or d % 4 in (2, 3):
        return False
    if d == 1:
        return True
    # d is fundamental iff for every f > 1 with f^2 | d, d/f^2 is not a
    # discriminant (not 0 or 1 mod 4)
    f = 2
    while f * f <= abs(d):
        if d % (f * f) == 0 and (d // (f * f)) % 4 in (0, 1):
            return False
        f += 1
    return True


def test_fundamental_examples():
    assert is_fundamental_discriminant(-4)
    assert not is_fundamental_discriminant(9)
    assert is_fundamental_discriminant(12)
    assert is_fundamental_discriminant(1)
    assert not is_fundamental_discriminant(0)
    assert not is_fundamental_discriminant(4)


def test_fundamental_against_bruteforce():
    for d in range(-400, 401):
        assert is_fundamental_discriminant(d) == brute_fundamental(d), d


def test_witnesses_sum_of_squares():
    wits = find_quadratic_witnesses(LIP, 4, 5)
    assert [w.discriminant for w in wits] == [-4, -8, -20, -24, -40]
    for w in wits:
        assert elem_disc(LIP, w.element) == w.discriminant
        assert is_fundamental_discriminant(w.discriminant)
    # discriminants are pairwise distinct by construction
    assert len({w.discriminant for w in wits}) == 5


def test_witnesses_split_order_d1():
    wits = find_quadratic_witnesses(M2, 1, 3)
    assert any(w.discriminant == 1 for w in wits)


def test_witnesses_nonbasic_empty():
    assert find_quadratic_witnesses(Z2M2, 10, 5) == []
    assert not has_any_witness(Z2M2, 12)


def test_classify_named_instances():
    rep = classify(M2, witness_height=2, witness_count=3)
    assert rep.discrd == 1 and rep.bass and rep.basic and rep.gorenstein
    assert any(w.discriminant == 1 for w in rep.witnesses)
    assert rep.oracle_agreement is None  # no dividing primes to check

    rep = classify(LIP, witness_height=4, witness_count=5)
    assert rep.discrd == 4 and rep.bass
    assert rep.local_reports[0].residual_type.value == "ramified"
    assert rep.local_reports[0].chain_discrds == [4, 2]
    assert rep.oracle_agreement is True

    rep = classify(Z2M2, witness_height=8)
    assert rep.discrd == 8
    assert not rep.gorenstein and not rep.bass and not rep.basic
    assert rep.witnesses == [] and not rep.inconclusive


def test_classify_json_shape():
    rep = classify(LIP, witness_height=4, witness_count=5)
    js = rep.to_json()
    assert js["form"] == [1, 1, 1, 0, 0, 0]
    assert js["discrd_factored"] == {"2": 2}
    assert [w["d"] for w in js["witnesses"]] == [-4, -8, -20, -24, -40]
    assert all(set(w) == {"alpha", "d", "height"} for w in js["witnesses"])


def test_cross_validate_examples():
    ok, counter = cross_validate(LIP)
    assert ok and not counter
    ok, counter = cross_validate(Z2M2)
    assert ok and not counter  # both sides false at 2
    ok, counter = cross_validate(ALL1)
    assert ok and not counter


def test_cross_validate_capacity():
    # discriminant with a large prime factor: 4abc with c prime > 13
    order = GoodBasisOrder(TernaryForm(1, 1, 17, 0, 0, 0))
    with pytest.raises(CapacityError):
        cross_validate(order)


def test_witness_theory_coherence_sample():
    rng = random.Random(6)
    pool = []
    for coeffs in itertools.product(range(-2, 3), repeat=6):
        if half_disc_tuple(*coeffs) != 0:
            pool.append(coeffs)
    rng.shuffle(pool)
    for coeffs in pool[:150]:
        order = GoodBasisOrder(TernaryForm(*coeffs))
        from quatorders.orders import reduced_discriminant

        bass = all(is_bass_local(order, p) for p in factor_trial(reduced_discriminant(order)))
        if has_any_witness(order, 6):
            assert bass, coeffs
        wits = find_quadratic_witnesses(order, 6, 4)
        if wits:
            assert bass, coeffs
            discs = [w.discriminant for w in wits]
            assert len(set(discs)) == len(discs)
            assert all(is_fundamental_discriminant(d) for d in discs)


def test_basic_equals_bruteforce_conjunction():
    rng = random.Random(9)
    pool = [c for c in itertools.product(range(-2, 3), repeat=6)
            if half_disc_tuple(*c) != 0]
    rng.shuffle(pool)
    from quatorders.local import BRUTEFORCE_PRIME_BOUND, is_basic_bruteforce
    from quatorders.orders import reduced_discriminant

    checked = 0
    for coeffs in pool:
        if checked >= 60:
            break
        order = GoodBasisOrder(TernaryForm(*coeffs))
        primes = factor_trial(reduced_discriminant(order))
        if any(p > BRUTEFORCE_PRIME_BOUND for p in primes):
            continue
        rep = classify(order, witness_height=4, witness_count=2)
        brute = all(is_basic_bruteforce(order, p) for p in primes)
        assert rep.basic == brute, coeffs
        checked += 1
    assert checked == 60


def test_classify_large_prime_structural_only():
    # discrd 68 = 2^2 * 17: p = 17 exceeds the brute-force bound, so the
    # report carries structural verdicts with basic_bruteforce = None
    order = GoodBasisOrder(TernaryForm(1, 1, 17, 0, 0, 0))
    rep = classify(order, witness_height=4)
    assert rep.discrd == 68
    by_p = {r.prime: r for r in rep.local_reports}
    assert by_p[17].basic_bruteforce is None
    assert by_p[2].basic_bruteforce is not None
    assert isinstance(rep.bass, bool)


def test_inconclusive_marking():
    # a Bass order searched at a tiny height may come up empty; it must be
    # marked inconclusive rather than non-basic.  ALL1 at height 1 finds
    # witnesses, so manufacture the situation via a Bass order with only
    # large witnesses... if none arises, the marking logic is still
    # exercised through classify on M2 at height 1 (finds d=1, conclusive).
    rep = classify(M2, witness_height=1, witness_count=1)
    assert not rep.inconclusive
    assert rep.basic
