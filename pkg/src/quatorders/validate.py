"""Named validation suites: each runs a batch of structural assertions
and returns a machine-readable result dict with an "ok" flag, counts,
and an explicit violation list (empty on success).

The suites lean on the module-level caches in quatorders.local, so
running several of them in one process shares all of the heavy
per-(order, prime) work.
"""

from __future__ import annotations

import random

from .classify import classify, find_quadratic_witnesses, has_any_witness
from .forms import TernaryForm, half_disc_tuple, half_discriminant
from .intmat import det
from .local import (
    ResidualType,
    eichler_decomposition,
    idealizer_chain,
    is_basic_bruteforce,
    is_bass_local,
    is_gorenstein_local,
    radical_element_properties,
    radical_idealizer,
    residual_type,
    superorder_witness_data,
    _bruteforce_radical,
    _fr_radical,
    _radical_rows,
    _structure_table,
)
from .orders import (
    GoodBasisOrder,
    clifford_order,
    gram_matrix,
    order_form,
    reduced_discriminant,
)
from .sweep import iter_forms


def suite_roundtrip(bound: int = 3):
    """order_form(clifford_order(Q)) == Q and full associativity, for all
    nondegenerate forms with coefficients in [-bound, bound]."""
    checked = 0
    violations = []
    for coeffs, _hd in iter_forms(bound):
        q = TernaryForm(*coeffs)
        order = clifford_order(q)  # raises on any associativity failure
        if order_form(order) != q:
            violations.append({"form": list(coeffs), "reason": "round trip failed"})
        checked += 1
    return {"suite": "roundtrip", "ok": not violations, "checked": checked,
            "violations": violations}


def suite_gram(bound: int = 3, random_count: int = 1000, random_bound: int = 50,
               seed: int = 2024):
    """|det Gram| == half_discriminant^2 on the sweep plus random forms."""
    checked = 0
    violations = []

    def check(coeffs):
        nonlocal checked
        order = GoodBasisOrder(TernaryForm(*coeffs))
        g = det([list(r) for r in gram_matrix(order)])
        hd = half_discriminant(order.form)
        if abs(g) != hd * hd:
            violations.append({"form": list(coeffs), "det_gram": g, "half_disc": hd})
        checked += 1

    for coeffs, _hd in iter_forms(bound):
        check(coeffs)
    rng = random.Random(seed)
    done = 0
    while done < random_count:
        coeffs = tuple(rng.randint(-random_bound, random_bound) for _ in range(6))
        if half_disc_tuple(*coeffs) == 0:
            continue
        check(coeffs)
        done += 1
    return {"suite": "gram", "ok": not violations, "checked": checked,
            "violations": violations}


def _sweep_pairs(bound, primes):
    for coeffs, hd in iter_forms(bound):
        order = GoodBasisOrder(TernaryForm(*coeffs))
        for p in primes:
            if hd % p == 0:
                yield order, coeffs, p


def suite_thm11(bound: int = 2, primes=(2, 3)):
    """Structural Bass decider against the brute-force basic oracle, on
    every nondegenerate form in the box at each dividing prime."""
    checked = 0
    violations = []
    for order, coeffs, p in _sweep_pairs(bound, primes):
        bass = is_bass_local(order, p)
        brute = is_basic_bruteforce(order, p)
        if bass != brute:
            violations.append({"form": list(coeffs), "p": p, "bass": bass, "brute": brute})
        checked += 1
    return {"suite": "thm11", "ok": not violations, "checked": checked,
            "violations": violations}


def suite_cor13(bound: int = 2, primes=(2, 3)):
    """Coherence of the local criteria: for local-ring orders the
    Gorenstein pair, the radical generation bound, the brute-force basic
    test and the R + pJ decomposition agree; all other orders are Bass."""
    checked = 0
    violations = []
    for order, coeffs, p in _sweep_pairs(bound, primes):
        rt = residual_type(order, p)
        rec = {"form": list(coeffs), "p": p, "residual_type": rt.value}
        if rt in (ResidualType.QuaternionQuotient, ResidualType.ResiduallySplit):
            if not (is_bass_local(order, p) and is_basic_bruteforce(order, p)):
                violations.append({**rec, "reason": "non-local order not Bass/basic"})
        else:
            gor_pair = is_gorenstein_local(order, p) and is_gorenstein_local(
                radical_idealizer(order, p), p
            )
            from .local import two_generation_dim

            two_gen = two_generation_dim(order, p)
            basic = is_basic_bruteforce(order, p)
            eichler_none = eichler_decomposition(order, p) is None
            flags = {"gorenstein_pair": gor_pair, "two_gen_le_2": two_gen <= 2,
                     "basic": basic, "eichler_none": eichler_none}
            if len(set(flags.values())) != 1:
                violations.append({**rec, **flags, "two_gen_dim": two_gen})
        checked += 1
    return {"suite": "cor13", "ok": not violations, "checked": checked,
            "violations": violations}


def suite_lemma41(bound: int = 2, primes=(2, 3)):
    """Radical element divisibilities over a full transversal of
    rad / p rad for every local-ring order in the box."""
    checked = 0
    elements = 0
    strengthened = 0
    violations = []
    for order, coeffs, p in _sweep_pairs(bound, primes):
        report = radical_element_properties(order, p)
        if not report.applicable:
            continue
        checked += 1
        elements += report.checked
        if report.strengthened:
            strengthened += 1
        for v in report.violations:
            violations.append({"form": list(coeffs), "p": p, "violation": str(v)})
    return {"suite": "lemma41", "ok": not violations, "checked": checked,
            "elements": elements, "strengthened_orders": strengthened,
            "violations": violations}


def suite_radical_certification(bound: int = 2, primes=(2, 3)):
    """Characteristic-coefficient radical against the brute-force radical
    for every sweep order, including primes not dividing the discriminant.

    The radical of O/pO is a function of the coefficients mod p, so each
    congruence class is compared once and every form is mapped onto its
    class; the certified cached path (with its ideal, nilpotency and
    semisimple-quotient postconditions) runs per class as well.
    """
    checked = 0
    violations = []
    compared = set()
    for coeffs, _hd in iter_forms(bound):
        for p in primes:
            rcoeffs = tuple(x % p for x in coeffs)
            if (rcoeffs, p) not in compared:
                compared.add((rcoeffs, p))
                tab = _structure_table(rcoeffs, p)
                chain = _fr_radical(tab, p, 4)
                brute = _bruteforce_radical(tab, p, 4)
                if chain != brute:
                    violations.append({"class": list(rcoeffs), "p": p})
            _radical_rows(coeffs, p)
            checked += 1
    return {"suite": "radical", "ok": not violations, "checked": checked,
            "classes": len(compared), "violations": violations}


def suite_superorder(bound: int = 2, primes=(2, 3)):
    """The divide-and-scale superorder for every Gorenstein, residually
    ramified, non-basic form in the box: index exactly p, all
    coefficients divisible by p, equal to the radical idealizer.
    (The equality and index checks are asserted inside the call.)"""
    checked = 0
    violations = []
    for order, coeffs, p in _sweep_pairs(bound, primes):
        if not is_gorenstein_local(order, p):
            continue
        if residual_type(order, p) != ResidualType.ResiduallyRamified:
            continue
        if is_basic_bruteforce(order, p):
            continue
        try:
            wit = superorder_witness_data(order, p)
            if any(x % p for x in wit.order.coeffs()):
                violations.append({"form": list(coeffs), "p": p,
                                   "reason": "coefficients not all divisible by p"})
        except Exception as exc:  # any failure is a violation record
            violations.append({"form": list(coeffs), "p": p, "reason": str(exc)})
        checked += 1
    return {"suite": "superorder", "ok": not violations, "checked": checked,
            "violations": violations}


def suite_named_instances():
    """Exact expected values for the five benchmark forms."""
    violations = []

    def expect(cond, label):
        if not cond:
            violations.append({"check": label})

    m2 = clifford_order(TernaryForm(0, 0, -1, 0, 0, 1))
    rep = classify(m2, witness_height=4, witness_count=5)
    expect(rep.discrd == 1, "M2-type: discrd 1")
    expect(not rep.local_reports, "M2-type: no dividing primes")
    expect(residual_type(m2, 2) == ResidualType.QuaternionQuotient,
           "M2-type: quaternion quotient at 2")
    expect(rep.basic, "M2-type: basic")
    expect(any(w.discriminant == 1 for w in rep.witnesses), "M2-type: witness d=1")

    lip = clifford_order(TernaryForm(1, 1, 1, 0, 0, 0))
    rep = classify(lip, witness_height=4, witness_count=5)
    expect(rep.discrd == 4, "sum-of-squares: discrd 4")
    expect(residual_type(lip, 2) == ResidualType.ResiduallyRamified,
           "sum-of-squares: ramified at 2")
    chain = [reduced_discriminant(o) for o in idealizer_chain(lip, 2)]
    expect(chain == [4, 2], "sum-of-squares: chain discriminants [4, 2]")
    expect(rep.bass, "sum-of-squares: Bass")
    wits = find_quadratic_witnesses(lip, 4, 5)
    expect([w.discriminant for w in wits] == [-4, -8, -20, -24, -40],
           "sum-of-squares: witness discriminants")

    hur = clifford_order(TernaryForm(1, 1, 1, 1, 1, 1))
    rep = classify(hur)
    expect(rep.discrd == 2, "all-ones: discrd 2")
    expect(residual_type(hur, 2) == ResidualType.ResiduallyInert, "all-ones: inert at 2")
    expect(rep.bass, "all-ones: Bass")

    z2m2 = clifford_order(TernaryForm(0, 0, -2, 0, 0, 2))
    rep = classify(z2m2, witness_height=10)
    expect(rep.discrd == 8, "scaled-M2: discrd 8")
    expect(not rep.gorenstein, "scaled-M2: not Gorenstein")
    expect(not rep.basic, "scaled-M2: not basic")
    expect(reduced_discriminant(radical_idealizer(z2m2, 2)) == 1,
           "scaled-M2: idealizer discrd 1")
    expect(not rep.witnesses, "scaled-M2: witness search empty")
    expect(not rep.inconclusive, "scaled-M2: provably non-basic, not inconclusive")

    eich = clifford_order(TernaryForm(0, 0, -2, 0, 0, 1))
    rep = classify(eich)
    expect(rep.discrd == 2, "level-2: discrd 2")
    expect(residual_type(eich, 2) == ResidualType.ResiduallySplit, "level-2: split at 2")
    expect(rep.basic, "level-2: basic")

    return {"suite": "named-instances", "ok": not violations,
            "checked": 5, "violations": violations}


def suite_witness_coverage(bound: int = 2, primes=(2, 3), height: int = 30,
                           discrd_cap: int = 200):
    """Witness search coverage: every non-Bass order in the box must come
    up empty at the given height (hard requirement); Bass orders should
    produce a witness, with failures reported as inconclusive."""
    bass_total = 0
    bass_found = 0
    inconclusive = []
    violations = []
    for coeffs, _hd in iter_forms(bound):
        order = GoodBasisOrder(TernaryForm(*coeffs))
        discrd = reduced_discriminant(order)
        if discrd > discrd_cap:
            continue
        from .numtheory import factor_trial

        bass = all(is_bass_local(order, p) for p in factor_trial(discrd))
        found = has_any_witness(order, height)
        if bass:
            bass_total += 1
            if found:
                bass_found += 1
            else:
                inconclusive.append({"form": list(coeffs), "discrd": discrd})
        elif found:
            violations.append({"form": list(coeffs), "discrd": discrd,
                               "reason": "witness found for a non-Bass order"})
    ratio = bass_found / bass_total if bass_total else 1.0
    ok = not violations and ratio >= 0.95
    return {"suite": "witnesses", "ok": ok, "bass_orders": bass_total,
            "bass_with_witness": bass_found, "coverage": ratio,
            "inconclusive": inconclusive, "violations": violations}


SUITES = {
    "roundtrip": suite_roundtrip,
    "gram": suite_gram,
    "thm11": suite_thm11,
    "cor13": suite_cor13,
    "lemma41": suite_lemma41,
    "named-instances": suite_named_instances,
    "radical": suite_radical_certification,
    "superorder": suite_superorder,
    "witnesses": suite_witness_coverage,
}
