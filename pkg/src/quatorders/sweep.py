"""Enumeration campaigns over coefficient boxes, with an optional worker
pool and a deterministic merge: output is byte-identical for any worker
count because forms are processed per-batch and reassembled in
lexicographic order.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .errors import CapacityError
from .forms import TernaryForm, half_disc_tuple
from .local import local_report
from .numtheory import is_prime
from .orders import GoodBasisOrder

ENUM_BOUND_CAP = 3
ENUM_PRIMES = (2, 3, 5, 7, 11, 13)


def iter_forms(bound: int):
    """All nondegenerate forms with coefficients in [-bound, bound], in
    lexicographic order; yields (coeffs, half_disc)."""
    rng = range(-bound, bound + 1)
    for coeffs in itertools.product(rng, repeat=6):
        hd = half_disc_tuple(*coeffs)
        if hd:
            yield coeffs, hd


def count_degenerate(bound: int) -> int:
    rng = range(-bound, bound + 1)
    return sum(
        1 for coeffs in itertools.product(rng, repeat=6) if half_disc_tuple(*coeffs) == 0
    )


@dataclass
class FormVerdicts:
    coeffs: tuple
    half_disc: int
    locals: dict  # prime -> LocalReport

    def summary_key(self, p):
        rep = self.locals[p]
        return (rep.residual_type.value, rep.gorenstein, rep.bass)


def analyze_form_at_primes(coeffs, primes, strict=True) -> FormVerdicts:
    """Local reports at every requested prime dividing the half-discriminant."""
    hd = half_disc_tuple(*coeffs)
    order = GoodBasisOrder(TernaryForm(*coeffs))
    reports = {}
    for p in primes:
        if hd % p == 0:
            reports[p] = local_report(order, p, strict=strict)
    return FormVerdicts(tuple(coeffs), hd, reports)


def _census_batch(args):
    batch, primes = args
    out = []
    for coeffs in batch:
        verdicts = analyze_form_at_primes(coeffs, primes, strict=False)
        row = {"form": list(coeffs)}
        violations = []
        for p, rep in sorted(verdicts.locals.items()):
            row[str(p)] = {
                "residual_type": rep.residual_type.value,
                "gorenstein": rep.gorenstein,
                "bass": rep.bass,
                "basic_bruteforce": rep.basic_bruteforce,
            }
            if rep.oracle_agreement is False:
                violations.append(
                    {"form": list(coeffs), "p": p, "bass": rep.bass,
                     "basic_bruteforce": rep.basic_bruteforce,
                     "eichler_none": rep.eichler_j is None if rep.eichler_computed else None}
                )
        out.append((row, violations, [(p, verdicts.summary_key(p))
                                      for p in sorted(verdicts.locals)]))
    return out


def run_census(bound: int, primes, workers: int = 1):
    """Per-prime verdicts and oracle agreement for every nondegenerate
    form in the box; returns (summary, violations, counts)."""
    if bound > ENUM_BOUND_CAP:
        raise CapacityError(f"enumeration bound capped at {ENUM_BOUND_CAP}")
    primes = tuple(sorted(set(primes)))
    for p in primes:
        if p not in ENUM_PRIMES:
            raise CapacityError(f"enumeration primes restricted to {ENUM_PRIMES}")
        if not is_prime(p):
            raise CapacityError(f"{p} is not prime")
    forms = [coeffs for coeffs, _ in iter_forms(bound)]
    batches = [forms[i: i + 512] for i in range(0, len(forms), 512)]
    args = [(batch, primes) for batch in batches]
    if workers > 1:
        import multiprocessing

        with multiprocessing.Pool(workers) as pool:
            results = pool.map(_census_batch, args)
    else:
        results = [_census_batch(a) for a in args]
    summary: dict = {}
    violations = []
    checked_pairs = 0
    for batch_result in results:
        for _row, viol, keys in batch_result:
            violations.extend(viol)
            for p, key in keys:
                checked_pairs += 1
                bucket = summary.setdefault(p, {})
                bucket[key] = bucket.get(key, 0) + 1
    counts = {
        "bound": bound,
        "primes": list(primes),
        "nondegenerate_forms": len(forms),
        "degenerate_forms": count_degenerate(bound),
        "checked_pairs": checked_pairs,
    }
    return summary, violations, counts


def census_json(summary, violations, counts):
    table = []
    for p in sorted(summary):
        for (rtype, gor, bass), n in sorted(summary[p].items()):
            table.append(
                {"p": p, "residual_type": rtype, "gorenstein": gor, "bass": bass, "count": n}
            )
    return {"census": table, "violations": violations, "counts": counts}
