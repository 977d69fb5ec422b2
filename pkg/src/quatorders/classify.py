"""Global verdicts over Z by local aggregation, plus explicit integrally
closed quadratic subring witnesses found by bounded search.

A witness is an element alpha whose discriminant trd^2 - 4 nrd is a
fundamental discriminant; Z[alpha] is then integrally closed in its
total quotient ring, and distinct discriminants give pairwise
nonisomorphic subrings. The search is a bounded enumeration with no
completeness claim at a fixed height: an empty result for a Bass order
is reported as inconclusive, never as "not basic".
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import CapacityError
from .forms import form_content
from .local import (
    BRUTEFORCE_PRIME_BOUND,
    is_basic_bruteforce,
    is_bass_local,
    local_report,
)
from .numtheory import factor_trial, is_squarefree
from .orders import GoodBasisOrder, QuatElement, elem_disc, reduced_discriminant

FACTOR_CAPACITY = 10**12
DEFAULT_WITNESS_HEIGHT = 10
DEFAULT_WITNESS_COUNT = 8


def is_fundamental_discriminant(d: int) -> bool:
    """d = 1, or squarefree d = 1 mod 4, or d = 4m with m squarefree
    and m = 2, 3 mod 4 (so 0 and squares > 1 are excluded)."""
    if d == 0:
        return False
    if d == 1:
        return True
    if d % 4 == 1:
        return is_squarefree(d)
    if d % 4 == 0:
        m = d // 4
        return m % 4 in (2, 3) and is_squarefree(m)
    return False


@dataclass(frozen=True)
class QuadraticWitness:
    element: QuatElement
    discriminant: int
    height: int

    def to_json(self):
        return {
            "alpha": [int(c) for c in self.element.coords()],
            "d": self.discriminant,
            "height": self.height,
        }


def _disc_quadratic_coeffs(order: GoodBasisOrder):
    """Coefficients of disc(x i + y j + z k) = trd^2 - 4 nrd as a ternary
    quadratic in (x, y, z); the scalar part of an element never matters."""
    a, b, c, u, v, w = order.coeffs()
    return (
        u * u - 4 * b * c,
        v * v - 4 * a * c,
        w * w - 4 * a * b,
        2 * v * w - 4 * (v * w - a * u),
        2 * u * w - 4 * (u * w - b * v),
        2 * u * v - 4 * (u * v - c * w),
    )


_SIEVE_LIMIT = 50_000_000


def _squarefree_sieve(limit):
    import numpy as np

    sf = np.ones(limit + 1, dtype=bool)
    sf[0] = False
    q = 2
    while q * q <= limit:
        sf[q * q:: q * q] = False
        q += 1
    return sf


def _fundamental_mask(values):
    """Vectorized is_fundamental_discriminant over an int64 array."""
    import numpy as np

    mask = np.zeros(values.shape, dtype=bool)
    absv = np.abs(values)
    top = int(absv.max(initial=0))
    if top <= _SIEVE_LIMIT:
        sf = _squarefree_sieve(max(top, 1))
        one_mod4 = (values % 4 == 1) & sf[absv]
        m = values >> 2
        zero_mod4 = (values % 4 == 0) & np.isin(m % 4, (2, 3)) & sf[np.abs(m)]
        mask = one_mod4 | zero_mod4 | (values == 1)
        mask &= values != 0
        return mask
    flat = values.ravel()
    out = np.zeros(flat.shape, dtype=bool)
    cache: dict[int, bool] = {}
    for i, d in enumerate(flat):
        d = int(d)
        hit = cache.get(d)
        if hit is None:
            hit = is_fundamental_discriminant(d)
            cache[d] = hit
        out[i] = hit
    return out.reshape(values.shape)


def _disc_grid(order: GoodBasisOrder, height: int):
    import numpy as np

    qx, qy, qz, qyz, qxz, qxy = _disc_quadratic_coeffs(order)
    xs = np.arange(-height, height + 1, dtype=np.int64)
    x, y, z = np.meshgrid(xs, xs, xs, indexing="ij")
    disc = (
        qx * x * x + qy * y * y + qz * z * z
        + qyz * y * z + qxz * x * z + qxy * x * y
    )
    hgt = np.maximum(np.maximum(np.abs(x), np.abs(y)), np.abs(z))
    return disc.ravel(), hgt.ravel()


def find_quadratic_witnesses(order: GoodBasisOrder, height: int, count: int):
    """Up to `count` witnesses with |coordinates| <= height, deduplicated
    by discriminant and sorted by (|d|, height, d).

    The discriminant of t + x i + y j + z k is independent of t, so the
    search runs over the pure part only and reports witnesses with t = 0.
    """
    if height < 1:
        raise ValueError("height must be >= 1")
    import numpy as np

    flat_d, flat_h = _disc_grid(order, height)
    mask = _fundamental_mask(flat_d)
    idxs = np.nonzero(mask)[0]
    if idxs.size == 0:
        return []
    cand_d = flat_d[idxs]
    cand_h = flat_h[idxs]
    sort = np.lexsort((cand_d, cand_h, np.abs(cand_d)))
    n = 2 * height + 1
    best: dict[int, tuple[int, tuple[int, int, int]]] = {}
    stop_abs = None
    for pos in sort:
        d = int(cand_d[pos])
        if stop_abs is not None and abs(d) > stop_abs:
            break
        if d in best:
            continue
        idx = int(idxs[pos])
        coords = (idx // (n * n) - height, (idx // n) % n - height, idx % n - height)
        best[d] = (int(cand_h[pos]), coords)
        if len(best) == count and stop_abs is None:
            stop_abs = abs(d)
    items = sorted(best.items(), key=lambda kv: (abs(kv[0]), kv[1][0], kv[0]))[:count]
    out = []
    for d, (h, (xi, yi, zi)) in items:
        alpha = QuatElement.of(0, xi, yi, zi)
        assert elem_disc(order, alpha) == d
        out.append(QuadraticWitness(alpha, d, h))
    return out


def has_any_witness(order: GoodBasisOrder, height: int) -> bool:
    """Fast emptiness probe for the witness search at a given height."""
    flat_d, _ = _disc_grid(order, height)
    return bool(_fundamental_mask(flat_d).any())


@dataclass
class ClassificationReport:
    order: GoodBasisOrder
    discrd: int
    discrd_factored: dict
    gorenstein: bool
    bass: bool
    basic: bool
    local_reports: list
    witnesses: list
    witness_height: int
    inconclusive: bool
    oracle_agreement: bool | None
    notes: list = field(default_factory=list)

    def to_json(self):
        return {
            "form": self.order.form.to_json(),
            "discrd": self.discrd,
            "discrd_factored": {str(p): e for p, e in sorted(self.discrd_factored.items())},
            "gorenstein": self.gorenstein,
            "bass": self.bass,
            "basic": self.basic,
            "local": [r.to_json() for r in self.local_reports],
            "witnesses": [w.to_json() for w in self.witnesses],
            "witness_height": self.witness_height,
            "inconclusive": self.inconclusive,
            "oracle_agreement": self.oracle_agreement,
            "notes": list(self.notes),
        }


def classify(
    order: GoodBasisOrder,
    witness_height: int = DEFAULT_WITNESS_HEIGHT,
    witness_count: int = DEFAULT_WITNESS_COUNT,
    strict: bool = False,
) -> ClassificationReport:
    """Factor the reduced discriminant, run every local decider at each
    dividing prime, aggregate, and search for quadratic witnesses."""
    discrd = reduced_discriminant(order)
    if discrd > FACTOR_CAPACITY:
        raise CapacityError(f"reduced discriminant {discrd} exceeds {FACTOR_CAPACITY}")
    factored = factor_trial(discrd)
    notes = []
    reports = []
    for p in sorted(factored):
        try:
            reports.append(local_report(order, p, strict=strict))
        except CapacityError as exc:
            raise CapacityError(f"local analysis at p={p}: {exc}") from exc
    gor = form_content(order.form) == 1
    bass = all(r.bass for r in reports)
    basic = bass
    witnesses = find_quadratic_witnesses(order, witness_height, witness_count)
    inconclusive = bass and not witnesses
    if inconclusive:
        notes.append(
            f"Bass order but no witness found up to height {witness_height}; "
            "the search bound carries no completeness guarantee"
        )
    agreements = [r.oracle_agreement for r in reports if r.oracle_agreement is not None]
    oracle_agreement = all(agreements) if agreements else None
    if witnesses and not bass:
        oracle_agreement = False
        notes.append("witnesses found for a non-Bass order (impossible; bug)")
    return ClassificationReport(
        order=order,
        discrd=discrd,
        discrd_factored=factored,
        gorenstein=gor,
        bass=bass,
        basic=basic,
        local_reports=reports,
        witnesses=witnesses,
        witness_height=witness_height,
        inconclusive=inconclusive,
        oracle_agreement=oracle_agreement,
        notes=notes,
    )


def cross_validate(order: GoodBasisOrder, witness_height: int = DEFAULT_WITNESS_HEIGHT):
    """True iff structural Bass equals brute-force basic at every prime
    dividing the discriminant, and witness existence is coherent with
    the global verdict. Returns (ok, counterexamples)."""
    discrd = reduced_discriminant(order)
    if discrd > FACTOR_CAPACITY:
        raise CapacityError(f"reduced discriminant {discrd} exceeds {FACTOR_CAPACITY}")
    factored = factor_trial(discrd)
    oversized = [p for p in factored if p > BRUTEFORCE_PRIME_BOUND]
    if oversized:
        raise CapacityError(f"primes {oversized} exceed the brute-force bound")
    counterexamples = []
    bass_all = True
    for p in sorted(factored):
        structural = is_bass_local(order, p)
        brute = is_basic_bruteforce(order, p)
        bass_all = bass_all and structural
        if structural != brute:
            counterexamples.append(
                {"form": order.form.to_json(), "p": p,
                 "bass_structural": structural, "basic_bruteforce": brute}
            )
    if has_any_witness(order, witness_height) and not bass_all:
        counterexamples.append(
            {"form": order.form.to_json(), "witnesses_nonempty_but_not_bass": True}
        )
    return not counterexamples, counterexamples
