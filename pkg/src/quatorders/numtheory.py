"""Elementary exact number theory: primality, valuations, gcd content,
trial factorization and square roots modulo a prime.

Everything is exact integer arithmetic; factor_trial is intended for
desk-scale inputs (n <= 10**12).
"""

from __future__ import annotations

import math
from math import gcd, isqrt

from .errors import InputError

# deterministic Miller-Rabin witnesses, valid for n < 3.3 * 10**24
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_prime(n: int) -> bool:
    """Deterministic primality test (Miller-Rabin with fixed witnesses)."""
    if n < 2:
        return False
    for p in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % p == 0:
            return n == p
    d = n - 1
    r = 0
    while d % 2 == 0:
        d //= 2
        r += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(r - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _require_prime(p: int) -> None:
    if not is_prime(p):
        raise InputError(f"{p} is not prime")


def valuation(n: int, p: int) -> int | float:
    """Largest e with p**e | n; math.inf for n = 0."""
    _require_prime(p)
    if n == 0:
        return math.inf
    e = 0
    n = abs(n)
    while n % p == 0:
        n //= p
        e += 1
    return e


def content(values) -> int:
    """gcd of a collection of integers; 0 when all entries vanish."""
    g = 0
    for v in values:
        g = gcd(g, v)
    return g


def factor_trial(n: int) -> dict[int, int]:
    """Complete factorization of n >= 1 by trial division.

    Intended for n <= 10**12; larger inputs work but take sqrt(n) time.
    """
    if n < 1:
        raise InputError("factor_trial requires n >= 1")
    factors: dict[int, int] = {}
    for p in (2, 3):
        while n % p == 0:
            factors[p] = factors.get(p, 0) + 1
            n //= p
    d = 5
    while d * d <= n:
        for q in (d, d + 2):
            while n % q == 0:
                factors[q] = factors.get(q, 0) + 1
                n //= q
        d += 6
    if n > 1:
        factors[n] = factors.get(n, 0) + 1
    return factors


def is_squarefree(n: int) -> bool:
    """Whether |n| is squarefree (0 is not)."""
    if n == 0:
        return False
    return all(e == 1 for e in factor_trial(abs(n)).values())


def legendre(a: int, p: int) -> int:
    """Legendre symbol (a|p) for odd prime p."""
    a %= p
    if a == 0:
        return 0
    s = pow(a, (p - 1) // 2, p)
    return -1 if s == p - 1 else 1


def sqrt_mod(a: int, p: int) -> int | None:
    """Some s in [0, p) with s*s = a (mod p), or None for a nonresidue.

    Deterministic: returns min(s, p - s). Tonelli-Shanks for odd p.
    """
    _require_prime(p)
    a %= p
    if p == 2 or a == 0:
        return a % p
    if legendre(a, p) != 1:
        return None
    if p % 4 == 3:
        s = pow(a, (p + 1) // 4, p)
        return min(s, p - s)
    # Tonelli-Shanks: write p - 1 = q * 2^e with q odd
    q, e = p - 1, 0
    while q % 2 == 0:
        q //= 2
        e += 1
    z = 2
    while legendre(z, p) != -1:
        z += 1
    m, c, t, s = e, pow(z, q, p), pow(a, q, p), pow(a, (q + 1) // 2, p)
    while t != 1:
        i, tt = 0, t
        while tt != 1:
            tt = tt * tt % p
            i += 1
        b = pow(c, 1 << (m - i - 1), p)
        m, c = i, b * b % p
        t, s = t * c % p, s * b % p
    return min(s, p - s)


def perfect_square_root(n: int) -> int | None:
    """Integer square root of n if n is a perfect square, else None."""
    if n < 0:
        return None
    r = isqrt(n)
    return r if r * r == n else None
