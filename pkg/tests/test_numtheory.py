import math

import pytest

from quatorders.errors import InputError
from quatorders.numtheory import (
    content,
    factor_trial,
    is_prime,
    is_squarefree,
    perfect_square_root,
    sqrt_mod,
    valuation,
)


def test_valuation_examples():
    assert valuation(12, 2) == 2
    assert valuation(0, 3) == math.inf
    assert valuation(45, 3) == 2


def test_valuation_rejects_composite_modulus():
    with pytest.raises(InputError):
        valuation(10, 4)


def test_valuation_additive():
    import random

    rng = random.Random(0)
    for _ in range(200):
        p = rng.choice([2, 3, 5, 7, 11])
        m = rng.randint(1, 10**6)
        n = rng.randint(1, 10**6)
        assert valuation(m * n, p) == valuation(m, p) + valuation(n, p)


def test_content_examples():
    assert content([2, 4, 6, 0, 2, 8]) == 2
    assert content([1, 1, 1, 0, 0, 0]) == 1
    assert content([0, 0, 0]) == 0


def test_factor_trial_examples():
    assert factor_trial(8) == {2: 3}
    assert factor_trial(1) == {}
    assert factor_trial(108) == {2: 2, 3: 3}


def test_factor_trial_roundtrip():
    import random

    rng = random.Random(1)
    for _ in range(100):
        n = rng.randint(1, 10**7)
        f = factor_trial(n)
        prod = 1
        for p, e in f.items():
            assert is_prime(p)
            prod *= p**e
        assert prod == n


def test_sqrt_mod_examples():
    assert sqrt_mod(4, 5) in (2, 3)
    assert sqrt_mod(2, 5) is None
    assert sqrt_mod(1, 2) == 1


def test_sqrt_mod_exhaustive_small_primes():
    for p in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31):
        squares = {x * x % p for x in range(p)}
        for a in range(p):
            s = sqrt_mod(a, p)
            if a in squares:
                assert s is not None and s * s % p == a % p
            else:
                assert s is None


def test_is_prime_known_values():
    primes = {2, 3, 5, 7, 11, 13, 97, 101, 7919}
    for n in range(-2, 120):
        assert is_prime(n) == (n in primes or (n > 1 and all(n % d for d in range(2, n))))
    assert is_prime(2**61 - 1)
    assert not is_prime(2**61 + 1)


def test_squarefree_and_square_root():
    assert is_squarefree(-6)
    assert not is_squarefree(12)
    assert not is_squarefree(0)
    assert perfect_square_root(16) == 4
    assert perfect_square_root(15) is None
    assert perfect_square_root(-4) is None
