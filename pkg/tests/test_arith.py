import random

import pytest
import sympy

from pisotmod._arith import (
    bezout,
    factorize,
    is_prime,
    lcm,
    modinv,
    primes_up_to,
    radical_divides,
    squarefree_decompose,
    valuation,
)
from pisotmod.errors import ResourceError


def test_is_prime_matches_sympy():
    for n in range(-5, 3000):
        assert is_prime(n) == sympy.isprime(n)
    rng = random.Random(1)
    for _ in range(200):
        n = rng.randrange(2**40, 2**64)
        assert is_prime(n) == sympy.isprime(n)


def test_primes_up_to():
    assert primes_up_to(50) == list(sympy.primerange(2, 51))


def test_factorize_matches_sympy():
    rng = random.Random(2)
    for _ in range(300):
        n = rng.randint(1, 10**9)
        assert factorize(n) == sympy.factorint(n)
    assert factorize(-326700) == {2: 2, 3: 3, 5: 2, 11: 2}


def test_factorize_resource_error_carries_partial():
    n = 2 * 1000003 * 1000033
    with pytest.raises(ResourceError) as info:
        factorize(n, bound=1000)
    assert info.value.partial == {2: 1, "cofactor": 1000003 * 1000033}
    assert factorize(n, bound=2 * 10**6) == {2: 1, 1000003: 1, 1000033: 1}


def test_small_helpers():
    assert valuation(24, 2) == 3 and valuation(-24, 3) == 1 and valuation(5, 2) == 0
    assert radical_divides(18, 12) and not radical_divides(3, 10) and radical_divides(8, 10)
    assert lcm([4, 6, 10]) == 60
    assert squarefree_decompose(24) == (2, 6)
    assert squarefree_decompose(-326700) == (2 * 3 * 5 * 11, -3)
    assert modinv(3, 7) * 3 % 7 == 1
    g, cs = bezout([12, 18, 8])
    assert g == 2 and sum(c * v for c, v in zip(cs, [12, 18, 8])) == 2
