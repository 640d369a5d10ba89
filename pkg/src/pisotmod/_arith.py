"""Small exact integer helpers: gcd/inverse, primality, valuations, radicals."""

from __future__ import annotations

import math
from functools import reduce

from .errors import ResourceError

TRIAL_DIVISION_BOUND = 10**9

_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)


def egcd(a: int, b: int) -> tuple[int, int, int]:
    """Return ``(g, x, y)`` with ``a*x + b*y == g == gcd(a, b) >= 0``."""
    x0, y0, x1, y1 = 1, 0, 0, 1
    while b:
        qt, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - qt * x1
        y0, y1 = y1, y0 - qt * y1
    if a < 0:
        a, x0, y0 = -a, -x0, -y0
    return a, x0, y0


def bezout(values) -> tuple[int, list[int]]:
    """Return ``(g, coeffs)`` with ``sum(c*v) == g == gcd(values)``."""
    values = list(values)
    g, coeffs = 0, [0] * len(values)
    for i, v in enumerate(values):
        g2, x, y = egcd(g, v)
        coeffs = [c * x for c in coeffs]
        coeffs[i] = y
        g = g2
    return g, coeffs


def modinv(a: int, m: int) -> int:
    g, x, _ = egcd(a % m, m)
    if g != 1:
        raise ZeroDivisionError(f"{a} is not invertible mod {m}")
    return x % m


def is_prime(n: int) -> bool:
    """Miller-Rabin with fixed bases; deterministic for n < 3.3e24."""
    if n < 2:
        return False
    for p in _MR_BASES:
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def primes_up_to(n: int) -> list[int]:
    if n < 2:
        return []
    sieve = bytearray([1]) * (n + 1)
    sieve[0] = sieve[1] = 0
    for i in range(2, math.isqrt(n) + 1):
        if sieve[i]:
            sieve[i * i :: i] = bytearray(len(sieve[i * i :: i]))
    return [i for i, flag in enumerate(sieve) if flag]


def valuation(n: int, p: int) -> int:
    """Multiplicity of the prime ``p`` in the nonzero integer ``n``."""
    if n == 0:
        raise ValueError("valuation of 0 is infinite")
    n, v = abs(n), 0
    while n % p == 0:
        n //= p
        v += 1
    return v


def factorize(n: int, bound: int = TRIAL_DIVISION_BOUND) -> dict[int, int]:
    """Factor ``|n|`` by trial division up to ``bound``.

    A remaining cofactor is accepted only if it passes the primality test;
    otherwise :class:`ResourceError` is raised with the partial factorization.
    """
    n = abs(n)
    if n == 0:
        raise ValueError("cannot factor 0")
    found: dict[int, int] = {}

    def strip(p):
        nonlocal n
        while n % p == 0:
            n //= p
            found[p] = found.get(p, 0) + 1

    for p in (2, 3):
        strip(p)
    p, step = 5, 2
    while n > 1 and p * p <= n:
        if p > bound:
            if is_prime(n):
                break
            raise ResourceError(
                f"trial division bound {bound} exceeded", partial=dict(found, cofactor=n)
            )
        strip(p)
        p += step
        step = 6 - step
    if n > 1:
        found[n] = found.get(n, 0) + 1
    return found


def radical_divides(b: int, a: int) -> bool:
    """True iff every prime factor of ``b`` divides ``a`` (no factoring needed)."""
    b, a = abs(b), abs(a)
    if a == 0:
        return True
    g = math.gcd(b, a)
    while g > 1:
        while b % g == 0:
            b //= g
        g = math.gcd(b, a)
    return b == 1


def lcm(values) -> int:
    return reduce(lambda x, y: x * y // math.gcd(x, y), values, 1)


def squarefree_decompose(n: int) -> tuple[int, int]:
    """Return ``(f, d)`` with ``n == f*f*d`` and ``d`` squarefree; sign kept in ``d``."""
    if n == 0:
        raise ValueError("0 has no squarefree part")
    f, d = 1, 1 if n > 0 else -1
    for p, e in factorize(n).items():
        f *= p ** (e // 2)
        if e % 2:
            d *= p
    return f, d
