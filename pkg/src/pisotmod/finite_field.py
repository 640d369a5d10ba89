"""Polynomials over the prime field F_q and their complete factorization.

Factorization follows the usual three stages: squarefree decomposition
(including the characteristic-q case ``f = s(X^q)``), distinct-degree
splitting via ``X^(q^d) - X``, and Cantor-Zassenhaus equal-degree splitting
with a seeded, counter-based sequence of trial elements.

The divisor polynomial R of a reduced Pisot polynomial is assembled from
the irreducible factors directly. An irreducible factor F of degree h has
h distinct roots in F_{q^h}, each with the multiplicity of F, so the
product of ``X - alpha`` over the roots whose multiplicity is prime to q is
the product of those F taken once. No extension-field element type is
needed.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Iterable

from ._arith import is_prime, modinv
from .errors import RejectedInputError

MAX_MODULUS = 2**64
DEFAULT_SEED = 0x5EED


class ModPoly:
    """Immutable polynomial over F_q, coefficients constant-first in ``[0, q)``."""

    __slots__ = ("q", "_c")

    def __init__(self, q: int, coeffs: Iterable[int] = (), *, check: bool = True):
        if check:
            if not 2 <= q < MAX_MODULUS:
                raise RejectedInputError(f"modulus {q} outside the supported word-size range")
            if not is_prime(q):
                raise RejectedInputError(f"modulus {q} is not prime")
        cs = [int(c) % q for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        object.__setattr__(self, "q", q)
        object.__setattr__(self, "_c", tuple(cs))

    def __setattr__(self, name, value):
        raise AttributeError("ModPoly is immutable")

    @classmethod
    def from_poly(cls, q: int, poly) -> "ModPoly":
        """Reduce an integer polynomial (anything iterable over ints) mod q."""
        return cls(q, list(poly))

    def _new(self, cs):
        return ModPoly(self.q, cs, check=False)

    @property
    def coeffs(self) -> tuple[int, ...]:
        return self._c

    @property
    def degree(self) -> int:
        return len(self._c) - 1

    @property
    def lc(self) -> int:
        return self._c[-1] if self._c else 0

    def is_zero(self) -> bool:
        return not self._c

    def is_one(self) -> bool:
        return self._c == (1,)

    def __getitem__(self, i):
        return self._c[i] if 0 <= i < len(self._c) else 0

    def __eq__(self, other):
        if not isinstance(other, ModPoly):
            return NotImplemented
        return self.q == other.q and self._c == other._c

    def __hash__(self):
        return hash((self.q, self._c))

    def __repr__(self):
        return f"ModPoly({self.q}, {list(self._c)!r})"

    def __str__(self):
        from .polynomials import format_poly

        return format_poly(self._c)

    def _check(self, other):
        if not isinstance(other, ModPoly):
            other = ModPoly(self.q, [other], check=False)
        if other.q != self.q:
            raise RejectedInputError(f"modulus mismatch: {self.q} vs {other.q}")
        return other

    def __add__(self, other):
        other = self._check(other)
        n = max(len(self._c), len(other._c))
        return self._new([self[i] + other[i] for i in range(n)])

    def __sub__(self, other):
        other = self._check(other)
        n = max(len(self._c), len(other._c))
        return self._new([self[i] - other[i] for i in range(n)])

    def __neg__(self):
        return self._new([-c for c in self._c])

    def __mul__(self, other):
        other = self._check(other)
        if not self._c or not other._c:
            return self._new(())
        q = self.q
        out = [0] * (len(self._c) + len(other._c) - 1)
        for i, x in enumerate(self._c):
            if x:
                for j, y in enumerate(other._c):
                    out[i + j] += x * y
        return self._new([c % q for c in out])

    def scale(self, c: int) -> "ModPoly":
        return self._new([c * x for x in self._c])

    def monic(self) -> "ModPoly":
        if not self._c:
            return self
        return self.scale(modinv(self.lc, self.q))

    def divrem(self, other) -> tuple["ModPoly", "ModPoly"]:
        other = self._check(other)
        if other.is_zero():
            raise RejectedInputError("division by the zero polynomial")
        q = self.q
        a = list(self._c)
        b = other._c
        db = len(b) - 1
        if len(a) - 1 < db:
            return self._new(()), self
        inv = modinv(b[-1], q)
        quo = [0] * (len(a) - db)
        for i in range(len(a) - 1, db - 1, -1):
            c = a[i] % q
            if c:
                c = c * inv % q
                quo[i - db] = c
                for j in range(db + 1):
                    a[i - db + j] = (a[i - db + j] - c * b[j]) % q
        return self._new(quo), self._new(a[:db])

    __divmod__ = divrem

    def __floordiv__(self, other):
        return self.divrem(other)[0]

    def __mod__(self, other):
        return self.divrem(other)[1]

    def derivative(self) -> "ModPoly":
        return self._new([i * c for i, c in enumerate(self._c)][1:])

    def powmod(self, e: int, modulus: "ModPoly") -> "ModPoly":
        result = self._new((1,)) % modulus
        base = self % modulus
        while e:
            if e & 1:
                result = (result * base) % modulus
            base = (base * base) % modulus
            e >>= 1
        return result

    def __call__(self, x: int) -> int:
        acc = 0
        for c in reversed(self._c):
            acc = (acc * x + c) % self.q
        return acc

    def to_list(self) -> list[int]:
        return list(self._c)


def mod_gcd(a: ModPoly, b: ModPoly) -> ModPoly:
    """Monic gcd; the zero polynomial iff both inputs are zero."""
    b = a._check(b)
    while not b.is_zero():
        a, b = b, a % b
    return a.monic()


def divides_mod(r: ModPoly, s: ModPoly) -> bool:
    if r.is_zero():
        raise RejectedInputError("the zero polynomial divides nothing")
    return (s % r).is_zero()


@dataclass(frozen=True)
class ModFactorization:
    """``unit * prod(f**e for f, e in factors)``; factors monic, irreducible, sorted."""

    q: int
    unit: int
    factors: tuple[tuple[ModPoly, int], ...]

    def expand(self) -> ModPoly:
        out = ModPoly(self.q, [self.unit], check=False)
        for f, e in self.factors:
            for _ in range(e):
                out = out * f
        return out

    def has_repeated_factor(self) -> bool:
        return any(e > 1 for _, e in self.factors)

    def degrees(self) -> list[int]:
        return [f.degree for f, _ in self.factors]


def _pth_root(f: ModPoly) -> ModPoly:
    # f = s(X^q) over F_q; coefficients are fixed by Frobenius
    q = f.q
    return f._new([f[i] for i in range(0, len(f.coeffs), q)])


def squarefree_decomposition(f: ModPoly) -> list[tuple[ModPoly, int]]:
    """Monic squarefree factors with multiplicities (``f`` assumed monic)."""
    q = f.q
    out: list[tuple[ModPoly, int]] = []
    if f.degree < 1:
        return out
    fp = f.derivative()
    if fp.is_zero():
        return [(g, e * q) for g, e in squarefree_decomposition(_pth_root(f))]
    c = mod_gcd(f, fp)
    w = f // c
    i = 1
    while not w.is_one():
        y = mod_gcd(w, c)
        z = w // y
        if z.degree > 0:
            out.append((z, i))
        i += 1
        w, c = y, c // y
    if not c.is_one():
        out.extend((g, e * q) for g, e in squarefree_decomposition(_pth_root(c)))
    return out


def distinct_degree(f: ModPoly) -> list[tuple[ModPoly, int]]:
    """Split a monic squarefree ``f`` into products of equal-degree irreducibles."""
    q = f.q
    x = ModPoly(q, (0, 1), check=False)
    out = []
    h = x % f if f.degree > 0 else x
    d = 0
    while f.degree >= 2 * (d + 1):
        d += 1
        h = h.powmod(q, f)
        g = mod_gcd(f, h - x)
        if not g.is_one():
            out.append((g, d))
            f = f // g
            h = h % f
    if f.degree > 0:
        out.append((f, f.degree))
    return out


def _trial_elements(q: int, degree: int, seed: int):
    counter = 0
    while True:
        rng = random.Random(seed * 1_000_003 + counter)
        counter += 1
        yield ModPoly(q, [rng.randrange(q) for _ in range(degree)] + [1], check=False)


def equal_degree(f: ModPoly, d: int, seed: int = DEFAULT_SEED) -> list[ModPoly]:
    """Cantor-Zassenhaus split of a monic squarefree product of degree-d irreducibles."""
    q = f.q
    if f.degree == d:
        return [f]
    trials = _trial_elements(q, max(f.degree - 1, 0), seed)
    while True:
        a = next(trials) % f
        if a.degree < 1:
            continue
        if q == 2:
            t, acc = a, a
            for _ in range(d - 1):
                t = (t * t) % f
                acc = acc + t
            b = acc
        else:
            b = a.powmod((q**d - 1) // 2, f) - ModPoly(q, (1,), check=False)
        g = mod_gcd(f, b)
        if 0 < g.degree < f.degree:
            return equal_degree(g, d, seed + 1) + equal_degree(f // g, d, seed + 2)


def factor_mod(p: ModPoly, seed: int = DEFAULT_SEED) -> ModFactorization:
    """Complete factorization of a nonzero polynomial over F_q."""
    if p.is_zero():
        raise RejectedInputError("cannot factor the zero polynomial")
    unit = p.lc
    f = p.monic()
    factors: list[tuple[ModPoly, int]] = []
    for sqf, mult in squarefree_decomposition(f):
        for block, d in distinct_degree(sqf):
            for irr in equal_degree(block, d, seed):
                factors.append((irr, mult))
    merged: dict[ModPoly, int] = {}
    for irr, mult in factors:
        merged[irr] = merged.get(irr, 0) + mult
    ordered = sorted(merged.items(), key=lambda fe: (fe[0].degree, fe[0].coeffs))
    return ModFactorization(p.q, unit, tuple(ordered))


def compute_R(p_mod: ModPoly, seed: int = DEFAULT_SEED) -> ModPoly:
    """Divisor polynomial R of a reduced monic polynomial.

    Product of the irreducible factors whose multiplicity is not divisible
    by q, each taken once, with the factor X removed. Returns the constant
    polynomial 1 when nothing survives.
    """
    q = p_mod.q
    x = ModPoly(q, (0, 1), check=False)
    r = ModPoly(q, (1,), check=False)
    for f, e in factor_mod(p_mod, seed).factors:
        if e % q and f != x:
            r = r * f
    return r
