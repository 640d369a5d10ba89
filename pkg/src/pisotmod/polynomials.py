"""Dense univariate polynomials over Z and Q with exact arithmetic.

Coefficients are stored constant-first: ``IntPoly([-1, -4, 1])`` is
``X^2 - 4X - 1``. The zero polynomial has no coefficients and degree -1.
Both classes are immutable and hashable.

Besides ring arithmetic this module provides resultants (fraction-free
Bareiss elimination of the Sylvester matrix), discriminants, the
characteristic polynomial of an element ``g(zeta)`` of ``Q[X]/(p)``, an
integrality test built on it, modular inversion over Q and the
"monicization" of a numerator modulo ``p``.
"""

from __future__ import annotations

import math
from fractions import Fraction
from numbers import Integral, Rational

from ._arith import bezout
from .errors import RejectedInputError


class _DensePoly:
    __slots__ = ("_c",)

    def __init__(self, coeffs=()):
        if isinstance(coeffs, _DensePoly):
            coeffs = coeffs._c
        elif isinstance(coeffs, (int, Fraction)):
            coeffs = (coeffs,)
        cs = [self._coerce(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        object.__setattr__(self, "_c", tuple(cs))

    def __setattr__(self, name, value):
        raise AttributeError(f"{type(self).__name__} is immutable")

    @staticmethod
    def _coerce(c):
        raise NotImplementedError

    # -- basic accessors -------------------------------------------------

    @property
    def coeffs(self) -> tuple:
        return self._c

    @property
    def degree(self) -> int:
        return len(self._c) - 1

    @property
    def lc(self):
        return self._c[-1] if self._c else 0

    def is_zero(self) -> bool:
        return not self._c

    def is_monic(self) -> bool:
        return self.lc == 1

    def __getitem__(self, i):
        return self._c[i] if 0 <= i < len(self._c) else 0

    def __len__(self):
        return len(self._c)

    def __iter__(self):
        return iter(self._c)

    def __eq__(self, other):
        if isinstance(other, _DensePoly):
            return self._c == other._c
        if isinstance(other, (int, Fraction)):
            return self._c == RatPoly((other,))._c
        return NotImplemented

    def __hash__(self):
        return hash(self._c)

    def __bool__(self):
        return bool(self._c)

    def __call__(self, x):
        acc = 0
        for c in reversed(self._c):
            acc = acc * x + c
        return acc

    # -- ring operations -------------------------------------------------

    def _wrap(self, cs):
        return type(self)(cs)

    def _other(self, other):
        if isinstance(other, _DensePoly):
            if isinstance(self, RatPoly) or isinstance(other, RatPoly):
                return RatPoly(self), RatPoly(other)
            return self, other
        if isinstance(other, Integral):
            return self, type(self)((int(other),))
        if isinstance(other, Rational):
            return RatPoly(self), RatPoly((Fraction(other),))
        return None, None

    def __add__(self, other):
        a, b = self._other(other)
        if a is None:
            return NotImplemented
        n = max(len(a._c), len(b._c))
        return a._wrap([a[i] + b[i] for i in range(n)])

    __radd__ = __add__

    def __neg__(self):
        return self._wrap([-c for c in self._c])

    def __sub__(self, other):
        a, b = self._other(other)
        if a is None:
            return NotImplemented
        n = max(len(a._c), len(b._c))
        return a._wrap([a[i] - b[i] for i in range(n)])

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        a, b = self._other(other)
        if a is None:
            return NotImplemented
        if not a._c or not b._c:
            return a._wrap(())
        out = [0] * (len(a._c) + len(b._c) - 1)
        for i, x in enumerate(a._c):
            if x:
                for j, y in enumerate(b._c):
                    out[i + j] += x * y
        return a._wrap(out)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if e < 0:
            raise ValueError("negative exponent")
        result, base = self._wrap((1,)), self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def shift(self, t: int):
        """Multiply by ``X**t``."""
        if not self._c:
            return self
        return self._wrap((0,) * t + self._c)

    def derivative(self):
        return self._wrap([i * c for i, c in enumerate(self._c)][1:])

    def reverse(self, degree: int | None = None):
        """``X**degree * self(1/X)``; ``degree`` defaults to ``self.degree``."""
        d = self.degree if degree is None else degree
        return self._wrap([self[d - i] for i in range(d + 1)])

    def scale_argument(self, r):
        """Return ``self(r*X)``."""
        return RatPoly([c * Fraction(r) ** i for i, c in enumerate(self._c)])

    def __divmod__(self, other):
        return self.divrem(other)

    def __floordiv__(self, other):
        return self.divrem(other)[0]

    def __mod__(self, other):
        return self.divrem(other)[1]

    def __str__(self):
        return format_poly(self._c)

    def __repr__(self):
        return f"{type(self).__name__}({list(self._c)!r})"


class IntPoly(_DensePoly):
    """Polynomial with arbitrary-precision integer coefficients."""

    __slots__ = ()

    @staticmethod
    def _coerce(c):
        if isinstance(c, Integral):
            return int(c)
        if isinstance(c, Fraction) and c.denominator == 1:
            return c.numerator
        raise TypeError(f"integer coefficient expected, got {c!r}")

    def content(self) -> int:
        g = 0
        for c in self._c:
            g = math.gcd(g, c)
        return g

    def primitive_part(self) -> "IntPoly":
        g = self.content()
        if g == 0:
            return self
        if self.lc < 0:
            g = -g
        return IntPoly([c // g for c in self._c])

    def divrem(self, other):
        """Division by a monic integer polynomial (the only case used)."""
        if isinstance(other, RatPoly):
            return RatPoly(self).divrem(other)
        if isinstance(other, Integral):
            other = IntPoly((other,))
        if not isinstance(other, IntPoly) or not other.is_monic():
            raise RejectedInputError("integer division requires a monic divisor")
        return _divrem(self._c, other._c, IntPoly)


class RatPoly(_DensePoly):
    """Polynomial with normalized rational coefficients."""

    __slots__ = ()

    @staticmethod
    def _coerce(c):
        if isinstance(c, Fraction):
            return c
        if isinstance(c, Rational):
            return Fraction(c)
        raise TypeError(f"rational coefficient expected, got {c!r}")

    def monic(self) -> "RatPoly":
        if not self._c:
            return self
        inv = 1 / self.lc
        return RatPoly([c * inv for c in self._c])

    def denominator(self) -> int:
        """Least common denominator of the coefficients."""
        d = 1
        for c in self._c:
            d = d * c.denominator // math.gcd(d, c.denominator)
        return d

    def is_integral(self) -> bool:
        return all(c.denominator == 1 for c in self._c)

    def to_intpoly(self) -> IntPoly:
        if not self.is_integral():
            raise RejectedInputError("polynomial has non-integral coefficients")
        return IntPoly([c.numerator for c in self._c])

    def divrem(self, other):
        if not isinstance(other, _DensePoly):
            other = RatPoly((other,))
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        return _divrem(self._c, tuple(Fraction(c) for c in other._c), RatPoly)


def _divrem(a, b, cls):
    a = list(a)
    db = len(b) - 1
    if len(a) - 1 < db:
        return cls(()), cls(a)
    inv = 1 if b[-1] == 1 else Fraction(1) / b[-1]
    q = [0] * (len(a) - db)
    for i in range(len(a) - 1, db - 1, -1):
        c = a[i]
        if c:
            c = c * inv
            q[i - db] = c
            for j in range(db + 1):
                a[i - db + j] -= c * b[j]
    return cls(q), cls(a[:db])


def format_poly(coeffs, var: str = "X") -> str:
    if not any(coeffs):
        return "0"
    terms = []
    for i in range(len(coeffs) - 1, -1, -1):
        c = coeffs[i]
        if c == 0:
            continue
        sign = "-" if c < 0 else "+"
        mag = -c if c < 0 else c
        if i == 0:
            body = str(mag)
        else:
            mono = var if i == 1 else f"{var}^{i}"
            body = mono if mag == 1 else f"{mag}{mono}" if isinstance(mag, int) or mag.denominator == 1 else f"({mag}){mono}"
        terms.append((sign, body))
    first_sign, first = terms[0]
    out = ("-" if first_sign == "-" else "") + first
    for sign, body in terms[1:]:
        out += f" {sign} {body}"
    return out


def poly_arith(a, b, op: str):
    """Apply ``op`` in ``{"add", "sub", "mul", "divrem"}`` to two polynomials."""
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "divrem":
        return a.divrem(b)
    raise RejectedInputError(f"unknown operation {op!r}")


def bareiss_det(matrix) -> int | Fraction:
    """Determinant by fraction-free (Bareiss) elimination.

    Divisions are exact for integer matrices; rational entries also work.
    """
    m = [list(row) for row in matrix]
    n = len(m)
    if n == 0:
        return 1
    sign, prev = 1, 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for i in range(k + 1, n):
                if m[i][k] != 0:
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return 0
        pivot = m[k][k]
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = m[i][j] * pivot - m[i][k] * m[k][j]
                m[i][j] = num // prev if isinstance(num, int) and isinstance(prev, int) else num / prev
            m[i][k] = 0
        prev = pivot
    return sign * m[n - 1][n - 1]


def sylvester_matrix(a: _DensePoly, b: _DensePoly) -> list[list]:
    m, n = a.degree, b.degree
    size = m + n
    rows = []
    top = list(reversed(a.coeffs))
    bot = list(reversed(b.coeffs))
    for i in range(n):
        rows.append([0] * i + top + [0] * (size - m - 1 - i))
    for i in range(m):
        rows.append([0] * i + bot + [0] * (size - n - 1 - i))
    return rows


def resultant(a: _DensePoly, b: _DensePoly):
    """Resultant ``Res(a, b) = lc(a)^deg(b) * prod b(roots of a)``."""
    if a.is_zero() or b.is_zero():
        raise RejectedInputError("resultant of a zero polynomial")
    if a.degree == 0:
        return a.lc ** b.degree
    if b.degree == 0:
        return b.lc ** a.degree
    return bareiss_det(sylvester_matrix(a, b))


def discriminant(p: _DensePoly):
    """``(-1)^(k(k-1)/2) * Res(p, p') / lc(p)`` for ``deg p = k >= 1``."""
    if p.degree < 1:
        raise RejectedInputError("discriminant needs degree >= 1")
    k = p.degree
    if k == 1:
        return 1
    r = resultant(p, p.derivative())
    sign = -1 if (k * (k - 1) // 2) % 2 else 1
    val = Fraction(sign * r) / p.lc
    return val.numerator if val.denominator == 1 else val


def reduce_mod(g: _DensePoly, p: _DensePoly) -> RatPoly:
    """Remainder of ``g`` modulo ``p`` over Q."""
    return RatPoly(g).divrem(RatPoly(p))[1]


def mul_mod(a: _DensePoly, b: _DensePoly, p: _DensePoly) -> RatPoly:
    return reduce_mod(RatPoly(a) * RatPoly(b), p)


def pow_mod(a: _DensePoly, e: int, p: _DensePoly) -> RatPoly:
    result, base = RatPoly((1,)), reduce_mod(a, p)
    result = reduce_mod(result, p)
    while e:
        if e & 1:
            result = mul_mod(result, base, p)
        base = mul_mod(base, base, p)
        e >>= 1
    return result


def rat_gcd(a: _DensePoly, b: _DensePoly) -> RatPoly:
    """Monic gcd over Q (zero iff both inputs are zero)."""
    a, b = RatPoly(a), RatPoly(b)
    while b:
        a, b = b, a.divrem(b)[1]
    return a.monic()


def rat_xgcd(a: _DensePoly, b: _DensePoly) -> tuple[RatPoly, RatPoly, RatPoly]:
    """Return ``(g, s, t)`` with ``s*a + t*b == g`` monic."""
    r0, r1 = RatPoly(a), RatPoly(b)
    s0, s1 = RatPoly((1,)), RatPoly(())
    t0, t1 = RatPoly(()), RatPoly((1,))
    while r1:
        qt, r = r0.divrem(r1)
        r0, r1 = r1, r
        s0, s1 = s1, s0 - qt * s1
        t0, t1 = t1, t0 - qt * t1
    if r0.is_zero():
        return r0, s0, t0
    inv = 1 / r0.lc
    return r0 * inv, s0 * inv, t0 * inv


def invert_mod(g: _DensePoly, p: _DensePoly) -> RatPoly:
    """Inverse of ``g`` in ``Q[X]/(p)``; raises if ``gcd(g, p) != 1``."""
    h, s, _ = rat_xgcd(reduce_mod(g, p), p)
    if h != RatPoly((1,)):
        raise ZeroDivisionError("element is not invertible modulo p")
    return reduce_mod(s, p)


def multiplication_matrix(p: _DensePoly, g: _DensePoly) -> list[list[Fraction]]:
    """Matrix of ``y -> g*y`` on ``Q[X]/(p)`` in the basis ``1, X, ..., X^(k-1)``.

    Column ``j`` holds the coordinates of ``g * X^j mod p``.
    """
    k = p.degree
    cols = []
    cur = reduce_mod(g, p)
    for _ in range(k):
        cols.append([Fraction(cur[i]) for i in range(k)])
        cur = reduce_mod(cur.shift(1), p)
    return [[cols[j][i] for j in range(k)] for i in range(k)]


def charpoly_of_matrix(m) -> RatPoly:
    """Characteristic polynomial ``det(Y*I - m)`` of a square rational matrix.

    Denominators are cleared first; Faddeev-LeVerrier then runs in integers
    where every division is exact.
    """
    n = len(m)
    den = 1
    for row in m:
        for x in row:
            den = den * Fraction(x).denominator // math.gcd(den, Fraction(x).denominator)
    a = [[int(Fraction(x) * den) for x in row] for row in m]
    coeffs = [0] * (n + 1)
    coeffs[n] = 1
    mk = [[0] * n for _ in range(n)]
    for k in range(1, n + 1):
        c_prev = coeffs[n - k + 1]
        # mk <- a * mk + c_prev * I
        new = [[sum(a[i][t] * mk[t][j] for t in range(n)) for j in range(n)] for i in range(n)]
        for i in range(n):
            new[i][i] += c_prev
        mk = new
        tr = sum(sum(a[i][t] * mk[t][i] for t in range(n)) for i in range(n))
        coeffs[n - k] = -tr // k
    return RatPoly([Fraction(c, den ** (n - i)) for i, c in enumerate(coeffs)])


def char_poly_of_element(p: _DensePoly, g: _DensePoly) -> RatPoly:
    """Monic characteristic polynomial over Q of ``g(zeta)``, ``p(zeta) = 0``."""
    if p.degree < 1 or not p.is_monic():
        raise RejectedInputError("p must be monic of degree >= 1")
    return charpoly_of_matrix(multiplication_matrix(p, g))


def is_algebraic_integer(p: _DensePoly, g: _DensePoly) -> bool:
    return char_poly_of_element(p, g).is_integral()


def monicize_mod(p: IntPoly, q_in: IntPoly) -> IntPoly:
    """Find ``R`` in Z[X] such that ``q_in*R mod p`` has coefficient 1 at ``X^(k-1)``.

    Uses the coefficients ``c_t`` of ``X^(k-1)`` in ``X^t*q_in mod p`` for
    ``t = k-1-r, k-r, ...`` and a Bezout combination of them.
    """
    p, q_in = IntPoly(p), IntPoly(q_in)
    if not p.is_monic() or p.degree < 1:
        raise RejectedInputError("p must be monic of degree >= 1")
    k, r = p.degree, q_in.degree
    if q_in.is_zero() or r >= k:
        raise RejectedInputError("q_in must be nonzero of degree < deg p")
    if q_in.content() != 1:
        raise RejectedInputError("q_in must have content 1")
    ts, cs = [], []
    cur = q_in.shift(k - 1 - r) % p
    t = k - 1 - r
    g = 0
    while g != 1:
        if t > k - 1 + k:
            raise AssertionError("coefficients c_t failed to become coprime")
        ts.append(t)
        cs.append(cur[k - 1])
        g = math.gcd(g, cur[k - 1])
        cur = cur.shift(1) % p
        t += 1
    _, ds = bezout(cs)
    out = IntPoly(())
    for t, d in zip(ts, ds):
        if d:
            out = out + IntPoly([d]).shift(t)
    return out
