"""Membership in M_zeta and the structure of its denominators.

Throughout, the field elements are ``alpha = (r_0 + r_1 zeta + ... +
r_{k-1} zeta^{k-1}) / N`` written in the power basis of a certified Pisot
number zeta. Only such elements are handled: a nonzero real alpha with
``||alpha zeta^n|| -> 0`` lies in Q(zeta) anyway.

Deciding membership. With ``Q = sum r_i X^i`` the trace
``s_n = sum_j Q(x_j) x_j^n = sum_i r_i d_{n+i}`` is an integer and

    alpha zeta^n = s_n / N - sum_{j >= 2} Q(x_j) x_j^n / N,

where the sum over the small conjugates tends to 0. So ``||alpha zeta^n||``
tends to 0 exactly when ``s_n = 0 (mod N)`` for all large n, i.e. when the
periodic part of ``s_n mod N`` is identically zero.

Denominators ``q^m``. The numerators r with ``Q(zeta)/q^m`` in M_zeta form
a submodule of ``(Z/q^m)^k``: the kernel of the rows ``(d_n, ..., d_{n+k-1})``
for n running over the periodic part of the d-states. A reduced element
with denominator exactly q^m exists iff that kernel contains a vector with
a coordinate prime to q; as the kernel is spanned by its generators, this
happens iff some generator has such a coordinate (``has_reduced``).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from typing import Sequence

from ._arith import factorize, is_prime, lcm, radical_divides, squarefree_decompose, valuation
from .errors import RejectedInputError, ResourceError
from .finite_field import ModPoly, compute_R, divides_mod
from .howell import howell_form, in_row_span, kernel_mod
from .pisot import PisotCert, certify_pisot
from .polynomials import (
    IntPoly,
    RatPoly,
    char_poly_of_element,
    invert_mod,
    is_algebraic_integer,
    mul_mod,
    pow_mod,
    reduce_mod,
)
from .recurrence import ModularOrbit, PowerSumSeq, _d_orbit, d_residue_orbit, modular_orbit, state_budget


# ---------------------------------------------------------------------------
# element types


@dataclass(frozen=True)
class ReducedElement:
    """``(r_0 + ... + r_{k-1} zeta^{k-1}) / N`` with ``gcd(r, N) = 1``."""

    numerator: tuple[int, ...]
    denominator: int

    def __post_init__(self):
        num = tuple(int(x) for x in self.numerator)
        object.__setattr__(self, "numerator", num)
        if self.denominator < 1:
            raise RejectedInputError("denominator must be positive")
        if math.gcd(*num, self.denominator) != 1:
            raise RejectedInputError("numerator and denominator share a common factor")

    @classmethod
    def make(cls, numerator: Sequence[int], denominator: int = 1) -> "ReducedElement":
        """Reduce an arbitrary fraction of integer vector by integer."""
        if denominator == 0:
            raise RejectedInputError("denominator must be nonzero")
        if denominator < 0:
            numerator = [-x for x in numerator]
            denominator = -denominator
        g = math.gcd(*numerator, denominator)
        return cls(tuple(x // g for x in numerator), denominator // g)

    def coords(self) -> tuple[Fraction, ...]:
        return tuple(Fraction(x, self.denominator) for x in self.numerator)

    def __str__(self):
        from .polynomials import format_poly

        num = format_poly(self.numerator, "ζ")
        if self.denominator == 1:
            return num
        return f"({num})/{self.denominator}" if " " in num else f"{num}/{self.denominator}"


@dataclass(frozen=True)
class FieldElement:
    """An element of Q(zeta) by its rational power-basis coordinates."""

    cert: PisotCert
    coords: tuple[Fraction, ...]

    def __post_init__(self):
        cs = tuple(Fraction(c) for c in self.coords)
        if len(cs) < self.cert.degree:
            cs = cs + (Fraction(0),) * (self.cert.degree - len(cs))
        if len(cs) != self.cert.degree:
            raise RejectedInputError(f"expected {self.cert.degree} coordinates, got {len(cs)}")
        object.__setattr__(self, "coords", cs)

    @classmethod
    def from_reduced(cls, cert: PisotCert, e: ReducedElement) -> "FieldElement":
        return cls(cert, e.coords())

    @classmethod
    def from_poly(cls, cert: PisotCert, g) -> "FieldElement":
        """The element g(zeta) for a polynomial g, reduced modulo P."""
        r = reduce_mod(RatPoly(g), cert.poly)
        return cls(cert, tuple(r[i] for i in range(cert.degree)))

    def as_poly(self) -> RatPoly:
        return RatPoly(self.coords)

    def _same_field(self, other: "FieldElement"):
        if other.cert.poly != self.cert.poly:
            raise RejectedInputError("elements live over different Pisot numbers")

    def __add__(self, other: "FieldElement") -> "FieldElement":
        self._same_field(other)
        return FieldElement(self.cert, tuple(a + b for a, b in zip(self.coords, other.coords)))

    def __sub__(self, other: "FieldElement") -> "FieldElement":
        self._same_field(other)
        return FieldElement(self.cert, tuple(a - b for a, b in zip(self.coords, other.coords)))

    def __neg__(self):
        return FieldElement(self.cert, tuple(-a for a in self.coords))

    def __mul__(self, other) -> "FieldElement":
        if isinstance(other, FieldElement):
            self._same_field(other)
            return FieldElement.from_poly(self.cert, mul_mod(self.as_poly(), other.as_poly(), self.cert.poly))
        c = Fraction(other)
        return FieldElement(self.cert, tuple(a * c for a in self.coords))

    __rmul__ = __mul__

    def times_zeta(self, power: int = 1) -> "FieldElement":
        if power >= 0:
            z = pow_mod(IntPoly((0, 1)), power, self.cert.poly)
        else:
            z = pow_mod(invert_mod(IntPoly((0, 1)), self.cert.poly), -power, self.cert.poly)
        return self * FieldElement.from_poly(self.cert, z)

    def inverse(self) -> "FieldElement":
        return FieldElement.from_poly(self.cert, invert_mod(self.as_poly(), self.cert.poly))

    def evaluate(self, x: complex) -> complex:
        acc = 0
        for c in reversed(self.coords):
            acc = acc * x + float(c)
        return acc

    def is_integral(self) -> bool:
        return is_algebraic_integer(self.cert.poly, self.as_poly())

    def char_poly(self) -> RatPoly:
        return char_poly_of_element(self.cert.poly, self.as_poly())


def to_reduced_form(e: FieldElement | ReducedElement) -> ReducedElement:
    if isinstance(e, ReducedElement):
        return e
    N = lcm(c.denominator for c in e.coords)
    return ReducedElement.make([int(c * N) for c in e.coords], N)


# ---------------------------------------------------------------------------
# membership


@dataclass(frozen=True)
class MembershipVerdict:
    """Verdict plus the orbit of ``s_n mod N`` that justifies it."""

    member: bool
    orbit: ModularOrbit
    element: ReducedElement
    witness_index: int | None = None


_TRIVIAL_ORBIT = ModularOrbit(1, 0, 1, (0,), (), 0, 1)


def _seq_for(cert: PisotCert) -> PowerSumSeq:
    return _SEQ_CACHE.get(cert)


class _SeqCache:
    """One PowerSumSeq per certificate, so d-orbits are shared."""

    def __init__(self):
        self._store: dict[tuple[int, ...], PowerSumSeq] = {}

    def get(self, cert: PisotCert) -> PowerSumSeq:
        key = cert.poly.coeffs
        seq = self._store.get(key)
        if seq is None:
            seq = self._store.setdefault(key, PowerSumSeq(cert))
        return seq

    def clear(self) -> None:
        self._store.clear()


_SEQ_CACHE = _SeqCache()


def clear_caches() -> None:
    """Forget memoized sequences and orbits (used when swapping implementations in tests)."""
    _SEQ_CACHE.clear()
    _d_orbit.cache_clear()


def decide_membership(e: FieldElement | ReducedElement, cert: PisotCert | None = None) -> MembershipVerdict:
    """Decide ``alpha in M_zeta``; ``cert`` is needed for a bare ReducedElement."""
    if isinstance(e, FieldElement):
        cert = e.cert
    elif cert is None:
        raise RejectedInputError("a certificate is required for a ReducedElement")
    red = to_reduced_form(e)
    if len(red.numerator) != cert.degree:
        raise RejectedInputError(f"expected {cert.degree} numerator entries")
    if red.denominator == 1:
        return MembershipVerdict(True, _TRIVIAL_ORBIT, red)
    orbit = modular_orbit(_seq_for(cert), red.numerator, red.denominator)
    for i, c in enumerate(orbit.cycle):
        if c:
            return MembershipVerdict(False, orbit, red, orbit.preperiod + i)
    return MembershipVerdict(True, orbit, red)


def _is_member(seq: PowerSumSeq, numerator: Sequence[int], N: int) -> bool:
    """Fast path of :func:`decide_membership`: scan the state cycle, stop early."""
    if N == 1:
        return True
    d, rho, pi = d_residue_orbit(seq, N)
    k = seq.k
    w = [x % N for x in numerator]
    for n in range(rho, rho + pi):
        if sum(w[i] * d[n + i] for i in range(k)) % N:
            return False
    return True


def is_member(cert: PisotCert, numerator: Sequence[int], N: int) -> bool:
    return _is_member(_seq_for(cert), numerator, N)


# ---------------------------------------------------------------------------
# prime support and exponents


def prime_support(cert: PisotCert) -> list[int]:
    """Sorted primes dividing ``Delta(P) * P(0)``; these are the only
    possible prime factors of reduced denominators of members."""
    return sorted(factorize(cert.discriminant * cert.constant_term))


def is_regular(cert: PisotCert, q: int) -> bool:
    return cert.constant_term % q != 0


def regular_exponent_bound(cert: PisotCert, q: int) -> int | None:
    """``nu_q(Delta)`` when zeta is regular at q; None at singular primes,
    where denominators with arbitrarily high powers of q occur."""
    if not is_regular(cert, q):
        return None
    return valuation(cert.discriminant, q)


@dataclass(frozen=True)
class DenominatorSolution:
    """Numerators r (mod q^m) with ``(sum r_i zeta^i) / q^m`` in M_zeta."""

    q: int
    m: int
    generators: tuple[tuple[int, ...], ...]
    has_reduced: bool
    constraint_rows: int = field(default=0, compare=False)

    @property
    def modulus(self) -> int:
        return self.q**self.m

    def reduced_generator(self) -> tuple[int, ...] | None:
        for g in self.generators:
            if any(x % self.q for x in g):
                return g
        return None

    def contains(self, r: Sequence[int]) -> bool:
        if not self.generators:
            return not any(x % self.modulus for x in r)
        form = howell_form([list(g) for g in self.generators], self.q, self.m)
        return in_row_span(form, r, self.q, self.m)


def _constraint_rows(seq: PowerSumSeq, M: int, q: int, m: int) -> list[list[int]]:
    """Rows ``(d_n, ..., d_{n+k-1}) mod M`` over the state cycle, stopping
    as soon as a row already lies in the span of the previous ones: from
    then on the span is invariant under the shift and cannot grow."""
    d, rho, pi = d_residue_orbit(seq, M)
    k = seq.k
    rows: list[list[int]] = []
    form: list[list[int]] = []
    for n in range(rho, rho + pi):
        row = list(d[n : n + k])
        if not any(row) or (form and in_row_span(form, row, q, m)):
            break
        rows.append(row)
        form = howell_form(rows, q, m)
    return rows


def solve_denominator_module(cert: PisotCert, q: int, m: int) -> DenominatorSolution:
    if not is_prime(q):
        raise RejectedInputError(f"{q} is not prime")
    if q >= 2**64:
        raise RejectedInputError("prime outside the supported word-size range")
    if m < 1:
        raise RejectedInputError("exponent must be at least 1")
    k = cert.degree
    rows = _constraint_rows(_seq_for(cert), q**m, q, m)
    gens = kernel_mod(rows, q, m, ncols=k) if rows else [
        [1 if i == j else 0 for j in range(k)] for i in range(k)
    ]
    gens_t = tuple(tuple(g) for g in gens)
    has_reduced = any(x % q for g in gens_t for x in g)
    return DenominatorSolution(q, m, gens_t, has_reduced, len(rows))


def denominator_profile(cert: PisotCert, q: int, m_max: int) -> dict[int, bool]:
    """``{m: has_reduced(q, m)}`` for m = 1..m_max; the largest m with True
    is the true exponent of q observed up to m_max."""
    return {m: solve_denominator_module(cert, q, m).has_reduced for m in range(1, m_max + 1)}


def lemma_consistency(cert: PisotCert, q: int) -> bool:
    """Compare the orbit oracle with the divisibility ``R | Q_q`` on every
    numerator class mod q."""
    k = cert.degree
    if q**k > state_budget():
        raise ResourceError(f"{q}^{k} numerator classes exceed the state budget")
    R = compute_R(ModPoly(q, cert.poly.coeffs))
    seq = _seq_for(cert)
    for r in product(range(q), repeat=k):
        oracle = _is_member(seq, r, q)
        lemma = divides_mod(R, ModPoly(q, r, check=False))
        if oracle != lemma:
            return False
    return True


# ---------------------------------------------------------------------------
# explicit elements


def zeta_inverse(cert: PisotCert) -> RatPoly:
    """``zeta^{-1} = -(zeta^{k-1} + a_{k-1} zeta^{k-2} + ... + a_1) / a_0``."""
    a = cert.poly.coeffs
    return RatPoly([Fraction(-c, a[0]) for c in a[1:]])


def singular_witness(cert: PisotCert, q: int, l: int) -> ReducedElement:
    """Reduced form of ``zeta^{-l m}``, m the multiplicity of 0 in P mod q."""
    if not is_prime(q):
        raise RejectedInputError(f"{q} is not prime")
    if l < 1:
        raise RejectedInputError("l must be at least 1")
    a = cert.poly.coeffs
    if a[0] % q:
        raise RejectedInputError(f"zeta is regular at {q}: {q} does not divide P(0) = {a[0]}")
    mult = next(j for j in range(1, len(a)) if a[j] % q)
    power = pow_mod(zeta_inverse(cert), l * mult, cert.poly)
    red = to_reduced_form(FieldElement.from_poly(cert, power))
    if valuation(red.denominator, q) < l:
        raise ArithmeticError(f"denominator {red.denominator} of zeta^-{l * mult} not divisible by {q}^{l}")
    return red


def psi_element(cert: PisotCert) -> tuple[FieldElement, MembershipVerdict, bool]:
    """``Psi = sum_{j>=2} 1/(zeta - zeta_j)``, computed as ``P''(zeta) / (2 P'(zeta))``.

    Writing ``P = (X - zeta) G`` gives ``P'(zeta) = G(zeta)`` and
    ``P''(zeta) = 2 G'(zeta)``, so the quotient is ``G'/G`` at zeta.
    """
    if cert.degree < 2:
        raise RejectedInputError("Psi needs degree at least 2")
    P = cert.poly
    num = RatPoly(P.derivative().derivative())
    den = invert_mod(RatPoly(P.derivative()) * 2, P)
    psi = FieldElement.from_poly(cert, mul_mod(num, den, P))
    return psi, decide_membership(psi), psi.is_integral()


@dataclass(frozen=True)
class SqrtDiscReport:
    inv_sqrt_disc: FieldElement
    verdict: MembershipVerdict
    squarefree_part: int
    field_discriminant: int
    inv_sqrt_dk: FieldElement
    verdict_dk: MembershipVerdict
    dk_is_integral: bool


def sqrt_disc_element(cert: PisotCert) -> SqrtDiscReport:
    """``1/sqrt(Delta)`` and ``1/sqrt(d_K)`` for quadratic zeta.

    ``sqrt(Delta) = zeta - zeta' = 2 zeta - t`` with t the trace, so
    ``1/sqrt(Delta) = (2 zeta - t) / Delta``. With ``Delta = f^2 d``, d
    squarefree, ``d_K = d`` for ``d = 1 (mod 4)`` and ``4d`` otherwise,
    and ``1/sqrt(d_K) = (f/e) / sqrt(Delta)`` with ``e^2 = d_K / d``.
    """
    if cert.degree != 2:
        raise RejectedInputError("sqrt_disc_element is defined for quadratic zeta only")
    a0, a1, _ = cert.poly.coeffs
    t = -a1
    disc = cert.discriminant
    inv = FieldElement(cert, (Fraction(-t, disc), Fraction(2, disc)))
    f, d = squarefree_decompose(disc)
    if d % 4 == 1:
        dk, e = d, 1
    else:
        dk, e = 4 * d, 2
    scale = Fraction(f, e)
    if scale.denominator != 1:
        raise ArithmeticError(f"Delta = {disc} is not d_K = {dk} times a square")
    inv_dk = inv * scale
    return SqrtDiscReport(
        inv, decide_membership(inv), d, dk, inv_dk, decide_membership(inv_dk), inv_dk.is_integral()
    )


# ---------------------------------------------------------------------------
# integral bases


@dataclass(frozen=True)
class BasisElementCheck:
    element: ReducedElement
    divides_discriminant: bool
    residue_conditions: tuple[tuple[int, bool], ...]
    integral: bool
    reasons: tuple[str, ...]

    @property
    def passed(self) -> bool:
        return not self.reasons


@dataclass(frozen=True)
class BasisReport:
    elements: tuple[BasisElementCheck, ...]
    determinant: Fraction
    reasons: tuple[str, ...]

    @property
    def passed(self) -> bool:
        return not self.reasons and all(e.passed for e in self.elements)


def _det_fraction(rows: list[list[Fraction]]) -> Fraction:
    n = len(rows)
    a = [list(r) for r in rows]
    det = Fraction(1)
    for c in range(n):
        p = next((i for i in range(c, n) if a[i][c] != 0), None)
        if p is None:
            return Fraction(0)
        if p != c:
            a[c], a[p] = a[p], a[c]
            det = -det
        det *= a[c][c]
        for i in range(c + 1, n):
            f = a[i][c] / a[c][c]
            if f:
                a[i] = [x - f * y for x, y in zip(a[i], a[c])]
    return det


def integral_basis_check(cert: PisotCert, basis: Sequence[ReducedElement]) -> BasisReport:
    """Necessary conditions on a candidate integral basis given in reduced form.

    Each ``U_j(zeta)/N_j`` must have N_j dividing Delta(P), must satisfy
    ``R_{zeta,q} | U_j mod q`` for every prime q dividing N_j, and must be an
    algebraic integer; the basis must be linearly independent.
    """
    k = cert.degree
    if len(basis) != k:
        raise RejectedInputError(f"basis needs {k} elements, got {len(basis)}")
    disc = cert.discriminant
    checks = []
    for e in basis:
        e = to_reduced_form(e)
        reasons = []
        N = e.denominator
        div = disc % N == 0
        if not div:
            reasons.append(f"{N} ∤ Δ")
        conds = []
        for q in sorted(factorize(N)):
            R = compute_R(ModPoly(q, cert.poly.coeffs))
            ok = divides_mod(R, ModPoly(q, e.numerator, check=False))
            conds.append((q, ok))
            if not ok:
                reasons.append(f"R mod {q} ∤ U mod {q}")
        integral = FieldElement.from_reduced(cert, e).is_integral()
        if not integral:
            reasons.append("not an algebraic integer")
        checks.append(BasisElementCheck(e, div, tuple(conds), integral, tuple(reasons)))
    det = _det_fraction([list(c.element.coords()) for c in checks])
    reasons = () if det != 0 else ("basis is linearly dependent",)
    return BasisReport(tuple(checks), det, reasons)


# ---------------------------------------------------------------------------
# conjecture probe and Z[zeta, 1/zeta]


def _omega(n: int) -> int:
    return sum(factorize(n).values()) if abs(n) > 1 else 0


def in_laurent_ring(e: FieldElement) -> bool:
    """Whether ``e`` lies in ``Z[zeta, zeta^{-1}]``.

    The lattices ``L_n = zeta^{-n} Z[zeta] ∩ (1/D) Z[zeta]`` (D the reduced
    denominator of e) increase with n and satisfy
    ``L_{n+1} = zeta^{-1} L_n ∩ (1/D) Z[zeta]``, so they stabilize at the
    first repetition; the quotient ``(1/D) Z[zeta] / Z[zeta]`` has order
    ``D^k``, which bounds the number of strict steps by ``k * Omega(D)``.
    Multiplying e by zeta that many times decides the question.
    """
    red = to_reduced_form(e)
    D = red.denominator
    if D == 1:
        return True
    if not radical_divides(D, e.cert.constant_term):
        return False
    steps = e.cert.degree * _omega(D)
    cur = FieldElement.from_reduced(e.cert, red)
    for _ in range(steps + 1):
        if all(c.denominator == 1 for c in cur.coords):
            return True
        cur = cur.times_zeta()
    return False


def radical_normal_form_ok(e: FieldElement) -> bool:
    """The necessary condition ``rad(N) | rad(P(0))`` on the reduced
    denominator N of an element of ``Z[zeta, zeta^{-1}]``."""
    return radical_divides(to_reduced_form(e).denominator, e.cert.constant_term)


@dataclass(frozen=True)
class ProbeRow:
    m: int
    generators: int
    has_reduced: bool
    violations: tuple[tuple[int, ...], ...]
    radical_violations: tuple[tuple[int, ...], ...]


@dataclass(frozen=True)
class ProbeReport:
    q: int
    rows: tuple[ProbeRow, ...]

    @property
    def violations(self) -> int:
        return sum(len(r.violations) for r in self.rows)


def conjecture_probe(cert: PisotCert, q: int, m_max: int) -> ProbeReport:
    """Test ``M_zeta ⊂ Z[zeta, zeta^{-1}] <1/Delta>`` on denominators q^m.

    For every generator r of the solution module mod q^m the element
    ``Delta * r(zeta) / q^m`` is tested for membership in the Laurent ring.
    Adding integral vectors to r does not change the outcome and the
    target is a Z-module, so the generators settle the whole module.
    """
    disc = cert.discriminant
    rows = []
    for m in range(1, m_max + 1):
        sol = solve_denominator_module(cert, q, m)
        bad, rad_bad = [], []
        for g in sol.generators:
            elem = FieldElement(cert, tuple(Fraction(x * disc, q**m) for x in g))
            if not in_laurent_ring(elem):
                bad.append(g)
            if not radical_normal_form_ok(elem):
                rad_bad.append(g)
        rows.append(ProbeRow(m, len(sol.generators), sol.has_reduced, tuple(bad), tuple(rad_bad)))
    return ProbeReport(q, tuple(rows))


def radical_case(zeta: int, A: int, B: int) -> bool:
    """``A/B in M_zeta`` for an integer ``zeta >= 2``: iff ``rad(B) | rad(zeta)``."""
    if zeta < 2:
        raise RejectedInputError("zeta must be an integer >= 2")
    if B == 0:
        raise RejectedInputError("B must be nonzero")
    g = math.gcd(A, B)
    return radical_divides(B // g, zeta)


# ---------------------------------------------------------------------------
# changing the Pisot number


def power_basis_change(e: FieldElement, N: int) -> FieldElement:
    """Re-express e in the power basis of ``eta = zeta^N``.

    eta is again Pisot and generates the same field, so the matrix whose
    columns are ``eta^0, ..., eta^{k-1}`` in the zeta basis is invertible.
    """
    cert = e.cert
    k = cert.degree
    P = cert.poly
    eta = pow_mod(IntPoly((0, 1)), N, P)
    new_cert = certify_pisot(char_poly_of_element(P, eta).to_intpoly())
    cols = []
    cur = RatPoly((1,))
    for _ in range(k):
        cols.append([cur[i] for i in range(k)])
        cur = mul_mod(cur, eta, P)
    # solve sum_j c_j cols[j] = e.coords
    a = [[cols[j][i] for j in range(k)] + [e.coords[i]] for i in range(k)]
    for c in range(k):
        p = next(i for i in range(c, k) if a[i][c] != 0)
        a[c], a[p] = a[p], a[c]
        inv = 1 / a[c][c]
        a[c] = [x * inv for x in a[c]]
        for i in range(k):
            if i != c and a[i][c]:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[c])]
    return FieldElement(new_cert, tuple(a[i][k] for i in range(k)))
