"""Exact certification of Pisot polynomials.

A monic integer polynomial P of degree k is accepted when it is
irreducible over Q, has exactly k - 1 roots strictly inside the unit disk,
none on the unit circle, and P(1) < 0. The last condition forces the
remaining root to be real and greater than 1: P is monic, so P(x) > 0 for
large real x, and P(1) < 0 puts a real root in (1, oo).

Root counting is done without floating point:

* roots on the unit circle are excluded first, exactly, through
  ``gcd(p, reverse(p))`` and a Sturm count of the associated trace
  polynomial on ``[-2, 2]``;
* the number of roots inside the disk then follows from the Schur-Cohn
  transform ``T f = f(0) f - lc(f) f*``, where Rouche's theorem gives
  ``inside(f) = inside(Tf)`` when ``|f(0)| > |lc f|`` and
  ``inside(f) = n - inside(Tf)`` when ``|f(0)| < |lc f|``;
* when ``|f(0)| = |lc f|`` at some stage (every Pisot unit hits this at
  the very first step) the same count is taken on the slightly smaller
  and larger circles ``1 -+ 2^-j``. Agreement of both counts proves the
  annulus in between holds no root, and since the circle itself was
  already excluded the common value is the answer.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

from ._arith import primes_up_to
from .errors import BoundaryRootError, NotPisotError, RejectedInputError, ResourceError, UnsupportedDegreeError
from .finite_field import ModPoly, factor_mod
from .polynomials import IntPoly, RatPoly, char_poly_of_element, discriminant, pow_mod, rat_gcd

MAX_DEGREE = 8
COEFF_CAP = 2**64
RADIUS_PRECISION = Fraction(1, 2**20)

REJECT_NOT_MONIC = "not_monic"
REJECT_REDUCIBLE = "reducible"
REJECT_ROOT_COUNT = "wrong_root_count"
REJECT_P1 = "P(1)>=0"
REJECT_BOUNDARY = "boundary_root"
REJECT_DEGREE = "degree_cap"
REJECT_COEFF = "coefficient_cap"

_PERTURB_START = 8
_PERTURB_STOP = 400


# ---------------------------------------------------------------------------
# root counting


def _integer_coeffs(p) -> list[int]:
    """Clear denominators of an IntPoly/RatPoly, keeping the sign."""
    cs = [Fraction(c) for c in p.coeffs]
    den = 1
    for c in cs:
        den = den * c.denominator // math.gcd(den, c.denominator)
    return [int(c * den) for c in cs]


def _strip_zero_roots(cs: list[int]) -> tuple[list[int], int]:
    z = 0
    while z < len(cs) and cs[z] == 0:
        z += 1
    return cs[z:], z


def _sturm_count(h: RatPoly, a: Fraction, b: Fraction) -> int:
    """Number of distinct real roots of ``h`` in ``(a, b]``; h(a), h(b) nonzero."""
    seq = [h, h.derivative()]
    while not seq[-1].is_zero():
        seq.append(-(seq[-2] % seq[-1]))
    seq.pop()

    def variations(x):
        signs = [s(x) for s in seq]
        signs = [v for v in signs if v != 0]
        return sum(1 for u, v in zip(signs, signs[1:]) if (u < 0) != (v < 0))

    return variations(a) - variations(b)


def has_unit_circle_root(p) -> bool:
    """Exact test for a root of modulus exactly 1."""
    cs, _ = _strip_zero_roots(_integer_coeffs(p))
    f = IntPoly(cs)
    if f.degree < 1:
        return False
    if f(1) == 0 or f(-1) == 0:
        return True
    g = rat_gcd(RatPoly(f), RatPoly(f.reverse()))
    if g.degree < 1:
        return False
    # any common root of f and its reverse comes with its inverse; the
    # gcd is palindromic of even degree 2m because +-1 are not roots
    m = g.degree // 2
    u = RatPoly((0, 1))
    v_prev, v_cur = RatPoly((2,)), u
    h = RatPoly((g[m],))
    for i in range(1, m + 1):
        h = h + v_cur * g[m + i]
        v_prev, v_cur = v_cur, u * v_cur - v_prev
    h = h // rat_gcd(h, h.derivative())
    return _sturm_count(h, Fraction(-2), Fraction(2)) > 0


def _schur_cohn(cs: list[int]) -> int | None:
    """Roots strictly inside the unit disk, or None on a degenerate step.

    ``cs`` is nonzero and the polynomial has no root on the unit circle.
    The nominal degree is ``len(cs) - 1`` even if the top entries vanish.
    """
    sign = 1  # +1: count(f) = acc + count(current); -1: acc - count(current)
    acc = 0
    while len(cs) > 1:
        n = len(cs) - 1
        a0, an = cs[0], cs[-1]
        delta = a0 * a0 - an * an
        if delta == 0:
            return None
        t = [a0 * cs[i] - an * cs[n - i] for i in range(n)]
        g = 0
        for c in t:
            g = math.gcd(g, c)
        t = [c // g for c in t]
        if delta < 0:
            acc += sign * n
            sign = -sign
        cs = t
    return acc


def _scaled(cs: list[int], num: int, den: int) -> list[int]:
    """Integer coefficients of ``den^n * p(num/den * X)``."""
    n = len(cs) - 1
    return [c * num**i * den ** (n - i) for i, c in enumerate(cs)]


def count_roots_in_unit_disk(p) -> int:
    """Exact number of roots with modulus < 1, counted with multiplicity.

    Raises :class:`BoundaryRootError` if a root lies on the unit circle, or
    if the count cannot be separated from the circle (not expected to
    happen once the circle has been cleared).
    """
    cs = _integer_coeffs(p)
    if not cs:
        raise BoundaryRootError("the zero polynomial vanishes on the unit circle")
    cs, zeros = _strip_zero_roots(cs)
    if has_unit_circle_root(IntPoly(cs)):
        raise BoundaryRootError("polynomial has a root on the unit circle")
    direct = _schur_cohn(cs)
    if direct is not None:
        return zeros + direct
    for j in range(_PERTURB_START, _PERTURB_STOP):
        inner = _schur_cohn(_scaled(cs, 2**j - 1, 2**j))
        outer = _schur_cohn(_scaled(cs, 2**j + 1, 2**j))
        if inner is not None and inner == outer:
            return zeros + inner
    raise BoundaryRootError("could not separate the roots from the unit circle")


# ---------------------------------------------------------------------------
# irreducibility over Q


def _mignotte_bound(f: IntPoly) -> int:
    norm = math.isqrt(sum(c * c for c in f.coeffs)) + 1
    return 2**f.degree * norm


def _mod_list(cs, m):
    return [c % m for c in cs]


def _lift_pair(f: IntPoly, g: ModPoly, h: ModPoly, E: int) -> tuple[IntPoly, IntPoly]:
    """Lift ``f = g h (mod q)`` to ``f = G H (mod q^E)``; g, h monic and coprime."""
    q = g.q
    # s g + t h = 1 (mod q)
    r0, r1 = g, h
    s0, s1 = ModPoly(q, (1,), check=False), ModPoly(q, (), check=False)
    t0, t1 = s1, s0
    while not r1.is_zero():
        quo, rem = r0.divrem(r1)
        r0, r1 = r1, rem
        s0, s1 = s1, s0 - quo * s1
        t0, t1 = t1, t0 - quo * t1
    inv = pow(r0.lc, -1, q)
    s, t = s0.scale(inv), t0.scale(inv)
    G = IntPoly(g.coeffs)
    H = IntPoly(h.coeffs)
    qj = q
    for _ in range(1, E):
        diff = f - G * H
        e = ModPoly(q, [c // qj for c in diff.coeffs], check=False)
        dG = (t * e) % g
        dH = (s * e) % h
        G = G + IntPoly(dG.coeffs) * qj
        H = H + IntPoly(dH.coeffs) * qj
        qj *= q
        G = IntPoly(_mod_list(G.coeffs, qj))
        H = IntPoly(_mod_list(H.coeffs, qj))
    return G, H


def _hensel_lift(f: IntPoly, factors: list[ModPoly], E: int) -> list[IntPoly]:
    q = factors[0].q
    if len(factors) == 1:
        return [IntPoly(_mod_list(f.coeffs, q**E))]
    half = len(factors) // 2
    left, right = factors[:half], factors[half:]
    g = ModPoly(q, (1,), check=False)
    for x in left:
        g = g * x
    h = ModPoly(q, (1,), check=False)
    for x in right:
        h = h * x
    G, H = _lift_pair(f, g, h, E)
    return _hensel_lift(G, left, E) + _hensel_lift(H, right, E)


def _symmetric(cs, m):
    half = m // 2
    return [c % m - m if c % m > half else c % m for c in cs]


def _subset_sums(degrees) -> set[int]:
    sums = {0}
    for d in degrees:
        sums |= {s + d for s in sums}
    return sums


def is_irreducible(p: IntPoly) -> bool:
    """Irreducibility over Q of a monic integer polynomial of degree <= 8.

    Content and rational-root checks come first, then a squarefree test
    over Q. Factor degree patterns modulo a few primes prune most inputs;
    the rest go through Hensel lifting and exact recombination of the
    modular factors (a factor over Z has coefficients below the Mignotte
    bound, so lifting past twice that bound makes trial division exact).
    """
    p = IntPoly(p)
    if p.degree < 1:
        return False
    if p.degree > MAX_DEGREE:
        raise UnsupportedDegreeError(f"degree {p.degree} exceeds the supported limit {MAX_DEGREE}")
    if not p.is_monic():
        raise NotPisotError(REJECT_NOT_MONIC, "is_irreducible expects a monic polynomial")
    n = p.degree
    if n == 1:
        return True
    if p[0] == 0 or p(1) == 0 or p(-1) == 0:
        return False
    if rat_gcd(RatPoly(p), RatPoly(p.derivative())).degree > 0:
        return False
    disc = discriminant(p)
    possible = set(range(1, n))
    best = None
    tried = 0
    for q in primes_up_to(1000):
        if disc % q == 0:
            continue
        fac = factor_mod(ModPoly(q, p.coeffs, check=False))
        degs = fac.degrees()
        if len(degs) == 1:
            return True
        possible &= _subset_sums(degs)
        if not possible & set(range(1, n)):
            return True
        if best is None or len(degs) < len(best.factors):
            best = fac
        tried += 1
        if tried >= 6:
            break
    q = best.q
    B = _mignotte_bound(p)
    E = 1
    while q**E <= 2 * B:
        E += 1
    mod = q**E
    lifted = _hensel_lift(p, [f for f, _ in best.factors], E)
    r = len(lifted)
    for size in range(1, r // 2 + 1):
        for subset in combinations(range(r), size):
            cand = IntPoly((1,))
            for i in subset:
                cand = IntPoly(_mod_list((cand * lifted[i]).coeffs, mod))
            cand = IntPoly(_symmetric(cand.coeffs, mod))
            if cand.degree not in possible:
                continue
            _, rem = p.divrem(cand)
            if rem.is_zero():
                return False
    return True


# ---------------------------------------------------------------------------
# certificates


@dataclass(frozen=True)
class PisotCert:
    """A certified Pisot polynomial.

    ``conjugate_radius`` is a dyadic rational bounding every non-dominant
    root strictly from above (0 when k = 1).
    """

    poly: IntPoly
    degree: int
    conjugate_radius: Fraction
    is_unit: bool

    @property
    def coeffs(self) -> tuple[int, ...]:
        return self.poly.coeffs

    @property
    def discriminant(self) -> int:
        return discriminant(self.poly)

    @property
    def constant_term(self) -> int:
        return self.poly[0]


def _count_in_disk(p: IntPoly, r: Fraction) -> int:
    return count_roots_in_unit_disk(p.scale_argument(r))


def conjugate_radius(p: IntPoly, precision: Fraction = RADIUS_PRECISION) -> Fraction:
    """Upper end of a bisection interval for the largest non-dominant modulus.

    Requires ``p`` to have k - 1 roots in the open unit disk. The search
    keeps ``count(hi) == k - 1`` and stops once ``hi - lo < precision``.
    """
    k = p.degree
    if k == 1:
        return Fraction(0)
    lo, hi = Fraction(0), Fraction(1)
    while hi - lo >= precision:
        mid = (lo + hi) / 2
        try:
            inside = _count_in_disk(p, mid)
        except BoundaryRootError:
            lo = mid
            continue
        if inside == k - 1:
            hi = mid
        else:
            lo = mid
    return hi


def _check_caps(p: IntPoly) -> None:
    if p.degree > MAX_DEGREE:
        raise NotPisotError(REJECT_DEGREE, f"degree {p.degree} > {MAX_DEGREE}")
    big = [c for c in p.coeffs if abs(c) >= COEFF_CAP]
    if big:
        raise NotPisotError(REJECT_COEFF, "coefficient of absolute value >= 2^64")


def certify_pisot(p) -> PisotCert:
    """Certify ``p`` as a Pisot polynomial or raise :class:`NotPisotError`."""
    p = IntPoly(p)
    if p.degree < 1:
        raise NotPisotError(REJECT_ROOT_COUNT, "constant polynomial has no Pisot root")
    if not p.is_monic():
        raise NotPisotError(REJECT_NOT_MONIC, f"leading coefficient {p.lc}")
    _check_caps(p)
    k = p.degree
    if not is_irreducible(p):
        raise NotPisotError(REJECT_REDUCIBLE, str(p))
    try:
        inside = count_roots_in_unit_disk(p)
    except BoundaryRootError as exc:
        raise NotPisotError(REJECT_BOUNDARY, str(exc)) from None
    if inside != k - 1:
        raise NotPisotError(REJECT_ROOT_COUNT, f"{inside} roots inside the unit disk, need {k - 1}")
    if p(1) >= 0:
        raise NotPisotError(REJECT_P1, f"P(1) = {p(1)}")
    return PisotCert(p, k, conjugate_radius(p), abs(p[0]) == 1)


def scaled_power_pisot(base: PisotCert, N: int, max_steps: int | None = None) -> tuple[PisotCert, int]:
    """Least ``L >= 1`` with ``N * zeta^L`` Pisot, and its certificate.

    The conjugates of ``N zeta^L`` are ``N x^L``, of modulus at most
    ``N r^L`` for the certified radius r, so L eventually works; the
    search runs past that estimate before giving up.
    """
    if N < 1:
        raise RejectedInputError("N must be a positive integer")
    P = base.poly
    r = base.conjugate_radius
    if base.degree == 1 or r == 0:
        estimate = 1
    elif N == 1:
        estimate = 1
    else:
        estimate = math.ceil(math.log(N) / -math.log(float(r))) + 1
    limit = max_steps if max_steps is not None else 4 * estimate + 64
    X = IntPoly((0, 1))
    for L in range(1, limit + 1):
        power = pow_mod(X, L, P)
        chi = char_poly_of_element(P, power * N)
        if not chi.is_integral():
            raise ArithmeticError("characteristic polynomial of an algebraic integer is integral")
        try:
            return certify_pisot(chi.to_intpoly()), L
        except NotPisotError as exc:
            if exc.reason in (REJECT_COEFF, REJECT_DEGREE):
                raise
    raise ResourceError(f"no L <= {limit} makes {N}*zeta^L Pisot")


__all__ = [
    "PisotCert",
    "certify_pisot",
    "conjugate_radius",
    "count_roots_in_unit_disk",
    "has_unit_circle_root",
    "is_irreducible",
    "scaled_power_pisot",
]
