"""Power sums of the conjugates of a Pisot number and their residues.

For a certified Pisot polynomial ``P = X^k + a_{k-1} X^{k-1} + ... + a_0``
the power sums ``d_n = x_1^n + ... + x_k^n`` are integers obeying the
recurrence ``d_{n+k} = -(a_{k-1} d_{n+k-1} + ... + a_0 d_n)``. Reduced
modulo M the k-tuple of consecutive residues determines the future, so
the sequence is eventually periodic; :func:`modular_orbit` finds the
first repeated tuple with a dictionary and reads off preperiod and period.

Weighted sequences ``s_n = sum_i w_i d_{n+i}`` are always derived from the
d-orbit and its residues, never run through a separate recurrence.
"""

from __future__ import annotations

import os
import threading
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

from .errors import RejectedInputError, ResourceError
from .pisot import PisotCert

DEFAULT_STATE_BUDGET = 10**7
BUDGET_ENV = "PISOT_STATE_BUDGET"


def state_budget() -> int:
    """Current orbit-state budget, read from ``PISOT_STATE_BUDGET`` if set."""
    raw = os.environ.get(BUDGET_ENV)
    if raw is None or raw.strip() == "":
        return DEFAULT_STATE_BUDGET
    try:
        value = int(raw)
    except ValueError:
        raise RejectedInputError(f"{BUDGET_ENV} must be an integer, got {raw!r}") from None
    if value < 1:
        raise RejectedInputError(f"{BUDGET_ENV} must be positive")
    return value


def newton_initial_values(coeffs: Sequence[int]) -> tuple[int, ...]:
    """``d_0, ..., d_{k-1}`` for the monic polynomial with the given coefficients."""
    a = list(coeffs)
    k = len(a) - 1
    d = [k]
    for m in range(1, k):
        val = -m * a[k - m]
        for i in range(1, m):
            val -= a[k - i] * d[m - i]
        d.append(val)
    return tuple(d)


class PowerSumSeq:
    """The integer sequence ``d_n`` attached to a certificate.

    Terms are memoized in a list that only ever grows; growth happens under
    a lock, so concurrent readers see the behavior of a pure function.
    """

    def __init__(self, cert: PisotCert):
        self.cert = cert
        self.coeffs = tuple(cert.poly.coeffs[:-1])
        self.initial = newton_initial_values(cert.poly.coeffs)
        self._terms = list(self.initial)
        self._lock = threading.Lock()

    @property
    def k(self) -> int:
        return len(self.initial)

    def __repr__(self):
        return f"PowerSumSeq({self.cert.poly}, initial={self.initial})"

    def _grow(self, n: int) -> None:
        with self._lock:
            terms = self._terms
            k = self.k
            a = self.coeffs
            while len(terms) <= n:
                base = len(terms) - k
                terms.append(-sum(a[j] * terms[base + j] for j in range(k)))

    def extend(self, n: int) -> int:
        """Exact ``d_n``."""
        if n < 0:
            raise RejectedInputError("index must be nonnegative")
        if n >= len(self._terms):
            self._grow(n)
        return self._terms[n]

    def terms(self, count: int) -> list[int]:
        """``[d_0, ..., d_{count-1}]``."""
        if count > 0:
            self.extend(count - 1)
        return self._terms[:count]

    @property
    def n0(self) -> int:
        """Least n with ``(k-1) r^n < 1/2`` for the certified radius r."""
        k = self.k
        r = self.cert.conjugate_radius
        n, bound = 0, Fraction(k - 1)
        while bound >= Fraction(1, 2):
            n += 1
            bound *= r
        return n


def power_sums(cert: PisotCert) -> PowerSumSeq:
    return PowerSumSeq(cert)


def extend(seq: PowerSumSeq, n: int) -> int:
    return seq.extend(n)


def nearest_integer_power(seq: PowerSumSeq, n: int) -> tuple[int, bool]:
    """``(d_n, certified)``; certified means d_n is provably the integer nearest zeta^n.

    The distance ``|zeta^n - d_n|`` is at most ``(k-1) r^n`` for the
    certified conjugate radius r, so ``n >= n0`` makes the claim safe.
    """
    return seq.extend(n), n >= seq.n0


@dataclass(frozen=True)
class ModularOrbit:
    """Eventually periodic residues ``s_n mod M`` for n = 0, 1, 2, ...

    ``prefix`` holds ``s_0 .. s_{preperiod-1}`` and ``cycle`` the repeating
    block that starts at index ``preperiod``; both are minimal for the
    s-values. ``state_preperiod`` and ``state_period`` describe the first
    repetition of the underlying k-tuples of d-residues, of which the
    s-values are a function; the s-period always divides the state period.
    """

    modulus: int
    preperiod: int
    period: int
    cycle: tuple[int, ...]
    prefix: tuple[int, ...]
    state_preperiod: int
    state_period: int

    def value(self, n: int) -> int:
        if n < self.preperiod:
            return self.prefix[n]
        return self.cycle[(n - self.preperiod) % self.period]


@lru_cache(maxsize=512)
def _d_orbit(coeffs: tuple[int, ...], initial: tuple[int, ...], M: int, budget: int):
    """Residues of d mod M up to the first repeated state, plus (rho, pi)."""
    k = len(initial)
    a = [c % M for c in coeffs]
    d = [c % M for c in initial]
    seen: dict[tuple[int, ...], int] = {}
    n = 0
    while True:
        state = tuple(d[n : n + k])
        first = seen.get(state)
        if first is not None:
            return tuple(d), first, n - first
        if len(seen) >= budget:
            raise ResourceError(
                f"orbit mod {M} visited {len(seen)} states without repeating "
                f"(budget {budget}, set {BUDGET_ENV} to raise it)",
                partial={"states_visited": len(seen)},
            )
        seen[state] = n
        d.append(-sum(a[j] * d[n + j] for j in range(k)) % M)
        n += 1


def d_residue_orbit(seq: PowerSumSeq, M: int) -> tuple[tuple[int, ...], int, int]:
    """``(residues, rho, pi)`` for the d-state orbit mod M.

    ``residues`` covers indices ``0 .. rho + pi + k - 1`` so that every state
    up to and including the first repeat is available.
    """
    if M < 2:
        raise RejectedInputError(f"modulus must be at least 2, got {M}")
    return _d_orbit(seq.coeffs, seq.initial, M, state_budget())


def _minimal_period(block: Sequence[int]) -> int:
    n = len(block)
    for p in range(1, n + 1):
        if n % p == 0 and all(block[i] == block[(i + p) % n] for i in range(n)):
            return p
    return n


def modular_orbit(seq: PowerSumSeq, weights: Sequence[int], M: int) -> ModularOrbit:
    """Orbit of ``s_n = sum_i w_i d_{n+i} mod M``."""
    k = seq.k
    weights = [int(w) for w in weights]
    if len(weights) != k:
        raise RejectedInputError(f"expected {k} weights, got {len(weights)}")
    d, rho, pi = d_residue_orbit(seq, M)
    w = [x % M for x in weights]
    s = [sum(w[i] * d[n + i] for i in range(k)) % M for n in range(rho + pi)]
    period = _minimal_period(s[rho : rho + pi])
    pre = rho
    while pre > 0 and s[pre - 1] == s[pre - 1 + period]:
        pre -= 1
    cycle = tuple(s[pre : pre + period])
    return ModularOrbit(M, pre, period, cycle, tuple(s[:pre]), rho, pi)


def eventually_zero(orbit: ModularOrbit) -> bool:
    return all(c == 0 for c in orbit.cycle)
