"""Acceptance criteria, one test each.

Every criterion prints a single ``PASS``/``FAIL`` line; the lines are
collected and repeated in the pytest terminal summary. Running this file
directly (``python3 tests/test_acceptance.py``) prints the same lines
without pytest.
"""

import random
import sys
import time
from fractions import Fraction

import pytest
import sympy

from pisotmod.finite_field import ModPoly, compute_R, factor_mod
from pisotmod.golden import BATTERY, primes_upto
from pisotmod.pisot import certify_pisot, scaled_power_pisot
from pisotmod.polynomials import IntPoly, discriminant
from pisotmod.recurrence import eventually_zero, modular_orbit, power_sums
from pisotmod.structure import (
    FieldElement,
    ReducedElement,
    conjecture_probe,
    decide_membership,
    integral_basis_check,
    is_regular,
    lemma_consistency,
    prime_support,
    psi_element,
    regular_exponent_bound,
    singular_witness,
    solve_denominator_module,
    sqrt_disc_element,
)

RESULTS: list[str] = []
R = ReducedElement.make
X = sympy.Symbol("X")


def cert(coeffs):
    return certify_pisot(coeffs)


def member(coeffs, num, den):
    return decide_membership(R(num, den), cert(coeffs)).member


def orbit(coeffs, weights, M):
    return modular_orbit(power_sums(cert(coeffs)), weights, M)


# -- criteria -----------------------------------------------------------------


def c01_notring():
    o2 = orbit((-1, -4, 1), (1, 0), 2)
    o4 = orbit((-1, -4, 1), (-1, 1), 4)
    ok = (
        eventually_zero(o2)
        and member((-1, -4, 1), (1, 0), 2)
        and o4.cycle == (2,)
        and not member((-1, -4, 1), (-1, 1), 4)
    )
    return ok, f"mod 2 cycle {o2.cycle}; weights (-1,1) mod 4 cycle {o4.cycle}"


def c02_dazwischen():
    P = (-1, -2, 1)
    d = discriminant(IntPoly(P))
    o = orbit(P, (1, 0), 8)
    mem = (member(P, (1, 0), 2), member(P, (1, 1), 4), member(P, (1, 0), 4))
    hr = solve_denominator_module(cert(P), 2, 3).has_reduced
    ok = d == 8 and o.cycle == (2, 2, 6, 6) and o.preperiod == 0 and mem == (True, True, False) and not hr
    return ok, f"Δ={d}, cycle {o.cycle} from {o.preperiod}, members {mem}, has_reduced(2,3)={hr}"


def c03_final_proposition():
    P = (-2, -4, 1)
    f = factor_mod(ModPoly(3, P))
    fac = [(g.coeffs, e) for g, e in f.factors]
    r = compute_R(ModPoly(3, P))
    o = orbit(P, (1, 0), 3)
    rotations = {o.cycle[i:] + o.cycle[:i] for i in range(o.period)}
    ok = (
        fac == [((1, 1), 2)]
        and r.coeffs == (1, 1)
        and member(P, (1, 1), 3)
        and (1, 2) in rotations
        and o.period == 2
        and not member(P, (2, 0), 3)
    )
    return ok, f"P mod 3 = ({f.factors[0][0]})^{f.factors[0][1]}, R = {r}, cycle {o.cycle} (equal to (1,2) up to rotation)"


def c04_kamou():
    t = time.perf_counter()
    bad = []
    for coeffs in BATTERY:
        c = cert(coeffs)
        dp = c.discriminant * c.constant_term
        for q in primes_upto(50):
            if solve_denominator_module(c, q, 1).has_reduced != (dp % q == 0):
                bad.append((coeffs, q))
    elapsed = time.perf_counter() - t
    return not bad and elapsed <= 5.0, f"{len(BATTERY)}x{len(primes_upto(50))} cells, mismatches {bad}, {elapsed:.2f}s"


def c05_daslemma():
    bad = [(c, q) for c in BATTERY for q in (2, 3, 5, 7, 11, 13) if not lemma_consistency(cert(c), q)]
    return not bad, f"mismatches {bad}"


def c06_okkident():
    checked, bad = 0, []
    for coeffs in BATTERY:
        c = cert(coeffs)
        if not c.is_unit:
            continue
        for q in prime_support(c):
            nu = regular_exponent_bound(c, q)
            for m in range(nu + 1, nu + 3):
                checked += 1
                if solve_denominator_module(c, q, m).has_reduced:
                    bad.append((coeffs, q, m))
    return not bad and checked > 0, f"{checked} cells checked, violations {bad}"


def c07_neuht():
    rows, ok = [], True
    for coeffs in BATTERY:
        c = cert(coeffs)
        for q in prime_support(c):
            if is_regular(c, q):
                continue
            for l in (1, 2, 3):
                w = singular_witness(c, q, l)
                v = 0
                D = w.denominator
                while D % q == 0:
                    D //= q
                    v += 1
                ok &= v >= l and decide_membership(w, c).member
                rows.append(f"{coeffs} q={q} l={l} ν={v}")
    return ok and bool(rows), "; ".join(rows)


def c08_einfall():
    ok, rows = True, []
    for coeffs in BATTERY:
        if len(coeffs) != 3:
            continue
        rep = sqrt_disc_element(cert(coeffs))
        ok &= rep.verdict.member and not rep.dk_is_integral
        rows.append(f"d_K={rep.field_discriminant}")
    return ok, ", ".join(rows)


def c09_properinclu():
    lucas = orbit((-1, -1, 1), (1, 0), 2)
    phi = member((-1, -1, 1), (1, 0), 2)
    cube = member((-1, -4, 1), (1, 0), 2)
    ok = not phi and lucas.cycle == (0, 1, 1) and cube
    return ok, f"1/2 ∈ M_φ: {phi}, Lucas mod 2 {lucas.cycle}, 1/2 ∈ M_φ³: {cube}"


def c10_unglkette():
    c, L = scaled_power_pisot(cert((-1, -1, 1)), 3)
    o = modular_orbit(power_sums(c), (1, 0), 3)
    mem = decide_membership(R((1, 0), 3), c).member
    ok = L == 3 and c.poly.coeffs == (-9, -12, 1) and mem and eventually_zero(o)
    return ok, f"L={L}, {c.poly}, 1/3 member {mem}"


def c11_beispuel():
    ok = True
    for coeffs in BATTERY:
        _, v, _ = psi_element(cert(coeffs))
        ok &= v.member
    psi, _, integral = psi_element(cert((-1, -2, 1)))
    ok &= psi.coords == (Fraction(-1, 4), Fraction(1, 4)) and not integral
    return ok, f"Ψ(1+√2) coords {tuple(str(x) for x in psi.coords)}, integral {integral}"


def c12_kopernik():
    c5, c2 = cert((-1, -4, 1)), cert((-1, -2, 1))
    good5 = integral_basis_check(c5, [R((1, 0)), R((-1, 1), 2)]).passed
    good2 = integral_basis_check(c2, [R((1, 0)), R((0, 1))]).passed
    bad = integral_basis_check(c5, [R((1, 0)), R((-1, 1), 3)])
    reasons = [r for e in bad.elements for r in e.reasons]
    ok = good5 and good2 and not bad.passed and "3 ∤ Δ" in reasons
    return ok, f"d=5 {good5}, d=2 {good2}, corrupted reasons {reasons}"


def _closure_trials(coeffs, rng, trials=100):
    c = cert(coeffs)
    k = c.degree

    def rand_member():
        e = FieldElement(c, [rng.randint(-20, 20) for _ in range(k)])
        for q in prime_support(c)[:2]:
            m = rng.randint(1, 2)
            for g in solve_denominator_module(c, q, m).generators:
                t = rng.randint(-3, 3)
                e = e + FieldElement(c, [Fraction(t * x, q**m) for x in g])
        return e

    for _ in range(trials):
        a, b = rand_member(), rand_member()
        for e in (a, b, a + b, a - b, a.times_zeta()):
            if not decide_membership(e).member:
                return False
        while True:
            g = FieldElement(c, [Fraction(rng.randint(-20, 20), rng.choice([3, 7, 9])) for _ in range(k)])
            if not decide_membership(g).member:
                break
        if decide_membership(a + g).member:
            return False
    return True


def c13_property_suites():
    rng = random.Random(13)
    closure = all(_closure_trials(c, rng) for c in BATTERY)

    reexp = True
    for _ in range(500):
        q = rng.choice([2, 3, 5, 7, 13])
        deg = rng.randint(1, 8)
        cs = [rng.randrange(q) for _ in range(deg)] + [rng.randrange(1, q)]
        f = factor_mod(ModPoly(q, cs))
        oracle = sympy.Poly(list(reversed(cs)), X, modulus=q).factor_list()[1]
        reexp &= f.expand() == ModPoly(q, cs) and len(f.factors) == len(oracle)

    disk = True
    for _ in range(100):
        k = rng.randint(2, 6)
        cs = [rng.randint(-20, 20) for _ in range(k)] + [1]
        d = discriminant(IntPoly(cs))
        for q in (2, 3, 5, 7, 11, 13):
            disk &= factor_mod(ModPoly(q, cs)).has_repeated_factor() == (d % q == 0)

    rec = True
    for coeffs in BATTERY:
        seq = power_sums(cert(coeffs))
        kk = len(coeffs)
        d = seq.terms(200 + kk)
        rec &= all(sum(coeffs[j] * d[n + j] for j in range(kk)) == 0 for n in range(201))
    ok = closure and reexp and disk and rec
    return ok, f"closure {closure}, re-expansion {reexp}, repeated factor ⇔ q | Δ {disk}, recurrence {rec}"


def c14_fussball():
    viol = []
    for coeffs in BATTERY:
        c = cert(coeffs)
        for q in prime_support(c):
            rep = conjecture_probe(c, q, 3)
            for row in rep.rows:
                viol += [(coeffs, q, row.m, g) for g in row.violations]
    detail = "no violations" if not viol else f"VIOLATIONS FOR REVIEW: {viol}"
    return not viol, detail


CRITERIA = [
    (1, "notring: mod-2 orbit zero, (1+√5)/4 excluded", c01_notring),
    (2, "dazwischen: Δ = 8, cycle 2,2,6,6, members, no denominator 8", c02_dazwischen),
    (3, "2+√6: (X+1)^2, R = X+1, memberships, cycle", c03_final_proposition),
    (4, "kamou both directions, q <= 50, within 5 s", c04_kamou),
    (5, "daslemma oracle equivalence, q <= 13", c05_daslemma),
    (6, "okkident: unit exponent bound", c06_okkident),
    (7, "neuht: singular witness valuations", c07_neuht),
    (8, "einfall: 1/√Δ member, 1/√d_K not integral", c08_einfall),
    (9, "properinclu: 1/2 ∉ M_φ, 1/2 ∈ M_φ³", c09_properinclu),
    (10, "unglkette: 3φ^3, X^2-12X-9, 1/3 member", c10_unglkette),
    (11, "beispuel: Ψ member; (ζ-1)/4 for 1+√2", c11_beispuel),
    (12, "kopernik bases; corrupted basis rejected", c12_kopernik),
    (13, "property suites", c13_property_suites),
    (14, "fussball probe, m <= 3", c14_fussball),
]


def evaluate(number, label, fn):
    try:
        ok, detail = fn()
    except Exception as exc:
        ok, detail = False, f"{type(exc).__name__}: {exc}"
    line = f"[{'PASS' if ok else 'FAIL'}] criterion {number:2d}: {label} -- {detail}"
    return ok, line


@pytest.mark.parametrize("number,label,fn", CRITERIA, ids=[f"criterion_{n:02d}" for n, _, _ in CRITERIA])
def test_criterion(number, label, fn):
    ok, line = evaluate(number, label, fn)
    RESULTS.append(line)
    print(line)
    assert ok, line


if __name__ == "__main__":
    failures = 0
    for n, label, fn in CRITERIA:
        ok, line = evaluate(n, label, fn)
        failures += not ok
        print(line)
    sys.exit(1 if failures else 0)
