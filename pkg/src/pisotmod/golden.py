"""The battery of worked examples behind ``pisotmod paper-examples``.

Each check belongs to an anchor (the label of the result it reproduces),
has a short description, and evaluates to ``(ok, detail)``. Checks are
plain functions so the acceptance tests can run them too.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable

from .errors import NotPisotError
from .finite_field import ModPoly, compute_R, factor_mod
from .pisot import certify_pisot, scaled_power_pisot
from .polynomials import IntPoly, discriminant
from .recurrence import eventually_zero, modular_orbit, power_sums
from .structure import (
    ReducedElement,
    conjecture_probe,
    decide_membership,
    integral_basis_check,
    lemma_consistency,
    prime_support,
    psi_element,
    radical_case,
    regular_exponent_bound,
    singular_witness,
    solve_denominator_module,
    sqrt_disc_element,
)

BATTERY = (
    (-1, -1, 1),
    (-1, -2, 1),
    (-1, -4, 1),
    (-2, -4, 1),
    (-1, -1, 0, 1),
    (-1, 0, -1, 1),
)


def primes_upto(n: int) -> list[int]:
    return [p for p in range(2, n + 1) if all(p % d for d in range(2, int(p**0.5) + 1))]


@dataclass(frozen=True)
class Check:
    anchor: str
    name: str
    run: Callable[[], tuple[bool, str]]


@dataclass(frozen=True)
class CheckResult:
    anchor: str
    name: str
    ok: bool
    detail: str


def _member(coeffs, num, den) -> bool:
    return decide_membership(ReducedElement.make(num, den), certify_pisot(coeffs)).member


def _cycle(coeffs, weights, M):
    return modular_orbit(power_sums(certify_pisot(coeffs)), weights, M)


# -- individual checks -------------------------------------------------------


def notring_even():
    o = _cycle((-1, -4, 1), (1, 0), 2)
    ok = eventually_zero(o) and _member((-1, -4, 1), (1, 0), 2)
    return ok, f"cycle mod 2 = {o.cycle}"


def notring_mod4():
    o = _cycle((-1, -4, 1), (-1, 1), 4)
    ok = o.cycle == (2,) and not _member((-1, -4, 1), (-1, 1), 4)
    return ok, f"cycle mod 4 = {o.cycle}"


def dazwischen_disc():
    d = discriminant(IntPoly((-1, -2, 1)))
    return d == 8, f"discriminant = {d}"


def dazwischen_cycle():
    o = _cycle((-1, -2, 1), (1, 0), 8)
    return o.cycle == (2, 2, 6, 6) and o.preperiod == 0, f"cycle {o.cycle}, preperiod {o.preperiod}"


def dazwischen_members():
    got = (
        _member((-1, -2, 1), (1, 0), 2),
        _member((-1, -2, 1), (1, 1), 4),
        _member((-1, -2, 1), (1, 0), 4),
    )
    return got == (True, True, False), f"1/2, (1+ζ)/4, 1/4 -> {got}"


def dazwischen_no8():
    s = solve_denominator_module(certify_pisot((-1, -2, 1)), 2, 3)
    return not s.has_reduced, f"has_reduced(2, 3) = {s.has_reduced}"


def dazwischen_support():
    ps = prime_support(certify_pisot((-1, -2, 1)))
    return ps == [2], f"primes {ps}"


def final_factor():
    f = factor_mod(ModPoly(3, (-2, -4, 1)))
    ok = [(g.coeffs, e) for g, e in f.factors] == [((1, 1), 2)]
    return ok, f"P mod 3 = {' * '.join(f'({g})^{e}' for g, e in f.factors)}"


def final_R():
    r = compute_R(ModPoly(3, (-2, -4, 1)))
    return r.coeffs == (1, 1), f"R = {r}"


def final_members():
    got = (_member((-2, -4, 1), (1, 1), 3), _member((-2, -4, 1), (2, 0), 3))
    return got == (True, False), f"(ζ+1)/3, 2/3 -> {got}"


def final_cycle():
    o = _cycle((-2, -4, 1), (1, 0), 3)
    c = o.cycle
    rotations = {c[i:] + c[:i] for i in range(len(c))}
    return (1, 2) in rotations, f"cycle mod 3 = {c} (from n = {o.preperiod})"


def final_not_unit():
    c = certify_pisot((-2, -4, 1))
    return not c.is_unit, f"is_unit = {c.is_unit}"


def notring_cert():
    c = certify_pisot((-1, -4, 1))
    return c.is_unit, f"is_unit = {c.is_unit}"


def kamou_both():
    bad = []
    for coeffs in BATTERY:
        cert = certify_pisot(coeffs)
        dp = cert.discriminant * cert.constant_term
        for q in primes_upto(50):
            if solve_denominator_module(cert, q, 1).has_reduced != (dp % q == 0):
                bad.append((coeffs, q))
    return not bad, f"mismatches {bad}" if bad else "6 polynomials x 15 primes agree"


def daslemma_all():
    bad = [(c, q) for c in BATTERY for q in (2, 3, 5, 7, 11, 13) if not lemma_consistency(certify_pisot(c), q)]
    return not bad, f"mismatches {bad}" if bad else "all classes agree"


def okkident_units():
    bad = []
    for coeffs in BATTERY:
        cert = certify_pisot(coeffs)
        if not cert.is_unit:
            continue
        for q in prime_support(cert):
            nu = regular_exponent_bound(cert, q)
            for m in (nu + 1, nu + 2):
                if solve_denominator_module(cert, q, m).has_reduced:
                    bad.append((coeffs, q, m))
    return not bad, f"violations {bad}" if bad else "no denominator beyond ν_q(Δ)"


def neuht_growth():
    cert = certify_pisot((-2, -4, 1))
    dens = [singular_witness(cert, 2, l).denominator for l in (1, 2, 3)]
    ok = all(d % 2**l == 0 for l, d in zip((1, 2, 3), dens))
    return ok, f"denominators {dens}"


def einfall_quadratic():
    out = []
    ok = True
    for coeffs in BATTERY:
        cert = certify_pisot(coeffs)
        if cert.degree != 2:
            continue
        rep = sqrt_disc_element(cert)
        ok &= rep.verdict.member and rep.verdict_dk.member and not rep.dk_is_integral
        out.append(f"d_K={rep.field_discriminant}")
    return ok, ", ".join(out)


def properinclu_half():
    phi = _member((-1, -1, 1), (1, 0), 2)
    cube = _member((-1, -4, 1), (1, 0), 2)
    o = _cycle((-1, -1, 1), (1, 0), 2)
    return (not phi and cube and o.cycle == (0, 1, 1)), f"1/2 in M_φ: {phi}; in M_φ³: {cube}; Lucas mod 2 {o.cycle}"


def unglkette_scaled():
    cert, L = scaled_power_pisot(certify_pisot((-1, -1, 1)), 3)
    member = decide_membership(ReducedElement.make((1, 0), 3), cert).member
    ok = L == 3 and cert.poly.coeffs == (-9, -12, 1) and member
    return ok, f"L = {L}, polynomial {cert.poly}, 1/3 member {member}"


def beispuel_psi():
    ok = True
    for coeffs in BATTERY:
        _, verdict, _ = psi_element(certify_pisot(coeffs))
        ok &= verdict.member
    psi, _, integral = psi_element(certify_pisot((-1, -2, 1)))
    ok &= psi.coords == (Fraction(-1, 4), Fraction(1, 4)) and not integral
    return ok, f"Ψ for X^2 - 2X - 1 = {psi.coords[1]}ζ + {psi.coords[0]}"


def kopernik_bases():
    R = ReducedElement.make
    c5 = certify_pisot((-1, -4, 1))
    c2 = certify_pisot((-1, -2, 1))
    good5 = integral_basis_check(c5, [R((1, 0)), R((-1, 1), 2)]).passed
    good2 = integral_basis_check(c2, [R((1, 0)), R((0, 1))]).passed
    bad = integral_basis_check(c5, [R((1, 0)), R((-1, 1), 3)])
    reasons = [r for e in bad.elements for r in e.reasons]
    ok = good5 and good2 and not bad.passed and "3 ∤ Δ" in reasons
    return ok, f"d=5 {good5}, d=2 {good2}, corrupted: {reasons}"


def eindimfall_radical():
    got = (radical_case(12, 5, 18), radical_case(10, 1, 8), radical_case(10, 1, 3))
    orbit = (_member((-10, 1), (1,), 8), _member((-10, 1), (1,), 3))
    return got == (True, True, False) and orbit == (True, False), f"radical {got}, orbit {orbit}"


def fussball_probe():
    total = 0
    for coeffs in BATTERY:
        cert = certify_pisot(coeffs)
        for q in prime_support(cert):
            total += conjecture_probe(cert, q, 3).violations
    return total == 0, f"{total} violations"


def pisot_battery():
    accepted = []
    for c in BATTERY:
        try:
            certify_pisot(c)
            accepted.append(True)
        except NotPisotError:
            accepted.append(False)
    return all(accepted), f"{sum(accepted)}/{len(accepted)} accepted"


CHECKS: tuple[Check, ...] = (
    Check("beispuel", "Ψ(ζ) is a member; Ψ = (ζ-1)/4 not integral for X^2-2X-1", beispuel_psi),
    Check("daslemma", "orbit oracle agrees with R | Q_q on all classes", daslemma_all),
    Check("dazwischen", "Δ(X^2-2X-1) = 8", dazwischen_disc),
    Check("dazwischen", "<ζ^n> mod 8 = 2,2,6,6", dazwischen_cycle),
    Check("dazwischen", "1/2, (1+ζ)/4 members; 1/4 not", dazwischen_members),
    Check("dazwischen", "has_reduced(2, 3) is false", dazwischen_no8),
    Check("dazwischen", "prime support is {2}", dazwischen_support),
    Check("eindimfall", "rad(B) | rad(ζ) test agrees with the orbit test", eindimfall_radical),
    Check("einfall", "1/√Δ, 1/√d_K members; 1/√d_K not integral", einfall_quadratic),
    Check("final-proposition", "X^2-4X-2 certified non-unit", final_not_unit),
    Check("final-proposition", "P mod 3 = (X+1)^2", final_factor),
    Check("final-proposition", "R_{ζ,3} = X+1", final_R),
    Check("final-proposition", "(ζ+1)/3 member, 2/3 not", final_members),
    Check("final-proposition", "<ζ^n> mod 3 cycles through 1,2", final_cycle),
    Check("fussball", "no generator outside Z[ζ,1/ζ]<1/Δ> for m <= 3", fussball_probe),
    Check("kamou", "reduced denominator q exists iff q | Δ P(0), q <= 50", kamou_both),
    Check("kopernik", "integral bases for d = 5 and d = 2; corrupted basis fails", kopernik_bases),
    Check("neuht", "ζ^{-l} denominators divisible by 2^l", neuht_growth),
    Check("notring", "X^2-4X-1 certified unit", notring_cert),
    Check("notring", "d_n mod 2 eventually 0, 1/2 member", notring_even),
    Check("notring", "weights (-1, 1) mod 4 cycle (2), (ζ-1)/4 not member", notring_mod4),
    Check("okkident", "unit ζ: has_reduced(q, m) false for m > ν_q(Δ)", okkident_units),
    Check("pisot-battery", "known Pisot polynomials certified", pisot_battery),
    Check("properinclu", "1/2 ∉ M_φ but 1/2 ∈ M_φ³", properinclu_half),
    Check("unglkette", "3 φ^3 has polynomial X^2-12X-9 and 1/3 member", unglkette_scaled),
)

ANCHORS = tuple(sorted({c.anchor for c in CHECKS}))


def select(filter_: str | None = None) -> list[Check]:
    checks = [c for c in CHECKS if filter_ is None or c.anchor == filter_]
    return sorted(checks, key=lambda c: c.anchor)


def run_checks(checks: Iterable[Check]) -> list[CheckResult]:
    out = []
    for c in checks:
        try:
            ok, detail = c.run()
        except Exception as exc:  # a crashing check is a failing check
            ok, detail = False, f"{type(exc).__name__}: {exc}"
        out.append(CheckResult(c.anchor, c.name, bool(ok), detail))
    return out
