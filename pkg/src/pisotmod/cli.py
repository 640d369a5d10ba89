"""Command-line interface: ``pisotmod <command> [options]``.

Polynomials and numerators are comma-separated integer lists, constant
coefficient first. Output is JSON (sorted keys, integers beyond the
53-bit safe range written as decimal strings) or a plain-text rendering.

Exit codes: 0 success or member, 1 negative verdict, 2 domain rejection,
64 usage error.
"""

from __future__ import annotations

import argparse
import json
import re
import sys
from fractions import Fraction
from typing import Any, Sequence

from . import golden
from ._arith import is_prime
from .errors import NotPisotError, PisotError, RejectedInputError, ResourceError
from .finite_field import DEFAULT_SEED, ModPoly, compute_R, factor_mod
from .pisot import PisotCert, certify_pisot, scaled_power_pisot
from .polynomials import IntPoly, format_poly
from .recurrence import ModularOrbit, modular_orbit, power_sums
from .structure import (
    FieldElement,
    ReducedElement,
    conjecture_probe,
    decide_membership,
    denominator_profile,
    integral_basis_check,
    lemma_consistency,
    prime_support,
    psi_element,
    radical_case,
    singular_witness,
    solve_denominator_module,
    sqrt_disc_element,
    to_reduced_form,
)

EXIT_OK = 0
EXIT_NEGATIVE = 1
EXIT_REJECTED = 2
EXIT_USAGE = 64

SAFE_INT = 2**53 - 1
RADIUS_DIGITS = 12

EPILOG = """\
coefficient order is constant-first:
  --poly -1,-4,1      means  X^2 - 4X - 1
  --num -1,1 --den 4  means  (-1 + ζ)/4

examples:
  pisotmod certify --poly -1,-4,1
  pisotmod membership --poly -1,-2,1 --num 1,1 --den 4
  pisotmod structure --poly -2,-4,1 --rq 3
  pisotmod paper-examples --filter dazwischen
"""


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    """ArgumentParser whose usage errors exit with status 64."""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


# -- parsing helpers ---------------------------------------------------------


def parse_int_list(text: str) -> list[int]:
    parts = [p.strip() for p in text.split(",")]
    if not parts or any(not re.fullmatch(r"[+-]?\d+", p) for p in parts):
        raise UsageError(f"expected a comma-separated list of integers, got {text!r}")
    return [int(p) for p in parts]


def parse_fraction(text: str) -> tuple[int, int]:
    m = re.fullmatch(r"\s*([+-]?\d+)\s*(?:/\s*([+-]?\d+)\s*)?", text)
    if not m:
        raise UsageError(f"expected A or A/B, got {text!r}")
    a, b = int(m.group(1)), int(m.group(2) or 1)
    if b == 0:
        raise UsageError("denominator must be nonzero")
    return a, b


def parse_basis(text: str) -> list[tuple[list[int], int]]:
    """``"1,0;-1,1/2"`` -> ``[([1, 0], 1), ([-1, 1], 2)]``."""
    out = []
    for item in text.split(";"):
        num, _, den = item.partition("/")
        d = int(den) if den.strip() else 1
        if d == 0:
            raise UsageError("denominator must be nonzero")
        out.append((parse_int_list(num), d))
    return out


def _prime(q: int) -> int:
    if not is_prime(q):
        raise UsageError(f"{q} is not prime")
    return q


def _positive(m: int, what: str) -> int:
    if m < 1:
        raise UsageError(f"{what} must be at least 1")
    return m


def _join_negative_values(argv: Sequence[str]) -> list[str]:
    """Glue ``--opt -1,2`` into ``--opt=-1,2`` so argparse does not read
    the value as an option."""
    out: list[str] = []
    i = 0
    argv = list(argv)
    while i < len(argv):
        tok = argv[i]
        if (
            tok.startswith("--")
            and "=" not in tok
            and i + 1 < len(argv)
            and re.match(r"-\d", argv[i + 1])
        ):
            out.append(f"{tok}={argv[i + 1]}")
            i += 2
            continue
        out.append(tok)
        i += 1
    return out


# -- serialization -----------------------------------------------------------


def to_jsonable(x: Any) -> Any:
    if isinstance(x, bool) or x is None or isinstance(x, str):
        return x
    if isinstance(x, int):
        return x if -SAFE_INT <= x <= SAFE_INT else str(x)
    if isinstance(x, Fraction):
        return str(x)
    if isinstance(x, dict):
        return {str(k): to_jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [to_jsonable(v) for v in x]
    raise TypeError(f"cannot serialize {type(x).__name__}")


def dumps(report: dict) -> str:
    return json.dumps(to_jsonable(report), sort_keys=True, ensure_ascii=False, indent=2)


def render_text(report: dict, indent: str = "") -> str:
    lines = []
    for key in sorted(report):
        val = report[key]
        if isinstance(val, dict):
            lines.append(f"{indent}{key}:")
            lines.append(render_text(val, indent + "  "))
        elif isinstance(val, list) and val and all(isinstance(v, dict) for v in val):
            lines.append(f"{indent}{key}:")
            for v in val:
                block = render_text(v, indent + "    ").splitlines()
                block[0] = f"{indent}  - " + block[0].lstrip()
                lines.extend(block)
        else:
            lines.append(f"{indent}{key}: {json.dumps(to_jsonable(val), ensure_ascii=False)}")
    return "\n".join(lines)


def decimal_upper(fr: Fraction, digits: int = RADIUS_DIGITS) -> str:
    """Decimal string of an upper bound for ``fr >= 0`` with ``digits`` places."""
    scaled = -((-fr.numerator * 10**digits) // fr.denominator)
    whole, frac = divmod(scaled, 10**digits)
    return f"{whole}.{frac:0{digits}d}"


def poly_report(p) -> dict:
    cs = list(p.coeffs)
    return {"polynomial": format_poly(cs), "coeffs": cs}


def element_report(e: ReducedElement) -> dict:
    return {"element": str(e), "numerator": list(e.numerator), "denominator": e.denominator}


def orbit_report(o: ModularOrbit) -> dict:
    return {
        "modulus": o.modulus,
        "preperiod": o.preperiod,
        "period": o.period,
        "cycle": list(o.cycle),
        "prefix": list(o.prefix),
        "state_preperiod": o.state_preperiod,
        "state_period": o.state_period,
    }


def factorization_report(f) -> dict:
    return {
        "q": f.q,
        "unit": f.unit,
        "factors": [
            {"factor": str(g), "coeffs": list(g.coeffs), "multiplicity": e} for g, e in f.factors
        ],
    }


def cert_report(cert: PisotCert) -> dict:
    r = cert.conjugate_radius
    return {
        **poly_report(cert.poly),
        "accepted": True,
        "degree": cert.degree,
        "is_unit": cert.is_unit,
        "conjugate_radius": decimal_upper(r),
        "conjugate_radius_exact": str(r),
        "discriminant": cert.discriminant,
        "constant_term": cert.constant_term,
    }


# -- commands ----------------------------------------------------------------


def _certify(coeffs: list[int]) -> PisotCert:
    return certify_pisot(IntPoly(coeffs))


def _element(cert: PisotCert, num: list[int], den: int) -> ReducedElement:
    if len(num) > cert.degree:
        return to_reduced_form(FieldElement.from_poly(cert, [Fraction(x, den) for x in num]))
    num = num + [0] * (cert.degree - len(num))
    return ReducedElement.make(num, den)


def cmd_certify(args) -> tuple[int, dict]:
    return EXIT_OK, {"command": "certify", **cert_report(_certify(args.poly))}


def cmd_membership(args) -> tuple[int, dict]:
    cert = _certify(args.poly)
    elem = _element(cert, args.num, args.den)
    v = decide_membership(elem, cert)
    report = {
        "command": "membership",
        **poly_report(cert.poly),
        **element_report(v.element),
        "member": v.member,
        "orbit": orbit_report(v.orbit),
        "witness_index": v.witness_index,
    }
    return (EXIT_OK if v.member else EXIT_NEGATIVE), report


def _structure_support(cert, args):
    return {"primes": prime_support(cert)}


def _structure_rq(cert, args):
    q = _prime(args.rq)
    pm = ModPoly(q, cert.poly.coeffs)
    r = compute_R(pm, seed=args.seed)
    return {"q": q, "R": str(r), "R_coeffs": list(r.coeffs), "factorization": factorization_report(factor_mod(pm, seed=args.seed))}


def _structure_factor(cert, args):
    q = _prime(args.factor)
    return factorization_report(factor_mod(ModPoly(q, cert.poly.coeffs), seed=args.seed))


def _structure_solve(cert, args):
    q, m = _prime(args.solve[0]), _positive(args.solve[1], "m")
    sol = solve_denominator_module(cert, q, m)
    g = sol.reduced_generator()
    return {
        "q": q,
        "m": m,
        "modulus": sol.modulus,
        "generators": [list(x) for x in sol.generators],
        "has_reduced": sol.has_reduced,
        "reduced_generator": list(g) if g is not None else None,
        "reduced_element": str(ReducedElement.make(g, sol.modulus)) if g is not None else None,
    }


def _structure_profile(cert, args):
    q, m = _prime(args.profile[0]), _positive(args.profile[1], "m")
    prof = denominator_profile(cert, q, m)
    return {"q": q, "has_reduced": {str(k): v for k, v in prof.items()}}


def _structure_psi(cert, args):
    psi, verdict, integral = psi_element(cert)
    return {**element_report(verdict.element), "member": verdict.member, "integer": integral}


def _structure_sqrtdisc(cert, args):
    rep = sqrt_disc_element(cert)
    return {
        "inv_sqrt_disc": element_report(rep.verdict.element),
        "member": rep.verdict.member,
        "squarefree_part": rep.squarefree_part,
        "field_discriminant": rep.field_discriminant,
        "inv_sqrt_dk": element_report(rep.verdict_dk.element),
        "dk_member": rep.verdict_dk.member,
        "dk_integer": rep.dk_is_integral,
    }


def _structure_probe(cert, args):
    q, m = _prime(args.probe[0]), _positive(args.probe[1], "m")
    rep = conjecture_probe(cert, q, m)
    return {
        "q": q,
        "violations": rep.violations,
        "rows": [
            {
                "m": r.m,
                "generators": r.generators,
                "has_reduced": r.has_reduced,
                "violations": [list(v) for v in r.violations],
                "radical_violations": [list(v) for v in r.radical_violations],
            }
            for r in rep.rows
        ],
    }


def _structure_witness(cert, args):
    q, l = _prime(args.witness[0]), _positive(args.witness[1], "l")
    w = singular_witness(cert, q, l)
    return {"q": q, "l": l, **element_report(w), "member": decide_membership(w, cert).member}


def _structure_lemma(cert, args):
    q = _prime(args.lemma)
    return {"q": q, "consistent": lemma_consistency(cert, q)}


def _structure_basis(cert, args):
    basis = [_element(cert, num, den) for num, den in parse_basis(args.basis)]
    rep = integral_basis_check(cert, basis)
    return {
        "passed": rep.passed,
        "determinant": rep.determinant,
        "reasons": list(rep.reasons),
        "elements": [
            {
                **element_report(e.element),
                "divides_discriminant": e.divides_discriminant,
                "integral": e.integral,
                "residue_conditions": [{"q": q, "ok": ok} for q, ok in e.residue_conditions],
                "reasons": list(e.reasons),
            }
            for e in rep.elements
        ],
    }


def _structure_scaled(cert, args):
    N = _positive(args.scaled, "N")
    new, L = scaled_power_pisot(cert, N)
    return {"N": N, "L": L, **poly_report(new.poly), "is_unit": new.is_unit}


def _structure_orbit(cert, args):
    M = args.orbit
    if M < 2:
        raise UsageError("modulus must be at least 2")
    weights = args.weights if args.weights is not None else [1] + [0] * (cert.degree - 1)
    return orbit_report(modular_orbit(power_sums(cert), weights, M))


def _structure_radical(cert, args):
    if cert.degree != 1:
        raise RejectedInputError("--radical needs a degree-1 polynomial X - c")
    A, B = parse_fraction(args.radical)
    zeta = -cert.poly.coeffs[0]
    return {"zeta": zeta, "A": A, "B": B, "member": radical_case(zeta, A, B)}


STRUCTURE_OPS = {
    "support": _structure_support,
    "rq": _structure_rq,
    "factor": _structure_factor,
    "solve": _structure_solve,
    "profile": _structure_profile,
    "psi": _structure_psi,
    "sqrtdisc": _structure_sqrtdisc,
    "probe": _structure_probe,
    "witness": _structure_witness,
    "lemma": _structure_lemma,
    "basis": _structure_basis,
    "scaled": _structure_scaled,
    "orbit": _structure_orbit,
    "radical": _structure_radical,
}


def cmd_structure(args) -> tuple[int, dict]:
    op = next(name for name in STRUCTURE_OPS if getattr(args, name) not in (None, False))
    if args.weights is not None and op != "orbit":
        raise UsageError("--weights only applies to --orbit")
    cert = _certify(args.poly)
    return EXIT_OK, STRUCTURE_OPS[op](cert, args)


def cmd_paper_examples(args) -> tuple[int, dict]:
    results = golden.run_checks(golden.select(args.filter))
    failed = [r for r in results if not r.ok]
    report = {
        "command": "paper-examples",
        "passed": not failed,
        "total": len(results),
        "failed": len(failed),
        "first_failure": failed[0].anchor if failed else None,
        "results": [{"anchor": r.anchor, "check": r.name, "ok": r.ok, "detail": r.detail} for r in results],
    }
    return (EXIT_OK if not failed else EXIT_NEGATIVE), report


def render_table(report: dict) -> str:
    rows = [(r["anchor"], r["check"], "PASS" if r["ok"] else "FAIL", r["detail"]) for r in report["results"]]
    head = ("anchor", "check", "result", "detail")
    widths = [max(len(x[i]) for x in rows + [head]) for i in range(3)]
    fmt = lambda r: "  ".join(r[i].ljust(widths[i]) for i in range(3)) + "  " + r[3]
    lines = [fmt(head), fmt(tuple("-" * w for w in widths) + ("------",))]
    lines += [fmt(r) for r in rows]
    summary = f"{report['total'] - report['failed']}/{report['total']} checks passed"
    if report["first_failure"]:
        summary += f"; first failing anchor: {report['first_failure']}"
    lines.append(summary)
    return "\n".join(lines)


# -- parser ------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--format", choices=("json", "text"), default=None, help="output format (default json; text table for paper-examples)")
    common.add_argument("--out", metavar="FILE", help="write the report to FILE instead of stdout")
    common.add_argument("--seed", type=int, default=DEFAULT_SEED, help="seed for randomized factorization over F_q (results do not depend on it)")

    parser = _Parser(
        prog="pisotmod",
        description="Exact membership and structure computations for the module of α with ‖αζⁿ‖ → 0, ζ a Pisot number.",
        epilog=EPILOG,
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def poly_arg(p):
        p.add_argument("--poly", required=True, type=_list_type, metavar="A0,A1,...", help="monic polynomial, constant coefficient first")

    p = sub.add_parser("certify", parents=[common], help="certify a Pisot polynomial", epilog=EPILOG, formatter_class=argparse.RawDescriptionHelpFormatter)
    poly_arg(p)
    p.set_defaults(func=cmd_certify)

    p = sub.add_parser("membership", parents=[common], help="decide whether (r0 + r1 ζ + ...)/N lies in the module", epilog=EPILOG, formatter_class=argparse.RawDescriptionHelpFormatter)
    poly_arg(p)
    p.add_argument("--num", required=True, type=_list_type, metavar="R0,R1,...", help="numerator coordinates, constant first")
    p.add_argument("--den", required=True, type=_nonzero_int, metavar="N", help="denominator")
    p.set_defaults(func=cmd_membership)

    p = sub.add_parser("structure", parents=[common], help="structural computations for a Pisot number", epilog=EPILOG, formatter_class=argparse.RawDescriptionHelpFormatter)
    poly_arg(p)
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--support", action="store_true", help="primes that can occur in denominators")
    g.add_argument("--rq", type=int, metavar="Q", help="divisor polynomial R mod Q")
    g.add_argument("--factor", type=int, metavar="Q", help="factorization of P mod Q")
    g.add_argument("--solve", type=int, nargs=2, metavar=("Q", "M"), help="numerators with denominator Q^M")
    g.add_argument("--profile", type=int, nargs=2, metavar=("Q", "MMAX"), help="has_reduced for m = 1..MMAX")
    g.add_argument("--psi", action="store_true", help="the element P''(ζ)/(2P'(ζ))")
    g.add_argument("--sqrtdisc", action="store_true", help="1/sqrt of discriminants (quadratic ζ)")
    g.add_argument("--probe", type=int, nargs=2, metavar=("Q", "MMAX"), help="check generators against Z[ζ,1/ζ]·(1/Δ)")
    g.add_argument("--witness", type=int, nargs=2, metavar=("Q", "L"), help="element with denominator divisible by Q^L")
    g.add_argument("--lemma", type=int, metavar="Q", help="cross-check the orbit oracle against R | Q mod Q")
    g.add_argument("--basis", metavar="ELEMS", help='candidate integral basis, e.g. "1,0;-1,1/2"')
    g.add_argument("--scaled", type=int, metavar="N", help="least L with N ζ^L a Pisot number")
    g.add_argument("--orbit", type=int, metavar="M", help="orbit of sum w_i d_(n+i) mod M")
    g.add_argument("--radical", metavar="A/B", help="membership of A/B for integer ζ (degree 1)")
    p.add_argument("--weights", type=_list_type, metavar="W0,W1,...", help="weights for --orbit (default 1,0,...)")
    p.set_defaults(func=cmd_structure)

    p = sub.add_parser("paper-examples", parents=[common], help="run the battery of worked examples", epilog=EPILOG, formatter_class=argparse.RawDescriptionHelpFormatter)
    p.add_argument("--filter", choices=golden.ANCHORS, metavar="ANCHOR", help=f"run one anchor only ({', '.join(golden.ANCHORS)})")
    p.set_defaults(func=cmd_paper_examples)
    return parser


def _list_type(text: str) -> list[int]:
    try:
        return parse_int_list(text)
    except UsageError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _nonzero_int(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}") from None
    if v == 0:
        raise argparse.ArgumentTypeError("denominator must be nonzero")
    return v


def _emit(text: str, out: str | None) -> None:
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    else:
        print(text)


def main(argv: Sequence[str] | None = None) -> int:
    argv = sys.argv[1:] if argv is None else argv
    parser = build_parser()
    args = parser.parse_args(_join_negative_values(argv))
    fmt = args.format or ("text" if args.command == "paper-examples" else "json")
    try:
        code, report = args.func(args)
    except UsageError as exc:
        print(f"pisotmod: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except NotPisotError as exc:
        code, report = EXIT_REJECTED, {"command": args.command, "accepted": False, "reason": exc.reason, "detail": exc.detail}
    except ResourceError as exc:
        code, report = EXIT_REJECTED, {"command": args.command, "error": "resource", "detail": str(exc), "partial": _partial(exc.partial)}
    except (RejectedInputError, PisotError) as exc:
        code, report = EXIT_REJECTED, {"command": args.command, "error": "rejected", "detail": str(exc)}
    if code == EXIT_REJECTED:
        print(f"pisotmod: rejected: {report.get('reason') or report.get('detail')}", file=sys.stderr)
    if fmt == "json":
        text = dumps(report)
    elif args.command == "paper-examples":
        text = render_table(report)
    else:
        text = render_text(report)
    _emit(text, args.out)
    if args.command == "paper-examples" and report["first_failure"]:
        print(f"pisotmod: first failing anchor: {report['first_failure']}", file=sys.stderr)
    return code


def _partial(p):
    try:
        return to_jsonable(p)
    except TypeError:
        return repr(p)


if __name__ == "__main__":
    sys.exit(main())
