"""Command-line interface: expand | verify | integrate | star | table.

Output is deterministic: identical invocations emit byte-identical
documents.  Rationals are always strings ("p/q" in lowest terms), never
floats; numeric Jackson values are decimal strings with an explicit tail
bound.  Exit codes: 0 success / all checks passed, 1 a verification failed
or a residual was nonzero, 2 usage or input error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction

from . import expansions, integration, operators, transport
from .core import Polynomial, format_rational, rational
from .errors import PsiCalcError
from .exprparse import parse_expr, render
from .psi import PsiSequence
from .star import axiom_names, star_power, verify_star_axiom
from .star import star as star_product

DEFAULT_CAP = 64


class UsageError(Exception):
    pass


def degree_cap() -> int:
    raw = os.environ.get("PSI_CAP")
    if raw is None:
        return DEFAULT_CAP
    try:
        cap = int(raw)
    except ValueError:
        raise UsageError(f"PSI_CAP must be an integer, got {raw!r}") from None
    if cap < 1:
        raise UsageError(f"PSI_CAP must be >= 1, got {cap}")
    return cap


def load_psi(spec: str) -> PsiSequence:
    """classical | q:P/Q | file:PATH"""
    if spec == "classical":
        return PsiSequence.classical()
    if spec.startswith("q:"):
        return PsiSequence.q_deformed(rational(spec[2:]))
    if spec.startswith("file:"):
        return PsiSequence.from_file(spec[5:])
    raise UsageError(f"bad psi spec {spec!r}; use classical, q:P/Q, or file:PATH")


def load_basis(spec: str, size: int) -> transport.GradedBasis:
    """falling | monomial | file:PATH (one polynomial per line, q_0 first)."""
    if spec == "falling":
        return transport.falling_power_basis(size)
    if spec == "monomial":
        return transport.monomial_basis_family(size)
    if spec.startswith("file:"):
        path = spec[5:]
        polys = []
        with open(path, "r", encoding="utf-8") as handle:
            for raw in handle:
                line = raw.split("#", 1)[0].strip()
                if line:
                    polys.append(parse_expr(line))
        return transport.GradedBasis(polys)
    raise UsageError(f"bad basis spec {spec!r}; use falling, monomial, or file:PATH")


def parse_fn(text: str, cap: int) -> Polynomial:
    p = parse_expr(text)
    if p.degree > cap:
        raise UsageError(f"polynomial degree {p.degree} exceeds cap {cap} "
                         f"(set PSI_CAP to raise it)")
    return p


def _rat(value) -> str:
    return format_rational(value)


def emit(document: dict, fmt: str, out) -> None:
    if fmt == "json":
        out.write(json.dumps(document, separators=(", ", ": ")) + "\n")
        return
    rows = _flatten(document)
    if fmt == "csv":
        for key, value in rows:
            out.write(f"{key},{value}\n")
        return
    if fmt == "text":
        width = max(len(k) for k, _ in rows)
        for key, value in rows:
            out.write(f"{key.ljust(width)}  {value}\n")
        return
    raise UsageError(f"unknown format {fmt!r}")


def _flatten(value, prefix=""):
    rows = []
    if isinstance(value, dict):
        for k, v in value.items():
            rows.extend(_flatten(v, f"{prefix}.{k}" if prefix else k))
    elif isinstance(value, list):
        for i, v in enumerate(value):
            rows.extend(_flatten(v, f"{prefix}[{i}]"))
    else:
        rows.append((prefix, value))
    return rows


def _verdict_result(verdict) -> dict:
    result = {"suite": verdict.identity, "passed": verdict.passed,
              "checked": verdict.checked}
    if verdict.note:
        result["note"] = verdict.note
    if verdict.counterexample is not None:
        ce = verdict.counterexample
        result["counterexample"] = {
            "where": ce.where, "lhs": _render_value(ce.lhs),
            "rhs": _render_value(ce.rhs)}
    return result


def _render_value(value):
    if isinstance(value, Polynomial):
        return render(value)
    if isinstance(value, Fraction):
        return _rat(value)
    return str(value)


# -- subcommands ----------------------------------------------------------------


def cmd_expand(args) -> int:
    cap = degree_cap()
    fn = parse_fn(args.fn, cap)
    engine = args.engine
    if args.order < 0:
        raise UsageError("--order must be >= 0")
    if engine == "classical":
        _need(args, "alpha", "point")
        report = expansions.classical_bt(fn, rational(args.alpha),
                                         rational(args.point), args.order)
    elif engine == "delta":
        _need(args, "point")
        report = expansions.delta_bt(fn, _as_int(args.point, "--point"),
                                     args.order)
    elif engine == "maclaurin":
        _need(args, "alpha")
        report = expansions.maclaurin_bt(fn, _as_int(args.alpha, "--alpha"),
                                         args.order)
    elif engine == "psi":
        _need(args, "alpha", "point")
        psi = load_psi(args.psi)
        report = expansions.psi_bt(fn, rational(args.alpha),
                                   rational(args.point), args.order, psi,
                                   rational(args.center))
    else:
        raise UsageError(f"unknown engine {engine!r}")

    inputs = {"engine": engine, "fn": args.fn, "order": args.order}
    if report.alpha is not None:
        inputs["alpha"] = _rat(report.alpha)
    inputs["point"] = _rat(report.point)
    if engine == "psi":
        inputs["psi"] = args.psi
        inputs["center"] = _rat(report.center)
    result = {
        "terms": [_rat(t) for t in report.terms],
        "remainder": _rat(report.remainder),
        "target": _rat(report.target),
        "reconstruction": _rat(report.reconstruction),
    }
    if report.terms_at_point is not None:
        result["termsAtPoint"] = [_rat(t) for t in report.terms_at_point]
        result["termsAtAlpha"] = [_rat(t) for t in report.terms_at_alpha]
    document = {"command": "expand", "inputs": inputs, "result": result,
                "residual": _rat(report.residual)}
    emit(document, args.format, sys.stdout)
    if args.plot:
        from .plots import save_expansion_figure
        save_expansion_figure(report, args.plot)
    return 0 if report.residual == 0 else 1


def _need(args, *names):
    for name in names:
        if getattr(args, name) is None:
            raise UsageError(f"--{name} is required for engine {args.engine!r}")


def _as_int(text, flag) -> int:
    value = rational(text)
    if value.denominator != 1:
        raise UsageError(f"{flag} must be an integer, got {text}")
    return int(value)


def cmd_verify(args) -> int:
    psi = load_psi(args.psi)
    if args.basis is not None:
        basis_size = args.degree + args.order + 4
        basis = load_basis(args.basis, basis_size)
        verdict = transport.verify_transported(
            basis, psi, args.suite, max_degree=args.degree, order=args.order,
            strict_paper=args.strict_paper)
    elif args.suite in operators.identity_names():
        verdict = operators.verify_identity(
            args.suite, psi=psi, q=rational(args.q) if args.q else None,
            alpha=rational(args.alpha), center=rational(args.center),
            y=rational(args.y), order=args.order, max_degree=args.degree,
            pair=args.pair, representation=args.representation)
    elif args.suite in axiom_names():
        verdict = verify_star_axiom(
            args.suite, psi=psi, truncation=min(args.degree, 16),
            cases=args.cases, seed=args.seed)
    else:
        known = (operators.identity_names() + axiom_names()
                 + tuple(f"{s} (with --basis)"
                         for s in transport.transport_suite_names()))
        raise UsageError(f"unknown suite {args.suite!r}; known: "
                         + ", ".join(known))
    document = {"command": "verify",
                "inputs": {"suite": args.suite, "psi": args.psi,
                           "degree": args.degree, "order": args.order},
                "result": _verdict_result(verdict),
                "residual": "0" if verdict.passed else "nonzero"}
    emit(document, args.format, sys.stdout)
    return 0 if verdict.passed else 1


def cmd_integrate(args) -> int:
    cap = degree_cap()
    fn = parse_fn(args.fn, cap)
    a = rational(getattr(args, "from"))
    b = rational(args.to)
    inputs = {"mode": args.mode, "fn": args.fn, "from": _rat(a), "to": _rat(b)}
    if args.mode == "jackson":
        if args.q is None:
            raise UsageError("--q is required for jackson mode")
        q = rational(args.q)
        inputs["q"] = _rat(q)
        upper = integration.jackson_integrate(
            fn, b, q, eps=args.eps, terms=args.terms)
        exact = integration.jackson_symbolic(fn, b, q)
        terms_used = upper.terms_used
        tail = upper.tail_bound
        value = upper.value
        if a != 0:
            lower = integration.jackson_integrate(
                fn, a, q, eps=args.eps, terms=args.terms)
            value -= lower.value
            tail += lower.tail_bound
            terms_used += lower.terms_used
            exact -= integration.jackson_symbolic(fn, a, q)
        if args.eps is not None:
            inputs["eps"] = repr(args.eps)
        if args.terms is not None:
            inputs["terms"] = args.terms
        self_check = abs(value - float(exact)) <= max(tail, 1e-9)
        result = {"value": repr(value), "termsUsed": terms_used,
                  "tailBound": repr(tail), "symbolic": _rat(exact)}
        document = {"command": "integrate", "inputs": inputs, "result": result,
                    "residual": "0" if self_check else repr(value - float(exact))}
        emit(document, args.format, sys.stdout)
        if args.plot:
            from .integration import jackson_partial_sums
            from .plots import save_jackson_figure
            sums = jackson_partial_sums(fn, float(b), float(q),
                                        max(upper.terms_used, 1))
            save_jackson_figure(sums, float(exact), tail, args.plot)
        return 0 if self_check else 1
    if args.mode == "symbolic":
        psi = (PsiSequence.q_deformed(rational(args.q)) if args.q is not None
               else load_psi(args.psi))
        inputs["psi"] = f"q:{args.q}" if args.q is not None else args.psi
        value = integration.psi_integrate(fn, psi, (a, b),
                                          rational(args.center))
        result = {"value": _rat(value)}
        document = {"command": "integrate", "inputs": inputs, "result": result,
                    "residual": "0"}
        emit(document, args.format, sys.stdout)
        return 0
    raise UsageError(f"unknown mode {args.mode!r}")


def cmd_star(args) -> int:
    cap = degree_cap()
    psi = load_psi(args.psi)
    inputs = {"psi": args.psi}
    if args.power is not None and args.power < 0:
        raise UsageError("--power must be >= 0")
    if args.rhs is not None and args.power is not None:
        raise UsageError("give either --rhs or --power, not both")
    if args.rhs is not None:
        if args.fn is None:
            raise UsageError("--fn is required with --rhs")
        f = parse_fn(args.fn, cap)
        g = parse_fn(args.rhs, cap)
        inputs.update({"fn": args.fn, "rhs": args.rhs})
        product = star_product(f, g, psi, cap=cap)
        result = {"product": render(product)}
    elif args.power is not None:
        inputs["power"] = args.power
        if args.fn is not None:
            operand = parse_fn(args.fn, cap)
            inputs["fn"] = args.fn
            product = star_power(args.power, psi, applied_to=operand)
            result = {"product": render(product),
                      "note": "right-nested application"}
        else:
            product = star_power(args.power, psi)
            result = {"product": render(product),
                      "coefficient": _rat(psi.star_coefficient(args.power))}
    else:
        raise UsageError("star needs --rhs or --power")
    document = {"command": "star", "inputs": inputs, "result": result,
                "residual": "0"}
    emit(document, args.format, sys.stdout)
    return 0


def cmd_table(args) -> int:
    psi = load_psi(args.psi)
    if args.upto < 1:
        raise UsageError("--upto must be >= 1")
    rows = [(n, psi.value(n), psi.factorial(n), psi.star_coefficient(n))
            for n in range(1, args.upto + 1)]
    result = {"columns": ["n", "n_psi", "psi_factorial", "star_coefficient"],
              "rows": [[n, _rat(v), _rat(f), _rat(s)] for n, v, f, s in rows]}
    document = {"command": "table",
                "inputs": {"psi": args.psi, "upto": args.upto},
                "result": result, "residual": "0"}
    if args.format == "csv":
        sys.stdout.write(",".join(result["columns"]) + "\n")
        for row in result["rows"]:
            sys.stdout.write(",".join(str(c) for c in row) + "\n")
    else:
        emit(document, args.format, sys.stdout)
    if args.plot:
        from .plots import save_table_figure
        save_table_figure(rows, args.plot)
    return 0


# -- argument wiring ---------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="psicalc",
        description="Exact operator calculus for deformed sequences: "
                    "expansions, identity verification, q-integration.")
    sub = parser.add_subparsers(dest="verb", required=True)

    def common(p):
        p.add_argument("--format", choices=("json", "text", "csv"),
                       default="json")
        p.add_argument("--plot", metavar="PATH", default=None,
                       help="also render a figure to PATH")

    p = sub.add_parser("expand", help="run an expansion engine")
    p.add_argument("--engine", required=True,
                   choices=("classical", "delta", "maclaurin", "psi"))
    p.add_argument("--fn", required=True, help="polynomial expression")
    p.add_argument("--alpha", default=None)
    p.add_argument("--point", default=None)
    p.add_argument("--order", type=int, required=True)
    p.add_argument("--center", default="0")
    p.add_argument("--psi", default="classical")
    common(p)
    p.set_defaults(run=cmd_expand)

    p = sub.add_parser("verify", help="run a registered identity suite")
    p.add_argument("--suite", required=True)
    p.add_argument("--psi", default="classical")
    p.add_argument("--q", default=None)
    p.add_argument("--degree", type=int, default=10)
    p.add_argument("--order", type=int, default=6)
    p.add_argument("--alpha", default="0")
    p.add_argument("--center", default="0")
    p.add_argument("--y", default="0")
    p.add_argument("--pair", choices=("integral", "summation"), default=None)
    p.add_argument("--representation",
                   choices=("classical", "delta", "psi", "falling"),
                   default=None)
    p.add_argument("--basis", default=None,
                   help="falling | monomial | file:PATH (runs the transported suite)")
    p.add_argument("--strict-paper", action="store_true",
                   help="use the printed undeformed transport weights")
    p.add_argument("--cases", type=int, default=100)
    p.add_argument("--seed", type=int, default=0)
    common(p)
    p.set_defaults(run=cmd_verify)

    p = sub.add_parser("integrate", help="deformed or Jackson integration")
    p.add_argument("--mode", choices=("symbolic", "jackson"), required=True)
    p.add_argument("--fn", required=True)
    p.add_argument("--from", required=True)
    p.add_argument("--to", required=True)
    p.add_argument("--q", default=None)
    p.add_argument("--psi", default="classical")
    p.add_argument("--center", default="0")
    p.add_argument("--eps", type=float, default=None)
    p.add_argument("--terms", type=int, default=None)
    common(p)
    p.set_defaults(run=cmd_integrate)

    p = sub.add_parser("star", help="deformed products and powers")
    p.add_argument("--fn", default=None)
    p.add_argument("--rhs", default=None)
    p.add_argument("--power", type=int, default=None)
    p.add_argument("--psi", default="classical")
    common(p)
    p.set_defaults(run=cmd_star)

    p = sub.add_parser("table", help="tabulate sequence-derived quantities")
    p.add_argument("--psi", default="classical")
    p.add_argument("--upto", type=int, default=8)
    common(p)
    p.set_defaults(run=cmd_table)
    return parser


def run(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        degree_cap()  # reject a malformed PSI_CAP up front, for every verb
        return args.run(args)
    except (UsageError, ValueError, ZeroDivisionError, OSError) as exc:
        print(f"psicalc: {exc}", file=sys.stderr)
        return 2
    except PsiCalcError as exc:
        print(f"psicalc: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
