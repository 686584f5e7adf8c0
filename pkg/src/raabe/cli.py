"""Command-line front end.

Exit status is 0 when a check verifies, 1 when a residual is nonzero or a check
fails (the witness is printed), and 2 on usage or parameter errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Callable

from . import fourier, probes
from .bernoulli import bernoulli_poly, bernoulli_poly_oracle
from .exact_algebra import Polynomial, poly_scale
from .reports import ResidualReport
from .verify import (
    RaabeParams,
    carlitz_residual,
    check_lemma2_operator_identity,
    check_lemma3_composition,
    raabe_residual,
    solution_kernel,
)

OK, FAIL, USAGE = 0, 1, 2


@dataclass(frozen=True)
class CliConfig:
    precision_digits: int = 15
    tol: float = 1e-9
    truncation_cap: int = fourier.DEFAULT_TRUNCATION_CAP
    format: str = "text"

    def __post_init__(self):
        if not self.tol > 0:
            raise ValueError("tol must be positive")
        if self.truncation_cap < 1000:
            raise ValueError("truncation cap must be >= 1000")


class UsageError(Exception):
    pass


def jsonable(obj: Any) -> Any:
    """Exact values become ``"p/q"`` strings; floats are left to ``json``."""
    if isinstance(obj, Fraction):
        return str(obj)
    if isinstance(obj, Polynomial):
        return [str(c) for c in obj.coeffs]
    if isinstance(obj, dict):
        return {str(k): jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [jsonable(v) for v in obj]
    if isinstance(obj, float) or obj is None or isinstance(obj, (bool, int, str)):
        return obj
    return str(obj)


def parse_rational(text: str) -> Fraction:
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(f"not a rational number: {text!r}") from exc


def parse_poly(text: str) -> Polynomial:
    """Comma-separated coefficients, constant term first: ``"1/6,-1,1"``."""
    return Polynomial(parse_rational(t) for t in text.split(",") if t.strip())


def _fmt(value: Any, digits: int) -> str:
    if isinstance(value, float):
        return f"{value:.{digits}g}"
    if isinstance(value, Polynomial):
        return str(value)
    return str(value)


def _emit(cfg: CliConfig, subcommand: str, params: dict, ok: bool,
          payload: dict, witness: Any = None, out=None) -> int:
    out = out or sys.stdout
    status = OK if ok else FAIL
    if cfg.format == "json":
        doc = {"subcommand": subcommand, "params": params,
               "status": "ok" if ok else "fail", **payload}
        if witness is not None:
            doc["witness"] = witness
        json.dump(jsonable(doc), out)
        out.write("\n")
    else:
        out.write(f"{subcommand}: {'ok' if ok else 'FAIL'}\n")
        for k, v in payload.items():
            out.write(f"  {k} = {_fmt(v, cfg.precision_digits)}\n")
        if witness is not None:
            out.write(f"  witness = {jsonable(witness)}\n")
    return status


def _report_payload(report: ResidualReport) -> dict:
    res = report.residual
    return {"residual": res if isinstance(res, Polynomial) else jsonable(res)}


# -- subcommands ---------------------------------------------------------------

def cmd_bernoulli(args, cfg):
    p = bernoulli_poly_oracle(args.n) if args.oracle else bernoulli_poly(args.n)
    return _emit(cfg, "bernoulli", {"n": args.n}, True,
                 {"n": args.n, "coeffs": p, "poly": str(p)})


def _target_poly(args) -> Polynomial:
    return args.poly if args.poly is not None else bernoulli_poly(args.n)


def cmd_verify_raabe(args, cfg):
    p = _target_poly(args)
    res = raabe_residual(p, RaabeParams(args.n, args.a))
    params = {"n": args.n, "a": args.a, "poly": p}
    witness = None if res.is_zero() else {"residual": res}
    return _emit(cfg, "verify-raabe", params, res.is_zero(), {"residual": res}, witness)


def cmd_verify_carlitz(args, cfg):
    res = carlitz_residual(args.n, args.a, args.b)
    witness = None if res.is_zero() else {"residual": res}
    return _emit(cfg, "verify-carlitz", {"n": args.n, "a": args.a, "b": args.b},
                 res.is_zero(), {"residual": res}, witness)


def cmd_kernel(args, cfg):
    if args.a < 2:
        raise UsageError("kernel needs a >= 2")
    basis = solution_kernel(args.n, args.a, args.deg)
    b = bernoulli_poly(args.n)
    if args.deg >= args.n:
        ok = len(basis) == 1 and poly_scale(1 / basis[0].leading, basis[0]) == b
    else:
        ok = not basis
    params = {"n": args.n, "a": args.a, "deg": args.deg}
    witness = None if ok else {"dimension": len(basis)}
    return _emit(cfg, "kernel", params, ok,
                 {"dimension": len(basis), "basis": [str(v) for v in basis]}, witness)


def cmd_lemma2(args, cfg):
    if args.n < 1:
        raise UsageError("lemma2 needs n >= 1")
    p = _target_poly(args)
    rep = check_lemma2_operator_identity(p, RaabeParams(args.n, args.a))
    return _emit(cfg, "lemma2", {"n": args.n, "a": args.a, "poly": p}, rep.is_zero,
                 _report_payload(rep), rep.witness)


def cmd_lemma3(args, cfg):
    p = _target_poly(args)
    rep = check_lemma3_composition(args.n, args.a, args.b, p)
    params = {"n": args.n, "a": args.a, "b": args.b, "poly": p}
    if not rep.hypothesis_met:
        payload = {"hypothesis": "not met", "conclusion": "not judged"}
        return _emit(cfg, "lemma3", params, True, payload, rep.witness)
    return _emit(cfg, "lemma3", params, rep.is_zero,
                 {"hypothesis": "met", **_report_payload(rep)}, rep.witness)


_EVALUATORS: dict[str, Callable] = {
    "bernoulli": fourier.periodized_bernoulli_eval,
    "conjugate_bernoulli": fourier.conjugate_bernoulli_eval,
}


def cmd_fourier_eval(args, cfg):
    tol = args.tol if args.tol is not None else cfg.tol
    cap = cfg.truncation_cap
    if args.spec in _EVALUATORS:
        res = _EVALUATORS[args.spec](args.n, args.x, tol, cap)
    else:
        res = fourier.fourier_eval(_spec(args), args.x, tol, cap)
    params = {"spec": args.spec, "n": args.n, "x": args.x, "tol": tol}
    return _emit(cfg, "fourier-eval", params, True,
                 {"value": res.value, "truncation_N": res.truncation_N,
                  "tail_bound": res.tail_bound})


def _spec(args) -> fourier.CoefficientSpec:
    try:
        return fourier.builtin_spec(args.spec, args.n)
    except KeyError as exc:
        raise UsageError(exc.args[0]) from exc


def cmd_coeff_residual(args, cfg):
    rep = fourier.coeff_residual_check(_spec(args), args.a, args.kmax)
    params = {"spec": args.spec, "n": args.n, "a": args.a, "kmax": args.kmax}
    return _emit(cfg, "coeff-residual", params, rep.is_zero,
                 {"failures": len(rep.residual)}, rep.witness)


def cmd_log_sin_check(args, cfg):
    tol = args.tol if args.tol is not None else 1e-5
    terms = args.depth if args.depth is not None else fourier.LOG_SIN_TERMS
    rep = fourier.log_sin_check(args.x, tol, terms)
    p = rep.params
    params = {"x": args.x, "tol": tol, "terms": terms}
    return _emit(cfg, "log-sin-check", params, rep.is_zero,
                 {"direct": p["direct"], "series": p["series"],
                  "discrepancy": rep.residual[0], "a_priori_tail": p["a_priori_tail"]},
                 rep.witness)


def cmd_riemann_limit(args, cfg):
    if args.a < 2:
        raise UsageError("riemann-limit needs a >= 2")
    depth = args.depth if args.depth is not None else 12
    lam = args.value if args.value is not None else Fraction(1)
    f = probes.from_polynomial(poly_scale(lam, bernoulli_poly(args.n)))
    rep = probes.scaling_limit_probe(f, args.n, args.a, args.x, list(range(1, depth + 1)))
    riemann = probes.riemann_sum_lhs(f, args.n, args.a, float(args.x), depth)
    tol = args.tol if args.tol is not None else rep.bound
    ok = abs(rep.observed - rep.expected) <= tol
    params = {"n": args.n, "a": args.a, "x": args.x, "depth": depth, "value": lam}
    payload = {"scaled_value": rep.observed, "riemann_sum": riemann,
               "integral": rep.expected, "bound": rep.bound,
               "table": [v for _, v in rep.extras["table"]]}
    witness = None if ok else {"error": abs(rep.observed - rep.expected), "allowed": tol}
    return _emit(cfg, "riemann-limit", params, ok, payload, witness)


def cmd_dense_approx(args, cfg):
    if args.a < 2 or args.depth < 1:
        raise UsageError("dense-approx needs a >= 2 and depth >= 1")
    d = probes.dense_approximate(args.value, args.a, args.depth)
    window = Fraction(1, args.a**args.depth - 1)
    ok = 0 <= d.error < window
    params = {"value": args.value, "a": args.a, "depth": args.depth}
    payload = {"r": d.r, "approximant": d.value, "error": d.error,
               "error_float": float(d.error), "window": window}
    return _emit(cfg, "dense-approx", params, ok, payload,
                 None if ok else {"error": d.error})


def cmd_decompose(args, cfg):
    lam = args.value if args.value is not None else Fraction(1)
    b = bernoulli_poly(args.n)
    poly_part = probes.from_polynomial(poly_scale(lam, b))
    per = probes.periodized(b)
    f = probes.SampledFunction(lambda t: poly_part(t) + per(t),
                               f"{lam}*B_{args.n} + periodized B_{args.n}", vectorized=True)
    rep = probes.theorem4_decompose(f, args.n)
    tol = args.tol if args.tol is not None else 1e-6
    defect = rep.extras["periodicity_defect"]
    ok = abs(rep.observed - float(lam)) <= tol and defect <= tol
    params = {"n": args.n, "value": lam, "tol": tol}
    payload = {"sigma": rep.observed, "quadrature_error_estimate": rep.bound,
               "periodicity_defect": defect}
    witness = None if ok else {"sigma_error": abs(rep.observed - float(lam)), "defect": defect}
    return _emit(cfg, "decompose", params, ok, payload, witness)


# -- parser --------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "json"), default="text")

    parser = argparse.ArgumentParser(prog="raabe", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="subcommand", required=True, metavar="SUBCOMMAND")

    def add(name, fn, help_, *flags):
        p = sub.add_parser(name, parents=[common], help=help_)
        for flag in flags:
            flag(p)
        p.set_defaults(func=fn)
        return p

    def n(p, required=True):
        p.add_argument("--n", type=int, required=required, default=None if required else 2)

    def a(p):
        p.add_argument("--a", type=int, required=True)

    def b(p):
        p.add_argument("--b", type=int, required=True)

    def poly(p):
        p.add_argument("--poly", type=parse_poly, default=None,
                       help="coefficients c0,c1,... (default: B_n)")

    def x(p):
        p.add_argument("--x", type=parse_rational, required=True)

    def tol(p):
        p.add_argument("--tol", type=float, default=None)

    def spec(p):
        p.add_argument("--spec", required=True)

    bern = add("bernoulli", cmd_bernoulli, "print B_n", n)
    bern.add_argument("--oracle", action="store_true", help="use the generating-function route")
    add("verify-raabe", cmd_verify_raabe, "Raabe residual of B_n (or --poly)", n, a, poly)
    add("verify-carlitz", cmd_verify_carlitz, "Carlitz two-modulus residual", n, a, b)
    kern = add("kernel", cmd_kernel, "polynomial solution space up to --deg", n, a)
    kern.add_argument("--deg", type=int, required=True)
    add("lemma2", cmd_lemma2, "derivative operator identity", n, a, poly)
    add("lemma3", cmd_lemma3, "composition of moduli a and b", n, a, b, poly)
    add("fourier-eval", cmd_fourier_eval, "evaluate a Fourier-series solution", spec, n, x, tol)
    cr = add("coeff-residual", cmd_coeff_residual, "exact coefficient criterion", spec, n, a)
    cr.add_argument("--kmax", type=int, default=4096)
    ls = add("log-sin-check", cmd_log_sin_check, "log(2|sin pi x|) series identity", x, tol)
    ls.add_argument("--depth", type=int, default=None, help="number of terms")
    rl = add("riemann-limit", cmd_riemann_limit, "scaling limit of value*B_n", n, a, x, tol)
    rl.add_argument("--depth", type=int, default=None, help="largest k")
    rl.add_argument("--value", type=parse_rational, default=None, help="multiplier of B_n")
    da = add("dense-approx", cmd_dense_approx, "approximate --value by r/(a^s - 1)", a)
    da.add_argument("--value", type=parse_rational, required=True)
    da.add_argument("--depth", type=int, required=True, help="exponent s")
    dc = add("decompose", cmd_decompose, "sigma/tau split of value*B_n + periodized B_n", n, tol)
    dc.add_argument("--value", type=parse_rational, default=None)
    return parser


def run(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code is not None else 0
    try:
        cfg = CliConfig(format=args.format, truncation_cap=fourier.truncation_cap())
        return args.func(args, cfg)
    except (UsageError, ValueError, KeyError) as exc:
        msg = exc.args[0] if exc.args else str(exc)
        print(f"raabe {args.subcommand}: error: {msg}", file=sys.stderr)
        return USAGE


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
