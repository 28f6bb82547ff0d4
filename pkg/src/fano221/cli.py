"""Command-line entry point: ``fano221 verify|classify|invariants``."""
from __future__ import annotations

import argparse
import sys
import time

from . import invariants as inv
from .checks import DEFAULT_SEED, SUITES, run_suite
from .exact.extension import Num
from .exact.rational import fmt, is_rational
from .normal_form import SingularQuadric, classify
from .quadrics import HESSIAN_FACTOR_TEXT, hessian_factor_values, parse_coeffs
from .report import check_report, decimal, to_json, to_markdown

TARGETS = ("surface-H", "surface-E", "delta-generic", "beta-curve")


def _s(x) -> str:
    if isinstance(x, Num):
        q = x.as_rational()
        return fmt(q) if q is not None else str(x)
    if is_rational(x):
        return fmt(x)
    return str(x)


def _emit(data: dict, form: str):
    sys.stdout.write(to_markdown(data) if form == "md" else to_json(data) + "\n")


def cmd_verify(args) -> int:
    start = time.perf_counter()
    checks = run_suite(args.suite, args.seed, args.count)
    data = check_report(args.suite, args.seed, checks, time.perf_counter() - start)
    _emit(data, args.format)
    return 0 if data["summary"]["failed"] == 0 else 1


def classification_json(result) -> dict:
    label = result.label
    levels = []
    for lvl in result.witness.levels:
        levels.append({"name": lvl.name, "modulus": lvl.modulus_str(), "degree": lvl.degree,
                       "over": getattr(lvl.base, "name", "QQ")})
    return {
        "input": [_s(x) for x in result.input],
        "case": label.case,
        "params": {k: _s(v) for k, v in sorted(label.params.items())},
        "normal_form": [_s(x) for x in result.normal_form],
        "normal_form_decimal": [decimal(_s(x)) for x in result.normal_form],
        "extensions": levels,
        "witness": [mv.describe() for mv in result.witness.moves],
        "replay_ok": result.replay_ok,
        "git": {"status": label.git_status, "row": label.git_row},
        "constraint": {"expression": label.constraint, "value": _s(label.constraint_value)},
        "hessian_factors": [{"factor": f, "value": _s(v)}
                            for f, v in zip(HESSIAN_FACTOR_TEXT, hessian_factor_values(result.input))],
    }


def cmd_classify(args) -> int:
    try:
        s = parse_coeffs(args.coeffs)
    except (ValueError, ZeroDivisionError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    try:
        result = classify(s)
    except SingularQuadric as exc:
        print(str(exc), file=sys.stderr)
        return 1
    _emit(classification_json(result), args.format)
    return 0


def _frac(q) -> dict:
    return {"value": fmt(q), "decimal": decimal(fmt(q))}


def invariants_json(target: str) -> tuple:
    """(data, ok) for an invariants target."""
    if target in ("surface-H", "surface-E"):
        r = inv.s_divisor(target[-1])
        path = inv.threefold_path(target[-1])
        pieces = []
        for piece, (_, _, part) in zip(path.pieces, r.pieces):
            pieces.append({"u_from": fmt(piece.lo), "u_to": fmt(piece.hi),
                           "P": str(piece.positive),
                           "N": {k: str(v) for k, v in piece.negative.items()},
                           "integral_of_P_cubed": fmt(part)})
        data = {"target": target, "tau": fmt(r.tau), "S": fmt(r.value), "beta": fmt(r.beta),
                "pieces": pieces,
                "display": {"S": decimal(fmt(r.value)), "beta": decimal(fmt(r.beta))}}
        return data, r.beta > 0
    if target == "delta-generic":
        cert = inv.delta_bound_generic_point()
        swg, terms = inv.s_w2_exceptional()
        main, f_o = inv.point_on_curve(inv.POINT_FLAGS["O on C1~"])
        chambers = [{"u_from": fmt(t.u_lo), "u_to": fmt(t.u_hi), "v_from": str(t.v_lo),
                     "v_to": str(t.v_hi), "P_squared": str(t.integrand), "contribution": fmt(t.value)}
                    for t in terms]
        data = {
            "target": target,
            "bound": fmt(cert.bound),
            "candidates": [fmt(v) for _, v in cert.candidates],
            "candidate_labels": [name for name, _ in cert.candidates],
            "components": {
                "S_X(H)": _frac(inv.s_divisor("H").value),
                "S(W;G)": _frac(swg),
                "S(W;O) off the curves": _frac(main),
                "F_O": _frac(f_o),
                "S(W;O) on the curves": _frac(main + f_o),
            },
            "chambers": chambers,
            "display": {"bound": decimal(fmt(cert.bound))},
        }
        return data, cert.holds
    if target == "beta-curve":
        rows = []
        worst = None
        for n, s, cert in inv.beta_certificate_curve_case():
            rows.append({
                "n": n,
                "ord_term": fmt(inv.e_ord_term()),
                "ord_term_variants": {str(m): fmt(inv.e_ord_term(m)) for m in inv.ORD_MULTIPLICITIES},
                "volume_term": fmt(inv.e_volume_term(n)),
                "S": fmt(s),
                "certificate": fmt(cert.bound),
                "holds": cert.holds,
            })
            if worst is None or s > worst[1]:
                worst = (n, s)
        ok = all(r["holds"] for r in rows)
        data = {
            "target": target,
            "S_X(E)": fmt(inv.s_divisor("E").value),
            "volume_term_in_n": str(inv.e_volume_term()),
            "rows": rows,
            "worst": fmt(worst[1]),
            "worst_n": worst[0],
            "notes": [f"formula-only coverage: {inv.FORMULA_ONLY}"],
        }
        return data, ok
    raise KeyError(target)


def cmd_invariants(args) -> int:
    data, ok = invariants_json(args.target)
    _emit(data, args.format)
    return 0 if ok else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="fano221", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("verify", help="run a verification suite")
    p.add_argument("suite", choices=("all",) + SUITES)
    p.add_argument("--format", choices=("json", "md"), default="json")
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p.add_argument("--count", type=int, default=25, help="number of random quadrics (classify)")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("classify", help="reduce a quadric to its normal form")
    p.add_argument("--coeffs", required=True, help='"s0,s1,s2,s3,s4,s5" as p/q rationals')
    p.add_argument("--format", choices=("json", "md"), default="json")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("invariants", help="S-invariants and stability certificates")
    p.add_argument("--target", required=True, choices=TARGETS)
    p.add_argument("--format", choices=("json", "md"), default="json")
    p.set_defaults(func=cmd_invariants)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    return args.func(args)
