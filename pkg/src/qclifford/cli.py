"""Command-line interface: ``qclifford <command> --q 4/3 --n 2 --poly "..."``.

Exit status: 0 on success or a true verdict, 1 on a false verdict (the
residual is printed), 2 on usage, parse or precondition errors.
"""

from __future__ import annotations

import argparse
import json
import re
import sys
from pathlib import Path
from typing import Any, Sequence

from .conjugate import check_harmonic_full, check_monogenic_full, construct_conjugate, monogenic_system
from .fischer import (
    decompose_harmonic,
    decompose_monogenic,
    fischer_ip,
    kernel_basis,
    solve_q_poisson,
)
from .qcomplex import ck_extend, q_binomial_z
from .qcore import QCliffordError, QContext, format_rational, to_rational
from .qpoly import CliffordPolynomial, dirac_q, laplace_q, mul_poly, radius_sq, vector_x
from .parsing import format_poly, parse_poly, poly_from_json, poly_to_json

COMMANDS = (
    "check-harmonic",
    "check-monogenic",
    "conjugate",
    "fischer-decompose",
    "poisson",
    "kernel-basis",
    "ck-extend",
    "qbinomial",
)


class UsageError(QCliffordError):
    pass


def _read_source(text: str) -> str:
    if text.startswith("@"):
        try:
            return Path(text[1:]).read_text()
        except OSError as exc:
            raise UsageError(f"cannot read {text[1:]}: {exc}") from None
    return text


def _infer_n(source: str) -> int:
    stripped = source.lstrip()
    if stripped[:1] in "[{":
        obj = json.loads(stripped)
        terms = obj["terms"] if isinstance(obj, dict) else obj
        return max([len(t["alpha"]) - 1 for t in terms] + [1])
    idx = [int(m) for m in re.findall(r"x(\d+)", source)]
    idx += [max(int(d) for d in m) for m in re.findall(r"e(\d+)", source)]
    return max(idx + [1])


def _poly(source: str, ctx: QContext) -> CliffordPolynomial:
    stripped = source.lstrip()
    if stripped[:1] in "[{":
        try:
            return poly_from_json(stripped, ctx)
        except json.JSONDecodeError as exc:
            raise UsageError(f"bad JSON polynomial: {exc}") from None
    return parse_poly(source, ctx)


def _context(args: argparse.Namespace, source: str | None) -> QContext:
    n = args.n if args.n is not None else (_infer_n(source) if source else 1)
    return QContext(to_rational(args.q), n)


def _emit(args: argparse.Namespace, payload: dict[str, Any], lines: list[str]) -> None:
    if args.format == "json":
        print(json.dumps(payload, indent=2))
    else:
        print("\n".join(lines))


def _header(cmd: str, ctx: QContext) -> dict[str, Any]:
    return {"command": cmd, "q": format_rational(ctx.q), "n": ctx.n}


def _cmd_check_harmonic(args, ctx, p) -> int:
    verdict = check_harmonic_full(p)
    payload = _header("check-harmonic", ctx) | {
        "input": poly_to_json(p),
        "harmonic": verdict.ok,
        "residual": poly_to_json(verdict.residual),
    }
    lines = [f"harmonic: {str(verdict.ok).lower()}"]
    if not verdict.ok:
        lines.append(f"residual: {format_poly(verdict.residual)}")
    _emit(args, payload, lines)
    return 0 if verdict.ok else 1


def _cmd_check_monogenic(args, ctx, p) -> int:
    verdict = check_monogenic_full(p)
    first, second = monogenic_system(p)
    payload = _header("check-monogenic", ctx) | {
        "input": poly_to_json(p),
        "monogenic": verdict.ok,
        "residual": poly_to_json(verdict.residual),
        "system": [poly_to_json(first), poly_to_json(second)],
    }
    lines = [f"monogenic: {str(verdict.ok).lower()}"]
    if not verdict.ok:
        lines.append(f"residual: {format_poly(verdict.residual)}")
    _emit(args, payload, lines)
    return 0 if verdict.ok else 1


def _cmd_conjugate(args, ctx, u) -> int:
    h = _poly(_read_source(args.poisson), ctx) if args.poisson else None
    res = construct_conjugate(u, poisson_solution=h)
    verdict = check_monogenic_full(res.F)
    fields = {
        "U": res.U,
        "g": res.g,
        "h": res.h_poisson,
        "W": res.W,
        "V": res.V,
        "H": res.H_potential,
        "F": res.F,
    }
    payload = _header("conjugate", ctx) | {"degree": res.degree}
    payload |= {name: poly_to_json(val) for name, val in fields.items()}
    payload["monogenic"] = verdict.ok
    lines = [f"{name} = {format_poly(val)}" for name, val in fields.items()]
    lines.append(f"monogenic: {str(verdict.ok).lower()}")
    ok = verdict.ok
    if args.verify:
        checks = res.checks()
        payload["checks"] = checks
        lines += [f"check {name}: {'ok' if v else 'FAILED'}" for name, v in checks.items()]
        ok = ok and all(checks.values())
    _emit(args, payload, lines)
    return 0 if ok else 1


def _cmd_fischer(args, ctx, p) -> int:
    if args.kind == "harmonic":
        main, rest = decompose_harmonic(p)
        factor, names = radius_sq(ctx), ("H", "Q")
        annihilated = laplace_q(main).is_zero
    else:
        main, rest = decompose_monogenic(p)
        factor, names = vector_x(ctx), ("M", "Q")
        annihilated = dirac_q(main).is_zero
    payload = _header("fischer-decompose", ctx) | {
        "kind": args.kind,
        "input": poly_to_json(p),
        names[0]: poly_to_json(main),
        names[1]: poly_to_json(rest),
    }
    lines = [f"{names[0]} = {format_poly(main)}", f"{names[1]} = {format_poly(rest)}"]
    ok = True
    if args.verify:
        other = mul_poly(factor, rest)
        checks = {
            "reassembles": main + other == p,
            "annihilated": annihilated,
            "orthogonal": fischer_ip(main, other) == 0,
        }
        payload["checks"] = checks
        lines += [f"check {name}: {'ok' if v else 'FAILED'}" for name, v in checks.items()]
        ok = all(checks.values())
    _emit(args, payload, lines)
    return 0 if ok else 1


def _cmd_poisson(args, ctx, g) -> int:
    h = solve_q_poisson(g)
    payload = _header("poisson", ctx) | {"g": poly_to_json(g), "h": poly_to_json(h)}
    lines = [f"h = {format_poly(h)}"]
    ok = True
    if args.verify:
        ok = laplace_q(h) == g
        payload["checks"] = {"solves": ok}
        lines.append(f"check solves: {'ok' if ok else 'FAILED'}")
    _emit(args, payload, lines)
    return 0 if ok else 1


def _cmd_kernel(args, ctx) -> int:
    basis = kernel_basis(ctx, args.operator, args.degree, args.values)
    payload = _header("kernel-basis", ctx) | {
        "operator": args.operator,
        "degree": args.degree,
        "values": args.values,
        "basis": [poly_to_json(b) for b in basis],
    }
    lines = [f"dim = {len(basis)}"] + [format_poly(b) for b in basis]
    _emit(args, payload, lines)
    return 0


def _univariate_from(p: CliffordPolynomial) -> dict[int, Any]:
    if not p.is_real():
        raise UsageError("ck-extend needs a real polynomial")
    used = {i for (alpha, _), _c in p.items() for i, a in enumerate(alpha) if a}
    if len(used) > 1:
        raise UsageError("ck-extend needs a polynomial in a single variable")
    axis = used.pop() if used else 0
    return {alpha[axis]: c for (alpha, _), c in p.items()}


def _cmd_ck_extend(args, q, source) -> int:
    # a bare "x" names the single variable
    source = re.sub(r"x(?!\d)", "x1", source)
    ctx = QContext(q, _infer_n(source))
    f0 = _univariate_from(_poly(source, ctx))
    result = ck_extend(f0, q)
    return _emit_complex(args, result)


def _cmd_qbinomial(args, q) -> int:
    return _emit_complex(args, q_binomial_z(args.k, q))


def _emit_complex(args, result) -> int:
    if args.format == "json":
        print(json.dumps(result.to_json(), indent=2))
    else:
        print(str(result))
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="qclifford", description=__doc__.splitlines()[0])
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--q", required=True, help="deformation parameter, an exact rational such as 4/3")
    common.add_argument("--n", type=int, default=None, help="dimension of the x-vector (default: inferred)")
    common.add_argument("--format", choices=("text", "json"), default="text")
    common.add_argument("--verify", action="store_true", help="run the internal cross-checks too")
    sub = parser.add_subparsers(dest="command", required=True, metavar="command")

    def with_poly(name: str, help_: str) -> argparse.ArgumentParser:
        p = sub.add_parser(name, parents=[common], help=help_)
        p.add_argument("--poly", required=True, help="expression, JSON, or @file")
        return p

    with_poly("check-harmonic", "is the polynomial (1/q,q)-harmonic?")
    with_poly("check-monogenic", "is the polynomial (1/q,q)-monogenic?")
    conj = with_poly("conjugate", "construct the conjugate harmonic and potential")
    conj.add_argument("--poisson", help="use this solution h of the q-Poisson equation instead of the default")
    fd = with_poly("fischer-decompose", "harmonic or monogenic Fischer decomposition")
    fd.add_argument("--kind", choices=("harmonic", "monogenic"), default="harmonic")
    with_poly("poisson", "solve Delta^q h = g with h in |x|^2 P")
    kb = sub.add_parser("kernel-basis", parents=[common], help="exact kernel basis of an operator")
    kb.add_argument("--operator", choices=("laplace_q", "laplace_full", "dirac_q", "dirac_full"), required=True)
    kb.add_argument("--degree", type=int, required=True)
    kb.add_argument("--values", choices=("scalar", "full"), default="scalar")
    with_poly("ck-extend", "q-analytic extension of a real polynomial in one variable")
    qb = sub.add_parser("qbinomial", parents=[common], help="expanded complex q-binomial")
    qb.add_argument("--k", type=int, required=True)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "qbinomial":
            return _cmd_qbinomial(args, to_rational(args.q))
        if args.command == "kernel-basis":
            return _cmd_kernel(args, _context(args, None))
        source = _read_source(args.poly)
        if args.command == "ck-extend":
            return _cmd_ck_extend(args, to_rational(args.q), source)
        ctx = _context(args, source)
        p = _poly(source, ctx)
        handler = {
            "check-harmonic": _cmd_check_harmonic,
            "check-monogenic": _cmd_check_monogenic,
            "conjugate": _cmd_conjugate,
            "fischer-decompose": _cmd_fischer,
            "poisson": _cmd_poisson,
        }[args.command]
        return handler(args, ctx, p)
    except (QCliffordError, json.JSONDecodeError, KeyError) as exc:
        print(f"qclifford: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
