"""Command-line entry point.

Exit status: 0 when the check passes, 1 when a relation or identity is
violated, 2 on bad input.  Errors go to stderr as a JSON object.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction
from pathlib import Path
from typing import Sequence

from . import __version__
from .eulerbernoulli import (
    bernoulli,
    brace,
    bracket,
    bracket_r,
    ForbiddenIndex,
    unified_coeff,
    verify_identities,
)
from .exactnum import Q, fmt_q
from .fgraded import (
    ConstraintViolation,
    GradedElement,
    check_functional_equation,
    check_relations,
    degree_from_gammas,
    delta_decompose,
    even_from_odd,
    odd_from_even,
)
from .molien import (
    DEFAULT_MAX_ORDER,
    gorenstein_screen,
    group_from_json,
    molien_series,
)
from .powersum import SymmetricTriangle, verify_gould
from .series import DEFAULT_TRUNCATION, TruncatedSeries
from .triangles import emit_pascal_rescaled, emit_triangle, lucas_triangle

EXIT_OK, EXIT_VIOLATION, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _default_truncation() -> int:
    raw = os.environ.get("GORULAB_TRUNCATION")
    if raw is None:
        return DEFAULT_TRUNCATION
    try:
        val = int(raw)
    except ValueError:
        raise UsageError(f"GORULAB_TRUNCATION must be an integer, got {raw!r}") from None
    if val < 1:
        raise UsageError("GORULAB_TRUNCATION must be positive")
    return val


def _positive(s: str) -> int:
    v = int(s)
    if v < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {s}")
    return v


def _load_json(path: str):
    try:
        text = sys.stdin.read() if path == "-" else Path(path).read_text(encoding="utf-8")
        return json.loads(text)
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise UsageError(f"{path}: invalid JSON ({exc.msg} at line {exc.lineno})") from None


def _load_gammas(path: str, key: str = "gammas") -> list[Fraction]:
    obj = _load_json(path)
    if isinstance(obj, dict):
        obj = obj.get(key, obj.get("gammas"))
    if not isinstance(obj, list) or not obj:
        raise UsageError(f"{path}: expected a nonempty list of rationals")
    try:
        return [Q(x) for x in obj]
    except (ValueError, TypeError, ZeroDivisionError) as exc:
        raise UsageError(f"{path}: {exc}") from None


def _emit(args, payload: dict, text: str):
    if args.format == "json":
        sys.stdout.write(json.dumps(payload, indent=2, ensure_ascii=False) + "\n")
    else:
        sys.stdout.write(text if text.endswith("\n") else text + "\n")


def _vec(xs) -> str:
    return "(" + ", ".join(fmt_q(x) for x in xs) + ")"


# ---------------------------------------------------------------------------
# commands
# ---------------------------------------------------------------------------

def _resolve_r(arg: str, gammas: Sequence[Fraction]) -> int:
    if arg != "auto":
        try:
            return int(arg)
        except ValueError:
            raise UsageError(f"--r must be an integer or 'auto', got {arg!r}") from None
    if len(gammas) < 2 or gammas[0] == 0:
        raise UsageError("--r auto needs gamma_0 != 0 and gamma_1")
    d = degree_from_gammas(gammas[0], gammas[1])
    if d.denominator != 1:
        raise UsageError(f"2 gamma_1 / gamma_0 = {fmt_q(d)} is not an integer")
    return int(d)


def cmd_check(args) -> int:
    g = _load_gammas(args.file)
    r = _resolve_r(args.r, g)
    rel = check_relations(g, r, args.m_max)
    payload = rel.to_json()
    lines = [f"r = {r}"]
    for rep in rel.reports:
        lines.append(f"{rep.tag}: {rep.verdict}")
        for res in rep.residuals:
            lines.append(f"  m={res.m}: {fmt_q(res.value)}")
        if rep.skipped:
            lines.append(f"  skipped m: {', '.join(map(str, rep.skipped))}")
    fv = rel.first_violation
    if fv is not None:
        lines.append(f"certificate: {fv[1].render()}")
    ok = rel.consistent
    if args.oracles:
        e = GradedElement(r, TruncatedSeries(g))
        fe_ok, fe_at = check_functional_equation(e)
        dec = delta_decompose(e)
        payload["functional_equation"] = {"ok": fe_ok, "first_failure": fe_at}
        payload["delta"] = ({"ok": True, "deltas": [fmt_q(d) for d in dec.delta.deltas]}
                            if dec.ok else {"ok": False, "failed_at": dec.failed_at})
        lines.append("functional equation: " + ("ok" if fe_ok else f"fails at x^{fe_at}"))
        lines.append("delta decomposition: " + ("ok" if dec.ok else f"fails at x^{dec.failed_at}"))
        ok = ok and fe_ok and dec.ok
    _emit(args, payload, "\n".join(lines))
    return EXIT_OK if ok else EXIT_VIOLATION


def cmd_molien(args) -> int:
    G = group_from_json(_load_json(args.file), args.max_group_order)
    rep = None
    if args.screen:
        rep = gorenstein_screen(G, args.K, args.m_max)
        gammas, rf = rep.gammas, rep.hilbert
    else:
        lau, rf = molien_series(G, args.K if args.K is not None else 3)
        gammas = list(lau.gammas)
    dims = rf.taylor(args.truncation).coeffs
    sizes = G.stratum_sizes()
    payload = {
        "order": G.order,
        "dim": G.dim,
        "strata": {str(p): c for p, c in sizes.items()},
        "hilbert": rf.to_json(),
        "taylor": [fmt_q(c) for c in dims],
        "laurent": {"pole_order": G.dim, "gammas": [fmt_q(g) for g in gammas]},
    }
    lines = [
        f"|G| = {G.order}",
        "strata: " + ", ".join(f"G{p}={c}" for p, c in sizes.items()),
        f"Hilb(t) = {rf}",
        f"dims = {_vec(dims)}",
        f"gamma = {_vec(gammas)}",
    ]
    code = EXIT_OK
    if rep is not None:
        payload["screen"] = rep.to_json()
        lines.append(f"r = {rep.r}")
        if rep.gorenstein_possible:
            lines.append(f"consistent up to m = {rep.consistent_up_to}")
        else:
            lines.append("not Gorenstein: " + rep.certificate.render())
            code = EXIT_VIOLATION
    _emit(args, payload, "\n".join(lines))
    return code


def cmd_transform(args) -> int:
    g = _load_gammas(args.file)
    free = Q(args.free_gamma) if args.free_gamma is not None else None
    if args.direction == "odd-from-even":
        out = odd_from_even(g, args.r, args.n_max)
        full = [x for pair in zip(g, out) for x in pair]
    else:
        out = even_from_odd(g, args.r, args.n_max, free_gamma=free)
        full = [x for pair in zip(out, g) for x in pair]
    payload = {"direction": args.direction, "r": args.r,
               "result": [fmt_q(x) for x in out], "gammas": [fmt_q(x) for x in full]}
    _emit(args, payload, f"result = {_vec(out)}\ngamma = {_vec(full)}")
    return EXIT_OK


def _triangle_source(name: str, n_max: int) -> SymmetricTriangle:
    if name == "pascal":
        return SymmetricTriangle.pascal(n_max)
    if name == "lucas":
        return SymmetricTriangle.lucas(n_max)
    if name == "constant":
        return SymmetricTriangle.constant(n_max)
    if name.startswith("random:"):
        return SymmetricTriangle.random_symmetric(n_max, int(name.split(":", 1)[1]))
    return SymmetricTriangle.from_json(_load_json(name), check=False)


def cmd_identity(args) -> int:
    if args.suite == "gould":
        n_max = args.n_max if args.n_max is not None else 12
        m_max = args.m_max if args.m_max is not None else 6
        rep = verify_gould(_triangle_source(args.triangle, n_max), n_max, m_max)
        payload = rep.to_json()
        lines = [f"gould on {rep.triangle}: {'ok' if rep.ok else 'FAILED'}"]
        for fam, rs in rep.residuals.items():
            bad = [at for at, v in rs if v != 0]
            lines.append(f"  {fam}: {len(rs)} checked, {len(bad)} nonzero"
                         + (f", first at {bad[0]}" if bad else ""))
        _emit(args, payload, "\n".join(lines))
        return EXIT_OK if rep.ok else EXIT_VIOLATION
    bounds: dict = {}
    for key in ("n_max", "m_max", "l_min", "l_max"):
        v = getattr(args, key)
        if v is not None:
            bounds[key] = v
    if args.rs:
        bounds["rs"] = [int(x) for x in args.rs.split(",")]
    rep = verify_identities(args.suite, bounds)
    lines = [f"{rep.suite}: {rep.checked} checked, {len(rep.failures)} nonzero"]
    for p, v in rep.failures[:10]:
        lines.append(f"  {p}: {fmt_q(v)}")
    _emit(args, rep.to_json(), "\n".join(lines))
    return EXIT_OK if rep.ok else EXIT_VIOLATION


def cmd_triangle(args) -> int:
    if args.lucas is not None:
        tri = lucas_triangle(args.lucas)
    elif args.pascal is not None:
        tri = emit_pascal_rescaled(args.pascal)
    else:
        if args.r is None:
            raise UsageError("triangle needs --r, --pascal or --lucas")
        tri = emit_triangle(args.r, args.rows, args.presentation)
    _emit(args, tri.to_json(), tri.render())
    return EXIT_OK


def cmd_coeffs(args) -> int:
    rows = []
    for n in range(args.n_max + 1):
        row = []
        for i in range(n + 1):
            if args.kind == "bracket":
                row.append(bracket(n, i))
            elif args.kind == "brace":
                row.append(brace(n, i))
            elif args.kind == "unified":
                row.append(unified_coeff(n, i, args.r))
            else:
                try:
                    row.append(bracket_r(n, i, args.r))
                except ForbiddenIndex:
                    row = None
                    break
        rows.append(row)
    if args.kind == "bernoulli":
        rows = [[bernoulli(n)] for n in range(args.n_max + 1)]
    payload = {"kind": args.kind, "rows": [None if r is None else [fmt_q(x) for x in r]
                                           for r in rows]}
    width = max((len(fmt_q(x)) for r in rows if r for x in r), default=1)
    lines = [f"{n}: " + ("(free)" if r is None else "  ".join(fmt_q(x).rjust(width) for x in r))
             for n, r in enumerate(rows)]
    _emit(args, payload, "\n".join(lines))
    return EXIT_OK


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--format", choices=("text", "json"), default="text")
    common.add_argument("--truncation", type=_positive, default=None,
                        help="series truncation (default $GORULAB_TRUNCATION or 24)")
    common.add_argument("--m-max", type=_positive, default=None)
    common.add_argument("--max-group-order", type=_positive, default=DEFAULT_MAX_ORDER)

    p = _Parser(prog="gorulab", description="Exact checks of the Gorenstein functional "
                "equation through Laurent coefficients at t = 1.")
    p.add_argument("--version", action="version", version=f"gorulab {__version__}")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    c = sub.add_parser("check", parents=[common], help="test relations on a gamma vector")
    c.add_argument("file", help="JSON list of gammas, or {\"gammas\": [...]}; - for stdin")
    c.add_argument("--r", default="auto")
    c.add_argument("--oracles", action="store_true",
                   help="also run the substitution and delta tests")
    c.set_defaults(func=cmd_check)

    m = sub.add_parser("molien", parents=[common], help="Molien series of a finite group")
    m.add_argument("file")
    m.add_argument("--K", type=int, default=None, help="number of Laurent coefficients - 1")
    m.add_argument("--screen", action="store_true")
    m.set_defaults(func=cmd_molien)

    t = sub.add_parser("transform", parents=[common], help="odd from even gammas or back")
    t.add_argument("file")
    t.add_argument("--direction", choices=("odd-from-even", "even-from-odd"), required=True)
    t.add_argument("--r", type=int, required=True)
    t.add_argument("--n-max", type=int, default=None)
    t.add_argument("--free-gamma", default=None)
    t.set_defaults(func=cmd_transform)

    i = sub.add_parser("identity", parents=[common], help="verify an identity family")
    i.add_argument("--suite", required=True,
                   choices=("lemma45", "moll", "cubic", "quadratic", "gould", "proof-support"))
    i.add_argument("--n-max", type=int, default=None)
    i.add_argument("--l-min", type=int, default=None)
    i.add_argument("--l-max", type=int, default=None)
    i.add_argument("--rs", default=None, help="comma-separated degrees, e.g. 1,3,-1")
    i.add_argument("--triangle", default="pascal",
                   help="pascal, lucas, constant, random:SEED or a JSON file")
    i.set_defaults(func=cmd_identity)

    tr = sub.add_parser("triangle", parents=[common], help="coefficient triangles")
    tr.add_argument("--r", type=int, default=None)
    tr.add_argument("--rows", type=_positive, default=6)
    tr.add_argument("--presentation", choices=("raw", "gcd", "rescaled"), default="raw")
    tr.add_argument("--pascal", type=int, default=None, metavar="K",
                    help="Pascal rows 0..K rescaled to a symmetric array")
    tr.add_argument("--lucas", type=_positive, default=None, metavar="N",
                    help="first N rows of the Lucas triangle")
    tr.set_defaults(func=cmd_triangle)

    co = sub.add_parser("coeffs", parents=[common], help="bracket, brace and related tables")
    co.add_argument("--kind", choices=("bracket", "brace", "unified", "even-from-odd",
                                       "bernoulli"), required=True)
    co.add_argument("--n-max", type=int, default=8)
    co.add_argument("--r", type=int, default=1)
    co.set_defaults(func=cmd_coeffs)
    return p


def main(argv: Sequence[str] | None = None) -> int:
    try:
        args = build_parser().parse_args(argv)
        if args.truncation is None:
            args.truncation = _default_truncation()
        if args.command != "identity" and args.m_max is None:
            args.m_max = 12
        return args.func(args)
    except UsageError as exc:
        _fail("usage", str(exc))
    except ConstraintViolation as exc:
        _fail("constraint", str(exc), index=exc.index)
    except (ValueError, KeyError, TypeError, ArithmeticError, RuntimeError) as exc:
        _fail(type(exc).__name__, str(exc))
    return EXIT_USAGE


def _fail(kind: str, message: str, **extra):
    sys.stderr.write(json.dumps({"error": kind, "message": message, **extra}) + "\n")


if __name__ == "__main__":
    sys.exit(main())
