"""Command-line front end: ``errsums compute|verify|triangle|oeis``.

Exit codes: 0 success, 1 a proven claim failed, 2 bad arguments,
3 no convergence, 4 infrastructure or parse failure, 5 OEIS mismatch.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from fractions import Fraction

import mpmath
from mpmath import mp, mpf

from . import __version__

EXIT_OK, EXIT_CLAIM, EXIT_ARGS, EXIT_CONVERGENCE, EXIT_INFRA, EXIT_MISMATCH = 0, 1, 2, 3, 4, 5

FAMILIES = ("pi", "logrho", "exp", "log1p", "zeta2", "zeta3")
SUITE_NAMES = ("recurrences", "closed_forms", "integrals", "triangles", "genfuncs", "oeis")
TRIANGLE_KINDS = ("a", "b", "c", "alpha", "beta")


class CliError(Exception):
    def __init__(self, code: int, message: str):
        super().__init__(message)
        self.code = code


# ------------------------------------------------------------ output


def _decimal(value: mpf, prec: int, tail=None) -> str:
    """Decimal string with no more digits than the precision and tail bound justify."""
    with mp.workprec(prec + 16):
        value = mpf(value)
        if value == 0:
            return "0"
        after_point = int(prec * 0.30103) - 2
        if tail is not None and mpf(tail) > 0:
            after_point = min(after_point, int(-mpmath.log10(mpf(tail))))
        magnitude = int(mpmath.floor(mpmath.log10(abs(value)))) + 1
        sig = max(1, magnitude + max(after_point, 0))
        return mpmath.nstr(value, sig, strip_zeros=False, min_fixed=-mpmath.inf, max_fixed=mpmath.inf)


def _result(name, value=None, tail_bound=None, terms_used=None, status="ok", **extra) -> dict:
    row = {"name": name, "value": value, "tail_bound": tail_bound, "terms_used": terms_used, "status": status}
    row.update(extra)
    return row


def _emit(command: str, params: dict, results: list[dict], fmt: str, out) -> None:
    if fmt == "json":
        doc = {"command": command, "params": params, "results": results, "version": __version__}
        out.write(json.dumps(doc, indent=2) + "\n")
    elif fmt == "csv":
        w = csv.writer(out, lineterminator="\n")
        keys = ["name", "value", "tail_bound", "terms_used", "status"]
        w.writerow(keys)
        for r in results:
            w.writerow(["" if r.get(k) is None else r[k] for k in keys])
    else:
        for r in results:
            bits = [b for b in (r["name"], r["value"], r["status"]) if b]
            if r.get("tail_bound"):
                bits.append(f"tail<={r['tail_bound']}")
            if r.get("detail"):
                bits.append(r["detail"])
            out.write("  ".join(str(b) for b in bits).rstrip() + "\n")


# ------------------------------------------------------------ commands


def _parse_t(text: str) -> Fraction:
    from .numkernel import as_fraction

    try:
        return as_fraction(text)
    except (TypeError, ValueError, ZeroDivisionError) as exc:
        raise CliError(EXIT_ARGS, f"--t must be a rational 'p/q', got {text!r}") from exc


def cmd_compute(args, out) -> int:
    from .cf_engine import DivergenceError, PrecisionExhausted

    family, prec, tol = args.family, args.prec, args.tol
    params = {"family": family, "prec": prec, "tol": tol}
    try:
        if family == "pi":
            from .pi_logrho import errsum_pi

            mode = args.mode or "signed"
            rep = errsum_pi(prec, tol, mode)
        elif family == "logrho":
            from .pi_logrho import errsum_logrho

            mode = args.mode or "signed"
            rep = errsum_logrho(prec, tol, mode)
        elif family == "exp":
            from .exp_errsums import errsum_exp

            if args.l is None:
                raise CliError(EXIT_ARGS, "compute exp needs --l")
            mode = "absolute"
            params["l"] = args.l
            params["method"] = args.method or "cf_sum"
            rep = errsum_exp(args.l, params["method"], prec, tol)
        elif family == "log1p":
            from .log1p import errsum_log1p

            if args.t is None:
                raise CliError(EXIT_ARGS, "compute log1p needs --t")
            t = _parse_t(args.t)
            mode = args.mode or "signed"
            params["t"] = str(t)
            params["method"] = args.method or "series"
            rep = errsum_log1p(t, params["method"], prec, tol, mode)
        else:
            from .apery import errsum_apery

            mode = args.mode or "absolute"
            rep = errsum_apery(family, mode, prec, tol)
    except (PrecisionExhausted, DivergenceError) as exc:
        raise CliError(EXIT_CONVERGENCE, str(exc)) from exc
    except ValueError as exc:
        raise CliError(EXIT_ARGS, str(exc)) from exc
    params["mode"] = mode
    if not rep.converged:
        raise CliError(EXIT_CONVERGENCE, f"{family}: no convergence after {rep.terms_used} terms")
    if args.terms is not None:
        params["terms"] = args.terms
        if rep.terms_used > args.terms:
            raise CliError(EXIT_CONVERGENCE, f"{family}: tolerance needs {rep.terms_used} terms, budget is {args.terms}")
    tail = rep.tail_bound if rep.tail_bound else None
    result = _result(
        f"{family}_{mode}",
        _decimal(rep.value, prec, tail),
        mpmath.nstr(rep.tail_bound, 3) if rep.tail_bound else "0",
        rep.terms_used,
        "converged",
        method=rep.method,
    )
    _emit("compute", params, [result], args.format, out)
    return EXIT_OK


def cmd_verify(args, out) -> int:
    from .suites import run_suite

    config = {"max_n": args.max_n, "prec": args.prec}
    if args.data_dir:
        config["data_dir"] = args.data_dir
    try:
        rows = run_suite(args.suite, **config)
    except (ArithmeticError, OSError, ValueError) as exc:
        raise CliError(EXIT_INFRA, f"suite {args.suite} could not run: {exc}") from exc
    results = [_result(r.name, status=r.status, detail=r.detail) for r in rows]
    warnings = [r.name for r in rows if r.status == "empirical-fail"]
    params = {"suite": args.suite, **{k: str(v) for k, v in config.items()}}
    if warnings:
        params["warning"] = f"{len(warnings)} observed identities failed"
    _emit("verify", params, results, args.format, out)
    return EXIT_CLAIM if any(r.status == "fail" for r in rows) else EXIT_OK


def cmd_triangle(args, out) -> int:
    from . import triangles

    if args.rows < 1:
        raise CliError(EXIT_ARGS, "--rows must be >= 1")
    nu_max = args.rows - 1
    kind = args.kind
    if kind in ("a", "b"):
        records = [(f"{nu},{mu}", str(c)) for nu, mu, c in triangles.triangle(kind, nu_max).records()]
        header = ["nu", "mu", "value"]
    elif kind == "c":
        records = [(f"{nu},{i},{j}", str(c)) for nu, i, j, c in triangles.coeff_cube(nu_max).records()]
        header = ["nu", "mu1", "mu2", "value"]
    else:
        vals = triangles.row_functionals(kind, nu_max).values
        records = [(str(nu), str(v)) for nu, v in enumerate(vals)]
        header = ["nu", "value"]
    params = {"kind": kind, "rows": args.rows}
    if args.format == "csv":
        w = csv.writer(out, lineterminator="\n")
        w.writerow(header)
        for idx, value in records:
            w.writerow(idx.split(",") + [value])
    else:
        results = [_result(f"{kind}[{idx}]", value, status="exact") for idx, value in records]
        _emit("triangle", params, results, args.format, out)
    return EXIT_OK


def cmd_oeis(args, out) -> int:
    from .oeis_bridge import AlignmentError, BFileError, binding, compare, read_bfile

    try:
        b = binding(args.id)
    except KeyError as exc:
        raise CliError(EXIT_ARGS, str(exc.args[0])) from exc
    try:
        bfile = read_bfile(args.bfile)
    except (OSError, BFileError) as exc:
        raise CliError(EXIT_INFRA, str(exc)) from exc
    params = {"id": b.oeis_id, "bfile": args.bfile, "count": args.count}
    try:
        rep = compare(b, bfile, args.count)
    except AlignmentError as exc:
        _emit("oeis", params, [_result(b.oeis_id, status="mismatch", detail=str(exc))], args.format, out)
        return EXIT_MISMATCH
    detail = f"offset {rep.offset_used}"
    if rep.first_mismatch:
        idx, want, got = rep.first_mismatch
        detail += f"; first mismatch at index {idx}: b-file {want}, generated {got}"
    result = _result(
        b.oeis_id,
        str(rep.matched),
        terms_used=rep.compared,
        status="match" if rep.ok else "mismatch",
        detail=detail,
        offset_used=rep.offset_used,
    )
    _emit("oeis", params, [result], args.format, out)
    return EXIT_OK if rep.ok else EXIT_MISMATCH


# ------------------------------------------------------------ parser


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="errsums", description="Error sums of continued-fraction convergents.")
    p.add_argument("--version", action="version", version=f"errsums {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("compute", help="evaluate one error sum")
    c.add_argument("family", choices=FAMILIES)
    c.add_argument("--mode", choices=("signed", "absolute"))
    c.add_argument("--t", help="rational t in (-1, 1] as 'p/q' (log1p)")
    c.add_argument("--l", type=int, help="root order l >= 2 (exp)")
    c.add_argument("--method", help="evaluation route (exp: cf_sum|erf_form|gauss_cf; log1p: series|closed_form)")
    c.add_argument("--terms", type=int, help="fail with exit 3 if the tolerance needs more terms")
    c.add_argument("--prec", type=int, default=256, help="working precision in bits")
    c.add_argument("--tol", default="1e-40", help="absolute tolerance as a decimal string")
    c.add_argument("--format", choices=("json", "csv", "text"), default="text")
    c.set_defaults(handler=cmd_compute)

    v = sub.add_parser("verify", help="run an identity suite")
    v.add_argument("suite", choices=SUITE_NAMES)
    v.add_argument("--max-n", type=int, default=30)
    v.add_argument("--prec", type=int, default=256)
    v.add_argument("--data-dir", help="directory holding <ID>.fixture.txt b-files (oeis suite)")
    v.add_argument("--format", choices=("json", "csv", "text"), default="text")
    v.set_defaults(handler=cmd_verify)

    t = sub.add_parser("triangle", help="export coefficient tables")
    t.add_argument("kind", choices=TRIANGLE_KINDS)
    t.add_argument("--rows", type=int, default=5)
    t.add_argument("--format", choices=("json", "csv", "text"), default="csv")
    t.set_defaults(handler=cmd_triangle)

    o = sub.add_parser("oeis", help="compare a local b-file with a generated sequence")
    o.add_argument("--id", required=True)
    o.add_argument("--bfile", required=True)
    o.add_argument("--count", type=int, default=30)
    o.add_argument("--format", choices=("json", "csv", "text"), default="text")
    o.set_defaults(handler=cmd_oeis)
    return p


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    if getattr(args, "prec", 256) < 32:
        print("errsums: --prec must be at least 32", file=sys.stderr)
        return EXIT_ARGS
    try:
        return args.handler(args, out)
    except CliError as exc:
        print(f"errsums: {exc}", file=sys.stderr)
        return exc.code


def run(argv=None) -> str:
    """Run the CLI and return its stdout (for scripts and tests)."""
    buf = io.StringIO()
    main(argv, buf)
    return buf.getvalue()


if __name__ == "__main__":
    sys.exit(main())
