"""Command-line interface.

Subcommands: families show, check, normalize, analyze, refute, scan.
Exit codes: 0 success, 1 usage or domain errors, 2 failed verdict
(refute: claim not refuted; check: not a Hadamard matrix), 3 I/O or
parse errors.  All machine output is JSON against the schemas shipped
under schemas/; text output renders the same data.  MUB6_TOL overrides
the default equality tolerance; an explicit --tol flag wins over it.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys

import numpy as np

from .analysis import ALL_SECTIONS, analyze
from .core import (
    DEFAULT_TOL,
    SQRT6,
    Tolerances,
    is_hadamard,
    matrix_from_json,
    matrix_to_json,
    unitarity_residual,
)
from .equivalence import dephase, to_lemma_form
from .errors import InvalidInput, Mub6Error
from .families import b6, fourier_f6, m6, s6
from .musearch import OptimConfig, scan_m6, write_plot_file, write_scan_csv
from .refutation import VERDICT_REFUTED, run_counterexample

__all__ = ["main", "build_parser"]


class _Parser(argparse.ArgumentParser):
    """argparse with usage failures mapped to exit code 1."""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


class _CliError(Exception):
    def __init__(self, code: int, message: str):
        super().__init__(message)
        self.code = code


def _pair(z) -> list:
    z = complex(z)
    return [float(z.real), float(z.imag)]


def _record_dict(record) -> dict:
    return {
        "row_perm": list(record.row_perm),
        "col_perm": list(record.col_perm),
        "row_phases": [_pair(z) for z in record.row_phases],
        "col_phases": [_pair(z) for z in record.col_phases],
    }


def _loc_dict(loc) -> dict:
    return {"rows": list(loc.rows), "cols": list(loc.cols)}


def _emit(obj) -> None:
    print(json.dumps(obj, indent=2))


def build_parser() -> _Parser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--tol", type=float, default=None,
                        help="equality tolerance eq_tol (default 1e-9, or MUB6_TOL)")
    common.add_argument("--json", action="store_true", help="emit JSON output")
    common.add_argument("--seed", type=int, default=0, help="seed for search commands")

    parser = _Parser(prog="mub6",
                     description="order-6 complex Hadamard matrices: families, "
                                 "structural analysis, lemma-form normalization, "
                                 "and mutually-unbiased-basis search")
    sub = parser.add_subparsers(dest="command", required=True, metavar="command")

    fam = sub.add_parser("families", help="built-in Hadamard matrix families")
    famsub = fam.add_subparsers(dest="families_command", required=True, metavar="action")
    show = famsub.add_parser("show", parents=[common],
                             help="print one family member as JSON")
    show.add_argument("--family", required=True, choices=("m6", "f6", "b6", "s6"))
    show.add_argument("--t", type=float, help="m6 parameter, radians")
    show.add_argument("--t-deg", type=float, dest="t_deg", help="m6 parameter, degrees")
    show.add_argument("--x1", type=float, default=0.0, help="f6 first phase")
    show.add_argument("--x2", type=float, default=0.0, help="f6 second phase")
    show.add_argument("--theta", type=float, help="b6 parameter, radians")

    check = sub.add_parser("check", parents=[common],
                           help="verify a JSON matrix is Hadamard / MU to the standard basis")
    check.add_argument("--in", dest="path", required=True, metavar="JSON")

    norm = sub.add_parser("normalize", parents=[common],
                          help="dephase a matrix or put it in lemma form")
    norm.add_argument("--in", dest="path", required=True, metavar="JSON")
    norm.add_argument("--lemma-form", dest="lemma_form", action="store_true",
                      help="search for the normalized shape with a real upper 3x2 block")

    ana = sub.add_parser("analyze", parents=[common],
                         help="structural measurements (real entries, 2x2 Hadamard "
                              "submatrices, product columns)")
    ana.add_argument("--in", dest="path", required=True, metavar="JSON")
    ana.add_argument("--report", choices=("full", "real", "h2", "product"), default="full")

    ref = sub.add_parser("refute", parents=[common],
                         help="run the third-column counterexample pipeline on m6(t)")
    ref.add_argument("--t", type=float, help="family parameter, radians")
    ref.add_argument("--t-deg", type=float, dest="t_deg", help="family parameter, degrees")
    ref.add_argument("--text", action="store_true", help="force the text audit (default)")

    scan = sub.add_parser("scan", parents=[common],
                          help="sweep a family, counting MU vectors/bases/triples per point")
    scan.add_argument("--family", required=True, choices=("m6",))
    scan.add_argument("--t-from", type=float, required=True, dest="t_from")
    scan.add_argument("--t-to", type=float, required=True, dest="t_to")
    scan.add_argument("--steps", type=int, required=True)
    scan.add_argument("--starts", type=int, default=2000)
    scan.add_argument("--out", required=True, metavar="CSV")
    scan.add_argument("--plot", metavar="PATH", help="also write a t,n_mu_vectors file")
    scan.add_argument("--timing", action="store_true",
                      help="record real wall times (breaks byte-identical reruns)")

    return parser


def _tolerances(args) -> Tolerances:
    eq = args.tol
    if eq is None:
        env = os.environ.get("MUB6_TOL")
        if env is not None:
            try:
                eq = float(env)
            except ValueError:
                raise InvalidInput(f"MUB6_TOL is not a number: {env!r}")
    if eq is None:
        return DEFAULT_TOL
    return Tolerances(eq_tol=eq, cluster_tol=max(DEFAULT_TOL.cluster_tol, eq))


def _load_matrix(path):
    try:
        with open(path, "r", encoding="utf-8") as fh:
            text = fh.read()
        return matrix_from_json(text)
    except (OSError, InvalidInput) as exc:
        raise _CliError(3, f"cannot read matrix from {path}: {exc}")


def _resolve_t(parser, args) -> float:
    if args.t is not None and args.t_deg is not None:
        parser.error("--t and --t-deg are mutually exclusive")
    if args.t is not None:
        return args.t
    if args.t_deg is not None:
        return math.radians(args.t_deg)
    parser.error("one of --t / --t-deg is required")


def _cmd_families_show(parser, args) -> int:
    tol = _tolerances(args)
    if args.family == "m6":
        H = m6(_resolve_t(parser, args), tol)
    elif args.family == "f6":
        H = fourier_f6(args.x1, args.x2)
    elif args.family == "b6":
        if args.theta is None:
            parser.error("--theta is required for b6")
        H = b6(args.theta, tol)
    else:
        H = s6()
    print(matrix_to_json(H))
    return 0


def _cmd_check(parser, args) -> int:
    tol = _tolerances(args)
    H = _load_matrix(args.path)
    A = H.entries
    mod_dev = float(np.max(np.abs(np.abs(A) * SQRT6 - 1.0)))
    unit_res = unitarity_residual(A)
    unimodular_ok = mod_dev < tol.eq_tol
    unitary_ok = unit_res < tol.eq_tol
    hadamard = is_hadamard(H, tol)
    report = {
        "label": H.label,
        "max_modulus_deviation": mod_dev,
        "unitarity_residual": unit_res,
        "unimodular_ok": unimodular_ok,
        "unitary_ok": unitary_ok,
        "is_hadamard": hadamard,
        "mu_to_standard_basis": unimodular_ok,
    }
    if args.json:
        _emit(report)
    else:
        print(f"label: {H.label}")
        print(f"unimodular entries: {'PASS' if unimodular_ok else 'FAIL'} "
              f"(max deviation {mod_dev:.3e})")
        print(f"unitary: {'PASS' if unitary_ok else 'FAIL'} "
              f"(residual {unit_res:.3e})")
        print(f"MU to standard basis: {'PASS' if unimodular_ok else 'FAIL'}")
        print(f"hadamard: {'PASS' if hadamard else 'FAIL'}")
    return 0 if hadamard else 2


def _cmd_normalize(parser, args) -> int:
    tol = _tolerances(args)
    H = _load_matrix(args.path)
    if not args.lemma_form:
        D, record = dephase(H, tol)
        print(matrix_to_json(D))
        return 0
    form = to_lemma_form(H, tol)
    if form is None:
        if args.json:
            _emit({"present": False})
        else:
            print("NONE")
        return 0
    payload = {
        "present": True,
        "y": form.y,
        "x": form.x,
        "s": None if form.s is None else _pair(form.s),
        "record": _record_dict(form.record),
    }
    if args.json:
        _emit(payload)
    else:
        print(f"y = {form.y}")
        print(f"x = {form.x}")
        if form.s is None:
            print("s = none")
        else:
            print(f"s = {form.s!r}")
        print(f"row_perm = {form.record.row_perm}")
        print(f"col_perm = {form.record.col_perm}")
    return 0


def _cmd_analyze(parser, args) -> int:
    tol = _tolerances(args)
    H = _load_matrix(args.path)
    sections = ALL_SECTIONS if args.report == "full" else {
        "real": ("real",), "h2": ("h2",), "product": ("product",),
    }[args.report]
    rep = analyze(H, tol, sections=sections)
    payload = {"label": rep.label}
    if "real" in sections:
        payload["real_entry_count"] = rep.real_entry_count
        payload["exceeds_bound"] = rep.exceeds_bound
        payload["real_3x2_raw"] = [_loc_dict(l) for l in rep.real_3x2_raw]
        payload["real_3x2_rephased"] = [_loc_dict(l) for l in rep.real_3x2_rephased]
    if "h2" in sections:
        payload["h2_submatrix_count"] = rep.h2_submatrix_count
        part = rep.h2_reducible_partition
        payload["h2_reducible_partition"] = None if part is None else {
            "rows": [list(p) for p in part[0]],
            "cols": [list(p) for p in part[1]],
        }
    if "unitary" in sections:
        payload["unitary_3x3"] = [_loc_dict(l) for l in rep.unitary_3x3]
    if "product" in sections:
        payload["product_triple_found"] = rep.product_triple_found
    _emit(payload)
    return 0


def _cmd_refute(parser, args) -> int:
    tol = _tolerances(args)
    t = _resolve_t(parser, args)
    rep = run_counterexample(t, tol)
    if args.json:
        payload = {
            "t": rep.t,
            "is_hadamard_ok": rep.is_hadamard_ok,
            "hadamard_residual": rep.hadamard_residual,
            "lemma_form_ok": rep.lemma_form_ok,
            "tail_ok": rep.tail_ok,
            "s": None if rep.s is None else _pair(rep.s),
            "third_col_moduli": list(rep.third_col_moduli),
            "min_third_col_modulus": rep.min_third_col_modulus,
            "verdict": rep.verdict,
            "record": _record_dict(rep.record),
        }
        _emit(payload)
    else:
        ok = lambda b: "PASS" if b else "FAIL"
        print(f"t = {rep.t!r}")
        print(f"hadamard:            {ok(rep.is_hadamard_ok)}  "
              f"(residual {rep.hadamard_residual:.3e})")
        print(f"lemma form (1,-1):   {ok(rep.lemma_form_ok)}")
        if rep.s is None:
            print(f"tail (-1, s, -s):    {ok(rep.tail_ok)}")
        else:
            print(f"tail (-1, s, -s):    {ok(rep.tail_ok)}  "
                  f"(s = {rep.s.real:+.12f}{rep.s.imag:+.12f}j)")
        print(f"third-column moduli: min {rep.min_third_col_modulus:.12f} "
              f"vs 1/sqrt(6) = {1.0 / SQRT6:.12f}; zero entries would need 0")
        print(f"verdict: {rep.verdict}")
    return 0 if rep.verdict == VERDICT_REFUTED else 2


def _cmd_scan(parser, args) -> int:
    tol = _tolerances(args)
    if args.steps < 1:
        parser.error("--steps must be >= 1")
    cfg = OptimConfig(starts=args.starts, seed=args.seed, tol=tol)
    ts = [float(x) for x in np.linspace(args.t_from, args.t_to, args.steps)]
    rows = scan_m6(ts, cfg)
    write_scan_csv(rows, cfg, args.out, timing=args.timing)
    if args.plot:
        write_plot_file(rows, args.plot)
    flagged = sum(1 for r in rows if r.error is not None)
    print(f"wrote {len(rows)} rows to {args.out}" +
          (f" ({flagged} flagged invalid)" if flagged else ""))
    return 0


def _dispatch(argv) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "families":
        return _cmd_families_show(parser, args)
    if args.command == "check":
        return _cmd_check(parser, args)
    if args.command == "normalize":
        return _cmd_normalize(parser, args)
    if args.command == "analyze":
        return _cmd_analyze(parser, args)
    if args.command == "refute":
        return _cmd_refute(parser, args)
    if args.command == "scan":
        return _cmd_scan(parser, args)
    parser.error(f"unknown command {args.command!r}")


def main(argv=None) -> int:
    args_list = sys.argv[1:] if argv is None else [str(a) for a in argv]
    try:
        return _dispatch(args_list)
    except SystemExit as exc:
        code = exc.code
        if code is None:
            return 0
        return code if isinstance(code, int) else 1
    except _CliError as exc:
        print(f"mub6: error: {exc}", file=sys.stderr)
        return exc.code
    except OSError as exc:
        print(f"mub6: error: {exc}", file=sys.stderr)
        return 3
    except Mub6Error as exc:
        print(f"mub6: error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
