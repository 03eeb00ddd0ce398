"""Command line front end: ``harmonic-valence {zeros,extremal,trees,verify,figure}``.

Exit codes: 0 success (or partial), 1 verification failure, 2 degenerate
input, 3 certificate mismatch, 64 usage error.
"""

from __future__ import annotations

import argparse
import contextlib
import logging
import math
import sys
from pathlib import Path

from .errors import (CertificateMismatch, DegenerateZero, HarmonicValenceError, TooLarge)
from .extremal import search_classes, verify_solution
from .harmonic import find_harmonic_zeros
from .poly import ComplexPolynomial, from_critical_points
from .report import RunReport, count_report_to_dict, solution_to_dict, zero_set_to_dict
from .suite import DEFAULT_SEED, run_suite
from .trees import closed_form_E, closed_form_Q, count_classes

EXIT_OK, EXIT_FAILED, EXIT_DEGENERATE, EXIT_MISMATCH, EXIT_USAGE = 0, 1, 2, 3, 64
ENUMERATION_CAP = 14
EXTREMAL_RANGE = (2, 10)

log = logging.getLogger("harmonic_valence")


class UsageError(Exception):
    pass


def parse_complex(token: str) -> complex:
    """``"re"``, ``"re+imi"``, ``"re-imi"`` or ``"imi"``; ``j`` works in place of ``i``."""
    s = token.strip().replace(" ", "")
    if s.endswith("i"):
        s = s[:-1] + "j"
    try:
        z = complex(s)
    except ValueError:
        raise UsageError(f"cannot parse complex number {token!r}") from None
    if not (math.isfinite(z.real) and math.isfinite(z.imag)):
        raise UsageError(f"non-finite number {token!r}")
    return z


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", type=Path, help="write the JSON report here ('-' for stdout)")
    common.add_argument("--tol", type=float, help="numerical tolerance")
    common.add_argument("--seed", type=int, help="random generator seed")
    common.add_argument("--max-iter", type=int, help="iteration cap")
    common.add_argument("--svg-dir", type=Path, help="directory for SVG figures")
    common.add_argument("--csv", type=Path, help="write a CSV table here")
    common.add_argument("-v", "--verbose", action="store_true")

    p = _Parser(prog="harmonic-valence", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    z = sub.add_parser("zeros", parents=[common], help="zeros of z - conj(p(z))")
    z.add_argument("values", nargs="+", help="ascending coefficients, each 're' or 're+imi'")
    z.add_argument("--roots-of-derivative", action="store_true",
                   help="read VALUES as critical points of p instead of coefficients")
    z.add_argument("--scale", type=parse_complex, default=1.0,
                   help="leading factor of p' (with --roots-of-derivative)")
    z.add_argument("--offset", type=parse_complex, default=0.0, help="p(0) (with --roots-of-derivative)")

    e = sub.add_parser("extremal", parents=[common], help="solve for extremal polynomials of degree n")
    e.add_argument("n", type=int)
    e.add_argument("--seeds", choices=("trees", "paper_g", "both"), default="trees")

    t = sub.add_parser("trees", parents=[common], help="count Hubbard trees up to degree n_max")
    t.add_argument("n_max", type=int)

    v = sub.add_parser("verify", parents=[common], help="run the self-check suite")
    v.add_argument("--level", choices=("quick", "full"), default="quick")
    v.add_argument("--golden", type=Path, help="alternative golden solutions file")

    f = sub.add_parser("figure", parents=[common], help="draw tree figures for degrees 2..n_max")
    f.add_argument("n_max", type=int, nargs="?", default=8)
    return p


# ---------------------------------------------------------------------------
# commands


def cmd_zeros(args) -> tuple[RunReport, int]:
    values = [parse_complex(v) for v in args.values]
    if args.roots_of_derivative:
        if args.scale == 0:
            raise UsageError("--scale must be nonzero")
        p = from_critical_points(values, args.scale, args.offset)
    else:
        p = ComplexPolynomial(values)
    if p.degree < 2:
        raise UsageError(f"degree must be at least 2, got {p.degree}")
    inputs = {"coefficients": list(p.coeffs), "tol": args.tol, "seed": args.seed}
    kw = {"seed": args.seed}
    if args.tol is not None:
        kw["tol_deg"] = args.tol
    try:
        zs = find_harmonic_zeros(p, **kw)
    except DegenerateZero as exc:
        res = zero_set_to_dict(exc.zero_set) if exc.zero_set else None
        return RunReport("zeros", inputs, res, "failure", [f"DegenerateZero: {exc}"]), EXIT_DEGENERATE
    except CertificateMismatch as exc:
        res = zero_set_to_dict(exc.zero_set) if exc.zero_set else None
        return RunReport("zeros", inputs, res, "failure", [f"CertificateMismatch: {exc}"]), EXIT_MISMATCH
    if args.csv:
        from .figures import write_csv
        write_csv([{"re": z.location.real, "im": z.location.imag,
                            "orientation": z.orientation.value, "index": z.index,
                            "derivative_modulus": z.derivative_modulus, "residual": z.residual}
                           for z in zs.zeros], args.csv)
    print(f"degree {p.degree}: {zs.total} zeros ({zs.count_preserving} sense-preserving, "
          f"{zs.count_reversing} sense-reversing), winding {zs.winding}")
    return RunReport("zeros", inputs, zero_set_to_dict(zs)), EXIT_OK


def cmd_extremal(args) -> tuple[RunReport, int]:
    n = args.n
    lo, hi = EXTREMAL_RANGE
    if not lo <= n <= hi:
        raise UsageError(f"n must lie in [{lo}, {hi}]")
    kw = {"seed_mode": args.seeds, "rng_seed": 0 if args.seed is None else args.seed}
    if args.tol is not None:
        kw["tol"] = args.tol
    if args.max_iter is not None:
        kw["max_iter"] = args.max_iter
    cs = search_classes(n, **kw)
    diagnostics = [f"seed {o.seed}: {o.error}" for o in cs.failures]
    solutions = []
    verified = 0
    for sol, eq in zip(cs.solutions, cs.equivalence):
        seeds = [o.seed for o in cs.outcomes if o.conjugacy_label == sol.label]
        try:
            sol = verify_solution(sol)
            verified += 1
            ok = True
        except HarmonicValenceError as exc:
            diagnostics.append(f"{sol.label}: {exc}")
            ok = False
        solutions.append(solution_to_dict(sol, equivalence_label=f"n{n}-e{eq}", verified=ok,
                                          seeds=seeds))
    q, e = closed_form_Q(n), closed_form_E(n)
    results = {"degree": n, "solutions": solutions,
               "found_conjugacy": cs.conjugacy_count, "found_equivalence": cs.equivalence_count,
               "expected_Q": q, "expected_E": e,
               "seeds_tried": len(cs.outcomes), "seeds_failed": len(cs.failures)}
    all_verified = verified == len(solutions)
    if cs.equivalence_count < e or not all_verified:
        status, code = "failure", EXIT_FAILED
        if cs.equivalence_count < e:
            diagnostics.append(f"missing equivalence classes: found {cs.equivalence_count} of {e}")
    elif cs.conjugacy_count < q or cs.failures:
        status, code = "partial", EXIT_OK
        if cs.conjugacy_count < q:
            diagnostics.append(f"missing conjugacy classes: found {cs.conjugacy_count} of {q}")
    else:
        status, code = "success", EXIT_OK
    print(f"degree {n}: {cs.conjugacy_count}/{q} conjugacy classes, "
          f"{cs.equivalence_count}/{e} equivalence classes, {verified} verified ({status})")
    for s in solutions:
        print(f"  {s['label']} [{s['equivalence_label']}] residual {s['residual_norm']:.2e}")
    inputs = {"n": n, "seed_mode": args.seeds, "seed": kw["rng_seed"], "tol": args.tol,
              "max_iter": args.max_iter}
    return RunReport("extremal", inputs, results, status, diagnostics), code


def cmd_trees(args) -> tuple[RunReport, int]:
    if args.n_max < 2:
        raise UsageError("n_max must be at least 2")
    rows, diagnostics, svgs = [], [], []
    for n in range(2, args.n_max + 1):
        if n > ENUMERATION_CAP:
            exc = TooLarge(f"enumeration capped at degree {ENUMERATION_CAP}")
            diagnostics.append(f"n={n}: TooLarge: {exc}")
            rows.append({"degree": n, "enumerated_conjugacy": None, "enumerated_equivalence": None,
                         "closed_form_Q": closed_form_Q(n), "closed_form_E": closed_form_E(n),
                         "trees": []})
            continue
        cr = count_classes(n)
        if not cr.matches:
            diagnostics.append(f"n={n}: enumeration disagrees with closed forms")
        rows.append(count_report_to_dict(cr))
        if args.svg_dir:
            from .figures import degree_figure
            svg, _, _ = degree_figure(n, args.svg_dir)
            svgs.append(str(svg))
    if args.csv:
        from .figures import write_csv
        write_csv([{k: r[k] for k in r if k != "trees"} for r in rows], args.csv)
    mismatch = any("disagrees" in d for d in diagnostics)
    status = "failure" if mismatch else ("partial" if diagnostics else "success")
    for r in rows:
        print(f"n={r['degree']:>2}  Q={r['closed_form_Q']:<6} E={r['closed_form_E']:<6} "
              f"enumerated {r['enumerated_conjugacy']}/{r['enumerated_equivalence']}")
    results = {"counts": rows, "svg": svgs}
    inputs = {"n_max": args.n_max, "svg_dir": args.svg_dir}
    return RunReport("trees", inputs, results, status, diagnostics), EXIT_FAILED if mismatch else EXIT_OK


def cmd_figure(args) -> tuple[RunReport, int]:
    if not 2 <= args.n_max <= ENUMERATION_CAP:
        raise UsageError(f"n_max must lie in [2, {ENUMERATION_CAP}]")
    from .figures import degree_figure
    out = args.svg_dir or Path("figures")
    files = []
    for n in range(2, args.n_max + 1):
        svg, csv_path, count = degree_figure(n, out)
        files.append({"degree": n, "trees": count, "svg": str(svg), "csv": str(csv_path)})
        print(f"n={n}: {count} trees -> {svg}")
    return RunReport("figure", {"n_max": args.n_max, "svg_dir": out}, {"files": files}), EXIT_OK


def cmd_verify(args) -> tuple[RunReport, int]:
    seed = DEFAULT_SEED if args.seed is None else args.seed
    results = run_suite(args.level, seed, args.golden)
    code = next((r.exit_code or EXIT_FAILED for r in results if not r.ok), EXIT_OK)
    for r in results:
        print(f"[{'PASS' if r.ok else 'FAIL'}] {r.name}: {r.detail} ({r.seconds:.1f} s)")
    checks = [{"name": r.name, "ok": r.ok, "detail": r.detail, "exit_code": r.exit_code}
              for r in results]
    diagnostics = [f"{r.name}: {r.detail}" for r in results if not r.ok]
    inputs = {"level": args.level, "seed": seed, "golden": args.golden}
    status = "success" if code == EXIT_OK else "failure"
    return RunReport("verify", inputs, {"checks": checks}, status, diagnostics), code


COMMANDS = {"zeros": cmd_zeros, "extremal": cmd_extremal, "trees": cmd_trees,
            "figure": cmd_figure, "verify": cmd_verify}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except UsageError as exc:
        print(f"harmonic-valence: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except SystemExit as exc:
        # argparse exits on --help and on bad arguments
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    to_stdout = args.json is not None and str(args.json) == "-"
    # keep stdout clean for the JSON document
    sink = contextlib.redirect_stdout(sys.stderr) if to_stdout else contextlib.nullcontext()
    try:
        with sink:
            report, code = COMMANDS[args.command](args)
    except UsageError as exc:
        print(f"harmonic-valence: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    if args.json:
        if to_stdout:
            sys.stdout.write(report.to_json())
        else:
            report.write(args.json)
    for d in report.diagnostics:
        log.info(d)
    return code


if __name__ == "__main__":
    sys.exit(main())
