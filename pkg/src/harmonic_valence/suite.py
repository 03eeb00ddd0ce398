"""Self-checks run by ``harmonic-valence verify``."""

from __future__ import annotations

import json
import time
from dataclasses import dataclass
from importlib import resources
from pathlib import Path
from typing import Callable

import numpy as np

from .errors import CertificateMismatch, DegenerateZero, HarmonicValenceError
from .extremal import (ExtremalSolution, as_real_solution, rotate_solution, search_classes,
                       verify_solution)
from .harmonic import find_harmonic_zeros
from .poly import ComplexPolynomial
from .trees import catalan, closed_form_E, closed_form_Q, count_classes, mirror_fixed_count

DEFAULT_SEED = 20240611
EXIT_OK, EXIT_FAILED, EXIT_DEGENERATE, EXIT_MISMATCH = 0, 1, 2, 3


@dataclass
class CheckResult:
    name: str
    ok: bool
    detail: str
    exit_code: int = EXIT_OK
    seconds: float = 0.0


def exit_code_for(exc: BaseException) -> int:
    if isinstance(exc, DegenerateZero):
        return EXIT_DEGENERATE
    if isinstance(exc, CertificateMismatch):
        return EXIT_MISMATCH
    return EXIT_FAILED


def random_polynomial(rng: np.random.Generator, degree: int | None = None) -> ComplexPolynomial:
    """Coefficients uniform in the disk of radius 2; the leading one has modulus in [1/2, 2]."""
    n = int(rng.integers(2, 9)) if degree is None else degree
    r = 2.0 * np.sqrt(rng.random(n + 1))
    r[-1] = rng.uniform(0.5, 2.0)
    return ComplexPolynomial(r * np.exp(2j * np.pi * rng.random(n + 1)))


# ---------------------------------------------------------------------------
# golden solutions


def golden_path() -> Path:
    return Path(str(resources.files("harmonic_valence") / "data" / "golden.json"))


def load_golden(path: Path | None = None) -> list[tuple[ExtremalSolution, dict]]:
    """Stored solutions with their recorded zero counts."""
    data = json.loads(Path(path or golden_path()).read_text())
    if data.get("schema") != 1:
        raise ValueError("golden file has an unsupported schema")
    out = []
    for entry in data["solutions"]:
        coeffs = [complex(c["re"], c["im"]) for c in entry["coefficients"]]
        crit = tuple(complex(c["re"], c["im"]) for c in entry["critical_points"])
        p = ComplexPolynomial(coeffs)
        sol = as_real_solution(ExtremalSolution(p, crit, 0.0, label=entry["label"]))
        out.append((sol, entry["zeros"]))
    return out


def check_golden(path: Path | None = None) -> CheckResult:
    try:
        golden = load_golden(path)
    except (OSError, ValueError, KeyError, TypeError, HarmonicValenceError) as exc:
        return CheckResult("golden", False, f"cannot read golden file: {exc}", EXIT_FAILED)
    for sol, expected in golden:
        try:
            zs = verify_solution(sol).zero_report
        except HarmonicValenceError as exc:
            return CheckResult("golden", False, f"{sol.label}: {exc}", exit_code_for(exc))
        got = {"total": zs.total, "count_preserving": zs.count_preserving,
               "count_reversing": zs.count_reversing, "winding": zs.winding}
        if got != expected:
            return CheckResult("golden", False, f"{sol.label}: counts {got} != recorded {expected}",
                               EXIT_FAILED)
    return CheckResult("golden", True, f"{len(golden)} stored solutions verified")


# ---------------------------------------------------------------------------
# individual checks


def check_counts(n_max: int = 12) -> CheckResult:
    bad = [n for n in range(2, n_max + 1) if not count_classes(n).matches]
    if bad:
        return CheckResult("counts", False, f"enumeration disagrees with closed forms at n={bad}",
                           EXIT_FAILED)
    return CheckResult("counts", True, f"conjugacy and equivalence counts match for 2 <= n <= {n_max}")


def check_mirror_symmetric(k_max: int = 4) -> CheckResult:
    for k in range(k_max + 1):
        if mirror_fixed_count(2 * k + 1) != catalan(k) or (k and mirror_fixed_count(2 * k) != 0):
            return CheckResult("mirror", False, f"mirror-fixed count wrong at k={k}", EXIT_FAILED)
    return CheckResult("mirror", True, f"mirror-fixed binary trees equal catalan(k) for k <= {k_max}")


def check_solver(n_max: int, seed: int = 0) -> CheckResult:
    tallies = []
    for n in range(2, n_max + 1):
        cs = search_classes(n, rng_seed=seed)
        if cs.equivalence_count != closed_form_E(n) or cs.conjugacy_count != closed_form_Q(n):
            return CheckResult("solver", False,
                               f"n={n}: found {cs.conjugacy_count} conjugacy / "
                               f"{cs.equivalence_count} equivalence classes", EXIT_FAILED)
        for s in cs.solutions:
            try:
                verify_solution(s)
            except HarmonicValenceError as exc:
                return CheckResult("solver", False, f"{s.label}: {exc}", exit_code_for(exc))
        tallies.append(f"{n}:{cs.conjugacy_count}/{cs.equivalence_count}")
    return CheckResult("solver", True, "classes found and verified " + " ".join(tallies))


def check_fuzz(count: int, seed: int = DEFAULT_SEED) -> CheckResult:
    rng = np.random.default_rng(seed)
    skipped = 0
    for i in range(count):
        p = random_polynomial(rng)
        n = p.degree
        try:
            zs = find_harmonic_zeros(p)
        except DegenerateZero:
            skipped += 1
            continue
        except HarmonicValenceError as exc:
            return CheckResult("fuzz", False, f"case {i} (degree {n}): {exc}", exit_code_for(exc))
        if not (zs.index_sum == zs.winding == -n and n <= zs.total <= 3 * n - 2
                and (zs.total - n) % 2 == 0):
            return CheckResult("fuzz", False, f"case {i}: counts {zs.count_preserving}/"
                               f"{zs.count_reversing}, winding {zs.winding}", EXIT_FAILED)
    return CheckResult("fuzz", True, f"{count - skipped} polynomials certified, {skipped} degenerate skipped")


def check_rotations(seed: int = DEFAULT_SEED, per_solution: int = 8,
                    path: Path | None = None) -> CheckResult:
    rng = np.random.default_rng(seed)
    try:
        golden = load_golden(path)
    except (OSError, ValueError, KeyError, TypeError, HarmonicValenceError) as exc:
        return CheckResult("rotations", False, f"cannot read golden file: {exc}", EXIT_FAILED)
    for sol, _ in golden:
        for omega in np.exp(2j * np.pi * rng.random(per_solution)):
            try:
                verify_solution(rotate_solution(sol, omega))
            except HarmonicValenceError as exc:
                return CheckResult("rotations", False, f"{sol.label} at omega={omega:.6f}: {exc}",
                                   exit_code_for(exc))
    return CheckResult("rotations", True, f"{len(golden) * per_solution} rotated solutions verified")


def run_suite(level: str = "quick", seed: int = DEFAULT_SEED,
              golden: Path | None = None) -> list[CheckResult]:
    if level not in ("quick", "full"):
        raise ValueError(f"unknown level {level!r}")
    quick = level == "quick"
    checks: list[tuple[str, Callable[[], CheckResult]]] = [
        ("golden", lambda: check_golden(golden)),
        ("counts", lambda: check_counts(12)),
        ("mirror", check_mirror_symmetric),
        ("solver", lambda: check_solver(5 if quick else 8)),
        ("rotations", lambda: check_rotations(seed, path=golden)),
        ("fuzz", lambda: check_fuzz(100 if quick else 500, seed)),
    ]
    results = []
    for _, fn in checks:
        t0 = time.perf_counter()
        r = fn()
        r.seconds = time.perf_counter() - t0
        results.append(r)
    return results
