"""Acceptance suite: one test per criterion, each printing a PASS/FAIL line.

Run alone with ``pytest tests/test_acceptance.py -v`` or ``python tests/test_acceptance.py``.
"""
import contextlib
import csv
import json
import re
import sys
import time

import numpy as np
import pytest

from harmonic_valence.cli import main
from harmonic_valence.errors import DegenerateZero
from harmonic_valence.extremal import (ExtremalSolution, are_conjugate, are_equivalent,
                                       config_from_polynomial, matching_residual,
                                       rotate_solution, search_classes, verify_solution)
from harmonic_valence.harmonic import Orientation, find_harmonic_zeros, refine_zero
from harmonic_valence.poly import ComplexPolynomial, derivative
from harmonic_valence.suite import load_golden, random_polynomial
from harmonic_valence.trees import (catalan, closed_form_E, closed_form_Q,
                                    count_classes, encode, enumerate_binary_trees, mirror,
                                    mirror_fixed_count, validate_tree)

SHARP3 = [0, 1.5, 0, -0.5]


@contextlib.contextmanager
def criterion(number, title, capsys):
    start = time.perf_counter()
    try:
        yield
    except BaseException as exc:
        with capsys.disabled():
            print(f"\n[acceptance {number}] FAIL {title}: {type(exc).__name__}: {exc}")
        raise
    with capsys.disabled():
        print(f"\n[acceptance {number}] PASS {title} ({time.perf_counter() - start:.2f}s)")


def run_json(argv, path, capsys):
    code = main(argv + ["--json", str(path)])
    capsys.readouterr()
    return code, json.loads(path.read_text())


def test_1_sharp_cubic(tmp_path, capsys):
    with criterion(1, "sharp cubic has 7 zeros", capsys):
        start = time.perf_counter()
        code, report = run_json(["zeros", *map(str, SHARP3)], tmp_path / "z.json", capsys)
        elapsed = time.perf_counter() - start
        res = report["results"]
        assert code == 0 and report["status"] == "success"
        assert res["total"] == 7 and res["winding"] == -3
        assert (res["count_preserving"], res["count_reversing"]) == (2, 5)
        p = ComplexPolynomial(SHARP3)
        dp = derivative(p)
        zs = [complex(z["location"]["re"], z["location"]["im"]) for z in res["zeros"]]
        preserving = sorted(complex(z["location"]["re"], z["location"]["im"]).real
                            for z in res["zeros"] if z["orientation"] == Orientation.SENSE_PRESERVING.value)
        assert np.allclose(preserving, [-1, 1], atol=1e-6)
        # stable under further refinement
        for z in zs:
            assert abs(refine_zero(p, dp, z, max_iter=50) - z) < 1e-8
        # the real fixed points of (3x - x^3)/2 are exactly -1, 0, 1
        real = sorted(z.real for z in zs if abs(z.imag) < 1e-12)
        assert np.allclose(real, [-1, 0, 1], atol=1e-12)
        assert elapsed < 1.0, f"runtime {elapsed:.2f}s"


def test_2_sharpness_up_to_eight(tmp_path, capsys):
    with criterion(2, "3n-2 zeros for every equivalence class, 2 <= n <= 8", capsys):
        start = time.perf_counter()
        for n in range(2, 9):
            code, report = run_json(["extremal", str(n)], tmp_path / f"e{n}.json", capsys)
            res = report["results"]
            assert code == 0, (n, report["diagnostics"])
            assert res["found_equivalence"] == res["expected_E"] == closed_form_E(n)
            covered = set()
            for sol in res["solutions"]:
                z = sol["zeros"]
                assert sol["verified"]
                assert (z["total"], z["count_preserving"], z["count_reversing"], z["winding"]) \
                    == (3 * n - 2, n - 1, 2 * n - 1, -n)
                # recount from the stored coefficients
                p = ComplexPolynomial([complex(c["re"], c["im"]) for c in sol["coefficients"]])
                crit = [complex(c["re"], c["im"]) for c in sol["critical_points"]]
                assert matching_residual(p, crit) < 1e-10
                assert find_harmonic_zeros(p).total == 3 * n - 2
                covered.add(sol["equivalence_label"])
            assert len(covered) == closed_form_E(n)
        elapsed = time.perf_counter() - start
        assert elapsed < 300, f"runtime {elapsed:.1f}s"


def test_3_class_counts(capsys):
    with criterion(3, "enumerated class counts equal closed forms, 2 <= n <= 12", capsys):
        start = time.perf_counter()
        for n in range(2, 13):
            cr = count_classes(n)
            assert cr.enumerated_conjugacy == cr.closed_form_Q == closed_form_Q(n), n
            assert cr.enumerated_equivalence == cr.closed_form_E == closed_form_E(n), n
            assert closed_form_E(n) == catalan((n - 1) // 2)
        assert (closed_form_E(5), closed_form_E(7), closed_form_Q(7), closed_form_Q(11)) == (2, 5, 6, 44)
        elapsed = time.perf_counter() - start
        assert elapsed < 30, f"runtime {elapsed:.1f}s"


def _solution(coeffs):
    p = ComplexPolynomial(coeffs)
    cfg = config_from_polynomial(p)
    return ExtremalSolution(p, cfg.critical_points, matching_residual(p, cfg.critical_points), cfg)


def test_4_solver_reaches_all_classes(capsys):
    with criterion(4, "tree seeds reach all E_n and Q_n classes, n <= 6", capsys):
        found = {}
        for n in range(2, 7):
            search = search_classes(n, seed_mode="trees")
            assert search.conjugacy_count == closed_form_Q(n), n
            assert search.equivalence_count == closed_form_E(n), n
            for sol in search.solutions:
                assert sol.residual_norm < 1e-10
                verify_solution(sol)
            found[n] = search.solutions
        a = _solution([0, 1.5, 0, -0.5])
        b = _solution([0, -1.5, 0, -0.5])
        assert not are_conjugate(a, b) and are_equivalent(a, b)
        assert np.allclose(rotate_solution(a, 1j).polynomial.coeffs, b.polynomial.coeffs)
        assert any(are_conjugate(a, s) for s in found[3])
        assert any(are_conjugate(b, s) for s in found[3])


def test_5_index_sum_property(capsys):
    with criterion(5, "index-sum identity on 500 random polynomials", capsys):
        start = time.perf_counter()
        rng = np.random.default_rng(20240611)
        checked = skipped = 0
        while checked < 500:
            p = random_polynomial(rng)
            n = p.degree
            assert 2 <= n <= 8 and np.all(np.abs(p.coeffs) <= 2)
            try:
                zs = find_harmonic_zeros(p)
            except DegenerateZero:
                skipped += 1
                continue
            assert zs.count_preserving - zs.count_reversing == zs.winding == -n
            assert n <= zs.total <= 3 * n - 2
            assert zs.total % 2 == n % 2
            checked += 1
        assert skipped < 50
        elapsed = time.perf_counter() - start
        assert elapsed < 600, f"runtime {elapsed:.1f}s"


def test_6_rotation_family(capsys):
    with criterion(6, "rotated golden solutions verify", capsys):
        rng = np.random.default_rng(6)
        golden = load_golden()
        assert len(golden) == sum(closed_form_Q(n) for n in range(2, 9))
        for sol, _ in golden:
            for omega in np.exp(2j * np.pi * rng.random(8)):
                rotated = verify_solution(rotate_solution(sol, omega))
                assert rotated.residual_norm < 1e-10
                assert rotated.zero_report.total == 3 * sol.degree - 2


def test_7_mirror_symmetric_trees(capsys):
    with criterion(7, "mirror-fixed binary trees counted by Catalan numbers", capsys):
        for k in range(0, 5):
            m = 2 * k + 1
            brute = sum(encode(mirror(t)) == encode(t) for t in enumerate_binary_trees(m))
            assert brute == mirror_fixed_count(m) == catalan(k)
        for m in range(2, 12, 2):
            assert sum(mirror(t) == t for t in enumerate_binary_trees(m)) == 0
            assert mirror_fixed_count(m) == 0


def test_8_figure_regeneration(tmp_path, capsys):
    with criterion(8, "tree figures for 2 <= n <= 8", capsys):
        out = tmp_path / "svg"
        code, _ = run_json(["trees", "8", "--svg-dir", str(out)], tmp_path / "t.json", capsys)
        assert code == 0
        counts = []
        for n in range(2, 9):
            svg = (out / f"trees-n{n}.svg").read_text()
            counts.append(len(set(re.findall(r'id="hubbard-tree-(\d+)"', svg))))
            trees = {t.label: t for t in count_classes(n).trees}
            rows = list(csv.DictReader(open(out / f"trees-n{n}.csv")))
            drawn = {r["tree"] for r in rows}
            assert drawn == set(trees) and len(drawn) == counts[-1]
            for label in drawn:
                assert validate_tree(trees[label]), label
                pos = {r["vertex"]: complex(float(r["x"]), float(r["y"]))
                       for r in rows if r["tree"] == label}
                pts = np.array(list(pos.values()))
                for z in pts:
                    assert np.min(np.abs(pts - z.conjugate())) < 1e-9, label
        assert counts == [1, 2, 1, 2, 2, 6, 5]


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-v"]))
