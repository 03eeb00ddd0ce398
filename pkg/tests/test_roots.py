import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from harmonic_valence.errors import NonConvergence
from harmonic_valence.poly import ComplexPolynomial, cauchy_root_bound, monic_from_roots
from harmonic_valence.roots import find_all_roots, initial_guesses, polish_root

P = ComplexPolynomial


def _matched(found, expected, tol):
    left = list(found)
    for z in expected:
        k = int(np.argmin([abs(z - w) for w in left]))
        if abs(z - left[k]) > tol:
            return False
        left.pop(k)
    return True


class TestFindAllRoots:
    def test_quadratic(self):
        rs = find_all_roots(P([-1, 0, 1]))
        assert rs.all_converged and len(rs) == 2
        assert _matched(rs.roots, [1, -1], 1e-12)

    def test_cube_roots(self):
        w = np.exp(2j * np.pi / 3)
        rs = find_all_roots(P([-8, 0, 0, 1]))
        assert _matched(rs.roots, [2, 2 * w, 2 * w * w], 1e-12)

    def test_double_root_cluster(self):
        rs = find_all_roots(P([1, -2, 1]), max_iter=500)
        assert np.all(np.abs(rs.roots - 1) < 1e-5)

    def test_linear(self):
        rs = find_all_roots(P([2, 4]))
        assert np.allclose(rs.roots, [-0.5])

    def test_residuals_recorded(self):
        rs = find_all_roots(P([-1, 0, 0, 0, 1]))
        assert rs.residuals.shape == (4,)
        assert np.all(rs.residuals < 1e-12 * 5)

    def test_preconditions(self):
        with pytest.raises(ValueError):
            find_all_roots(P([1]))
        with pytest.raises(ValueError):
            find_all_roots(P([1, 1]), tol=0)

    def test_nonconvergence_reports_indices(self):
        p = monic_from_roots(np.exp(2j * np.pi * np.arange(12) / 12) * 3)
        with pytest.raises(NonConvergence) as info:
            find_all_roots(p, max_iter=1)
        assert info.value.failed
        assert len(info.value.partial) == 12

    @settings(max_examples=60, deadline=None)
    @given(st.integers(1, 10), st.integers(0, 2 ** 32 - 1))
    def test_reconstruction(self, n, seed):
        rng = np.random.default_rng(seed)
        c = 2 * np.sqrt(rng.random(n)) * np.exp(2j * np.pi * rng.random(n))
        p = P(np.concatenate([c, [1]]))
        rs = find_all_roots(p)
        assert np.max(np.abs(rs.roots)) < cauchy_root_bound(p)
        assert monic_from_roots(rs.roots).allclose(p, 1e-6)

    @settings(max_examples=30, deadline=None)
    @given(st.integers(2, 8), st.integers(0, 2 ** 32 - 1))
    def test_permutation_invariance(self, n, seed):
        rng = np.random.default_rng(seed)
        p = P(np.concatenate([rng.normal(size=n) + 1j * rng.normal(size=n), [1]]))
        z0 = initial_guesses(p)
        a = find_all_roots(p, initial=z0).roots
        b = find_all_roots(p, initial=rng.permutation(z0)).roots
        assert _matched(a, b, 1e-8)

    def test_seeded_guesses_differ(self):
        p = P([-1, 0, 0, 1])
        assert not np.allclose(initial_guesses(p), initial_guesses(p, seed=3))
        assert np.allclose(initial_guesses(p, seed=3), initial_guesses(p, seed=3))


class TestPolish:
    def test_converges(self):
        r = polish_root(P([-1, 0, 1]), 1.1)
        assert abs(r.root - 1) < 1e-12 and not r.stalled

    def test_basin(self):
        r = polish_root(P([-1, 0, 1]), 0.9 + 0.9j)
        assert abs(r.root - 1) < 1e-12 and not r.stalled

    def test_flags_critical_root(self):
        assert polish_root(P([0, 0, 1]), 0.5).stalled

    def test_flags_zero_derivative_start(self):
        r = polish_root(P([-1, 0, 1]), 0.0)
        assert r.stalled and r.root == 0
