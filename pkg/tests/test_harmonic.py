import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from harmonic_valence.errors import CertificateMismatch, DegenerateZero, NotAZero
from harmonic_valence.harmonic import (Orientation, classify_zero, find_harmonic_zeros,
                                       harmonic_residual, second_iterate, winding_certificate)
from harmonic_valence.poly import IDENTITY, ComplexPolynomial, compose
from harmonic_valence.suite import random_polynomial

P = ComplexPolynomial
Z2 = P([0, 0, 1])
Z3 = P([0, 0, 0, 1])
SHARP3 = P([0, 1.5, 0, -0.5])


def _same_set(a, b, tol=1e-8):
    a, b = list(a), list(b)
    if len(a) != len(b):
        return False
    for z in a:
        k = int(np.argmin([abs(z - w) for w in b]))
        if abs(z - b[k]) > tol:
            return False
        b.pop(k)
    return True


def grid_zeros(p, half=3.0, steps=600):
    """Independent oracle: sign changes of Re h and Im h on a grid, then FD Newton."""
    xs = np.linspace(-half, half, steps + 1)
    X, Y = np.meshgrid(xs, xs)
    Zg = X + 1j * Y
    H = Zg - np.conj(p(Zg))
    out = []
    for i in range(steps):
        for j in range(steps):
            cell = H[i:i + 2, j:j + 2]
            if np.ptp(np.sign(cell.real)) == 0 or np.ptp(np.sign(cell.imag)) == 0:
                continue
            z = Zg[i, j] + (xs[1] - xs[0]) * (0.5 + 0.5j)
            for _ in range(60):
                h = z - np.conj(p(z))
                e = 1e-7
                hx = (z + e - np.conj(p(z + e)) - h) / e
                hy = (z + 1j * e - np.conj(p(z + 1j * e)) - h) / e
                J = np.array([[hx.real, hy.real], [hx.imag, hy.imag]])
                try:
                    d = np.linalg.solve(J, [-h.real, -h.imag])
                except np.linalg.LinAlgError:
                    break
                z = z + d[0] + 1j * d[1]
                if abs(d[0]) + abs(d[1]) < 1e-15:
                    break
            if abs(z - np.conj(p(z))) < 1e-10 and all(abs(z - w) > 1e-6 for w in out):
                out.append(z)
    return out


class TestSecondIterate:
    def test_examples(self):
        assert second_iterate(Z2) == P([0, 0, 0, 0, 1])
        p = P([1j, 0, 1])
        expected = compose(P([-1j, 0, 1]), p)
        assert second_iterate(p).allclose(expected)
        real = P([0.3, -1, 2])
        assert second_iterate(real).allclose(compose(real, real))

    def test_rejects_low_degree(self):
        with pytest.raises(ValueError):
            second_iterate(P([1, 2]))

    @given(st.integers(0, 2 ** 32 - 1))
    def test_is_double_map(self, seed):
        rng = np.random.default_rng(seed)
        p = random_polynomial(rng)
        z = complex(rng.normal(), rng.normal()) * 0.7
        fz = np.conj(p(z))
        ffz = np.conj(p(fz))
        assert abs(second_iterate(p)(z) - ffz) < 1e-9 * (1 + abs(ffz)) * 10 ** p.degree


class TestClassify:
    def test_examples(self):
        z = classify_zero(Z2, 0)
        assert z.orientation == Orientation.SENSE_PRESERVING and z.index == 1
        z = classify_zero(Z2, 1)
        assert z.orientation == Orientation.SENSE_REVERSING and z.index == -1
        z = classify_zero(Z3, 1j)
        assert z.index == -1 and np.isclose(z.derivative_modulus, 3)

    def test_not_a_zero(self):
        with pytest.raises(NotAZero):
            classify_zero(Z2, 0.5)

    def test_degenerate(self):
        p = P([0.25, 0.5, 0.25])  # (1+z)^2/4: fixed point z = 1, p'(1) = 1
        z = classify_zero(p, 1.0)
        assert z.orientation == Orientation.DEGENERATE and z.index is None


class TestFindZeros:
    def test_z_squared(self):
        zs = find_harmonic_zeros(Z2)
        w = np.exp(2j * np.pi / 3)
        assert _same_set(zs.locations, [0, 1, w, w.conjugate()])
        assert (zs.count_preserving, zs.count_reversing, zs.winding) == (1, 3, -2)
        assert zs.of(Orientation.SENSE_PRESERVING)[0].location == pytest.approx(0, abs=1e-12)

    def test_z_cubed(self):
        zs = find_harmonic_zeros(Z3)
        assert _same_set(zs.locations, [0, 1, 1j, -1, -1j])
        assert (zs.count_preserving, zs.count_reversing, zs.winding) == (1, 4, -3)

    def test_sharp_cubic_against_grid_oracle(self):
        zs = find_harmonic_zeros(SHARP3)
        assert zs.total == 7
        assert _same_set(zs.locations, grid_zeros(SHARP3), 1e-8)
        pres = sorted(z.location.real for z in zs.of(Orientation.SENSE_PRESERVING))
        assert np.allclose(pres, [-1, 1], atol=1e-6)
        assert (zs.count_preserving, zs.count_reversing, zs.winding) == (2, 5, -3)

    def test_degenerate_raises(self):
        with pytest.raises(DegenerateZero) as info:
            find_harmonic_zeros(P([0.25, 0.5, 0.25]))
        assert info.value.zero_set is not None

    def test_certificate_mismatch_is_reported(self, monkeypatch):
        import harmonic_valence.harmonic as hm
        real = hm._locate
        monkeypatch.setattr(hm, "_locate", lambda p, s: real(p, s)[1:])
        with pytest.raises(CertificateMismatch) as info:
            find_harmonic_zeros(Z3)
        assert info.value.zero_set.total == 4

    def test_rejects_linear(self):
        with pytest.raises(ValueError):
            find_harmonic_zeros(P([0, 2]))

    @settings(max_examples=150, deadline=None)
    @given(st.integers(0, 2 ** 32 - 1))
    def test_invariants_random(self, seed):
        p = random_polynomial(np.random.default_rng(seed))
        n = p.degree
        try:
            zs = find_harmonic_zeros(p)
        except DegenerateZero:
            return
        assert zs.index_sum == zs.winding == -n
        assert n <= zs.total <= 3 * n - 2
        assert (zs.total - n) % 2 == 0
        q = second_iterate(p) - IDENTITY
        for z in zs.zeros:
            assert z.residual < 1e-9 * (1 + abs(z.location)) ** n
            assert abs(q(z.location)) < 1e-8 * max(1.0, float(np.sum(np.abs(q.coeffs)))) \
                * (1 + abs(z.location)) ** (n * n)

    @settings(max_examples=40, deadline=None)
    @given(st.integers(0, 2 ** 32 - 1))
    def test_conjugation_equivariance(self, seed):
        rng = np.random.default_rng(seed)
        p = P(random_polynomial(rng).coeffs.real)
        try:
            zs = find_harmonic_zeros(p)
        except DegenerateZero:
            return
        assert _same_set(zs.locations, np.conj(zs.locations), 1e-8)


class TestWinding:
    def test_examples(self):
        assert winding_certificate(Z2) == -2
        assert winding_certificate(Z3) == -3
        assert winding_certificate(SHARP3) == -3

    def test_explicit_radius(self):
        assert winding_certificate(Z2, radius=10.0) == -2
        # inside the unit circle only the zero at the origin is enclosed
        assert winding_certificate(Z2, radius=0.5) == 1


def test_residual_helper():
    assert harmonic_residual(Z2, 1.0) == 0
    assert harmonic_residual(Z2, 2.0) == pytest.approx(2.0)
