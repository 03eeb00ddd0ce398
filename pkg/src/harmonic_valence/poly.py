"""Dense complex polynomials in one variable.

Coefficients are stored in ascending order: ``coeffs[k]`` multiplies ``z**k``.
All operations return new objects; a polynomial is never mutated.
"""

from __future__ import annotations

from typing import Iterable, Sequence

import numpy as np

REAL_TOL = 1e-10


class ComplexPolynomial:
    """An immutable polynomial with complex coefficients."""

    __slots__ = ("_coeffs",)

    def __init__(self, coeffs: Iterable[complex]):
        c = np.array(list(coeffs) if not isinstance(coeffs, np.ndarray) else coeffs,
                     dtype=complex).ravel()
        if c.size == 0:
            c = np.zeros(1, dtype=complex)
        if not np.all(np.isfinite(c)):
            raise ValueError("polynomial coefficients must be finite")
        nz = np.flatnonzero(c)
        c = c[: nz[-1] + 1] if nz.size else c[:1]
        c = c.copy()
        c.flags.writeable = False
        self._coeffs = c

    @property
    def coeffs(self) -> np.ndarray:
        return self._coeffs

    @property
    def degree(self) -> int:
        return self._coeffs.size - 1

    @property
    def is_zero(self) -> bool:
        """True only for the zero polynomial (the one allowed zero leading coefficient)."""
        return self._coeffs.size == 1 and self._coeffs[0] == 0

    @property
    def leading(self) -> complex:
        return complex(self._coeffs[-1])

    def __call__(self, z):
        return evaluate(self, z)

    def __eq__(self, other):
        if not isinstance(other, ComplexPolynomial):
            return NotImplemented
        return np.array_equal(self._coeffs, other._coeffs)

    def __hash__(self):
        return hash(self._coeffs.tobytes())

    def __repr__(self):
        terms = ", ".join(f"{c:.6g}" for c in self._coeffs)
        return f"ComplexPolynomial([{terms}])"

    def __add__(self, other):
        other = _as_poly(other)
        n = max(self._coeffs.size, other._coeffs.size)
        out = np.zeros(n, dtype=complex)
        out[: self._coeffs.size] += self._coeffs
        out[: other._coeffs.size] += other._coeffs
        return ComplexPolynomial(out)

    __radd__ = __add__

    def __neg__(self):
        return ComplexPolynomial(-self._coeffs)

    def __sub__(self, other):
        return self + (-_as_poly(other))

    def __rsub__(self, other):
        return _as_poly(other) - self

    def __mul__(self, other):
        other = _as_poly(other)
        return ComplexPolynomial(np.convolve(self._coeffs, other._coeffs))

    __rmul__ = __mul__

    def allclose(self, other, atol: float = 1e-12) -> bool:
        other = _as_poly(other)
        n = max(self._coeffs.size, other._coeffs.size)
        a = np.zeros(n, dtype=complex)
        b = np.zeros(n, dtype=complex)
        a[: self._coeffs.size] = self._coeffs
        b[: other._coeffs.size] = other._coeffs
        return bool(np.all(np.abs(a - b) <= atol))


def _as_poly(x) -> ComplexPolynomial:
    if isinstance(x, ComplexPolynomial):
        return x
    return ComplexPolynomial([x])


IDENTITY = ComplexPolynomial([0, 1])


def evaluate(p: ComplexPolynomial, z):
    """Horner evaluation, highest degree first. Accepts scalars or arrays."""
    c = p.coeffs
    scalar = np.isscalar(z)
    z = np.asarray(z, dtype=complex)
    acc = np.full(z.shape, c[-1], dtype=complex)
    for a in c[-2::-1]:
        acc = acc * z + a
    return complex(acc) if scalar else acc


def evaluate_with_derivative(p: ComplexPolynomial, z):
    """Return ``(p(z), p'(z))`` in one Horner pass."""
    c = p.coeffs
    z = np.asarray(z, dtype=complex)
    val = np.full(z.shape, c[-1], dtype=complex)
    der = np.zeros(z.shape, dtype=complex)
    for a in c[-2::-1]:
        der = der * z + val
        val = val * z + a
    return val, der


def abs_evaluate(p: ComplexPolynomial, z):
    """``sum |a_k| |z|^k``, the scale of rounding error in :func:`evaluate`."""
    return np.polyval(np.abs(p.coeffs[::-1]), np.abs(np.asarray(z)))


def derivative(p: ComplexPolynomial) -> ComplexPolynomial:
    if p.degree == 0:
        return ComplexPolynomial([0])
    k = np.arange(1, p.degree + 1)
    return ComplexPolynomial(p.coeffs[1:] * k)


def antiderivative(p: ComplexPolynomial, constant: complex = 0) -> ComplexPolynomial:
    k = np.arange(1, p.coeffs.size + 1)
    return ComplexPolynomial(np.concatenate([[constant], p.coeffs / k]))


def conjugate_coefficients(p: ComplexPolynomial) -> ComplexPolynomial:
    """The polynomial ``p̄`` with ``p̄(conj z) = conj(p(z))``."""
    return ComplexPolynomial(np.conj(p.coeffs))


def compose(p: ComplexPolynomial, q: ComplexPolynomial) -> ComplexPolynomial:
    """``p ∘ q`` by Horner's scheme with a polynomial-valued accumulator."""
    c = p.coeffs
    qc = q.coeffs
    acc = np.array([c[-1]], dtype=complex)
    for a in c[-2::-1]:
        acc = np.convolve(acc, qc)
        acc[0] += a
    return ComplexPolynomial(acc)


def monic_from_roots(roots: Sequence[complex]) -> ComplexPolynomial:
    acc = np.ones(1, dtype=complex)
    for r in roots:
        acc = np.convolve(acc, [-r, 1.0])
    return ComplexPolynomial(acc)


def from_critical_points(critical_points: Sequence[complex], scale: float,
                         offset: float = 0.0) -> ComplexPolynomial:
    """``offset + scale * ∫_0^z prod(ζ - c_j) dζ`` in monomial form."""
    if scale == 0:
        raise ValueError("scale must be nonzero")
    integrand = monic_from_roots(critical_points)
    return antiderivative(ComplexPolynomial(scale * integrand.coeffs), offset)


def cauchy_root_bound(p: ComplexPolynomial) -> float:
    """``1 + max_k |a_k / a_n|``; every root lies strictly inside this radius."""
    if p.degree < 1:
        raise ValueError("root bound requires degree >= 1")
    c = np.abs(p.coeffs)
    return float(1.0 + np.max(c[:-1]) / c[-1])


def fujiwara_root_bound(p: ComplexPolynomial) -> float:
    """``2 max_k |a_{n-k} / a_n|^(1/k)``; tighter than the Cauchy bound."""
    if p.degree < 1:
        raise ValueError("root bound requires degree >= 1")
    c = np.abs(p.coeffs)
    n = p.degree
    ratios = c[:-1][::-1] / c[-1]
    k = np.arange(1, n + 1, dtype=float)
    ratios[-1] /= 2.0
    return float(2.0 * np.max(ratios ** (1.0 / k)))


def is_real_polynomial(p: ComplexPolynomial, tol: float = REAL_TOL) -> bool:
    scale = max(1.0, float(np.max(np.abs(p.coeffs))))
    return bool(np.all(np.abs(p.coeffs.imag) < tol * scale))


def real_part(p: ComplexPolynomial) -> ComplexPolynomial:
    return ComplexPolynomial(p.coeffs.real)
