"""Zeros of ``h(z) = z - conj(p(z))``.

The zeros of ``h`` are the fixed points of the anti-holomorphic map
``F(z) = conj(p(z))``. Every such point is also fixed by ``F∘F``, which is the
holomorphic polynomial ``p̄∘p``, so candidates come from the roots of
``p̄∘p(z) - z``; period-two points are filtered out and the survivors are
refined by a real two-dimensional Newton iteration on ``h``.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field

import numpy as np

from .errors import CertificateMismatch, DegenerateZero, NonConvergence, NotAZero
from .poly import (IDENTITY, ComplexPolynomial, abs_evaluate, cauchy_root_bound, compose,
                   conjugate_coefficients, derivative, evaluate,
                   evaluate_with_derivative)
from .roots import aberth, initial_guesses, polish_with

FILTER_TOL = 1e-6
ACCEPT_TOL = 1e-9
DEDUP_FACTOR = 1e-6
TOL_DEG = 1e-8
MAX_WINDING_SAMPLES = 2 ** 20


class Orientation(str, enum.Enum):
    SENSE_PRESERVING = "sense_preserving"
    SENSE_REVERSING = "sense_reversing"
    DEGENERATE = "degenerate"


@dataclass(frozen=True)
class HarmonicZero:
    location: complex
    orientation: Orientation
    index: int | None
    derivative_modulus: float
    residual: float


@dataclass(frozen=True)
class ZeroSet:
    zeros: tuple[HarmonicZero, ...]
    winding: int
    count_preserving: int
    count_reversing: int
    degree: int = 0
    diagnostics: tuple[str, ...] = field(default=())

    @property
    def total(self) -> int:
        return len(self.zeros)

    @property
    def index_sum(self) -> int:
        return self.count_preserving - self.count_reversing

    @property
    def locations(self) -> np.ndarray:
        return np.array([z.location for z in self.zeros], dtype=complex)

    def of(self, orientation: Orientation) -> list[HarmonicZero]:
        return [z for z in self.zeros if z.orientation == orientation]


def _require_degree(p: ComplexPolynomial):
    if p.degree < 2:
        raise ValueError(f"degree must be at least 2, got {p.degree}")


def second_iterate(p: ComplexPolynomial) -> ComplexPolynomial:
    """``p̄∘p``, the holomorphic polynomial equal to ``F(F(z))``."""
    _require_degree(p)
    return compose(conjugate_coefficients(p), p)


def harmonic_residual(p: ComplexPolynomial, z) -> np.ndarray:
    return np.abs(z - np.conj(evaluate(p, z)))


def acceptance_threshold(z: complex, n: int) -> float:
    return ACCEPT_TOL * (1.0 + abs(z)) ** n


def classify_zero(p: ComplexPolynomial, z: complex, tol_deg: float = TOL_DEG) -> HarmonicZero:
    z = complex(z)
    res = float(harmonic_residual(p, z))
    if not res < acceptance_threshold(z, p.degree):
        raise NotAZero(f"|z - conj(p(z))| = {res:.3e} at z = {z}")
    dmod = abs(complex(evaluate(derivative(p), z)))
    if dmod < 1.0 - tol_deg:
        orient, index = Orientation.SENSE_PRESERVING, 1
    elif dmod > 1.0 + tol_deg:
        orient, index = Orientation.SENSE_REVERSING, -1
    else:
        orient, index = Orientation.DEGENERATE, None
    return HarmonicZero(z, orient, index, dmod, res)


def refine_zero(p: ComplexPolynomial, dp: ComplexPolynomial, z0: complex,
                max_iter: int = 30) -> complex:
    """Real Newton on ``(Re h, Im h)``.

    With ``a = p'(z)`` the linearisation ``δ - conj(a δ) = -h`` has the closed
    form solution ``δ = -(h + conj(a) conj(h)) / (1 - |a|²)``; ``1 - |a|²`` is
    the Jacobian determinant.
    """
    z = complex(z0)
    best, best_res = z, abs(z - np.conj(evaluate(p, z)))
    for _ in range(max_iter):
        h = z - np.conj(evaluate(p, z))
        a = complex(evaluate(dp, z))
        det = 1.0 - abs(a) ** 2
        if det == 0:
            break
        step = -(h + np.conj(a) * np.conj(h)) / det
        z = z + step
        r = abs(z - np.conj(evaluate(p, z)))
        if r < best_res:
            best, best_res = z, r
        if abs(step) <= 4e-16 * max(1.0, abs(z)):
            break
    return complex(best)


def _composite_candidates(p: ComplexPolynomial, seed: int | None) -> np.ndarray:
    """Roots of ``p̄∘p(z) - z``.

    The expanded composite only supplies root bounds and starting points; the
    iteration itself evaluates ``p̄(p(z)) - z`` by nested Horner, which keeps
    accuracy where the expanded coefficients lose it.
    """
    pbar = conjugate_coefficients(p)
    q = second_iterate(p) - IDENTITY

    def composite(z):
        w, dw = evaluate_with_derivative(p, z)
        v, dv = evaluate_with_derivative(pbar, w)
        err = abs_evaluate(pbar, w) + np.abs(dv) * abs_evaluate(p, z) + np.abs(z)
        return v - z, dv * dw - 1.0, err

    roots, _, converged = aberth(composite, initial_guesses(q, seed), cauchy_root_bound(q))
    # unconverged stragglers get a Newton polish; a genuine miss still shows up
    # in the certificate check
    out = roots.copy()
    for k in np.flatnonzero(~converged):
        out[k] = polish_with(lambda z: tuple(complex(x) for x in composite(z)[:2]), roots[k])
    return out


def _locate(p: ComplexPolynomial, seed: int | None):
    n = p.degree
    dp = derivative(p)
    candidates = _composite_candidates(p, seed)
    found: list[complex] = []
    for c in candidates:
        if not np.isfinite(c):
            continue
        if harmonic_residual(p, c) >= FILTER_TOL * (1.0 + abs(c)) ** n:
            continue
        z = refine_zero(p, dp, c)
        if harmonic_residual(p, z) < acceptance_threshold(z, n):
            found.append(z)
    if not found:
        return []
    radius = DEDUP_FACTOR * (1.0 + max(abs(z) for z in found))
    unique: list[complex] = []
    for z in sorted(found, key=lambda w: (w.real, w.imag)):
        if all(abs(z - u) > radius for u in unique):
            unique.append(z)
    return unique


def find_harmonic_zeros(p: ComplexPolynomial, tol_deg: float = TOL_DEG,
                        seed: int | None = None, retries: int = 2) -> ZeroSet:
    """Locate, classify and certify every zero of ``z - conj(p(z))``.

    Raises DegenerateZero if a zero has ``|p'|`` within ``tol_deg`` of 1 and
    CertificateMismatch if the index sum disagrees with the winding number of
    ``h`` around a circle enclosing all zeros.
    """
    _require_degree(p)
    winding = winding_certificate(p)
    attempt_seeds = [seed] + [(0 if seed is None else seed) + 1000 + k for k in range(retries)]
    last = None
    for s in attempt_seeds:
        zeros = tuple(classify_zero(p, z, tol_deg) for z in _locate(p, s))
        zeros = tuple(sorted(zeros, key=lambda hz: (hz.location.real, hz.location.imag)))
        npres = sum(z.orientation == Orientation.SENSE_PRESERVING for z in zeros)
        nrev = sum(z.orientation == Orientation.SENSE_REVERSING for z in zeros)
        zs = ZeroSet(zeros, winding, npres, nrev, p.degree)
        if any(z.orientation == Orientation.DEGENERATE for z in zeros):
            raise DegenerateZero("a zero has |p'| = 1 within tolerance", zs)
        if npres - nrev == winding:
            return zs
        last = zs
    raise CertificateMismatch(
        f"index sum {last.index_sum} != winding {winding} ({last.total} zeros)", last)


def winding_certificate(p: ComplexPolynomial, radius: float | None = None,
                        start_samples: int | None = None) -> int:
    """Winding number of ``h(z) = z - conj(p(z))`` around ``|z| = R``.

    ``R`` defaults to ``1 + cauchy_root_bound(p̄∘p - z)``, which encloses every
    zero. The sample count doubles until two resolutions agree and every
    argument increment is below π/2.
    """
    _require_degree(p)
    if radius is None:
        radius = 1.0 + cauchy_root_bound(second_iterate(p) - IDENTITY)
    samples = start_samples or max(64, 16 * p.degree)
    previous = None
    while samples <= MAX_WINDING_SAMPLES:
        theta = 2 * np.pi * np.arange(samples + 1) / samples
        z = radius * np.exp(1j * theta)
        h = z - np.conj(evaluate(p, z))
        steps = np.angle(h[1:] / h[:-1])
        w = int(round(float(np.sum(steps)) / (2 * np.pi)))
        if np.max(np.abs(steps)) < math.pi / 2 and previous == w:
            return w
        previous = w
        samples *= 2
    raise NonConvergence(f"winding sampling exceeded {MAX_WINDING_SAMPLES} points on |z| = {radius}")
