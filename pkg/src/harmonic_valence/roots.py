"""Simultaneous root finding (Aberth-Ehrlich) with Newton polishing."""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .errors import NonConvergence
from .poly import (ComplexPolynomial, abs_evaluate, cauchy_root_bound,
                   derivative, fujiwara_root_bound, evaluate_with_derivative)

DEFAULT_TOL = 1e-12
DEFAULT_MAX_ITER = 200
INITIAL_ROTATION = 0.4
CRITICAL_DERIVATIVE = 1e-14


@dataclass(frozen=True)
class RootSet:
    roots: np.ndarray
    residuals: np.ndarray
    converged: np.ndarray

    def __len__(self):
        return self.roots.size

    @property
    def all_converged(self) -> bool:
        return bool(np.all(self.converged))


def initial_guesses(p: ComplexPolynomial, seed: int | None = None) -> np.ndarray:
    n = p.degree
    radius = (fujiwara_root_bound(p) or 1.0) / 2
    phase = INITIAL_ROTATION
    if seed is not None:
        phase += np.random.default_rng(seed).uniform(0, 2 * np.pi / n)
    return radius * np.exp(1j * (2 * np.pi * np.arange(n) / n + phase))


def aberth(evaluator, z0: np.ndarray, bound: float, tol: float = DEFAULT_TOL,
           max_iter: int = DEFAULT_MAX_ITER):
    """Aberth-Ehrlich sweeps on a polynomial given only through ``evaluator``.

    ``evaluator(z)`` returns ``(value, derivative, error_scale)`` arrays, where
    ``error_scale`` bounds the rounding error of ``value`` up to a factor of
    the unit roundoff. A root is converged when ``|value| <= tol * error_scale``.
    Steps are clamped to ``bound``. Returns ``(roots, residuals, converged)``.
    """
    z = np.array(z0, dtype=complex)
    n = z.size
    done = np.zeros(n, dtype=bool)
    for _ in range(max_iter):
        val, der, scale = evaluator(z)
        done |= np.abs(val) <= tol * scale
        if done.all():
            break
        diff = z[:, None] - z[None, :]
        np.fill_diagonal(diff, np.inf)
        with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
            repulsion = np.sum(1.0 / diff, axis=1)
            ratio = val / der
            step = ratio / (1.0 - ratio * repulsion)
        bad = ~np.isfinite(step)
        if bad.any():
            # derivative vanished or guesses coincided: nudge off the stall
            step[bad] = 1e-3 * bound * np.exp(1j * np.arange(n)[bad])
        big = np.abs(step) > bound
        step[big] *= bound / np.abs(step[big])
        z = np.where(done, z, z - step)
    val, _, scale = evaluator(z)
    residuals = np.abs(val)
    return z, residuals, residuals <= tol * scale


def find_all_roots(p: ComplexPolynomial, tol: float = DEFAULT_TOL,
                   max_iter: int = DEFAULT_MAX_ITER,
                   seed: int | None = None,
                   initial: np.ndarray | None = None) -> RootSet:
    """All ``deg p`` roots of ``p`` by the Aberth-Ehrlich iteration.

    A root counts as converged once its backward error
    ``|p(r)| / sum_k |a_k| |r|^k`` drops below ``tol``. Multiple roots come
    back as clusters; nothing is deflated.

    Raises NonConvergence (with the partial RootSet attached) if some root
    is still unconverged after ``max_iter`` sweeps.
    """
    if p.degree < 1:
        raise ValueError("root finding requires degree >= 1")
    if tol <= 0:
        raise ValueError("tol must be positive")
    if p.degree == 1:
        z0 = np.array([-p.coeffs[0] / p.coeffs[1]])
    elif initial is not None:
        z0 = np.array(initial, dtype=complex)
    else:
        z0 = initial_guesses(p, seed)

    def horner(z):
        val, der = evaluate_with_derivative(p, z)
        return val, der, abs_evaluate(p, z)

    roots, residuals, converged = aberth(horner, z0, cauchy_root_bound(p), tol, max_iter)
    result = RootSet(roots, residuals, converged)
    if not converged.all():
        failed = np.flatnonzero(~converged).tolist()
        raise NonConvergence(f"roots {failed} did not converge in {max_iter} iterations",
                             failed=failed, partial=result)
    return result


class PolishedRoot(NamedTuple):
    root: complex
    stalled: bool
    iterations: int


def polish_root(p: ComplexPolynomial, z0: complex, tol: float = DEFAULT_TOL,
                max_iter: int = 50) -> PolishedRoot:
    """Newton iteration from ``z0`` until the step is below ``tol``.

    ``stalled`` is set when the derivative underflows (< 1e-14) at an iterate,
    or when the final iterate sits on a numerically multiple root, where
    Newton only converges linearly.
    """
    z = complex(z0)
    it = 0
    for it in range(1, max_iter + 1):
        val, der = evaluate_with_derivative(p, z)
        val, der = complex(val), complex(der)
        if abs(der) < CRITICAL_DERIVATIVE:
            return PolishedRoot(z, True, it)
        step = val / der
        z -= step
        if abs(step) < tol:
            break
    der = complex(evaluate_with_derivative(p, z)[1])
    dp = derivative(p)
    dscale = float(np.max(np.abs(dp.coeffs))) * max(1.0, abs(z)) ** max(dp.degree, 0)
    stalled = abs(der) < CRITICAL_DERIVATIVE or abs(der) <= np.sqrt(tol) * dscale
    return PolishedRoot(z, bool(stalled), it)


def polish_with(func, z0: complex, tol: float = DEFAULT_TOL, max_iter: int = 50) -> complex:
    """Newton polishing against an arbitrary ``func(z) -> (value, derivative)``."""
    z = complex(z0)
    best, best_val = z, abs(func(z)[0])
    for _ in range(max_iter):
        val, der = func(z)
        if der == 0 or not np.isfinite(der):
            break
        step = val / der
        z = z - step
        v = abs(func(z)[0])
        if v < best_val:
            best, best_val = z, v
        if abs(step) < tol * max(1.0, abs(z)):
            break
    return best
