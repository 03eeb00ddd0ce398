"""Real polynomials whose critical points are all mapped to their conjugates.

A real polynomial of degree ``n`` with critical points ``c_j`` is written as

    p(z) = a + λ ∫_0^z ∏_j (ζ - c_j) dζ,

so ``p'(c_j) = 0`` holds by construction and only ``p(c_j) = conj(c_j)``
remains to be solved. Non-real critical points come in conjugate pairs and are
parametrised by the member in the upper half plane; real ones by a real
number. The two remaining degrees of freedom (real affine conjugation) are
pinned by normalisation equations so the Newton system is square.
"""

from __future__ import annotations

import dataclasses
import itertools
import logging
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from .errors import (CollapsedCriticalPoints, InvalidConfiguration, LeftHalfplane,
                     NonConvergence, NotUnitModulus, RotatedConfigInvalid,
                     VerificationFailed, HarmonicValenceError)
from .harmonic import Orientation, ZeroSet, find_harmonic_zeros
from .poly import (ComplexPolynomial, abs_evaluate, antiderivative, derivative, evaluate,
                   from_critical_points, is_real_polynomial, monic_from_roots)
from .roots import find_all_roots
from .trees import HubbardTree, embed_tree, validate_tree

log = logging.getLogger(__name__)

RESIDUAL_TOL = 1e-10
MIN_SEPARATION = 1e-6
CONJUGACY_TOL = 1e-7
REAL_AXIS_TOL = 1e-9
CRITICAL_TOL = 1e-8
MAX_REFLECTIONS = 3


@dataclass(frozen=True)
class CriticalConfiguration:
    upper_points: tuple[complex, ...]
    real_points: tuple[float, ...] = ()
    scale: float = -1.0
    offset: float = 0.0

    def __post_init__(self):
        up = tuple(complex(c) for c in self.upper_points)
        re = tuple(float(np.real(t)) for t in self.real_points)
        object.__setattr__(self, "upper_points", up)
        object.__setattr__(self, "real_points", re)
        if not all(np.isfinite(c) for c in up + re) or not np.isfinite(self.scale) \
                or not np.isfinite(self.offset):
            raise InvalidConfiguration("non-finite configuration")
        if any(c.imag <= 0 for c in up):
            raise InvalidConfiguration("upper points must have positive imaginary part")
        if len(re) > 2:
            raise InvalidConfiguration("at most two real critical points")
        if self.degree < 2:
            raise InvalidConfiguration("degree must be at least 2")
        if self.degree % 2 == 0 and len(re) != 1:
            raise InvalidConfiguration("even degree needs exactly one real critical point")
        if self.scale == 0:
            raise InvalidConfiguration("scale must be nonzero")
        pts = self.critical_points
        if len(set(pts.tolist())) != len(pts):
            raise InvalidConfiguration("critical points must be pairwise distinct")

    @property
    def degree(self) -> int:
        return 2 * len(self.upper_points) + len(self.real_points) + 1

    @property
    def critical_points(self) -> np.ndarray:
        up = np.array(self.upper_points, dtype=complex)
        return np.concatenate([up, up.conj(), np.array(self.real_points, dtype=complex)])

    @property
    def polynomial(self) -> ComplexPolynomial:
        return ComplexPolynomial(from_critical_points(self.critical_points, self.scale,
                                                      self.offset).coeffs.real)


@dataclass(frozen=True)
class ExtremalSolution:
    polynomial: ComplexPolynomial
    critical_points: tuple[complex, ...]
    residual_norm: float
    config: CriticalConfiguration | None = None
    zero_report: ZeroSet | None = None
    label: str | None = None

    @property
    def degree(self) -> int:
        return self.polynomial.degree

    @property
    def min_separation(self) -> float:
        c = np.array(self.critical_points)
        if c.size < 2:
            return float("inf")
        d = np.abs(c[:, None] - c[None, :])
        np.fill_diagonal(d, np.inf)
        return float(d.min())

    def violations(self) -> list[str]:
        bad = []
        if not self.residual_norm < RESIDUAL_TOL:
            bad.append(f"residual {self.residual_norm:.3e} >= {RESIDUAL_TOL}")
        if not self.min_separation > MIN_SEPARATION:
            bad.append(f"critical points {self.min_separation:.3e} apart")
        if self.config is not None and not is_real_polynomial(self.polynomial):
            bad.append("polynomial is not real")
        c = np.array(self.critical_points, dtype=complex)
        dp = derivative(self.polynomial)
        if c.size != dp.degree:
            bad.append(f"{c.size} critical points for degree {self.degree}")
        elif c.size:
            scale = abs_evaluate(dp, c)
            backward = np.abs(evaluate(dp, c)) / np.where(scale > 0, scale, 1.0)
            if np.max(backward) > CRITICAL_TOL:
                bad.append(f"p' does not vanish at the critical points ({np.max(backward):.2e})")
        return bad


def matching_residual(p: ComplexPolynomial, critical_points) -> float:
    c = np.asarray(critical_points, dtype=complex)
    return float(np.max(np.abs(evaluate(p, c) - c.conj()))) if c.size else 0.0


def solution_from_config(config: CriticalConfiguration, **kw) -> ExtremalSolution:
    p = config.polynomial
    crit = config.critical_points
    return ExtremalSolution(p, tuple(crit.tolist()), matching_residual(p, crit), config, **kw)


def config_from_polynomial(p: ComplexPolynomial, critical_points=None) -> CriticalConfiguration:
    """Recover the configuration of a real polynomial (critical points by root finding if absent)."""
    if not is_real_polynomial(p):
        raise InvalidConfiguration("polynomial is not real")
    if critical_points is None:
        critical_points = find_all_roots(derivative(p)).roots
    c = np.asarray(critical_points, dtype=complex)
    upper = sorted((z for z in c if z.imag > REAL_AXIS_TOL), key=lambda z: (z.real, z.imag))
    lower = [z for z in c if z.imag < -REAL_AXIS_TOL]
    real = sorted(z.real for z in c if abs(z.imag) <= REAL_AXIS_TOL)
    if len(upper) != len(lower):
        raise InvalidConfiguration("critical points are not conjugation symmetric")
    n = p.degree
    scale = float((n * p.coeffs[-1]).real)
    return CriticalConfiguration(tuple(upper), tuple(real), scale, float(p.coeffs[0].real))


# ---------------------------------------------------------------------------
# seeds


def seed_from_paper_g(n: int, epsilon: float = 0.1) -> CriticalConfiguration:
    """Starting configuration ``c_{2k-1} = ik``, ``c_{2k} = i(k + ε)``.

    Odd ``n``: scale -1; even ``n``: an extra real critical point at 1 and
    scale +1. This is a topological model, not a solution.
    """
    if n < 2:
        raise ValueError("degree must be at least 2")
    if not 0 < epsilon < 0.5:
        raise ValueError("epsilon must lie in (0, 1/2)")
    m = (n - 1) // 2
    upper = [1j * (k // 2 + 1) + (1j * epsilon if k % 2 else 0) for k in range(m)]
    if n % 2:
        return CriticalConfiguration(tuple(upper), (), -1.0, 0.0)
    return CriticalConfiguration(tuple(upper), (1.0,), 1.0, 0.0)


def seed_from_tree(tree: HubbardTree) -> CriticalConfiguration:
    """One critical point per vertex of the tree's embedding, scaled into the unit disk."""
    check = validate_tree(tree)
    if not check:
        from .errors import InvalidTree
        raise InvalidTree("; ".join(check.violations))
    pos = dict(embed_tree(tree))
    radius = max(abs(z) for z in pos.values())
    if radius > 0:
        pos = {k: z / radius for k, z in pos.items()}
    upper = sorted((z for k, z in pos.items() if k.startswith("u")), key=lambda z: (z.real, z.imag))
    real = sorted(pos[k].real for k in pos if k.startswith("r"))
    return CriticalConfiguration(tuple(upper), tuple(real), -1.0, 0.0)


# ---------------------------------------------------------------------------
# residual and Newton system


def _unpack(x: np.ndarray, m: int, r: int):
    upper = x[0:2 * m:2] + 1j * x[1:2 * m:2]
    return upper, x[2 * m:2 * m + r], x[-2], x[-1]


def _pack(config: CriticalConfiguration) -> np.ndarray:
    up = np.array(config.upper_points, dtype=complex)
    xy = np.column_stack([up.real, up.imag]).ravel() if up.size else np.zeros(0)
    return np.concatenate([xy, np.array(config.real_points, dtype=float),
                           [config.scale, config.offset]])


def _roots_of(upper, real):
    return np.concatenate([upper, upper.conj(), np.asarray(real, dtype=complex)])


def residual(config: CriticalConfiguration) -> np.ndarray:
    """``p(c_j) - conj(c_j)`` as real numbers: two per upper point, one per real point."""
    p = config.polynomial
    up = np.array(config.upper_points, dtype=complex)
    re = np.array(config.real_points, dtype=float)
    rv = evaluate(p, up) - up.conj() if up.size else np.zeros(0, dtype=complex)
    out = np.column_stack([rv.real, rv.imag]).ravel() if up.size else np.zeros(0)
    if re.size:
        out = np.concatenate([out, (evaluate(p, re.astype(complex)) - re).real])
    return out


def newton_system(x: np.ndarray, m: int, r: int, jacobian: bool = True):
    """Residual vector (matching equations, then two normalisation rows) and Jacobian.

    Writing ``G(w) = ∫_0^w ∏(ζ - c_k) dζ`` and ``H_k(w)`` for the same integral
    with the factor ``(ζ - c_k)`` removed, ``∂G(w)/∂c_k = -H_k(w)``; the
    endpoint derivative vanishes because every ``w`` used is a critical point.
    """
    n = 2 * m + r + 1
    upper, real, lam, a = _unpack(x, m, r)
    roots = _roots_of(upper, real)
    w = np.concatenate([upper, real.astype(complex)])
    g = antiderivative(monic_from_roots(roots))
    gw = evaluate(g, w)
    main = a + lam * gw - w.conj()

    def split(v):
        head = np.column_stack([v[:m].real, v[:m].imag]).ravel() if m else np.zeros(0)
        return np.concatenate([head, v[m:].real])

    npts = n - 1
    if n == 2:
        norm = np.array([real[0], lam - 2.0])
    else:
        norm = np.array([np.sum(roots.real) / npts, np.sum(np.abs(roots) ** 2) / npts - 1.0])
    fvec = np.concatenate([split(main), norm])
    if not jacobian:
        return fvec

    nvar = x.size
    jac_c = np.zeros((w.size, nvar), dtype=complex)
    hk = np.array([evaluate(antiderivative(monic_from_roots(np.delete(roots, k))), w)
                   for k in range(roots.size)])
    for j in range(m):
        jac_c[:, 2 * j] = -lam * (hk[j] + hk[m + j])
        jac_c[:, 2 * j + 1] = -lam * 1j * (hk[j] - hk[m + j])
        jac_c[j, 2 * j] += -1.0
        jac_c[j, 2 * j + 1] += 1j
    for ell in range(r):
        jac_c[:, 2 * m + ell] = -lam * hk[2 * m + ell]
        jac_c[m + ell, 2 * m + ell] += -1.0
    jac_c[:, -2] = gw
    jac_c[:, -1] = 1.0
    rows = []
    for j in range(m):
        rows.append(jac_c[j].real)
        rows.append(jac_c[j].imag)
    for ell in range(r):
        rows.append(jac_c[m + ell].real)

    jn = np.zeros((2, nvar))
    if n == 2:
        jn[0, 0] = 1.0
        jn[1, -2] = 1.0
    else:
        for j in range(m):
            jn[0, 2 * j] = 2.0 / npts
            jn[1, 2 * j] = 4.0 * upper[j].real / npts
            jn[1, 2 * j + 1] = 4.0 * upper[j].imag / npts
        for ell in range(r):
            jn[0, 2 * m + ell] = 1.0 / npts
            jn[1, 2 * m + ell] = 2.0 * real[ell] / npts
    jmat = np.vstack(rows + [jn[0], jn[1]]) if rows else jn
    return fvec, jmat


def _prefit_scale_offset(upper, real, n):
    """Least-squares ``(λ, a)`` for fixed critical points (the equations are linear in them)."""
    if n == 2:
        return 2.0, float(real[0]) - 2.0 * 0.5 * float(real[0]) ** 2
    roots = _roots_of(upper, real)
    w = np.concatenate([upper, np.asarray(real, dtype=complex)])
    gw = evaluate(antiderivative(monic_from_roots(roots)), w)
    rhs = w.conj()
    a_mat = np.vstack([np.concatenate([gw[:len(upper)].real, gw[:len(upper)].imag, gw[len(upper):].real]),
                       np.concatenate([np.ones(len(upper)), np.zeros(len(upper)), np.ones(len(real))])]).T
    b = np.concatenate([rhs[:len(upper)].real, rhs[:len(upper)].imag, rhs[len(upper):].real])
    (lam, a), *_ = np.linalg.lstsq(a_mat, b, rcond=None)
    return float(lam), float(a)


def _standardise(upper, real, n):
    """Translate/scale critical points so the normalisation rows start at zero."""
    roots = _roots_of(upper, real)
    if n == 2:
        return upper, real * 0
    shift = np.mean(roots.real)
    upper, real = upper - shift, real - shift
    roots = _roots_of(upper, real)
    s = np.sqrt(np.mean(np.abs(roots) ** 2))
    if s > 0:
        upper, real = upper / s, real / s
    return upper, real


def solve_newton(seed: CriticalConfiguration, tol: float = 1e-12, max_iter: int = 100,
                 prefit: bool = True) -> ExtremalSolution:
    """Damped Newton from ``seed`` for ``p(c_j) = conj(c_j)``.

    Raises NonConvergence, CollapsedCriticalPoints (two critical points merged)
    or LeftHalfplane (an upper point kept crossing the real axis).
    """
    m, r, n = len(seed.upper_points), len(seed.real_points), seed.degree
    upper = np.array(seed.upper_points, dtype=complex)
    real = np.array(seed.real_points, dtype=float)
    lam, a = seed.scale, seed.offset
    if prefit:
        upper, real = _standardise(upper, real, n)
        lam, a = _prefit_scale_offset(upper, real, n)
    x = np.concatenate([np.column_stack([upper.real, upper.imag]).ravel() if m else np.zeros(0),
                        real, [lam, a]])
    reflections = 0
    fvec = newton_system(x, m, r, jacobian=False)
    for it in range(max_iter):
        fnorm = np.linalg.norm(fvec)
        if np.max(np.abs(fvec)) < tol:
            break
        fvec, jmat = newton_system(x, m, r)
        try:
            dx = np.linalg.solve(jmat, -fvec)
        except np.linalg.LinAlgError:
            dx = np.linalg.lstsq(jmat, -fvec, rcond=None)[0]
        t = 1.0
        for _ in range(21):
            trial = x + t * dx
            ftrial = newton_system(trial, m, r, jacobian=False)
            if np.all(np.isfinite(ftrial)) and np.linalg.norm(ftrial) < fnorm:
                break
            t /= 2
        x, fvec = trial, ftrial
        ys = x[1:2 * m:2]
        if np.any(ys < 0):
            reflections += 1
            if reflections >= MAX_REFLECTIONS:
                raise LeftHalfplane(f"upper critical point crossed the real axis {reflections} times")
            x[1:2 * m:2] = np.abs(ys)
            fvec = newton_system(x, m, r, jacobian=False)
    else:
        if not np.max(np.abs(fvec)) < tol:
            raise NonConvergence(f"residual {np.max(np.abs(fvec)):.3e} after {max_iter} iterations",
                                 partial=x)
    upper, real, lam, a = _unpack(x, m, r)
    roots = _roots_of(upper, real)
    d = np.abs(roots[:, None] - roots[None, :])
    np.fill_diagonal(d, np.inf)
    if roots.size > 1 and d.min() <= MIN_SEPARATION:
        raise CollapsedCriticalPoints(f"critical points {d.min():.2e} apart")
    try:
        config = CriticalConfiguration(tuple(upper), tuple(real), float(lam), float(a))
    except InvalidConfiguration as exc:
        raise CollapsedCriticalPoints(str(exc)) from exc
    sol = solution_from_config(config)
    if not sol.residual_norm < RESIDUAL_TOL:
        raise NonConvergence(f"matching residual {sol.residual_norm:.3e}", partial=x)
    return sol


# ---------------------------------------------------------------------------
# conjugacy and equivalence


def _affine_image(config: CriticalConfiguration, alpha: float, beta: float) -> CriticalConfiguration:
    """Configuration of ``q(w) = (p(αw + β) - β) / α``."""
    n = config.degree
    p = config.polynomial
    upper = [(c - beta) / alpha for c in config.upper_points]
    upper = [c if c.imag > 0 else c.conjugate() for c in upper]
    real = [(t - beta) / alpha for t in config.real_points]
    lam = config.scale * alpha ** (n - 1)
    off = (evaluate(p, complex(beta)).real - beta) / alpha
    return CriticalConfiguration(tuple(sorted(upper, key=lambda z: (z.real, z.imag))),
                                 tuple(sorted(real)), lam, off)


def _sort_key(config: CriticalConfiguration):
    # ties in the critical list (symmetric sets) go to the larger scale, then offset
    pts = sorted((round(z.real, 9) + 0.0, round(z.imag, 9) + 0.0) for z in config.critical_points)
    return pts, -round(config.scale, 9), -round(config.offset, 9)


def normalize(sol: ExtremalSolution) -> ExtremalSolution:
    """Canonical representative under real affine conjugation.

    The critical centroid goes to 0, the farthest critical point to modulus 1,
    and of the two mirror images the one with the smaller sorted critical list
    is kept (on a tie, the larger scale).
    """
    config = sol.config
    if config is None:
        raise InvalidConfiguration("normalize needs a real solution")
    c = config.critical_points
    beta = float(np.mean(c.real))
    alpha = float(np.max(np.abs(c - beta)))
    if alpha < 1e-14:
        alpha = 1.0
    candidates = [_affine_image(config, s * alpha, beta) for s in (1.0, -1.0)]
    best = min(candidates, key=_sort_key)
    return solution_from_config(best, zero_report=None, label=sol.label)


def _match(a: np.ndarray, b: np.ndarray, tol: float) -> bool:
    if a.size != b.size:
        return False
    left = list(b)
    for z in a:
        d = [abs(z - w) for w in left]
        k = int(np.argmin(d))
        if d[k] > tol:
            return False
        left.pop(k)
    return True


def are_conjugate(s1: ExtremalSolution, s2: ExtremalSolution, tol: float = CONJUGACY_TOL) -> bool:
    if s1.degree != s2.degree:
        return False
    n1, n2 = normalize(s1).config, normalize(s2).config
    if not _match(n1.critical_points, n2.critical_points, tol):
        return False
    return (abs(n1.scale - n2.scale) <= tol * max(1.0, abs(n1.scale))
            and abs(n1.offset - n2.offset) <= tol * max(1.0, abs(n1.offset)))


def rotate_solution(sol: ExtremalSolution, omega: complex) -> ExtremalSolution:
    """``q(z) = ω p(ω z)`` for ``|ω| = 1``; critical points become ``c / ω``."""
    omega = complex(omega)
    if abs(abs(omega) - 1.0) > 1e-12:
        raise NotUnitModulus(f"|omega| = {abs(omega)!r}")
    k = np.arange(sol.polynomial.coeffs.size)
    q = ComplexPolynomial(omega ** (k + 1) * sol.polynomial.coeffs)
    crit = np.array(sol.critical_points, dtype=complex) / omega
    return ExtremalSolution(q, tuple(crit.tolist()), matching_residual(q, crit), None,
                            label=sol.label)


def as_real_solution(sol: ExtremalSolution) -> ExtremalSolution:
    """Re-express a solution with real coefficients through its configuration."""
    if not is_real_polynomial(sol.polynomial):
        raise RotatedConfigInvalid("rotated polynomial is not real")
    try:
        config = config_from_polynomial(sol.polynomial, sol.critical_points)
    except InvalidConfiguration as exc:
        raise RotatedConfigInvalid(str(exc)) from exc
    p = ComplexPolynomial(sol.polynomial.coeffs.real)
    crit = config.critical_points
    return ExtremalSolution(p, tuple(crit.tolist()), matching_residual(p, crit), config,
                            label=sol.label)


def are_equivalent(s1: ExtremalSolution, s2: ExtremalSolution, tol: float = CONJUGACY_TOL) -> bool:
    """Conjugate after one of the rotations ``z -> i^k z``, k = 0..3."""
    if s1.degree != s2.degree:
        return False
    base = normalize(s2)
    for omega in (1, 1j, -1, -1j):
        try:
            candidate = as_real_solution(rotate_solution(base, omega))
        except RotatedConfigInvalid:
            continue
        if are_conjugate(s1, candidate, tol):
            return True
    return False


# ---------------------------------------------------------------------------
# verification


def verify_solution(sol: ExtremalSolution) -> ExtremalSolution:
    """Count the zeros of ``z - conj(p(z))`` and check the extremal split.

    Expects ``3n - 2`` zeros: ``n - 1`` sense-preserving ones sitting on the
    critical points and ``2n - 1`` sense-reversing ones, winding ``-n``.
    Returns the solution with the zero report attached.
    """
    bad = sol.violations()
    if bad:
        raise VerificationFailed("; ".join(bad))
    n = sol.degree
    try:
        zs = find_harmonic_zeros(sol.polynomial)
    except HarmonicValenceError as exc:
        raise VerificationFailed(f"zero finding failed: {exc}") from exc
    checks = []
    if zs.total != 3 * n - 2:
        checks.append(f"{zs.total} zeros, expected {3 * n - 2}")
    if zs.count_preserving != n - 1:
        checks.append(f"{zs.count_preserving} sense-preserving zeros, expected {n - 1}")
    if zs.count_reversing != 2 * n - 1:
        checks.append(f"{zs.count_reversing} sense-reversing zeros, expected {2 * n - 1}")
    if zs.winding != -n:
        checks.append(f"winding {zs.winding}, expected {-n}")
    crit = np.array(sol.critical_points)
    for z in zs.of(Orientation.SENSE_PRESERVING):
        if np.min(np.abs(crit - z.location)) > 1e-6:
            checks.append(f"sense-preserving zero {z.location} is not a critical point")
    if checks:
        raise VerificationFailed("; ".join(checks))
    return dataclasses.replace(sol, zero_report=zs)


# ---------------------------------------------------------------------------
# class search


@dataclass
class SeedOutcome:
    seed: str
    status: str                 # "new", "duplicate" or "failed"
    conjugacy_label: str | None = None
    error: str | None = None


@dataclass
class ClassSearch:
    degree: int
    solutions: list[ExtremalSolution]
    equivalence: list[int]      # equivalence class index per solution
    outcomes: list[SeedOutcome] = field(default_factory=list)

    @property
    def conjugacy_count(self) -> int:
        return len(self.solutions)

    @property
    def equivalence_count(self) -> int:
        return len(set(self.equivalence))

    @property
    def failures(self) -> list[SeedOutcome]:
        return [o for o in self.outcomes if o.status == "failed"]


def _jittered(config: CriticalConfiguration, rng: np.random.Generator, size: float):
    up = np.array(config.upper_points, dtype=complex)
    up = up + size * (rng.normal(size=up.size) + 1j * rng.normal(size=up.size))
    up = np.where(up.imag > 0, up, up.conj())
    up = np.where(np.abs(up.imag) < 1e-3, up + 1e-3j, up)
    re = np.array(config.real_points) + size * rng.normal(size=len(config.real_points))
    return CriticalConfiguration(tuple(up), tuple(re), config.scale, config.offset)


def _class_order(sol: ExtremalSolution):
    c = sol.config
    return (len(c.real_points),) + tuple(_sort_key(c)[0])


def search_classes(n: int, seed_mode: str = "trees", tol: float = 1e-12, max_iter: int = 100,
                   rng_seed: int = 0, jitter_rounds: int = 60, target: int | None = None,
                   seeds: Iterable[tuple[str, CriticalConfiguration]] | None = None) -> ClassSearch:
    """Solve from combinatorial seeds and sort the results into classes.

    Seeds come from every Hubbard tree of degree ``n`` (``"trees"``), from the
    explicit topological model (``"paper_g"``) or both. Solutions conjugate to
    an earlier one are recorded as duplicates. If fewer than ``target``
    conjugacy classes turn up, the tree seeds are re-solved with random
    perturbations (fixed generator seed) for up to ``jitter_rounds`` rounds.
    """
    from .trees import build_hubbard_trees, closed_form_Q

    if seeds is None:
        seeds = []
        if seed_mode in ("trees", "both"):
            seeds += [(f"tree:{t.label}", seed_from_tree(t)) for t in build_hubbard_trees(n)]
        if seed_mode in ("paper_g", "both"):
            seeds += [(f"paper_g:eps={e}", seed_from_paper_g(n, e)) for e in (0.1, 0.2, 0.3)]
        if not seeds:
            raise ValueError(f"unknown seed mode {seed_mode!r}")
    seeds = list(seeds)
    target = closed_form_Q(n) if target is None else target
    found: list[ExtremalSolution] = []
    outcomes: list[SeedOutcome] = []

    def attempt(name, config):
        try:
            sol = solve_newton(config, tol=tol, max_iter=max_iter)
        except HarmonicValenceError as exc:
            outcomes.append(SeedOutcome(name, "failed", error=f"{type(exc).__name__}: {exc}"))
            return
        sol = normalize(sol)
        for k, other in enumerate(found):
            if are_conjugate(sol, other):
                outcomes.append(SeedOutcome(name, "duplicate", conjugacy_label=str(k)))
                return
        found.append(sol)
        outcomes.append(SeedOutcome(name, "new", conjugacy_label=str(len(found) - 1)))

    for name, config in seeds:
        attempt(name, config)
    rng = np.random.default_rng(rng_seed)
    for rnd in range(jitter_rounds):
        if len(found) >= target:
            break
        for name, config in seeds:
            if len(found) >= target:
                break
            attempt(f"{name}+jitter{rnd}", _jittered(config, rng, 0.1 + 0.05 * rnd))

    order = sorted(range(len(found)), key=lambda k: _class_order(found[k]))
    relabel = {str(old): new for new, old in enumerate(order)}
    found = [found[k] for k in order]
    for o in outcomes:
        if o.conjugacy_label is not None:
            o.conjugacy_label = f"n{n}-q{relabel[o.conjugacy_label]}"

    parent = list(range(len(found)))

    def root(i):
        while parent[i] != i:
            i = parent[i]
        return i

    for i, j in itertools.combinations(range(len(found)), 2):
        if root(i) != root(j) and are_equivalent(found[i], found[j]):
            parent[root(j)] = root(i)
    roots_seen: dict[int, int] = {}
    equivalence = [roots_seen.setdefault(root(i), len(roots_seen)) for i in range(len(found))]
    found = [dataclasses.replace(s, label=f"n{n}-q{k}") for k, s in enumerate(found)]
    return ClassSearch(n, found, equivalence, outcomes)
