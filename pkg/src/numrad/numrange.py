"""Numerical radius and numerical-range boundary.

Everything here rests on the support function of the field of values,

    f(theta) = lambda_max(Re(e^{i theta} A)) = max_{z in W(A)} Re(e^{i theta} z),

so that ``w(A) = max_theta f(theta)``. Every evaluation of ``f`` is a lower
bound on ``w``; upper bounds come from two certificates:

* Lipschitz: ``|f(s) - f(t)| <= ||A|| |s - t|`` (Weyl perturbation).
* Supporting lines: the half-planes ``Re(e^{i theta} z) <= f(theta)`` contain
  ``W(A)``, so on an angular cell ``[a, b]`` (width below pi) ``f`` is bounded
  by the support function of the wedge formed by the two lines at ``a`` and
  ``b``. This bound tightens quadratically in the cell width.

:func:`numerical_radius` runs a branch-and-bound over angular cells with the
smaller of the two bounds and stops once every surviving cell is within
``tol`` of the best lower bound.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import NotUnit, ToleranceTooSmall
from .linalg import as_matrix, as_vector, operator_norm
from .rng import SplitMix64

__all__ = [
    "RadiusEstimate",
    "numerical_radius",
    "radius_dense_oracle",
    "rayleigh",
    "radius_lower_bound_sampling",
    "numerical_range_boundary",
    "boundary_angles",
    "support_function",
]

TWO_PI = 2.0 * math.pi
_INITIAL_CELLS = 32
_MAX_EVALUATIONS = 10**7
_CHUNK = 4096


@dataclass(frozen=True)
class RadiusEstimate:
    """Certified enclosure ``w(A) in [value, value + certified_error]``."""

    value: float
    certified_error: float
    theta_star: float
    witness: np.ndarray
    evaluations: int = 0

    @property
    def upper(self) -> float:
        return self.value + self.certified_error


def _real_imag_parts(A: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    # Re(e^{it} A) = cos(t) H - sin(t) K with A = H + iK
    Ah = A.conj().T
    return (A + Ah) / 2, (A - Ah) / 2j


def _rotated(H, K, thetas: np.ndarray) -> np.ndarray:
    c = np.cos(thetas)[:, None, None]
    s = np.sin(thetas)[:, None, None]
    return c * H - s * K


def support_function(A, thetas) -> np.ndarray:
    """``lambda_max(Re(e^{i theta} A))`` for each angle (vectorized)."""
    A = as_matrix(A)
    H, K = _real_imag_parts(A)
    thetas = np.atleast_1d(np.asarray(thetas, dtype=float))
    out = np.empty(thetas.shape)
    for start in range(0, thetas.size, _CHUNK):
        sl = slice(start, start + _CHUNK)
        out[sl] = np.linalg.eigvalsh(_rotated(H, K, thetas[sl]))[:, -1]
    return out


def _top_eigvec(H, K, theta: float) -> np.ndarray:
    w, V = np.linalg.eigh(np.cos(theta) * H - np.sin(theta) * K)
    x = V[:, -1]
    k = int(np.argmax(np.abs(x)))
    return x * (abs(x[k]) / x[k])  # fix phase: largest component real positive


def _cell_upper_bounds(a, b, fa, fb, lipschitz):
    """Upper bounds for ``f`` on cells ``[a, b]`` from endpoint values.

    ``fa``/``fb`` must already be inflated by the evaluation error margin.
    """
    h = b - a
    lip = 0.5 * (fa + fb) + 0.5 * lipschitz * h
    # Apex of the wedge in coordinates rotated by e^{ia}: u = fa + i*t.
    t = ((fa - fb) - 2.0 * fa * np.sin(0.5 * h) ** 2) / np.sin(h)
    phi = np.arctan2(-t, fa)
    interior = (phi >= 0.0) & (phi <= h)
    wedge = np.where(interior, np.hypot(fa, t), np.maximum(fa, fb))
    return np.minimum(lip, wedge)


def numerical_radius(A, tol: float = 1e-8) -> RadiusEstimate:
    """Numerical radius of ``A`` with a two-sided certificate.

    Parameters
    ----------
    A : (n, n) array_like
        Finite complex square matrix.
    tol : float
        Absolute tolerance on the enclosure width, at least ``1e-12``.

    Returns
    -------
    RadiusEstimate
        ``value`` is a lower bound on ``w(A)``, at least ``f(theta_star)``
        and realised as ``|<A x, x>|`` by the unit ``witness`` up to
        roundoff; ``value + certified_error`` is an upper bound.
        The certificate includes a margin for the eigensolver's backward
        error, ``16 n eps ||A||_F``.
    """
    A = as_matrix(A)
    if not tol >= 1e-12:
        raise ToleranceTooSmall(f"tol={tol} is below the 1e-12 floor")
    n = A.shape[0]
    norm = operator_norm(A)
    if norm == 0.0:
        e1 = np.zeros(n, dtype=np.complex128)
        e1[0] = 1.0
        return RadiusEstimate(0.0, 0.0, 0.0, e1, 0)
    margin = 16 * n * np.finfo(float).eps * float(np.linalg.norm(A))
    if tol <= 4 * margin:
        raise ToleranceTooSmall(
            f"tol={tol:.3e} cannot be certified; eigenvalue error margin is {margin:.3e}"
        )
    H, K = _real_imag_parts(A)

    def f(thetas):
        return np.linalg.eigvalsh(_rotated(H, K, thetas))[:, -1]

    grid = np.linspace(0.0, TWO_PI, _INITIAL_CELLS + 1)
    fg = f(grid[:-1])
    fg = np.append(fg, fg[0])
    evals = _INITIAL_CELLS
    best_i = int(np.argmax(fg[:-1]))
    best, best_theta = float(fg[best_i]), float(grid[best_i])

    a, b = grid[:-1], grid[1:]
    fa, fb = fg[:-1], fg[1:]
    pruned_upper = -np.inf
    while True:
        upper = _cell_upper_bounds(a, b, fa + margin, fb + margin, norm)
        live = upper > best + tol
        if np.any(~live):
            pruned_upper = max(pruned_upper, float(upper[~live].max()))
        if not np.any(live):
            break
        a, b, fa, fb = a[live], b[live], fa[live], fb[live]
        if evals + a.size > _MAX_EVALUATIONS:
            raise ToleranceTooSmall(
                f"certifying tol={tol:.3e} needs more than {_MAX_EVALUATIONS} evaluations"
            )
        mid = 0.5 * (a + b)
        fm = np.empty(mid.shape)
        for start in range(0, mid.size, _CHUNK):
            sl = slice(start, start + _CHUNK)
            fm[sl] = f(mid[sl])
        evals += mid.size
        k = int(np.argmax(fm))
        if fm[k] > best:
            best, best_theta = float(fm[k]), float(mid[k])
        a, b = np.concatenate([a, mid]), np.concatenate([mid, b])
        fa, fb = np.concatenate([fa, fm]), np.concatenate([fm, fb])

    theta_star = best_theta % TWO_PI
    witness = _top_eigvec(H, K, theta_star)
    # |<Ax, x>| >= Re(e^{i theta} <Ax, x>) = f(theta): the witness can only improve the bound
    best = max(best, abs(complex(np.vdot(witness, A @ witness))))
    certified_error = max(0.0, pruned_upper - best)
    return RadiusEstimate(best, certified_error, theta_star, witness, evals)


def radius_dense_oracle(A, N: int) -> float:
    """Brute-force lower bound: max of ``f`` over ``N`` equally spaced angles.

    Uses ``f(t + pi) = -lambda_min(Re(e^{it} A))`` so even ``N`` costs
    ``N / 2`` eigenvalue problems. The gap to ``w(A)`` is at most
    ``pi ||A|| / N``.
    """
    A = as_matrix(A)
    N = int(N)
    if N < 4:
        raise ValueError("N must be at least 4")
    H, K = _real_imag_parts(A)
    best = -np.inf
    if N % 2 == 0:
        half = np.arange(N // 2) * (TWO_PI / N)
        for start in range(0, half.size, _CHUNK):
            lam = np.linalg.eigvalsh(_rotated(H, K, half[start:start + _CHUNK]))
            best = max(best, float(lam[:, -1].max()), float(-lam[:, 0].min()))
    else:
        best = float(support_function(A, np.arange(N) * (TWO_PI / N)).max())
    return max(best, 0.0)


def rayleigh(A, x) -> complex:
    """``<Ax, x> = x^* A x`` for a unit vector ``x``."""
    A = as_matrix(A)
    x = as_vector(x, A.shape[0], "x")
    nrm = float(np.linalg.norm(x))
    if abs(nrm - 1.0) > 1e-12:
        raise NotUnit(f"x has norm {nrm!r}, expected 1")
    return complex(np.vdot(x, A @ x))


def radius_lower_bound_sampling(A, k: int, seed: int) -> float:
    """Max ``|<Ax, x>|`` over ``k`` seeded random unit vectors.

    The top eigenvector of ``Re(e^{i theta} A)`` at the best of 64 coarse
    angles is added as an extra candidate.
    """
    A = as_matrix(A)
    if k < 1:
        raise ValueError("k must be positive")
    n = A.shape[0]
    stream = SplitMix64(seed)
    best = 0.0
    for start in range(0, k, _CHUNK):
        m = min(_CHUNK, k - start)
        X = stream.complex_normal((m, n))
        X /= np.linalg.norm(X, axis=1, keepdims=True)
        vals = np.einsum("ij,ij->i", X.conj(), X @ A.T)
        best = max(best, float(np.abs(vals).max()))
    H, K = _real_imag_parts(A)
    coarse = np.arange(64) * (TWO_PI / 64)
    theta = float(coarse[int(np.argmax(support_function(A, coarse)))])
    x = _top_eigvec(H, K, theta)
    best = max(best, abs(complex(np.vdot(x, A @ x))))
    return best


def boundary_angles(m: int) -> np.ndarray:
    return np.arange(int(m)) * (TWO_PI / int(m))


def numerical_range_boundary(A, m: int) -> np.ndarray:
    """``m`` boundary points of ``W(A)`` by the supporting-line method.

    For ``theta_k = 2 pi k / m`` the point is ``<A x_k, x_k>`` with ``x_k``
    the top eigenvector of ``Re(e^{i theta_k} A)``; the point lies on the
    supporting line of ``W(A)`` with outward normal ``e^{-i theta_k}``.
    """
    A = as_matrix(A)
    if m < 3:
        raise ValueError("m must be at least 3")
    H, K = _real_imag_parts(A)
    thetas = boundary_angles(m)
    pts = np.empty(m, dtype=np.complex128)
    for start in range(0, m, _CHUNK):
        sl = slice(start, start + _CHUNK)
        _, V = np.linalg.eigh(_rotated(H, K, thetas[sl]))
        X = V[:, :, -1]
        pts[sl] = np.einsum("ij,ij->i", X.conj(), X @ A.T)
    return pts
