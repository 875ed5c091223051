"""Dense complex-matrix primitives.

Matrices are plain ``numpy`` arrays of dtype ``complex128``; every public
function validates its operands with :func:`as_matrix` / :func:`as_vector`.
Positive semidefinite (PSD) functional calculus uses one convention
throughout: eigenvalues within ``1e-10 * ||P||`` of zero are treated as an
exact zero, and ``0**0 := 0`` (so ``P**0`` is the range projection of P).
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path
from typing import Callable, FrozenSet

import numpy as np

from .errors import (
    ConvergenceFailure,
    FunctionNegative,
    InvalidMatrix,
    NonFinite,
    NotHermitian,
    NotPositive,
    NotSquare,
)

__all__ = [
    "HermitianSpectrum",
    "SvdFactors",
    "as_matrix",
    "as_vector",
    "adjoint",
    "hermitian_part",
    "hermitian_eig",
    "jacobi_eigh",
    "svd",
    "operator_norm",
    "absolute_value",
    "matrix_power_psd",
    "psd_spectrum",
    "spectral_power",
    "apply_scalar_function_psd",
    "classify",
    "STRUCTURE_FLAGS",
    "matrix_to_json",
    "matrix_from_json",
    "vector_from_json",
    "load_matrix",
    "load_vector",
    "save_matrix",
]

PSD_ZERO_TOL = 1e-10
STRUCTURE_FLAGS = ("hermitian", "psd", "normal", "unitary", "invertible")


@dataclass(frozen=True)
class HermitianSpectrum:
    eigenvalues: np.ndarray  # ascending, real
    eigenvectors: np.ndarray  # orthonormal columns

    def reconstruct(self) -> np.ndarray:
        V = self.eigenvectors
        return (V * self.eigenvalues) @ V.conj().T


@dataclass(frozen=True)
class SvdFactors:
    left: np.ndarray
    singular_values: np.ndarray  # descending, nonnegative
    right: np.ndarray

    def reconstruct(self) -> np.ndarray:
        return (self.left * self.singular_values) @ self.right.conj().T


def as_matrix(A, name: str = "matrix") -> np.ndarray:
    """Return ``A`` as a finite square complex128 array or raise."""
    try:
        M = np.asarray(A, dtype=np.complex128)
    except (TypeError, ValueError) as exc:
        raise InvalidMatrix(f"{name}: cannot convert to a complex array") from exc
    if M.ndim != 2 or M.shape[0] != M.shape[1] or M.shape[0] == 0:
        raise NotSquare(f"{name}: expected a nonempty square matrix, got shape {M.shape}")
    if not np.all(np.isfinite(M)):
        raise NonFinite(f"{name}: contains NaN or Inf")
    return M


def as_vector(x, n: int | None = None, name: str = "vector") -> np.ndarray:
    try:
        v = np.asarray(x, dtype=np.complex128)
    except (TypeError, ValueError) as exc:
        raise InvalidMatrix(f"{name}: cannot convert to a complex array") from exc
    if v.ndim != 1 or v.size == 0:
        raise InvalidMatrix(f"{name}: expected a nonempty 1-d array, got shape {v.shape}")
    if n is not None and v.size != n:
        raise InvalidMatrix(f"{name}: expected length {n}, got {v.size}")
    if not np.all(np.isfinite(v)):
        raise NonFinite(f"{name}: contains NaN or Inf")
    return v


def adjoint(A: np.ndarray) -> np.ndarray:
    return A.conj().T


def hermitian_part(A: np.ndarray) -> np.ndarray:
    return (A + A.conj().T) / 2


def _check_hermitian(H: np.ndarray) -> np.ndarray:
    scale = max(1.0, float(np.linalg.norm(H)))
    if np.max(np.abs(H - H.conj().T), initial=0.0) > 1e-10 * scale:
        raise NotHermitian("matrix is not Hermitian within 1e-10 relative tolerance")
    return hermitian_part(H)


def jacobi_eigh(H, max_rotations: int | None = None) -> HermitianSpectrum:
    """Cyclic Jacobi eigensolver for complex Hermitian matrices.

    Each rotation first removes the phase of the pivot ``H[p, q]`` and then
    applies a real Givens rotation, so the iteration stays a unitary
    similarity. The budget defaults to ``100 * n**2`` rotations.
    """
    H = _check_hermitian(as_matrix(H))
    n = H.shape[0]
    A = H.copy()
    V = np.eye(n, dtype=np.complex128)
    budget = 100 * n * n if max_rotations is None else max_rotations
    scale = float(np.linalg.norm(A))
    target = np.finfo(float).eps * max(scale, np.finfo(float).tiny)
    rotations = 0
    while True:
        off = float(np.linalg.norm(A - np.diag(np.diag(A))))
        if off <= target:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                h = A[p, q]
                g = abs(h)
                if g <= target / n:
                    continue
                if rotations >= budget:
                    raise ConvergenceFailure(f"Jacobi exceeded {budget} rotations")
                a = A[p, p].real
                b = A[q, q].real
                zeta = (b - a) / (2.0 * g)
                t = np.copysign(1.0, zeta) / (abs(zeta) + np.hypot(1.0, zeta))
                c = 1.0 / np.hypot(1.0, t)
                s = t * c
                phase = h / g
                # J = diag(1, conj(phase)) @ [[c, s], [-s, c]]
                J = np.array([[c, s], [-s * np.conj(phase), c * np.conj(phase)]])
                idx = [p, q]
                A[:, idx] = A[:, idx] @ J
                A[idx, :] = J.conj().T @ A[idx, :]
                A[p, q] = A[q, p] = 0.0
                A[p, p] = A[p, p].real
                A[q, q] = A[q, q].real
                V[:, idx] = V[:, idx] @ J
                rotations += 1
    w = np.diag(A).real.copy()
    order = np.argsort(w, kind="stable")
    return HermitianSpectrum(w[order], V[:, order])


def hermitian_eig(H, method: str = "lapack") -> HermitianSpectrum:
    """Eigendecomposition of a Hermitian matrix (symmetrized first).

    ``method="lapack"`` uses :func:`numpy.linalg.eigh`; ``method="jacobi"``
    uses the in-house :func:`jacobi_eigh` kernel.
    """
    if method == "jacobi":
        return jacobi_eigh(H)
    if method != "lapack":
        raise ValueError(f"unknown method {method!r}")
    Hs = _check_hermitian(as_matrix(H))
    try:
        w, V = np.linalg.eigh(Hs)
    except np.linalg.LinAlgError as exc:
        raise ConvergenceFailure(str(exc)) from exc
    return HermitianSpectrum(w, V)


def svd(A) -> SvdFactors:
    A = as_matrix(A)
    try:
        W, s, Vh = np.linalg.svd(A)
    except np.linalg.LinAlgError as exc:
        raise ConvergenceFailure(str(exc)) from exc
    return SvdFactors(W, s, Vh.conj().T)


def operator_norm(A) -> float:
    """Largest singular value of ``A``."""
    A = as_matrix(A)
    try:
        return float(np.linalg.svd(A, compute_uv=False)[0])
    except np.linalg.LinAlgError as exc:
        raise ConvergenceFailure(str(exc)) from exc


def absolute_value(A) -> np.ndarray:
    """``|A| = (A* A)^(1/2)``, formed as ``V diag(sigma) V*`` from the SVD."""
    f = svd(A)
    V = f.right
    P = (V * f.singular_values) @ V.conj().T
    return hermitian_part(P)


def psd_spectrum(P) -> tuple[np.ndarray, np.ndarray]:
    """Eigenpairs of a PSD matrix with roundoff-level eigenvalues set to zero.

    Raises :class:`NotPositive` if an eigenvalue is below ``-1e-10 * ||P||``.
    """
    spec = hermitian_eig(P)
    w = spec.eigenvalues
    scale = float(np.max(np.abs(w), initial=0.0))
    thresh = PSD_ZERO_TOL * scale
    if w.size and w[0] < -thresh:
        raise NotPositive(f"eigenvalue {w[0]:.3e} below -{thresh:.3e}")
    w = np.where(w <= thresh, 0.0, w)
    return w, spec.eigenvectors


def matrix_power_psd(P, s: float) -> np.ndarray:
    """Fractional power ``P**s`` of a PSD matrix, ``s >= 0``, with ``0**0 := 0``."""
    if not np.isfinite(s) or s < 0:
        raise ValueError(f"exponent must be a finite nonnegative real, got {s}")
    w, V = psd_spectrum(P)
    return spectral_power(w, V, s)


def spectral_power(w: np.ndarray, V: np.ndarray, s: float) -> np.ndarray:
    """``V diag(w**s) V*`` for ``w >= 0`` with ``0**0 := 0``."""
    pos = w > 0
    ws = np.zeros_like(w)
    ws[pos] = w[pos] ** s
    return hermitian_part((V * ws) @ V.conj().T)


def apply_scalar_function_psd(P, f: Callable[[float], float]) -> np.ndarray:
    """Spectral calculus ``f(P)`` for PSD ``P`` and ``f >= 0`` on its spectrum."""
    w, V = psd_spectrum(P)
    fw = np.array([float(f(float(t))) for t in w])
    if not np.all(np.isfinite(fw)):
        raise NonFinite("function value is not finite on the spectrum")
    if np.any(fw < 0):
        raise FunctionNegative(f"f takes negative value {fw.min():.3e} on the spectrum")
    return hermitian_part((V * fw) @ V.conj().T)


def classify(A, tol: float = 1e-10) -> FrozenSet[str]:
    """Structure flags of ``A``, residuals measured relative to ``max(1, ||A||)``.

    Quadratic residuals (normality) are compared against ``tol * scale**2``.
    """
    A = as_matrix(A)
    n = A.shape[0]
    sv = np.linalg.svd(A, compute_uv=False)
    scale = max(1.0, float(sv[0]))
    Ah = A.conj().T
    flags = set()
    if np.linalg.norm(A - Ah, 2) <= tol * scale:
        flags.add("hermitian")
        if np.linalg.eigvalsh(hermitian_part(A))[0] >= -tol * scale:
            flags.add("psd")
    if np.linalg.norm(A @ Ah - Ah @ A, 2) <= tol * scale**2:
        flags.add("normal")
    if np.linalg.norm(Ah @ A - np.eye(n), 2) <= tol * scale**2:
        flags.add("unitary")
    if sv[-1] > tol * scale:
        flags.add("invertible")
    return frozenset(flags)


def matrix_to_json(A) -> dict:
    A = as_matrix(A)
    return {
        "n": int(A.shape[0]),
        "entries": [[[float(z.real), float(z.imag)] for z in row] for row in A],
    }


def matrix_from_json(obj) -> np.ndarray:
    """Parse ``{"n": n, "entries": [[[re, im], ...], ...]}`` (row-major)."""
    if not isinstance(obj, dict) or "n" not in obj or "entries" not in obj:
        raise InvalidMatrix('expected an object with keys "n" and "entries"')
    n = obj["n"]
    rows = obj["entries"]
    if not isinstance(n, int) or isinstance(n, bool) or n < 1:
        raise InvalidMatrix(f'"n" must be a positive integer, got {n!r}')
    if not isinstance(rows, list) or len(rows) != n:
        raise InvalidMatrix(f"expected {n} rows")
    out = np.empty((n, n), dtype=np.complex128)
    for i, row in enumerate(rows):
        if not isinstance(row, list) or len(row) != n:
            raise InvalidMatrix(f"row {i} is ragged (expected {n} entries)")
        for j, z in enumerate(row):
            if (
                not isinstance(z, list)
                or len(z) != 2
                or not all(isinstance(c, (int, float)) and not isinstance(c, bool) for c in z)
            ):
                raise InvalidMatrix(f"entry ({i}, {j}) must be a [re, im] pair of numbers")
            out[i, j] = complex(z[0], z[1])
    if not np.all(np.isfinite(out)):
        raise NonFinite("matrix entries must be finite")
    return out


def vector_from_json(obj) -> np.ndarray:
    """Parse ``{"n": n, "entries": [[re, im], ...]}``."""
    if not isinstance(obj, dict) or "n" not in obj or "entries" not in obj:
        raise InvalidMatrix('expected an object with keys "n" and "entries"')
    n, entries = obj["n"], obj["entries"]
    if not isinstance(n, int) or isinstance(n, bool) or n < 1:
        raise InvalidMatrix(f'"n" must be a positive integer, got {n!r}')
    if not isinstance(entries, list) or len(entries) != n:
        raise InvalidMatrix(f"expected {n} entries")
    out = np.empty(n, dtype=np.complex128)
    for i, z in enumerate(entries):
        if (
            not isinstance(z, list)
            or len(z) != 2
            or not all(isinstance(c, (int, float)) and not isinstance(c, bool) for c in z)
        ):
            raise InvalidMatrix(f"entry {i} must be a [re, im] pair of numbers")
        out[i] = complex(z[0], z[1])
    if not np.all(np.isfinite(out)):
        raise NonFinite("vector entries must be finite")
    return out


def _read_json(path):
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise InvalidMatrix(f"{path}: cannot read ({exc.strerror})") from exc
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InvalidMatrix(f"{path}: malformed JSON ({exc})") from exc


def load_matrix(path) -> np.ndarray:
    return matrix_from_json(_read_json(path))


def load_vector(path) -> np.ndarray:
    return vector_from_json(_read_json(path))


def save_matrix(A, path) -> None:
    Path(path).write_text(json.dumps(matrix_to_json(A)))
