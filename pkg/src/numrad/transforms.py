"""Polar decomposition, Aluthge transforms, Heinz means and function pairs."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

from .errors import AlphaOutOfRange, DimensionMismatch, NotPositive, OutOfRange
from .linalg import as_matrix, classify, hermitian_part, matrix_power_psd, svd
from .rng import SplitMix64

__all__ = [
    "PolarFactors",
    "FunctionPair",
    "polar_decompose",
    "aluthge",
    "aluthge_general",
    "heinz_mean",
    "power_pair",
    "paranormal_evidence",
]

RANK_TOL = 1e-10


@dataclass(frozen=True)
class PolarFactors:
    """``T = isometry @ modulus`` with ``modulus = |T|``."""

    isometry: np.ndarray
    modulus: np.ndarray


@dataclass(frozen=True)
class FunctionPair:
    """Nonnegative ``f, g`` on ``[0, inf)`` with ``f(t) g(t) = t``."""

    f: Callable[[float], float]
    g: Callable[[float], float]
    description: str

    def residual(self, samples: int = 64, t_max: float = 1e3) -> float:
        """Largest ``|f(t) g(t) - t| / max(1, t)`` on a uniform sample of ``[0, t_max]``."""
        ts = np.linspace(0.0, t_max, samples)
        return max(abs(self.f(t) * self.g(t) - t) / max(1.0, t) for t in ts)


def polar_decompose(T) -> PolarFactors:
    """Canonical polar factors from the SVD ``T = W S V*``.

    ``|T| = V S V*`` and ``U = W P V*`` where ``P`` keeps the singular
    directions with ``s_i > 1e-10 * s_max``; U is therefore the partial
    isometry vanishing on ``ker |T|``.
    """
    fac = svd(T)
    s = fac.singular_values
    keep = s > RANK_TOL * s[0] if s[0] > 0 else np.zeros_like(s, dtype=bool)
    W, V = fac.left, fac.right
    U = W[:, keep] @ V[:, keep].conj().T
    modulus = hermitian_part((V * s) @ V.conj().T)
    return PolarFactors(U, modulus)


def aluthge_general(T, alpha: float) -> np.ndarray:
    """``|T|^alpha U |T|^(1 - alpha)`` for ``0 <= alpha <= 1``."""
    if not 0.0 <= alpha <= 1.0:
        raise AlphaOutOfRange(f"alpha={alpha} outside [0, 1]")
    pf = polar_decompose(T)
    left = matrix_power_psd(pf.modulus, alpha)
    right = matrix_power_psd(pf.modulus, 1.0 - alpha)
    return left @ pf.isometry @ right


def aluthge(T) -> np.ndarray:
    """Aluthge transform ``|T|^(1/2) U |T|^(1/2)``."""
    return aluthge_general(T, 0.5)


def heinz_mean(A, X, B, alpha: float) -> np.ndarray:
    """``(A^alpha X B^(1-alpha) + A^(1-alpha) X B^alpha) / 2`` for PSD ``A``, ``B``."""
    A = as_matrix(A, "A")
    X = as_matrix(X, "X")
    B = as_matrix(B, "B")
    if not A.shape == X.shape == B.shape:
        raise DimensionMismatch(f"shapes {A.shape}, {X.shape}, {B.shape} differ")
    if not 0.0 <= alpha <= 1.0:
        raise AlphaOutOfRange(f"alpha={alpha} outside [0, 1]")
    for name, M in (("A", A), ("B", B)):
        if "psd" not in classify(M):
            raise NotPositive(f"{name} is not positive semidefinite")
    Aa, Ab = matrix_power_psd(A, alpha), matrix_power_psd(A, 1.0 - alpha)
    Ba, Bb = matrix_power_psd(B, alpha), matrix_power_psd(B, 1.0 - alpha)
    return (Aa @ X @ Bb + Ab @ X @ Ba) / 2


def _power(s: float) -> Callable[[float], float]:
    # 0**0 := 0, matching matrix_power_psd
    def f(t: float) -> float:
        return t**s if t > 0 else 0.0

    return f


def power_pair(s: float) -> FunctionPair:
    """``f(t) = t^s``, ``g(t) = t^(1-s)`` with the convention ``0^0 = 0``."""
    if not 0.0 <= s <= 1.0:
        raise OutOfRange(f"s={s} outside [0, 1]")
    return FunctionPair(_power(s), _power(1.0 - s), f"t^{s:g} * t^{1 - s:g}")


def paranormal_evidence(A, samples: int, seed: int) -> float:
    """Smallest ``||A^2 x|| - ||A x||^2`` over sampled unit vectors.

    The sample is the standard basis plus ``samples`` seeded random unit
    vectors. A negative value disproves paranormality; a nonnegative value
    is only evidence for it.
    """
    A = as_matrix(A)
    if samples < 1:
        raise ValueError("samples must be positive")
    n = A.shape[0]
    X = SplitMix64(seed).complex_normal((samples, n))
    X /= np.linalg.norm(X, axis=1, keepdims=True)
    X = np.vstack([np.eye(n), X])
    AX = X @ A.T
    A2X = AX @ A.T
    gaps = np.linalg.norm(A2X, axis=1) - np.linalg.norm(AX, axis=1) ** 2
    return float(gaps.min())
