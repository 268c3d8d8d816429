"""Coin-only products along the two-letter recursion, and period detection.

With no displacement in play, the recursion ``M[n+1] = M[n] @ M[n-1]``
(seeded by ``M[0] = A`` and ``M[1] = A @ B``) produces a sequence of 2x2
unitaries whose recurrence behaviour depends strongly on the coin family:
generalized Hadamard coins always cycle, plane rotations generically do
not.  Period detection compares matrices up to a per-recurrence unit
phase, since a global phase has no physical content.
"""

from __future__ import annotations

import numpy as np

from .coins import Coin
from .errors import ParameterError

__all__ = ["SpinProductTrace", "fibonacci_spin_products", "detect_period"]

DEFAULT_PERIOD_BOUND = 64


class SpinProductTrace:
    """The product sequence ``M[0..n_max]`` with per-n trace and determinant."""

    def __init__(self, matrices: np.ndarray):
        matrices = np.asarray(matrices, dtype=np.complex128)
        if matrices.ndim != 3 or matrices.shape[1:] != (2, 2):
            raise ParameterError(f"expected an (n, 2, 2) array, got shape {matrices.shape}")
        self.matrices = matrices
        self.traces = np.trace(matrices, axis1=1, axis2=2)
        self.determinants = np.linalg.det(matrices)

    @property
    def n_max(self) -> int:
        return self.matrices.shape[0] - 1


def fibonacci_spin_products(coin_a: Coin, coin_b: Coin, n_max: int) -> SpinProductTrace:
    """Build ``M[0] = A``, ``M[1] = A @ B``, ``M[n+1] = M[n] @ M[n-1]`` up to ``n_max``."""
    if n_max < 3:
        raise ParameterError(f"n_max must be >= 3, got {n_max}")
    m = np.empty((n_max + 1, 2, 2), dtype=np.complex128)
    m[0] = coin_a.matrix
    m[1] = coin_a.matrix @ coin_b.matrix
    for n in range(1, n_max):
        m[n + 1] = m[n] @ m[n - 1]
    return SpinProductTrace(m)


def _equal_up_to_phase(ref: np.ndarray, other: np.ndarray, tol: float) -> bool:
    # Unitary 2x2 matrices always carry an entry of modulus >= 1/sqrt(2),
    # so the largest entry of ref anchors the phase estimate safely.
    idx = np.argmax(np.abs(ref))
    r = ref.flat[idx]
    o = other.flat[idx]
    phi = o / r
    if abs(abs(phi) - 1.0) > tol:
        return False
    phi /= abs(phi)
    return bool(np.max(np.abs(other - phi * ref)) <= tol)


def detect_period(
    trace: SpinProductTrace,
    bound: int = DEFAULT_PERIOD_BOUND,
    tolerance: float = 1e-8,
) -> int | None:
    """Smallest p >= 1 with ``M[n+p] ~ M[n]`` (up to phase) for every sampled n.

    The sample is ``n = 0 .. min(n_max - p, p + 1)``: one full cycle plus
    the repetition of the seed pair.  Since the recursion is second order,
    a phase-match of two consecutive matrices propagates to all later n,
    and sampling early indices keeps the comparison below the roundoff
    that long matrix products accumulate (which grows golden-ratio fast
    with n and would otherwise drown ``tolerance``).

    Returns ``None`` when no period up to ``bound`` fits.  ``bound`` must
    leave at least one comparison, i.e. ``bound <= n_max - 1``.
    """
    if bound < 1 or bound > trace.n_max - 1:
        raise ParameterError(f"bound must be in [1, n_max - 1] = [1, {trace.n_max - 1}], got {bound}")
    m = trace.matrices
    for p in range(1, bound + 1):
        n_check = min(trace.n_max + 1 - p, p + 2)
        if all(_equal_up_to_phase(m[n], m[n + p], tolerance) for n in range(n_check)):
            return p
    return None
