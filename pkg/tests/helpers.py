"""Independent oracles used by several test modules.

Everything here is built from first principles (explicit kron products,
permutation matrices, closed-form angles) so that it shares no evolution
code with the package under test.
"""

from __future__ import annotations

import math

import numpy as np


def dense_coin(family: str, angle: float) -> np.ndarray:
    c, s = math.cos(angle), math.sin(angle)
    if angle == math.pi / 2:
        c = 0.0
    if family == "hadamard":
        return np.array([[c, s], [s, -c]], dtype=np.complex128)
    if family == "rotation":
        return np.array([[c, -s], [s, c]], dtype=np.complex128)
    raise ValueError(family)


def dense_shift(n_sites: int) -> np.ndarray:
    """Spin-conditioned cyclic displacement on ``2 * n_sites`` dimensions.

    Basis ordering: index ``s * n_sites + site`` with s = 0 (up), 1 (down).
    """
    d = np.zeros((2 * n_sites, 2 * n_sites), dtype=np.complex128)
    for site in range(n_sites):
        d[0 * n_sites + (site + 1) % n_sites, 0 * n_sites + site] = 1.0
        d[1 * n_sites + (site - 1) % n_sites, 1 * n_sites + site] = 1.0
    return d


def dense_evolve(angles, family: str, spinor: tuple[complex, complex]) -> np.ndarray:
    """Evolve by explicit global-unitary products on a ``2T + 1``-site ring.

    Returns amplitudes with shape (2, 2T + 1); the origin sits at index T.
    A walk of ``T = len(angles)`` steps never reaches the edge, so the
    cyclic wrap of the shift is never exercised.
    """
    t_steps = len(angles)
    n_sites = 2 * t_steps + 1
    shift = dense_shift(n_sites)
    psi = np.zeros(2 * n_sites, dtype=np.complex128)
    psi[0 * n_sites + t_steps] = spinor[0]
    psi[1 * n_sites + t_steps] = spinor[1]
    eye = np.eye(n_sites, dtype=np.complex128)
    for a in angles:
        step_u = shift @ np.kron(dense_coin(family, float(a)), eye)
        psi = step_u @ psi
    return psi.reshape(2, n_sites)
