"""Pure-numpy walk kernel; the fallback when the compiled extension is absent.

The kernel owns the hot loop: for each step it applies a real 2x2 coin to
every occupied site, shifts the up component one site right and the down
component one site left, and records the standard deviation and total
probability of the resulting distribution.  Amplitudes outside the light
cone are never written, so they stay exactly zero.
"""

from __future__ import annotations

import math

import numpy as np


def evolve_window(up, down, origin, t0, c00, c01, c10, c11, sigma_out, norm_out):
    """Advance the state in place by ``len(c00)`` coin-then-shift steps.

    Parameters
    ----------
    up, down:
        Complex128 1-D arrays of equal length holding the spin-up/down
        amplitude per site.  Modified in place.
    origin:
        Index of lattice site ``k = 0``.
    t0:
        Step count already performed; amplitude support must lie within
        ``[origin - t0, origin + t0]``.
    c00, c01, c10, c11:
        Per-step real coin matrix entries, one value per step.
    sigma_out, norm_out:
        Float64 arrays of length ``len(c00)``; receive the standard
        deviation and total probability after each step.

    The caller must guarantee capacity: ``t0 + len(c00)`` may not exceed
    ``min(origin, len(up) - 1 - origin)``.
    """
    n = up.shape[0]
    steps = c00.shape[0]
    if t0 + steps > min(origin, n - 1 - origin):
        raise ValueError("kernel capacity exceeded; enlarge the lattice")

    k_rel = np.arange(n, dtype=np.float64) - float(origin)
    cur_u, cur_d = up, down
    new_u = np.zeros_like(up)
    new_d = np.zeros_like(down)

    for i in range(steps):
        t = t0 + i
        lo = origin - t
        hi = origin + t
        u = cur_u[lo : hi + 1]
        d = cur_d[lo : hi + 1]
        new_u[lo + 1 : hi + 2] = c00[i] * u + c01[i] * d
        new_d[lo - 1 : hi] = c10[i] * u + c11[i] * d
        # zero the two cells of the grown window each shift leaves untouched
        new_u[lo - 1 : lo + 1] = 0.0
        new_d[hi : hi + 2] = 0.0
        cur_u, new_u = new_u, cur_u
        cur_d, new_d = new_d, cur_d

        lo -= 1
        hi += 1
        uu = cur_u[lo : hi + 1]
        dd = cur_d[lo : hi + 1]
        p = uu.real**2 + uu.imag**2 + dd.real**2 + dd.imag**2
        kk = k_rel[lo : hi + 1]
        m1 = (p * kk).sum()
        m2 = (p * kk * kk).sum()
        var = m2 - m1 * m1
        sigma_out[i] = math.sqrt(var) if var > 0.0 else 0.0
        norm_out[i] = p.sum()

    if cur_u is not up:
        lo = origin - (t0 + steps)
        hi = origin + (t0 + steps)
        up[lo : hi + 1] = cur_u[lo : hi + 1]
        down[lo : hi + 1] = cur_d[lo : hi + 1]
