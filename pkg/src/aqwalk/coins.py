"""Two-by-two coin operators acting on the spin sector of the walk.

Two one-parameter families are supported:

- ``GENERALIZED_HADAMARD``: ``[[cos a, sin a], [sin a, -cos a]]``, an
  involutive reflection (``M @ M == I``, ``det M == -1``).  ``a = 0`` gives
  the Pauli-z matrix, ``a = pi/4`` the Hadamard matrix and ``a = pi/2`` the
  Pauli-x matrix.
- ``ROTATION``: ``[[cos a, -sin a], [sin a, cos a]]``, a proper rotation
  (``det M == +1``).
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field

import numpy as np

from .errors import ParameterError

__all__ = ["CoinFamily", "Coin", "build_coin"]

HALF_PI = math.pi / 2


class CoinFamily(enum.Enum):
    GENERALIZED_HADAMARD = "hadamard"
    ROTATION = "rotation"


def _coin_matrix(family: CoinFamily, angle: float) -> np.ndarray:
    c, s = math.cos(angle), math.sin(angle)
    if angle == HALF_PI:
        # cos(pi/2) rounds to 6.1e-17, which would leak amplitude out of an
        # exactly confining coin; the intended entry is 0
        c = 0.0
    if family is CoinFamily.GENERALIZED_HADAMARD:
        rows = [[c, s], [s, -c]]
    else:
        rows = [[c, -s], [s, c]]
    return np.array(rows, dtype=np.complex128)


@dataclass(frozen=True)
class Coin:
    """A unitary coin, with its matrix cached at construction time."""

    family: CoinFamily
    angle: float
    matrix: np.ndarray = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        if not math.isfinite(self.angle):
            raise ParameterError(f"coin angle must be finite, got {self.angle!r}")
        if self.family is CoinFamily.GENERALIZED_HADAMARD and not (
            0.0 <= self.angle <= HALF_PI
        ):
            raise ParameterError(
                "angle must be in [0, pi/2] for the generalized Hadamard family, "
                f"got {self.angle!r}"
            )
        object.__setattr__(self, "matrix", _coin_matrix(self.family, self.angle))
        self.matrix.setflags(write=False)


def build_coin(family: CoinFamily, angle: float) -> Coin:
    """Return the coin of the given family at the given angle (radians).

    Raises
    ------
    ParameterError
        If the angle is not finite, or falls outside ``[0, pi/2]`` for the
        generalized Hadamard family.
    """
    return Coin(family, float(angle))
