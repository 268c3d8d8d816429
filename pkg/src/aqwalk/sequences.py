"""Letter schedules that assign a coin angle to every time step.

A schedule is described by a :class:`SequenceSpec` and realised as a stream
of letters ``"A"``/``"B"`` (or, for the continuous random kind, a stream of
angles directly).  Finite words are plain strings; unbounded schedules are
generators.  Deterministic kinds are pure functions of the spec; random
kinds are pure functions of ``(spec.seed, index)`` via a named, seedable
generator so that runs are reproducible bit for bit.

Two-letter substitution systems provided:

- Fibonacci: ``A -> AB``, ``B -> A``; the letter ratio ``#A/#B`` tends to
  the golden mean ``(1 + sqrt(5))/2``.
- Silver-mean: ``A -> AAB``, ``B -> A``; the ratio tends to ``1 + sqrt(2)``.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from itertools import islice
from typing import Iterator

import numpy as np

from .coins import HALF_PI, CoinFamily
from .errors import ParameterError, ResourceLimitError

__all__ = [
    "SequenceKind",
    "SequenceSpec",
    "fibonacci_word",
    "silver_word",
    "letter_stream",
    "angle_for_letter",
    "schedule_angles",
    "derive_seed",
    "RNG_ALGORITHM",
    "SEED_DERIVATION_RULE",
]

#: Bit-generator behind every random schedule; recorded in run metadata.
RNG_ALGORITHM = "numpy.random.PCG64"

#: How per-realization seeds are derived from a master seed; recorded in metadata.
SEED_DERIVATION_RULE = "numpy.random.SeedSequence([master_seed, index]).generate_state(1, uint64)[0]"

#: Refuse to materialize substitution words longer than this.
DEFAULT_MAX_LETTERS = 1 << 26

_FIBONACCI_RULES = {"A": "AB", "B": "A"}
_SILVER_RULES = {"A": "AAB", "B": "A"}

_CONTINUOUS_CENTER = math.pi / 4


class SequenceKind(enum.Enum):
    CONSTANT = "constant"
    PERIODIC_APPROXIMANT = "periodic"
    FIBONACCI = "fibonacci"
    SILVER_MEAN = "silver"
    RANDOM_BINARY = "random-binary"
    RANDOM_CONTINUOUS = "random-continuous"


_RANDOM_KINDS = frozenset({SequenceKind.RANDOM_BINARY, SequenceKind.RANDOM_CONTINUOUS})
_TWO_LETTER_KINDS = frozenset(
    {
        SequenceKind.PERIODIC_APPROXIMANT,
        SequenceKind.FIBONACCI,
        SequenceKind.SILVER_MEAN,
        SequenceKind.RANDOM_BINARY,
    }
)


def _check_angle(name: str, value: float, family: CoinFamily) -> None:
    if not math.isfinite(value):
        raise ParameterError(f"{name} must be finite, got {value!r}")
    if family is CoinFamily.GENERALIZED_HADAMARD and not (0.0 <= value <= HALF_PI):
        raise ParameterError(
            f"{name} must be in [0, pi/2] for the generalized Hadamard family, got {value!r}"
        )


@dataclass(frozen=True)
class SequenceSpec:
    """Immutable description of a coin schedule.

    ``alpha_a``/``alpha_b`` are the angles assigned to letters A and B.  For
    the binary random kind ``alpha_b`` defaults to ``pi/2 - alpha_a`` (the
    complementary-pair ensemble).  The continuous random kind ignores both
    and draws a fresh angle per step, uniform on
    ``[pi/4 - width, pi/4 + width]``.  ``seed`` is required for random kinds
    and ignored by deterministic ones.
    """

    kind: SequenceKind
    alpha_a: float = _CONTINUOUS_CENTER
    alpha_b: float | None = None
    width: float | None = None
    seed: int | None = None
    approximant_order: int | None = None
    family: CoinFamily = CoinFamily.GENERALIZED_HADAMARD

    def __post_init__(self) -> None:
        if self.kind is SequenceKind.RANDOM_BINARY and self.alpha_b is None:
            object.__setattr__(self, "alpha_b", HALF_PI - self.alpha_a)

        if self.kind is not SequenceKind.RANDOM_CONTINUOUS:
            _check_angle("alpha_a", self.alpha_a, self.family)
        if self.kind in _TWO_LETTER_KINDS:
            if self.alpha_b is None:
                raise ParameterError(f"alpha_b is required for kind {self.kind.value!r}")
            _check_angle("alpha_b", self.alpha_b, self.family)

        if self.kind is SequenceKind.PERIODIC_APPROXIMANT:
            if self.approximant_order is None or self.approximant_order < 0:
                raise ParameterError(
                    "approximant_order must be a nonnegative integer for the "
                    f"periodic kind, got {self.approximant_order!r}"
                )

        if self.kind is SequenceKind.RANDOM_CONTINUOUS:
            if self.width is None or not (0.0 < self.width <= math.pi / 4):
                raise ParameterError(
                    f"width must be in (0, pi/4] for the continuous random kind, got {self.width!r}"
                )

        if self.kind in _RANDOM_KINDS:
            if self.seed is None:
                raise ParameterError(f"seed is required for kind {self.kind.value!r}")
            if not (0 <= int(self.seed) < 1 << 64):
                raise ParameterError(f"seed must be a 64-bit unsigned integer, got {self.seed!r}")

    @property
    def is_random(self) -> bool:
        return self.kind in _RANDOM_KINDS


def _substitution_word(rules: dict[str, str], order: int, max_letters: int) -> str:
    if order < 0:
        raise ParameterError(f"substitution order must be >= 0, got {order}")
    word = "A"
    for _ in range(order):
        grown = len(word) * max(len(r) for r in rules.values())
        if grown > max_letters:
            raise ResourceLimitError(
                f"substitution word of order {order} exceeds the cap of {max_letters} letters"
            )
        word = "".join(rules[ch] for ch in word)
    if len(word) > max_letters:
        raise ResourceLimitError(
            f"substitution word of order {order} exceeds the cap of {max_letters} letters"
        )
    return word


def fibonacci_word(order: int, max_letters: int = DEFAULT_MAX_LETTERS) -> str:
    """Return the finite Fibonacci word of the given order.

    Order 0 is ``"A"``; each further order applies ``A -> AB, B -> A`` once,
    which is equivalent to concatenating the two previous words.  The word
    length is the Fibonacci number ``1, 2, 3, 5, 8, ...``.
    """
    return _substitution_word(_FIBONACCI_RULES, order, max_letters)


def silver_word(order: int, max_letters: int = DEFAULT_MAX_LETTERS) -> str:
    """Return the finite silver-mean word of the given order.

    Order 0 is ``"A"``; each further order applies ``A -> AAB, B -> A`` once.
    """
    return _substitution_word(_SILVER_RULES, order, max_letters)


def _fixed_point_stream(rules: dict[str, str]) -> Iterator[str]:
    # The fixed point exists because rules["A"] starts with "A": each
    # substitution pass extends the previous word, so we re-expand whenever
    # the consumer catches up with the materialized prefix.
    word = "A"
    i = 0
    while True:
        while i < len(word):
            yield word[i]
            i += 1
        word = "".join(rules[ch] for ch in word)


def _cycle_word(word: str) -> Iterator[str]:
    while True:
        yield from word


def _random_binary_stream(spec: SequenceSpec) -> Iterator[str]:
    rng = np.random.Generator(np.random.PCG64(int(spec.seed)))
    while True:
        for bit in rng.integers(0, 2, size=1024):
            yield "A" if bit == 0 else "B"


def _random_angle_stream(spec: SequenceSpec) -> Iterator[float]:
    rng = np.random.Generator(np.random.PCG64(int(spec.seed)))
    lo = _CONTINUOUS_CENTER - spec.width
    hi = _CONTINUOUS_CENTER + spec.width
    while True:
        for a in rng.uniform(lo, hi, size=1024):
            yield float(a)


def letter_stream(spec: SequenceSpec) -> Iterator[str] | Iterator[float]:
    """Return the unbounded schedule stream for a spec.

    Yields letters ``"A"``/``"B"`` for every kind except the continuous
    random one, which yields the per-step angle directly.
    """
    if spec.kind is SequenceKind.CONSTANT:
        return _cycle_word("A")
    if spec.kind is SequenceKind.PERIODIC_APPROXIMANT:
        return _cycle_word(fibonacci_word(spec.approximant_order))
    if spec.kind is SequenceKind.FIBONACCI:
        return _fixed_point_stream(_FIBONACCI_RULES)
    if spec.kind is SequenceKind.SILVER_MEAN:
        return _fixed_point_stream(_SILVER_RULES)
    if spec.kind is SequenceKind.RANDOM_BINARY:
        return _random_binary_stream(spec)
    return _random_angle_stream(spec)


def angle_for_letter(spec: SequenceSpec, letter_or_sample: str | float) -> float:
    """Map one stream element to the coin angle applied at that step."""
    if isinstance(letter_or_sample, str):
        if letter_or_sample == "A":
            return spec.alpha_a
        if letter_or_sample == "B":
            if spec.alpha_b is None:
                raise ParameterError(f"kind {spec.kind.value!r} has no B angle")
            return spec.alpha_b
        raise ParameterError(f"unknown letter {letter_or_sample!r}")
    return float(letter_or_sample)


def schedule_angles(spec: SequenceSpec, steps: int, letter_order: str = "word") -> np.ndarray:
    """Materialize the first ``steps`` coin angles of a schedule.

    ``letter_order`` selects the reading convention: ``"word"`` applies the
    leftmost letter of the schedule first; ``"operator"`` applies the
    ``steps``-letter prefix in reversed order, matching the convention where
    the rightmost factor of an operator product acts first.
    """
    if steps < 1:
        raise ParameterError(f"steps must be >= 1, got {steps}")
    if letter_order not in ("word", "operator"):
        raise ParameterError(f"letter_order must be 'word' or 'operator', got {letter_order!r}")
    items = list(islice(letter_stream(spec), steps))
    if letter_order == "operator":
        items.reverse()
    return np.array([angle_for_letter(spec, item) for item in items], dtype=np.float64)


def derive_seed(master_seed: int, index: int) -> int:
    """Derive the 64-bit seed of ensemble member ``index`` from a master seed."""
    ss = np.random.SeedSequence([int(master_seed), int(index)])
    return int(ss.generate_state(1, np.uint64)[0])
