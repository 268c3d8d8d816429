"""Quantum walks on a line driven by periodic, quasiperiodic and random coin schedules."""

from .coins import Coin, CoinFamily, build_coin
from .engine import EvolveResult, InitialState, WalkState, apply_coin, apply_shift, evolve, init_state, step
from .errors import AqwalkError, FitDomainError, ParameterError, ResourceLimitError
from .observables import (
    Distribution,
    EnsembleResult,
    FitResult,
    SigmaSeries,
    distribution,
    ensemble_average,
    fit_exponent,
    fit_or_confined,
    sigma,
    sigma_from_state,
)
from .sequences import (
    SequenceKind,
    SequenceSpec,
    angle_for_letter,
    derive_seed,
    fibonacci_word,
    letter_stream,
    schedule_angles,
    silver_word,
)
from .spin import SpinProductTrace, detect_period, fibonacci_spin_products

__version__ = "0.1.0"

__all__ = [
    "__version__",
    "AqwalkError",
    "ParameterError",
    "ResourceLimitError",
    "FitDomainError",
    "Coin",
    "CoinFamily",
    "build_coin",
    "SequenceKind",
    "SequenceSpec",
    "fibonacci_word",
    "silver_word",
    "letter_stream",
    "angle_for_letter",
    "schedule_angles",
    "derive_seed",
    "InitialState",
    "WalkState",
    "EvolveResult",
    "init_state",
    "apply_coin",
    "apply_shift",
    "step",
    "evolve",
    "Distribution",
    "SigmaSeries",
    "FitResult",
    "EnsembleResult",
    "distribution",
    "sigma",
    "sigma_from_state",
    "fit_exponent",
    "fit_or_confined",
    "ensemble_average",
    "SpinProductTrace",
    "fibonacci_spin_products",
    "detect_period",
]
