"""Locally recoverable codes with multiple recovery sets, built from
fiber products of curves over finite fields."""

__version__ = "0.1.0"

from .families import (
    build_artin_schreier,
    build_gk,
    build_preset,
    suzuki_params,
)
from .galois import Field, FieldElement, get_field
from .lrc import CodeBundle
from .recovery import (
    correct_single_error,
    detect_single_error,
    local_recover,
    pattern_recoverable,
    peel_repair,
)
from .verify import brute_force_min_distance, matrix_rank

__all__ = [
    "Field",
    "FieldElement",
    "get_field",
    "CodeBundle",
    "build_artin_schreier",
    "build_gk",
    "build_preset",
    "suzuki_params",
    "local_recover",
    "peel_repair",
    "pattern_recoverable",
    "detect_single_error",
    "correct_single_error",
    "brute_force_min_distance",
    "matrix_rank",
    "__version__",
]
