"""Capacity mapping from an EDoF value and an overall channel gain."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ArgumentError


@dataclass(frozen=True)
class CapacityInputs:
    edof: float
    alpha: float
    power: float
    noise: float

    def __post_init__(self):
        for name in ("edof", "alpha", "power", "noise"):
            if not getattr(self, name) > 0:
                raise ArgumentError(f"{name} must be positive")


def capacity(inputs: CapacityInputs) -> float:
    """C = EDoF * log2(1 + alpha*P / (EDoF^2 * N0)) in bits/s/Hz."""
    e = inputs.edof
    return float(e * np.log2(1.0 + inputs.alpha * inputs.power / (e * e * inputs.noise)))


def overall_gain(edof_numerator: float, reading: str = "sqrt") -> float:
    """Overall channel gain alpha derived from an EDoF-ratio numerator.

    The numerator of every EDoF ratio here is the square of an integrated
    (or summed) channel gain.  ``reading="sqrt"`` (default) returns the gain
    itself, i.e. sqrt(numerator); ``reading="numerator"`` returns the raw
    squared quantity for callers who want the alternative convention.  For
    the closed-form rectangle expression the default equals the gain term
    the formula is built from.
    """
    if not edof_numerator > 0:
        raise ArgumentError("EDoF numerator must be positive")
    if reading == "sqrt":
        return float(np.sqrt(edof_numerator))
    if reading == "numerator":
        return float(edof_numerator)
    raise ArgumentError(f"reading must be 'sqrt' or 'numerator', got {reading}")
