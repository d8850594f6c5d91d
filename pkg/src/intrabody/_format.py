"""Stable float formatting for machine-diffable output files."""
from __future__ import annotations

import math

__all__ = ["fmt9"]


def fmt9(x):
    """Format at 9 significant digits, scientific below 1e-3 in magnitude.

    The fixed rule keeps golden files byte-stable across platforms.
    """
    v = float(x)
    if math.isnan(v):
        return "nan"
    if math.isinf(v):
        return "inf" if v > 0 else "-inf"
    if v != 0.0 and abs(v) < 1e-3:
        return f"{v:.8e}"
    return f"{v:.9g}"
