"""
Validation utilities for Schmidt-coefficient input.
"""

from typing import Sequence, Tuple

import numpy as np

from corelin.constants import NORM_TOL


def validate_schmidt_coeffs(coeffs: Sequence[float]) -> Tuple[bool, str]:
    """
    Validate a Schmidt-coefficient vector a_0..a_n.

    Args:
        coeffs: Candidate coefficients, ascending

    Returns:
        Tuple of (is_valid, error_message)
    """
    values = np.asarray(coeffs, dtype=float)

    if values.ndim != 1 or values.size < 3:
        return False, "a channel needs at least three coefficients (n >= 2)."

    if not np.all(np.isfinite(values)):
        return False, "coefficients must be finite."

    if np.any(values < 0):
        return False, "coefficients must be non-negative."

    if np.any(values[:-1] > values[1:] + NORM_TOL):
        return False, "coefficients are not ascending."

    if abs(values[-2] - values[-1]) > NORM_TOL:
        return False, "two largest coefficients are not equal."

    if values[-1] <= 0:
        return False, "largest coefficient must be positive."

    if abs(float(np.sum(values**2)) - 1.0) > NORM_TOL:
        return False, "squared coefficients do not sum to one."

    return True, ""
