"""
Parsing helpers for comma-separated command-line values.
"""

from typing import List, Tuple

import numpy as np

from corelin.exceptions import RejectedInput


def parse_float_list(text: str, name: str) -> List[float]:
    """Parse "0,0.1,0.2" into floats; every entry must be finite."""
    try:
        values = [float(item) for item in text.split(",") if item.strip()]
    except ValueError as e:
        raise RejectedInput(f"{name} must be a comma-separated list of numbers: {e}") from e
    if not values:
        raise RejectedInput(f"{name} is empty")
    if not np.all(np.isfinite(values)):
        raise RejectedInput(f"{name} entries must be finite")
    return values


def parse_qubit(text: str) -> Tuple[complex, complex]:
    """
    Parse a qubit as "alpha,beta" (real amplitudes) or "re,im,re,im".

    Returns:
        Tuple of (alpha, beta)
    """
    parts = parse_float_list(text, "qubit")
    if len(parts) == 2:
        return complex(parts[0]), complex(parts[1])
    if len(parts) == 4:
        return complex(parts[0], parts[1]), complex(parts[2], parts[3])
    raise RejectedInput(f"qubit needs 2 or 4 numbers, got {len(parts)}")


def child_seed(seed: int, index: int) -> int:
    """Independent seed for grid point `index` of a run seeded with `seed`."""
    return int(np.random.SeedSequence([seed, index]).generate_state(1)[0])
