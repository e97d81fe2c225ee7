"""
Closed-form resource curves for the Case I and Case II channel families,
and the limits they approach.
"""

from typing import Sequence

import numpy as np
from scipy.stats import entropy

from channel.services.schmidt import case1_channel, case2_channel, channel_entropy
from corelin.exceptions import RejectedInput
from metrics.services.resources import binary_entropy, entropy_from_concurrence
from metrics.types import ResourceReport


def _report(
    entropy_bits: float, probabilities: Sequence[float], concurrences: Sequence[float]
) -> ResourceReport:
    weights = np.repeat(probabilities, 2)
    doubled = np.repeat(concurrences, 2)
    entropies = np.array([entropy_from_concurrence(C) for C in doubled])
    return ResourceReport(
        channel_entropy=entropy_bits,
        measurement_entanglement=float(np.dot(weights, entropies)),
        classical_bits=float(entropy(weights, base=2)),
        concurrences=tuple(float(C) for C in doubled),
        probabilities=tuple(float(p) for p in weights),
    )


def case1_metrics(n: int, x: float) -> ResourceReport:
    """
    Case I: a_0 = ... = a_{n-2} = x a_n.

    Outcomes j <= n-3 and j = n-1 use maximally entangled vectors; the
    (n-2) and n pairs share concurrence sqrt(3 + 2x^2 - x^4)/2.
    """
    ch = case1_channel(n, x)
    norm = 2.0 + (n - 1) * x**2
    mixed = (1.0 + x**2) / (4.0 * norm)
    partial = 0.5 * np.sqrt(3.0 + 2.0 * x**2 - x**4)

    probabilities = [x**2 / (2.0 * norm)] * (n - 2) + [mixed, 1.0 / (2.0 * norm), mixed]
    concurrences = [1.0] * (n - 2) + [partial, 1.0, partial]
    return _report(channel_entropy(ch), probabilities, concurrences)


def case2_metrics(n: int, y: float) -> ResourceReport:
    """
    Case II: a_0 = ... = a_{n-3} = 0, a_{n-2} = y a_n.

    At y = 0 the curve takes its y -> 0+ limit.
    """
    ch = case2_channel(n, y)
    norm = 2.0 + y**2
    outer = (1.0 + y**2) / (8.0 * norm)

    probabilities = [0.0] * (n - 3) + [
        outer,
        (1.0 + y**2) / (4.0 * norm),
        1.0 / (2.0 * norm),
        outer,
    ]
    concurrences = [1.0] * (n - 3) + [
        np.sqrt(1.0 - (1.0 + y**2) ** 2 / 16.0),
        0.5 * np.sqrt(3.0 + 2.0 * y**2 - y**4),
        1.0,
        0.25 * np.sqrt(7.0 + 6.0 * y**2 - y**4),
    ]
    return _report(channel_entropy(ch), probabilities, concurrences)


def min_single_measurement_entanglement(d: int) -> float:
    """Limit entanglement of the psi_{n+-} pair for qudit dimension d >= 3."""
    if d < 3:
        raise RejectedInput(f"dimension must be at least 3, got {d}")
    return binary_entropy(2.0 ** -(d - 3) - 2.0 ** -(2 * d - 4))


def limit_success_probability(d: int) -> float:
    """Limit probability of the psi_{n+-} pair for qudit dimension d >= 3."""
    if d < 3:
        raise RejectedInput(f"dimension must be at least 3, got {d}")
    return 2.0 ** -(d - 1)
