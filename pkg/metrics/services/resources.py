"""
Resource Metrics Service

Concurrences of the measurement vectors, the entanglement consumed by
Alice's measurement and the classical bits sent to Bob.
"""

import logging
from typing import List

import numpy as np
from scipy.stats import entropy

from channel.services.schmidt import channel_entropy
from channel.types import SchmidtChannel
from corelin.constants import NORM_TOL
from corelin.exceptions import RejectedInput
from corelin.types import StateVec
from metrics.types import ResourceReport
from protocol.services.basis import build_basis_cascade, cascade_params
from protocol.services.teleport import outcome_probabilities

logger = logging.getLogger(__name__)


def binary_entropy(t: float) -> float:
    """
    H(t): entropy of the eigenvalues (1 +- sqrt(1 - t))/2, in bits.

    Args:
        t: Squared concurrence in [0, 1]
    """
    if not -NORM_TOL <= t <= 1.0 + NORM_TOL:
        raise RejectedInput(f"H(t) needs t in [0, 1], got {t}")
    root = np.sqrt(1.0 - min(1.0, max(0.0, t)))
    return float(entropy([(1.0 - root) / 2.0, (1.0 + root) / 2.0], base=2))


def concurrence_oracle(state: StateVec) -> float:
    """Pure-state concurrence sqrt(2(1 - Tr rho_A^2)) with rho_A the qubit marginal."""
    if state.dim % 2:
        raise RejectedInput(f"qubit-qudit state needs an even dimension, got {state.dim}")
    state.require_normalized("basis vector")
    block = state.amplitudes.reshape(2, state.dim // 2)
    reduced = block @ block.conj().T
    purity = float(np.real(np.trace(reduced @ reduced)))
    return float(min(1.0, np.sqrt(max(0.0, 2.0 * (1.0 - purity)))))


def basis_concurrences_closed(ch: SchmidtChannel) -> List[float]:
    """Concurrence of every measurement vector, in outcome order."""
    n = ch.n
    params = cascade_params(ch)
    c, s = params.c, params.s
    values = []
    for j in range(n):
        squared = 1.0 - s[j] ** 4 * np.prod(c[j + 1 : n - 1] ** 4)
        values.append(float(np.sqrt(max(0.0, squared))))
    head = np.prod(c[: n - 1])
    values.append(float(head * np.sqrt(2.0 - head**2)))
    return [value for value in values for _ in range(2)]


def entropy_from_concurrence(concurrence: float) -> float:
    """Entanglement entropy H(C^2) of a qubit-qudit pure state."""
    if not -NORM_TOL <= concurrence <= 1.0 + NORM_TOL:
        raise RejectedInput(f"concurrence must lie in [0, 1], got {concurrence}")
    return binary_entropy(concurrence**2)


def basis_concurrences_oracle(ch: SchmidtChannel) -> List[float]:
    return [concurrence_oracle(v) for v in build_basis_cascade(ch).vectors]


def measurement_entanglement(ch: SchmidtChannel, oracle: bool = False) -> float:
    """
    Probability-weighted entanglement of Alice's measurement vectors.

    Args:
        ch: Channel
        oracle: Use concurrences of the explicitly built basis instead of the
            closed forms
    """
    concurrences = basis_concurrences_oracle(ch) if oracle else basis_concurrences_closed(ch)
    probabilities = outcome_probabilities(ch)
    entropies = np.array([entropy_from_concurrence(C) for C in concurrences])
    return float(np.dot(probabilities, entropies))


def classical_bits(ch: SchmidtChannel) -> float:
    """Shannon entropy of Alice's outcome distribution."""
    return float(entropy(outcome_probabilities(ch), base=2))


def resource_report(ch: SchmidtChannel) -> ResourceReport:
    probabilities = outcome_probabilities(ch)
    concurrences = basis_concurrences_closed(ch)
    entropies = [entropy_from_concurrence(C) for C in concurrences]
    report = ResourceReport(
        channel_entropy=channel_entropy(ch),
        measurement_entanglement=float(np.dot(probabilities, entropies)),
        classical_bits=float(entropy(probabilities, base=2)),
        concurrences=tuple(concurrences),
        probabilities=tuple(float(p) for p in probabilities),
    )
    logger.debug(
        f"Resources n={ch.n}: E={report.channel_entropy:.6f} "
        f"E12={report.measurement_entanglement:.6f} H12={report.classical_bits:.6f}"
    )
    return report
