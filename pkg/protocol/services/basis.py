"""
Measurement Basis Service

Builds Alice's 2(n+1)-outcome joint measurement for a channel, either by
rotating the translation-strategy basis with the cascade u_0, ..., u_{n-2}
or by evaluating the closed-form vectors directly. Index of |q k> is
q(n+1) + k.
"""

import logging
from typing import List

import numpy as np

from channel.types import SchmidtChannel
from corelin.exceptions import RejectedInput
from corelin.types import StateVec
from protocol.types import CascadeParams, MeasurementBasis, outcome_labels

logger = logging.getLogger(__name__)

SQRT_HALF = np.sqrt(0.5)


def basis_index(q: int, k: int, n: int) -> int:
    return int(np.ravel_multi_index((q, k), (2, n + 1)))


def cascade_params(ch: SchmidtChannel) -> CascadeParams:
    """
    c_k = sqrt((1 + a_k^2/a_{k+1}^2)/2), s_k = sqrt((1 - a_k^2/a_{k+1}^2)/2).

    c_k = 1, s_k = 0 whenever a_{k+1} = 0.
    """
    a = ch.coeffs
    c = np.ones(ch.n)
    s = np.zeros(ch.n)
    for k in range(ch.n - 1):
        if a[k + 1] == 0.0:
            continue
        ratio = min(1.0, (a[k] / a[k + 1]) ** 2)
        c[k] = np.sqrt((1.0 + ratio) / 2.0)
        s[k] = np.sqrt((1.0 - ratio) / 2.0)
    return CascadeParams(c=c, s=s)


def extreme_basis(n: int, tau: int) -> MeasurementBasis:
    """
    Translation-strategy basis for the vertex channel with first tau
    coefficients zero.

    Args:
        n: Highest level of the qudit
        tau: Number of vanished levels, 0 <= tau <= n-1

    Returns:
        MeasurementBasis with Bell pairs for j >= tau and product kets
        |0k>, |1k> labelled (k,+), (k,-) for k < tau
    """
    if n < 2:
        raise RejectedInput(f"n must be at least 2, got {n}")
    if not 0 <= tau <= n - 1:
        raise RejectedInput(f"tau must lie in [0, {n - 1}], got {tau}")

    dim = 2 * (n + 1)
    vectors: List[StateVec] = []
    for label in outcome_labels(n):
        amplitudes = np.zeros(dim, dtype=np.complex128)
        if label.j < tau:
            qubit = 0 if label.sign == "+" else 1
            amplitudes[basis_index(qubit, label.j, n)] = 1.0
        else:
            partner = label.j + 1 if label.j < n else tau
            amplitudes[basis_index(0, label.j, n)] = SQRT_HALF
            amplitudes[basis_index(1, partner, n)] = label.parity * SQRT_HALF
        vectors.append(StateVec(amplitudes))
    return MeasurementBasis(vectors=tuple(vectors), labels=tuple(outcome_labels(n)))


def cascade_unitary(n: int, k: int, c: float, s: float) -> np.ndarray:
    """u_k: rotation by (c, s) in span{|0n>, |1,k+1>}, identity elsewhere."""
    u = np.eye(2 * (n + 1), dtype=np.complex128)
    top, partner = basis_index(0, n, n), basis_index(1, k + 1, n)
    u[top, top] = c
    u[partner, top] = s
    u[partner, partner] = c
    u[top, partner] = -s
    return u


def build_basis_cascade(ch: SchmidtChannel) -> MeasurementBasis:
    """Apply u_{n-2} ... u_0 to the tau = 0 translation-strategy basis."""
    params = cascade_params(ch)
    start = extreme_basis(ch.n, 0)
    rows = start.matrix
    for k in range(ch.n - 1):
        rows = rows @ cascade_unitary(ch.n, k, params.c[k], params.s[k]).T
    logger.debug(f"Cascade basis built for n={ch.n}")
    return MeasurementBasis(
        vectors=tuple(StateVec(row) for row in rows), labels=start.labels
    )


def build_basis_closed_form(ch: SchmidtChannel) -> MeasurementBasis:
    """Evaluate psi_{j+-} directly from the channel's cascade parameters."""
    n = ch.n
    params = cascade_params(ch)
    c, s = params.c, params.s
    dim = 2 * (n + 1)
    labels = outcome_labels(n)

    vectors: List[StateVec] = []
    for label in labels:
        j, sign = label.j, label.parity
        amplitudes = np.zeros(dim, dtype=np.complex128)
        if j < n:
            amplitudes[basis_index(0, j, n)] = 1.0
            amplitudes[basis_index(1, j + 1, n)] += sign * c[j]
            amplitudes[basis_index(0, n, n)] += -sign * s[j] * np.prod(c[j + 1 : n - 1])
            for l in range(j + 1, n - 1):
                weight = np.prod(c[j + 1 : l]) * s[l]
                amplitudes[basis_index(1, l + 1, n)] += -sign * s[j] * weight
        else:
            amplitudes[basis_index(0, n, n)] = np.prod(c[: n - 1])
            for l in range(n - 1):
                amplitudes[basis_index(1, l + 1, n)] += np.prod(c[:l]) * s[l]
            amplitudes[basis_index(1, 0, n)] += sign
        vectors.append(StateVec(SQRT_HALF * amplitudes))
    return MeasurementBasis(vectors=tuple(vectors), labels=tuple(labels))
