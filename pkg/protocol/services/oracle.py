"""
Brute-force verification paths: projection-only teleportation for any
basis, and the standard Bell-state scheme embedded in a qutrit receiver.
"""

import logging
from typing import List, Optional

import numpy as np

from channel.services.schmidt import channel_state
from channel.types import SchmidtChannel
from corelin.services.linalg import fidelity, project_sender, tensor
from corelin.types import StateVec
from protocol.services.basis import build_basis_cascade
from protocol.services.teleport import (
    VANISHED_PROBABILITY,
    require_qubit,
    build_outcome_branches,
    embed_qubit,
    teleport_with_branches,
)
from protocol.types import MeasurementBasis, OutcomeBranches, OutcomeLabel, TeleportOutcome

logger = logging.getLogger(__name__)

SQRT_HALF = np.sqrt(0.5)
RECEIVER_DIM = 3


def oracle_teleport(
    ch: SchmidtChannel,
    alpha: complex,
    beta: complex,
    basis: Optional[MeasurementBasis] = None,
) -> List[TeleportOutcome]:
    """
    Teleport by explicit tensor products and partial projections.

    Args:
        ch: Channel
        alpha: Amplitude of |0>
        beta: Amplitude of |1>
        basis: Measurement basis; the cascade basis when omitted

    Returns:
        One TeleportOutcome per basis vector, in basis order
    """
    require_qubit(alpha, beta)
    basis = basis or build_basis_cascade(ch)
    dim3 = ch.dim
    shared = channel_state(ch)
    psi = tensor(StateVec([alpha, beta]), shared)
    probe_zero = tensor(StateVec.basis(0, 2), shared)
    probe_one = tensor(StateVec.basis(1, 2), shared)
    target = embed_qubit(alpha, beta, dim3)

    outcomes = []
    for label, bra in zip(basis.labels, basis.vectors):
        zero = project_sender(bra, probe_zero, dim3).amplitudes
        one = project_sender(bra, probe_one, dim3).amplitudes
        probe_probability = max(np.vdot(zero, zero).real, np.vdot(one, one).real)
        branch = build_outcome_branches(label, zero, one, probe_probability)

        collapsed = project_sender(bra, psi, dim3)
        if branch.vanished:
            outcomes.append(
                TeleportOutcome(
                    label=label,
                    probability=0.0,
                    collapsed=StateVec.zeros(dim3),
                    correction=branch.correction,
                    fidelity=0.0,
                    vanished=True,
                )
            )
            continue
        probability = collapsed.norm**2
        if probability <= VANISHED_PROBABILITY:
            # input-specific zero: the outcome cannot occur for this qubit
            normalized = StateVec.zeros(dim3)
            outcome_fidelity = 0.0
        else:
            normalized = collapsed.normalized()
            outcome_fidelity = fidelity(target, branch.correction.apply(normalized))
        outcomes.append(
            TeleportOutcome(
                label=label,
                probability=float(probability),
                collapsed=normalized,
                correction=branch.correction,
                fidelity=outcome_fidelity,
            )
        )
    return outcomes


def bell_channel_state() -> StateVec:
    """(|00> + |11>)/sqrt(2) on a qubit and a qutrit receiver."""
    amplitudes = np.zeros(2 * RECEIVER_DIM)
    amplitudes[[0, RECEIVER_DIM + 1]] = SQRT_HALF
    return StateVec(amplitudes)


def bell_basis() -> MeasurementBasis:
    """Phi+-, Psi+- labelled (0,+-) and (1,+-)."""
    phi = np.array([[1, 0, 0, 1], [1, 0, 0, -1]]) * SQRT_HALF
    psi = np.array([[0, 1, 1, 0], [0, 1, -1, 0]]) * SQRT_HALF
    vectors = tuple(StateVec(v) for v in np.vstack([phi, psi]))
    labels = tuple(OutcomeLabel(j, sign) for j in (0, 1) for sign in ("+", "-"))
    return MeasurementBasis(vectors=vectors, labels=labels)


def standard_bell_branches() -> List[OutcomeBranches]:
    shared = bell_channel_state()
    probe_zero = tensor(StateVec.basis(0, 2), shared)
    probe_one = tensor(StateVec.basis(1, 2), shared)
    basis = bell_basis()
    branches = []
    for label, bra in zip(basis.labels, basis.vectors):
        zero = project_sender(bra, probe_zero, RECEIVER_DIM).amplitudes
        one = project_sender(bra, probe_one, RECEIVER_DIM).amplitudes
        branches.append(build_outcome_branches(label, zero, one, np.vdot(zero, zero).real))
    return branches


def standard_bell_teleport(alpha: complex, beta: complex) -> List[TeleportOutcome]:
    """Original Bell-state scheme with the receiver embedded in a qutrit."""
    return teleport_with_branches(standard_bell_branches(), alpha, beta)
