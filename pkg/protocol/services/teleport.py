"""
Teleportation Service

Closed-form collapsed states, outcome probabilities, Bob's probe-built
corrections and the end-to-end teleportation pipeline.
"""

import logging
from typing import List, Sequence, Tuple

import numpy as np
from django.conf import settings

from channel.types import SchmidtChannel
from corelin.constants import NORM_TOL
from corelin.exceptions import RejectedInput
from corelin.services.linalg import complete_orthonormal, correction_operator, fidelity
from corelin.types import Operator, StateVec
from protocol.services.basis import cascade_params
from protocol.types import OutcomeBranches, OutcomeLabel, TeleportOutcome, outcome_labels

logger = logging.getLogger(__name__)

SQRT_HALF = np.sqrt(0.5)
VANISHED_PROBABILITY = getattr(settings, "TELEPORT_VANISHED_PROBABILITY", 1e-14)


def validate_qubit(alpha: complex, beta: complex) -> Tuple[bool, str]:
    """
    Validate an input qubit alpha|0> + beta|1>.

    Returns:
        Tuple of (is_valid, error_message)
    """
    total = abs(alpha) ** 2 + abs(beta) ** 2
    if not np.isfinite(total):
        return False, "qubit amplitudes must be finite."
    if abs(total - 1.0) > NORM_TOL:
        return False, f"input qubit is not normalized (|alpha|^2 + |beta|^2 = {total!r})."
    return True, ""


def require_qubit(alpha: complex, beta: complex) -> None:
    is_valid, error_message = validate_qubit(alpha, beta)
    if not is_valid:
        raise RejectedInput(error_message)


def _branch_vectors(ch: SchmidtChannel) -> List[Tuple[np.ndarray, np.ndarray]]:
    """Closed-form (alpha-branch, beta-branch) receiver vectors per outcome."""
    n, a = ch.n, ch.coeffs
    params = cascade_params(ch)
    c, s = params.c, params.s

    branches = []
    for label in outcome_labels(n):
        j, sign = label.j, label.parity
        zero = np.zeros(n + 1)
        one = np.zeros(n + 1)
        if j < n:
            zero[j] = a[j]
            zero[n] += -sign * s[j] * np.prod(c[j + 1 : n - 1]) * a[n]
            one[j + 1] = c[j] * a[j + 1]
            for l in range(j + 1, n - 1):
                one[l + 1] -= s[j] * np.prod(c[j + 1 : l]) * s[l] * a[l + 1]
            one *= sign
        else:
            zero[n] = np.prod(c[: n - 1]) * a[n]
            for l in range(n - 1):
                one[l + 1] = np.prod(c[:l]) * s[l] * a[l + 1]
            one[0] += sign * a[0]
        branches.append((SQRT_HALF * zero, SQRT_HALF * one))
    return branches


def collapsed_states(ch: SchmidtChannel, alpha: complex, beta: complex) -> List[StateVec]:
    """
    Unnormalized receiver states for every outcome, in label order.

    Args:
        ch: Channel
        alpha: Amplitude of |0> in the input qubit
        beta: Amplitude of |1> in the input qubit

    Returns:
        2(n+1) unnormalized StateVec of dimension n+1
    """
    require_qubit(alpha, beta)
    return [StateVec(alpha * zero + beta * one) for zero, one in _branch_vectors(ch)]


def outcome_probabilities(ch: SchmidtChannel) -> np.ndarray:
    """P_{j+-} in label order; independent of the input qubit."""
    n, a = ch.n, ch.coeffs
    params = cascade_params(ch)
    c, s = params.c, params.s
    probabilities = np.empty(2 * (n + 1))
    for j in range(n):
        tail = np.prod(c[j + 1 : n - 1] ** 2)
        probabilities[2 * j : 2 * j + 2] = 0.5 * (a[j] ** 2 + s[j] ** 2 * tail * a[n] ** 2)
    probabilities[2 * n :] = 0.5 * np.prod(c[: n - 1] ** 2) * a[n] ** 2
    return probabilities


def build_outcome_branches(
    label: OutcomeLabel,
    zero: np.ndarray,
    one: np.ndarray,
    probability: float,
) -> OutcomeBranches:
    """
    Bundle an outcome's branches with the correction built from them.

    The correction sends the normalized alpha-branch to |0> and the
    normalized beta-branch to |1>; it is the identity for vanished outcomes.
    """
    dim = zero.size
    if probability <= VANISHED_PROBABILITY:
        logger.debug(f"Outcome {label} vanished (p={probability!r})")
        return OutcomeBranches(
            label=label,
            probability=float(probability),
            zero_branch=zero,
            one_branch=one,
            correction=Operator.identity(dim),
            vanished=True,
        )

    seeds = [StateVec(zero).normalized()]
    residual = one - np.vdot(seeds[0].amplitudes, one) * seeds[0].amplitudes
    if np.linalg.norm(residual) > np.sqrt(VANISHED_PROBABILITY):
        seeds.append(StateVec(residual).normalized())
    correction = correction_operator(complete_orthonormal(seeds, dim))
    return OutcomeBranches(
        label=label,
        probability=float(probability),
        zero_branch=zero,
        one_branch=one,
        correction=correction,
        vanished=False,
    )


def protocol_branches(ch: SchmidtChannel) -> List[OutcomeBranches]:
    """Channel-only outcome data; reuse it across many input qubits."""
    probabilities = outcome_probabilities(ch)
    probe_zero = collapsed_states(ch, 1.0, 0.0)
    probe_one = collapsed_states(ch, 0.0, 1.0)
    branches = [
        build_outcome_branches(label, zero.amplitudes, one.amplitudes, p)
        for label, zero, one, p in zip(outcome_labels(ch.n), probe_zero, probe_one, probabilities)
    ]
    vanished = sum(b.vanished for b in branches)
    if vanished:
        logger.info(f"{vanished} of {len(branches)} outcomes vanished for n={ch.n}")
    return branches


def bob_corrections(ch: SchmidtChannel) -> List[Operator]:
    """Receiver corrections in label order; depend on the channel only."""
    return [branch.correction for branch in protocol_branches(ch)]


def embed_qubit(alpha: complex, beta: complex, dim: int) -> StateVec:
    amplitudes = np.zeros(dim, dtype=np.complex128)
    amplitudes[:2] = alpha, beta
    return StateVec(amplitudes)


def teleport_with_branches(
    branches: Sequence[OutcomeBranches], alpha: complex, beta: complex
) -> List[TeleportOutcome]:
    """
    Teleport one qubit using precomputed outcome branches.

    Args:
        branches: Output of protocol_branches or standard_bell_branches
        alpha: Amplitude of |0>
        beta: Amplitude of |1>

    Returns:
        One TeleportOutcome per branch, same order
    """
    require_qubit(alpha, beta)
    dim = branches[0].zero_branch.size
    target = embed_qubit(alpha, beta, dim)

    outcomes = []
    for branch in branches:
        if branch.vanished:
            outcomes.append(
                TeleportOutcome(
                    label=branch.label,
                    probability=0.0,
                    collapsed=StateVec.zeros(dim),
                    correction=branch.correction,
                    fidelity=0.0,
                    vanished=True,
                )
            )
            continue
        collapsed = branch.collapse(alpha, beta)
        probability = collapsed.norm**2
        normalized = collapsed.normalized()
        outcomes.append(
            TeleportOutcome(
                label=branch.label,
                probability=float(probability),
                collapsed=normalized,
                correction=branch.correction,
                fidelity=fidelity(target, branch.correction.apply(normalized)),
            )
        )
    return outcomes


def run_teleportation(ch: SchmidtChannel, alpha: complex, beta: complex) -> List[TeleportOutcome]:
    """Full pipeline: branches, projection, corrections and per-outcome fidelity."""
    require_qubit(alpha, beta)
    outcomes = teleport_with_branches(protocol_branches(ch), alpha, beta)
    worst = min(o.fidelity for o in outcomes if not o.vanished)
    logger.info(f"Teleported through n={ch.n} channel, worst fidelity {worst:.15f}")
    return outcomes
