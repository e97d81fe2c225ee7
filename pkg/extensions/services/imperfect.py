"""
Imperfect Qutrit Teleportation Service

Sends a full qutrit through a two-qutrit channel (a_0, a_1, a_1) using nine
phase-twisted measurement vectors. Inputs with gamma = 0 arrive perfectly;
general inputs arrive with a state-dependent fidelity.
"""

import logging
from typing import List, Sequence, Tuple, Union

import numpy as np

from channel.services.schmidt import channel_state
from channel.types import SchmidtChannel
from corelin.constants import RESIDUAL_TOL
from corelin.exceptions import RejectedInput
from corelin.services.linalg import (
    complete_orthonormal,
    correction_operator,
    fidelity,
    project_sender,
    tensor,
)
from corelin.services.random_states import HaarMonteCarlo
from corelin.types import Operator, StateVec
from extensions.types import ImperfectOutcome, QutritInput
from protocol.services.basis import cascade_params, cascade_unitary

logger = logging.getLogger(__name__)

QUTRIT = 3
OMEGA = np.exp(2j * np.pi / 3)


def require_qutrit_channel(ch: SchmidtChannel) -> None:
    if ch.n != 2:
        raise RejectedInput(f"qutrit teleportation needs an n=2 channel, got n={ch.n}")


def _as_input(amps: Union[QutritInput, Sequence[complex]]) -> QutritInput:
    if isinstance(amps, QutritInput):
        return amps
    try:
        return QutritInput(amps=tuple(amps))
    except ValueError as e:
        raise RejectedInput(str(e)) from e


def imperfect_basis(ch: SchmidtChannel) -> List[StateVec]:
    """
    Nine measurement vectors u_0 G_{mj}, ordered (m, j) = (0,0), (0,1), ..., (2,2).

    G_{mj} = sum_k omega^{jk} |k+m mod 3, k> / sqrt(3); u_0 rotates
    span{|02>, |11>} by the channel's (c_0, s_0).
    """
    require_qutrit_channel(ch)
    params = cascade_params(ch)
    rotation = cascade_unitary(2, 0, params.c[0], params.s[0])
    # |0k>, |1k> share indices 0..5 in qubit x qutrit and qutrit x qutrit
    u0 = np.eye(QUTRIT * QUTRIT, dtype=np.complex128)
    u0[: rotation.shape[0], : rotation.shape[0]] = rotation
    vectors = []
    for m in range(QUTRIT):
        for j in range(QUTRIT):
            bell = np.zeros(QUTRIT * QUTRIT, dtype=np.complex128)
            for k in range(QUTRIT):
                bell[QUTRIT * ((k + m) % QUTRIT) + k] = OMEGA ** (j * k)
            vectors.append(StateVec(u0 @ bell / np.sqrt(QUTRIT)))
    return vectors


def imperfect_collapsed_states(
    ch: SchmidtChannel, amps: Union[QutritInput, Sequence[complex]]
) -> List[StateVec]:
    """Unnormalized receiver states for a qutrit input, in basis order."""
    qutrit = _as_input(amps)
    psi = tensor(StateVec(qutrit.vector), channel_state(ch))
    return [project_sender(bra, psi, QUTRIT) for bra in imperfect_basis(ch)]


def imperfect_outcomes(ch: SchmidtChannel) -> List[ImperfectOutcome]:
    """
    Probe branches and channel-only corrections for the nine outcomes.

    The correction maps the alpha-branch to |0>, the beta-branch to |1> and
    the part of the gamma-branch orthogonal to both to |2>.
    """
    require_qutrit_channel(ch)
    shared = channel_state(ch)
    probes = [tensor(StateVec.basis(k, QUTRIT), shared) for k in range(QUTRIT)]
    outcomes = []
    for index, bra in enumerate(imperfect_basis(ch)):
        branches = np.column_stack(
            [project_sender(bra, probe, QUTRIT).amplitudes for probe in probes]
        )
        seeds: List[StateVec] = []
        for column in branches.T:
            residual = column.copy()
            for seed in seeds:
                residual = residual - np.vdot(seed.amplitudes, residual) * seed.amplitudes
            if np.linalg.norm(residual) > RESIDUAL_TOL:
                seeds.append(StateVec(residual).normalized())
        correction = correction_operator(complete_orthonormal(seeds, QUTRIT))
        m, j = divmod(index, QUTRIT)
        outcomes.append(ImperfectOutcome(m=m, j=j, branches=branches, correction=correction))
    return outcomes


def imperfect_corrections(ch: SchmidtChannel) -> List[Operator]:
    return [outcome.correction for outcome in imperfect_outcomes(ch)]


def imperfect_outcome_fidelities(
    ch: SchmidtChannel, amps: Union[QutritInput, Sequence[complex]]
) -> List[Tuple[float, float]]:
    """(probability, fidelity) of each outcome for one qutrit input."""
    qutrit = _as_input(amps)
    target = StateVec(qutrit.vector)
    results = []
    for outcome in imperfect_outcomes(ch):
        collapsed = StateVec(outcome.branches @ qutrit.vector)
        probability = collapsed.norm**2
        if probability <= RESIDUAL_TOL**2:
            results.append((0.0, 0.0))
            continue
        corrected = outcome.correction.apply(collapsed.normalized())
        results.append((float(probability), fidelity(target, corrected)))
    return results


def imperfect_average_fidelity_closed(ch: SchmidtChannel) -> float:
    """Reference curve 7/3 + (5/2)a_1^2 + a_0 a_1 - 5/(3(1 - a_1^2)), rising from 1/4 to 1."""
    require_qutrit_channel(ch)
    a0, a1 = ch.coeffs[0], ch.coeffs[1]
    return float(7.0 / 3.0 + 2.5 * a1**2 + a0 * a1 - 5.0 / (3.0 * (1.0 - a1**2)))


def imperfect_average_fidelity_haar(ch: SchmidtChannel) -> float:
    """Haar and outcome average of the probe-corrected fidelity."""
    require_qutrit_channel(ch)
    a0, a1 = ch.coeffs[0], ch.coeffs[1]
    return float(1.0 + 0.5 * a1**2 + a0 * a1 - 1.0 / (3.0 * (1.0 - a1**2)))


def imperfect_fidelity_samples(
    outcomes: Sequence[ImperfectOutcome], states: np.ndarray
) -> np.ndarray:
    """Outcome-averaged fidelity for each row of states."""
    total = np.zeros(states.shape[0])
    for outcome in outcomes:
        transfer = outcome.correction.entries @ outcome.branches
        overlaps = np.einsum("ni,ij,nj->n", states.conj(), transfer, states)
        total += np.abs(overlaps) ** 2
    return total


def imperfect_fidelity_estimate(
    ch: SchmidtChannel, samples: int, rng_seed: int
) -> Tuple[float, float]:
    """Monte Carlo (mean, standard error) of the average fidelity."""
    outcomes = imperfect_outcomes(ch)
    monte_carlo = HaarMonteCarlo(dim=QUTRIT, seed=rng_seed, samples=samples)
    return monte_carlo.estimate(lambda states: imperfect_fidelity_samples(outcomes, states))


def imperfect_teleport_mc(ch: SchmidtChannel, samples: int, rng_seed: int) -> float:
    mean, _ = imperfect_fidelity_estimate(ch, samples, rng_seed)
    return mean
