"""
Phase Noise Service

Inhomogeneous dephasing of the receiver qutrit while it travels to Bob.
Each ket picks up a random phase with <exp(i theta_j)> = 1 - q_j: with
probability q_j the phase is uniform, otherwise it is zero. Fidelity then
falls linearly, <F> = 1 - q_j f_j, for noise on a single ket j.
"""

import logging
from typing import List, Sequence, Tuple, Union

import numpy as np

from channel.types import SchmidtChannel
from corelin.constants import ORTHO_TOL
from corelin.exceptions import DimensionMismatch, RejectedInput
from corelin.services.random_states import HaarMonteCarlo
from corelin.types import StateVec
from extensions.services.imperfect import QUTRIT, require_qutrit_channel
from extensions.types import NoiseSpec
from protocol.services.oracle import standard_bell_branches
from protocol.services.teleport import protocol_branches
from protocol.types import OutcomeBranches

logger = logging.getLogger(__name__)

QUBIT = 2


def validate_density(rho: np.ndarray) -> Tuple[bool, str]:
    """
    Validate a single-qutrit density operator.

    Returns:
        Tuple of (is_valid, error_message)
    """
    if rho.shape != (QUTRIT, QUTRIT):
        return False, f"density operator must be 3x3, got shape {rho.shape}."
    if not np.all(np.isfinite(rho)):
        return False, "density operator entries must be finite."
    if np.max(np.abs(rho - rho.conj().T)) > ORTHO_TOL:
        return False, "density operator is not Hermitian."
    if abs(np.trace(rho) - 1.0) > ORTHO_TOL:
        return False, "density operator does not have unit trace."
    if np.min(np.linalg.eigvalsh(rho)) < -ORTHO_TOL:
        return False, "density operator is not positive semidefinite."
    return True, ""


def apply_phase_noise(rho_or_state: Union[StateVec, np.ndarray], noise: NoiseSpec) -> np.ndarray:
    """
    Average the random phases into a 3x3 density operator.

    Args:
        rho_or_state: Normalized qutrit state or unit-trace density operator
        noise: Per-ket dephasing strengths

    Returns:
        Density operator with coherence <k|rho|l> scaled by (1-q_k)(1-q_l)
    """
    if isinstance(rho_or_state, StateVec):
        if rho_or_state.dim != QUTRIT:
            raise DimensionMismatch(f"phase noise acts on a qutrit, got dim {rho_or_state.dim}")
        rho_or_state.require_normalized("receiver state")
        rho = np.outer(rho_or_state.amplitudes, rho_or_state.amplitudes.conj())
    else:
        rho = np.asarray(rho_or_state, dtype=np.complex128)
        is_valid, error_message = validate_density(rho)
        if not is_valid:
            raise RejectedInput(error_message)
    return rho * noise.coherence_factors()


def noise_response(ch: SchmidtChannel, j: int, printed_labels: bool = False) -> float:
    """
    Linear fidelity loss per unit dephasing of receiver ket j.

    Args:
        ch: Two-qutrit channel (a_0, a_1, a_1)
        j: Ket index 0, 1 or 2
        printed_labels: Return the formula under the printed subscript
            convention, where the ket-0 and ket-1/2 expressions are exchanged

    Returns:
        f_j with <F> = 1 - q_j f_j
    """
    require_qutrit_channel(ch)
    if j not in (0, 1, 2):
        raise RejectedInput(f"ket index must be 0, 1 or 2, got {j}")
    t = ch.coeffs[0] ** 2
    populated = 2.0 * t * (3.0 - 5.0 * t) / (3.0 * (1.0 + t))
    shared = (1.0 + 2.0 * t - 7.0 * t**2) / (3.0 * (1.0 + t))
    use_populated = (j == 0) != printed_labels
    return float(populated if use_populated else shared)


def standard_noise_response(j: int) -> float:
    """Responses of the Bell-state scheme: 1/3 for kets 0 and 1, 0 for ket 2."""
    if j not in (0, 1, 2):
        raise RejectedInput(f"ket index must be 0, 1 or 2, got {j}")
    return 0.0 if j == 2 else 1.0 / 3.0


def noise_fidelity_samples(
    branches: Sequence[OutcomeBranches], noise: NoiseSpec, qubits: np.ndarray
) -> np.ndarray:
    """
    Outcome-averaged fidelity under noise for each row of qubits.

    The corrected ideal state is Bob's perfect output, so the fidelity of an
    outcome equals the overlap of the noisy collapsed state with the ideal one.
    Vectorised form of psi^H apply_phase_noise(psi, noise) psi over all rows:
    with w = |psi|^2 that overlap is w^T D w for D = noise.coherence_factors().
    """
    factors = noise.coherence_factors()
    total = np.zeros(qubits.shape[0])
    for branch in branches:
        if branch.vanished:
            continue
        collapsed = np.outer(qubits[:, 0], branch.zero_branch) + np.outer(
            qubits[:, 1], branch.one_branch
        )
        weights = np.abs(collapsed) ** 2
        kept = np.einsum("nk,kl,nl->n", weights, factors, weights)
        total += kept / weights.sum(axis=1)
    return total


def _estimate(
    branches: List[OutcomeBranches], noise: NoiseSpec, samples: int, rng_seed: int
) -> Tuple[float, float]:
    monte_carlo = HaarMonteCarlo(dim=QUBIT, seed=rng_seed, samples=samples)
    return monte_carlo.estimate(lambda qubits: noise_fidelity_samples(branches, noise, qubits))


def noise_fidelity_estimate(
    ch: SchmidtChannel, noise: NoiseSpec, samples: int, rng_seed: int
) -> Tuple[float, float]:
    """Monte Carlo (mean, standard error) of the noisy average fidelity."""
    require_qutrit_channel(ch)
    return _estimate(protocol_branches(ch), noise, samples, rng_seed)


def noise_fidelity_mc(ch: SchmidtChannel, noise: NoiseSpec, samples: int, rng_seed: int) -> float:
    mean, _ = noise_fidelity_estimate(ch, noise, samples, rng_seed)
    return mean


def standard_noise_fidelity_mc(
    noise: NoiseSpec, samples: int, rng_seed: int
) -> Tuple[float, float]:
    """Monte Carlo (mean, standard error) for the Bell-state scheme."""
    return _estimate(standard_bell_branches(), noise, samples, rng_seed)


def _fit(mean: float, stderr: float, q: float) -> Tuple[float, float]:
    if not 0.0 < q <= 1.0:
        raise RejectedInput(f"fit needs a dephasing strength in (0, 1], got {q}")
    return (1.0 - mean) / q, stderr / q


def fit_noise_response(
    ch: SchmidtChannel, j: int, q: float, samples: int, rng_seed: int
) -> Tuple[float, float]:
    """
    Estimate f_j from single-ket noise of strength q.

    Returns:
        Tuple of (fitted response, standard error)
    """
    mean, stderr = noise_fidelity_estimate(ch, NoiseSpec.single(j, q), samples, rng_seed)
    return _fit(mean, stderr, q)


def fit_standard_noise_response(
    j: int, q: float, samples: int, rng_seed: int
) -> Tuple[float, float]:
    mean, stderr = standard_noise_fidelity_mc(NoiseSpec.single(j, q), samples, rng_seed)
    return _fit(mean, stderr, q)
