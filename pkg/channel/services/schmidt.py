"""
Schmidt Channel Service

Builds and validates the two-qudit channels sum_i a_i |ii>: hand-typed
coefficients, vertex states, the Case I / Case II families, staircase limits
and random channels for scatter scans.
"""

import logging
from typing import List, Sequence

import numpy as np
from scipy.stats import entropy

from channel.types import SchmidtChannel
from corelin.constants import NORM_TOL, RENORMALIZE_WINDOW
from corelin.exceptions import RejectedInput
from corelin.types import StateVec

logger = logging.getLogger(__name__)


def new_channel(coeffs: Sequence[float]) -> SchmidtChannel:
    """
    Validate coefficients, renormalizing small normalization errors.

    Args:
        coeffs: Ascending Schmidt coefficients a_0..a_n

    Returns:
        SchmidtChannel

    Raises:
        RejectedInput: naming the violated invariant
    """
    try:
        values = np.asarray(coeffs, dtype=float)
    except (TypeError, ValueError) as e:
        raise RejectedInput(f"coefficients must be real numbers: {e}") from e

    if values.ndim == 1 and values.size and np.all(np.isfinite(values)):
        total = float(np.sum(values**2))
        if NORM_TOL < abs(total - 1.0) <= RENORMALIZE_WINDOW:
            logger.warning(f"Renormalizing channel coefficients (sum of squares {total!r})")
            values = values / np.sqrt(total)
    return SchmidtChannel(values)


def _check_n(n: int, minimum: int = 2) -> None:
    if n < minimum:
        raise RejectedInput(f"n must be at least {minimum}, got {n}")


def _check_unit(name: str, value: float) -> None:
    if not 0.0 <= value <= 1.0:
        raise RejectedInput(f"{name} must lie in [0, 1], got {value}")


def vertex_channel(n: int, tau: int) -> SchmidtChannel:
    """Maximally entangled state on the top n+1-tau levels."""
    _check_n(n)
    if not 0 <= tau <= n - 1:
        raise RejectedInput(f"tau must lie in [0, {n - 1}], got {tau}")
    coeffs = np.zeros(n + 1)
    coeffs[tau:] = 1.0 / np.sqrt(n + 1 - tau)
    return SchmidtChannel(coeffs)


def case1_channel(n: int, x: float) -> SchmidtChannel:
    """a_0 = ... = a_{n-2} = x a_n, a_{n-1} = a_n."""
    _check_n(n)
    _check_unit("x", x)
    top = 1.0 / np.sqrt(2.0 + (n - 1) * x**2)
    coeffs = np.full(n + 1, x * top)
    coeffs[-2:] = top
    return SchmidtChannel(coeffs)


def case2_channel(n: int, y: float) -> SchmidtChannel:
    """a_0 = ... = a_{n-3} = 0, a_{n-2} = y a_n, a_{n-1} = a_n."""
    _check_n(n, minimum=3)
    _check_unit("y", y)
    top = 1.0 / np.sqrt(2.0 + y**2)
    coeffs = np.zeros(n + 1)
    coeffs[n - 2] = y * top
    coeffs[-2:] = top
    return SchmidtChannel(coeffs)


def staircase_channel(n: int, ratio: float) -> SchmidtChannel:
    """Geometric channel with a_k / a_{k+1} = ratio for k <= n-2."""
    _check_n(n)
    if not 0.0 < ratio <= 1.0:
        raise RejectedInput(f"ratio must lie in (0, 1], got {ratio}")
    unscaled = np.ones(n + 1)
    for k in range(n - 2, -1, -1):
        unscaled[k] = ratio * unscaled[k + 1]
    coeffs = unscaled / np.linalg.norm(unscaled)
    coeffs[-2] = coeffs[-1]
    return SchmidtChannel(coeffs)


def qutrit_channel(a0: float) -> SchmidtChannel:
    """Two-qutrit channel (a_0, a_1, a_1)."""
    if not 0.0 <= a0 <= 1.0 / np.sqrt(3.0) + 1e-15:
        raise RejectedInput(f"a0 must lie in [0, 1/sqrt(3)], got {a0}")
    a1 = np.sqrt((1.0 - a0**2) / 2.0)
    return SchmidtChannel([min(a0, a1), a1, a1])


def sample_random_channel(n: int, rng_seed: int) -> SchmidtChannel:
    """
    Draw a random channel.

    Squared coefficients come from the flat Dirichlet distribution on the
    simplex; after sorting, the top two are replaced by their mean.
    """
    _check_n(n)
    return _draw_channel(n, np.random.default_rng(rng_seed))


def sample_random_channels(n: int, count: int, rng_seed: int) -> List[SchmidtChannel]:
    """Draw count channels from independent child seeds of rng_seed."""
    _check_n(n)
    if count < 1:
        raise RejectedInput(f"count must be at least 1, got {count}")
    children = np.random.SeedSequence(rng_seed).spawn(count)
    return [_draw_channel(n, np.random.default_rng(child)) for child in children]


def _draw_channel(n: int, rng: np.random.Generator) -> SchmidtChannel:
    squares = np.sort(rng.dirichlet(np.ones(n + 1)))
    squares[-2:] = 0.5 * (squares[-2] + squares[-1])
    coeffs = np.sqrt(squares)
    coeffs /= np.linalg.norm(coeffs)
    coeffs[-2] = coeffs[-1]
    return SchmidtChannel(coeffs)


def channel_state(ch: SchmidtChannel) -> StateVec:
    """The joint state sum_i a_i |ii> on subsystems 2 and 3."""
    amplitudes = np.zeros(ch.dim * ch.dim, dtype=np.complex128)
    amplitudes[np.arange(ch.dim) * (ch.dim + 1)] = ch.coeffs
    return StateVec(amplitudes)


def channel_entropy(ch: SchmidtChannel) -> float:
    """Entanglement entropy in bits, with 0 log 0 = 0."""
    return float(entropy(ch.coeffs**2, base=2))
