"""
Haar Sampling Service

Haar-random pure states drawn as normalized complex Gaussian vectors, and
reproducible generator shards for Monte Carlo loops.
"""

import logging
from typing import Callable, List, Optional, Tuple

import numpy as np
from django.conf import settings

from corelin.exceptions import RejectedInput

logger = logging.getLogger(__name__)


def haar_states(rng: np.random.Generator, count: int, dim: int) -> np.ndarray:
    """Return a (count, dim) array whose rows are Haar-random unit vectors."""
    samples = rng.standard_normal((count, dim)) + 1j * rng.standard_normal((count, dim))
    return samples / np.linalg.norm(samples, axis=1, keepdims=True)


def shard_generators(
    seed: int, samples: int, shard_size: int = 0
) -> List[Tuple[np.random.Generator, int]]:
    """
    Split a sample budget into independently seeded shards.

    Args:
        seed: Master seed
        samples: Total number of samples
        shard_size: Samples per shard; the TELEPORT_MC_SHARD_SIZE setting when 0

    Returns:
        List of (generator, shard sample count) in shard order
    """
    if samples < 1:
        raise RejectedInput(f"sample count must be at least 1, got {samples}")
    shard_size = shard_size or getattr(settings, "TELEPORT_MC_SHARD_SIZE", 10000)
    sizes = [shard_size] * (samples // shard_size)
    if samples % shard_size:
        sizes.append(samples % shard_size)
    children = np.random.SeedSequence(seed).spawn(len(sizes))
    return [(np.random.default_rng(child), size) for child, size in zip(children, sizes)]


def sample_mean(values: np.ndarray) -> Tuple[float, float]:
    """Mean and standard error of a one-dimensional sample."""
    mean = float(np.mean(values))
    if values.size < 2:
        return mean, 0.0
    return mean, float(np.std(values, ddof=1) / np.sqrt(values.size))


class HaarMonteCarlo:
    """Sharded Monte Carlo over Haar-random input states"""

    # Configuration - Use settings with fallbacks
    DEFAULT_SAMPLES = getattr(settings, "TELEPORT_MC_SAMPLES", 100000)
    SHARD_SIZE = getattr(settings, "TELEPORT_MC_SHARD_SIZE", 10000)

    def __init__(self, dim: int, seed: int, samples: Optional[int] = None):
        if dim < 1:
            raise RejectedInput(f"dimension must be positive, got {dim}")
        self.dim = dim
        self.seed = seed
        self.samples = samples if samples is not None else self.DEFAULT_SAMPLES

    def estimate(self, evaluate: Callable[[np.ndarray], np.ndarray]) -> Tuple[float, float]:
        """
        Average a per-sample quantity over Haar-random states.

        Args:
            evaluate: Maps a (count, dim) array of states to count values

        Returns:
            Tuple of (mean, standard error)
        """
        values = [
            np.asarray(evaluate(haar_states(rng, size, self.dim)), dtype=float)
            for rng, size in shard_generators(self.seed, self.samples, self.SHARD_SIZE)
        ]
        mean, stderr = sample_mean(np.concatenate(values))
        logger.info(
            f"Monte Carlo over {self.samples} Haar states (dim {self.dim}, seed {self.seed}): "
            f"{mean:.6f} +- {stderr:.2e}"
        )
        return mean, stderr
