from dataclasses import dataclass
from typing import Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict, field_validator

from corelin.constants import NORM_TOL
from corelin.exceptions import RejectedInput
from corelin.types import Operator


class NoiseSpec(BaseModel):
    """Per-ket dephasing strengths q_0, q_1, q_2 with <exp(i theta_j)> = 1 - q_j."""

    model_config = ConfigDict(frozen=True)

    q: Tuple[float, float, float]

    @field_validator("q")
    @classmethod
    def strengths_in_unit_interval(cls, value):
        if any(not 0.0 <= q <= 1.0 for q in value):
            raise ValueError("dephasing strengths must lie in [0, 1]")
        return value

    @classmethod
    def single(cls, j: int, q: float) -> "NoiseSpec":
        """Noise acting on ket j only."""
        if j not in (0, 1, 2):
            raise RejectedInput(f"ket index must be 0, 1 or 2, got {j}")
        strengths = [0.0, 0.0, 0.0]
        strengths[j] = q
        return cls(q=tuple(strengths))

    def coherence_factors(self) -> np.ndarray:
        """Matrix D with D_kl = (1 - q_k)(1 - q_l) off the diagonal, 1 on it."""
        keep = 1.0 - np.asarray(self.q)
        factors = np.outer(keep, keep)
        np.fill_diagonal(factors, 1.0)
        return factors


class QutritInput(BaseModel):
    """Sender qutrit alpha|0> + beta|1> + gamma|2>."""

    model_config = ConfigDict(frozen=True)

    amps: Tuple[complex, complex, complex]

    @field_validator("amps")
    @classmethod
    def normalized(cls, value):
        total = sum(abs(a) ** 2 for a in value)
        if abs(total - 1.0) > NORM_TOL:
            raise ValueError(f"qutrit input is not normalized (sum of squares {total!r})")
        return value

    @property
    def vector(self) -> np.ndarray:
        return np.array(self.amps, dtype=np.complex128)


@dataclass(frozen=True, eq=False)
class ImperfectOutcome:
    """
    One of the nine qutrit-teleportation outcomes.

    Column k of branches is the receiver state for the k-th probe input.
    """

    m: int
    j: int
    branches: np.ndarray
    correction: Operator

    @property
    def probability(self) -> float:
        """Outcome probability for inputs with gamma = 0."""
        return float(np.linalg.norm(self.branches[:, 0]) ** 2)
