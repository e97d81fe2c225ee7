from dataclasses import dataclass
from typing import List, NamedTuple, Tuple

import numpy as np

from corelin.constants import ORTHO_TOL
from corelin.exceptions import RejectedInput
from corelin.services.linalg import gram_matrix
from corelin.types import Operator, StateVec

SIGNS = ("+", "-")


class OutcomeLabel(NamedTuple):
    j: int
    sign: str

    def __str__(self) -> str:
        return f"({self.j},{self.sign})"

    @property
    def parity(self) -> int:
        """+1 for the '+' member of a pair, -1 for the '-' member."""
        return 1 if self.sign == "+" else -1


def outcome_labels(n: int) -> List[OutcomeLabel]:
    """Labels in reporting order (0,+), (0,-), ..., (n,+), (n,-)."""
    return [OutcomeLabel(j, sign) for j in range(n + 1) for sign in SIGNS]


@dataclass(frozen=True, eq=False)
class CascadeParams:
    """Rotation parameters c_k, s_k for k = 0..n-1."""

    c: np.ndarray
    s: np.ndarray

    @property
    def n(self) -> int:
        return int(self.c.size)


@dataclass(frozen=True, eq=False)
class MeasurementBasis:
    """Alice's joint measurement on the qubit and qudit 2."""

    vectors: Tuple[StateVec, ...]
    labels: Tuple[OutcomeLabel, ...]

    def __post_init__(self):
        if len(self.vectors) != len(self.labels):
            raise RejectedInput("every basis vector needs exactly one label")
        if any(v.dim != len(self.vectors) for v in self.vectors):
            raise RejectedInput("a complete basis has as many vectors as dimensions")

    @property
    def n(self) -> int:
        return len(self.vectors) // 2 - 1

    @property
    def matrix(self) -> np.ndarray:
        """Basis vectors stacked as rows."""
        return np.stack([v.amplitudes for v in self.vectors])

    @property
    def gram(self) -> np.ndarray:
        return gram_matrix(self.vectors)

    @property
    def is_orthonormal(self) -> bool:
        deviation = self.gram - np.eye(len(self.vectors))
        return float(np.max(np.abs(deviation))) <= ORTHO_TOL

    def vector(self, j: int, sign: str) -> StateVec:
        return self.vectors[self.labels.index(OutcomeLabel(j, sign))]

    def __len__(self) -> int:
        return len(self.vectors)


@dataclass(frozen=True, eq=False)
class OutcomeBranches:
    """
    Channel-only data of one measurement outcome.

    The receiver state for input alpha|0> + beta|1> is
    alpha * zero_branch + beta * one_branch.
    """

    label: OutcomeLabel
    probability: float
    zero_branch: np.ndarray
    one_branch: np.ndarray
    correction: Operator
    vanished: bool

    def collapse(self, alpha: complex, beta: complex) -> StateVec:
        return StateVec(alpha * self.zero_branch + beta * self.one_branch)


@dataclass(frozen=True, eq=False)
class TeleportOutcome:
    label: OutcomeLabel
    probability: float
    collapsed: StateVec
    correction: Operator
    fidelity: float
    vanished: bool = False
