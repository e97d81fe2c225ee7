"""
Immutable state vectors and operators.

Subsystem 1 (the sender qubit) is always the slowest-varying index, then
subsystem 2, then subsystem 3.
"""

from dataclasses import dataclass
from typing import Iterable, Union

import numpy as np

from corelin.constants import NORM_TOL, ORTHO_TOL
from corelin.exceptions import DimensionMismatch, RejectedInput

ArrayLike = Union[np.ndarray, Iterable[complex]]


def _frozen(values: ArrayLike, ndim: int) -> np.ndarray:
    array = np.array(values, dtype=np.complex128)
    if array.ndim != ndim:
        raise RejectedInput(f"expected a {ndim}-d array, got shape {array.shape}")
    array.setflags(write=False)
    return array


@dataclass(frozen=True, eq=False)
class StateVec:
    """A pure-state vector, normalized or not."""

    amplitudes: np.ndarray

    def __init__(self, amplitudes: ArrayLike):
        object.__setattr__(self, "amplitudes", _frozen(amplitudes, 1))
        if self.amplitudes.size == 0:
            raise RejectedInput("a state vector needs at least one amplitude")

    @classmethod
    def basis(cls, index: int, dim: int) -> "StateVec":
        if not 0 <= index < dim:
            raise RejectedInput(f"basis index {index} outside dimension {dim}")
        amplitudes = np.zeros(dim, dtype=np.complex128)
        amplitudes[index] = 1.0
        return cls(amplitudes)

    @classmethod
    def zeros(cls, dim: int) -> "StateVec":
        return cls(np.zeros(dim, dtype=np.complex128))

    @property
    def dim(self) -> int:
        return int(self.amplitudes.size)

    @property
    def norm(self) -> float:
        return float(np.linalg.norm(self.amplitudes))

    @property
    def is_normalized(self) -> bool:
        return abs(float(np.vdot(self.amplitudes, self.amplitudes).real) - 1.0) <= NORM_TOL

    def normalized(self) -> "StateVec":
        norm = self.norm
        if norm == 0.0:
            raise RejectedInput("cannot normalize the zero vector")
        return StateVec(self.amplitudes / norm)

    def require_normalized(self, name: str = "state") -> None:
        if not self.is_normalized:
            raise RejectedInput(f"{name} is not normalized (norm {self.norm!r})")

    def __len__(self) -> int:
        return self.dim


@dataclass(frozen=True, eq=False)
class Operator:
    """A square complex matrix acting on a single register."""

    entries: np.ndarray

    def __init__(self, entries: ArrayLike):
        object.__setattr__(self, "entries", _frozen(entries, 2))
        rows, cols = self.entries.shape
        if rows != cols:
            raise DimensionMismatch(f"operator must be square, got {rows}x{cols}")

    @classmethod
    def identity(cls, dim: int) -> "Operator":
        return cls(np.eye(dim, dtype=np.complex128))

    @property
    def dim(self) -> int:
        return int(self.entries.shape[0])

    @property
    def is_unitary(self) -> bool:
        deviation = self.entries.conj().T @ self.entries - np.eye(self.dim)
        return float(np.max(np.abs(deviation))) <= ORTHO_TOL

    def apply(self, state: StateVec) -> StateVec:
        if state.dim != self.dim:
            raise DimensionMismatch(
                f"operator of dim {self.dim} cannot act on a state of dim {state.dim}"
            )
        return StateVec(self.entries @ state.amplitudes)
