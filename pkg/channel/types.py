from dataclasses import dataclass
from typing import Sequence

import numpy as np

from channel.validators import validate_schmidt_coeffs
from corelin.exceptions import RejectedInput


@dataclass(frozen=True, eq=False)
class SchmidtChannel:
    """Channel sum_i a_i |ii> with a_0 <= ... <= a_{n-1} = a_n."""

    coeffs: np.ndarray

    def __init__(self, coeffs: Sequence[float]):
        values = np.array(coeffs, dtype=float)
        is_valid, error_message = validate_schmidt_coeffs(values)
        if not is_valid:
            raise RejectedInput(error_message)
        values.setflags(write=False)
        object.__setattr__(self, "coeffs", values)

    @property
    def n(self) -> int:
        return int(self.coeffs.size) - 1

    @property
    def dim(self) -> int:
        return int(self.coeffs.size)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, SchmidtChannel):
            return NotImplemented
        return bool(np.array_equal(self.coeffs, other.coeffs))

    def __hash__(self) -> int:
        return hash(self.coeffs.tobytes())

    def is_close(self, other: "SchmidtChannel", tol: float = 1e-14) -> bool:
        return self.n == other.n and bool(np.max(np.abs(self.coeffs - other.coeffs)) <= tol)
