"""
Dense Linear Algebra Service

Tensor products, partial projections, overlaps and Gram-Schmidt completion
over StateVec / Operator values. All functions are pure.
"""

import logging
from typing import List, Optional, Sequence

import numpy as np

from corelin.constants import ORTHO_TOL, RESIDUAL_TOL
from corelin.exceptions import DimensionMismatch, RejectedInput
from corelin.types import Operator, StateVec

logger = logging.getLogger(__name__)


def tensor(a: StateVec, b: StateVec) -> StateVec:
    """Kronecker product with the first factor as the most significant index."""
    return StateVec(np.kron(a.amplitudes, b.amplitudes))


def project_sender(bra: StateVec, psi: StateVec, dim3: int) -> StateVec:
    """
    Partial inner product of a sender-side bra with a tripartite state.

    Args:
        bra: Normalized vector on subsystems 1 and 2
        psi: State on subsystems 1, 2 and 3
        dim3: Dimension of subsystem 3

    Returns:
        The unnormalized state left on subsystem 3; its squared norm is the
        outcome probability
    """
    if dim3 <= 0 or bra.dim * dim3 != psi.dim:
        raise DimensionMismatch(
            f"bra of dim {bra.dim} and receiver dim {dim3} do not match state dim {psi.dim}"
        )
    bra.require_normalized("measurement vector")
    joint = psi.amplitudes.reshape(bra.dim, dim3)
    return StateVec(bra.amplitudes.conj() @ joint)


def inner(a: StateVec, b: StateVec) -> complex:
    if a.dim != b.dim:
        raise DimensionMismatch(f"cannot take overlap of dims {a.dim} and {b.dim}")
    return complex(np.vdot(a.amplitudes, b.amplitudes))


def fidelity(a: StateVec, b: StateVec) -> float:
    """Squared overlap |<a|b>|^2 of two normalized states."""
    overlap = inner(a, b)
    a.require_normalized("first state")
    b.require_normalized("second state")
    return float(min(1.0, max(0.0, abs(overlap) ** 2)))


def gram_matrix(vectors: Sequence[StateVec]) -> np.ndarray:
    if not vectors:
        return np.zeros((0, 0), dtype=np.complex128)
    stacked = np.stack([v.amplitudes for v in vectors])
    return stacked.conj() @ stacked.T


def is_orthonormal(vectors: Sequence[StateVec], tol: float = ORTHO_TOL) -> bool:
    gram = gram_matrix(vectors)
    return bool(np.max(np.abs(gram - np.eye(len(vectors))), initial=0.0) <= tol)


def complete_orthonormal(
    seed_vectors: Sequence[StateVec], dim: Optional[int] = None
) -> List[StateVec]:
    """
    Extend orthonormal seeds to a full orthonormal basis.

    Candidates are the standard basis vectors in index order; a candidate whose
    residual after projection falls below the residual tolerance is skipped.

    Args:
        seed_vectors: Mutually orthonormal vectors of dimension dim
        dim: Dimension of the space; taken from the seeds when omitted

    Returns:
        dim orthonormal vectors, the seeds first and in their given order
    """
    if dim is None:
        if not seed_vectors:
            raise RejectedInput("dimension is required when no seeds are given")
        dim = seed_vectors[0].dim
    for vector in seed_vectors:
        if vector.dim != dim:
            raise DimensionMismatch(f"seed of dim {vector.dim} in a space of dim {dim}")
    if len(seed_vectors) > dim or not is_orthonormal(seed_vectors):
        raise RejectedInput("seed vectors are not orthonormal")

    basis = [v.amplitudes for v in seed_vectors]
    for index in range(dim):
        if len(basis) == dim:
            break
        candidate = np.zeros(dim, dtype=np.complex128)
        candidate[index] = 1.0
        for vector in basis:
            candidate = candidate - np.vdot(vector, candidate) * vector
        residual = np.linalg.norm(candidate)
        if residual < RESIDUAL_TOL:
            continue
        basis.append(candidate / residual)

    return [StateVec(v) for v in basis]


def correction_operator(targets: Sequence[StateVec]) -> Operator:
    """
    Unitary sending the k-th vector of an orthonormal basis to |k>.

    Args:
        targets: A complete orthonormal basis

    Returns:
        Operator whose k-th row is the conjugate of targets[k]
    """
    if not targets:
        raise RejectedInput("correction needs at least one basis vector")
    if not is_orthonormal(targets) or len(targets) != targets[0].dim:
        raise RejectedInput("correction targets must form a complete orthonormal basis")
    return Operator(np.stack([v.amplitudes.conj() for v in targets]))
