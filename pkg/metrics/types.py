from dataclasses import dataclass
from typing import Tuple


@dataclass(frozen=True)
class ResourceReport:
    """Resource bookkeeping of one channel, in bits."""

    channel_entropy: float
    measurement_entanglement: float
    classical_bits: float
    concurrences: Tuple[float, ...]
    probabilities: Tuple[float, ...] = ()
