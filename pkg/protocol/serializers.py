from typing import List, Literal, Sequence

from pydantic import BaseModel

from protocol.types import TeleportOutcome


class OutcomeSchema(BaseModel):
    j: int
    sign: Literal["+", "-"]
    p: float
    fidelity: float
    vanished: bool

    @classmethod
    def from_outcome(cls, outcome: TeleportOutcome) -> "OutcomeSchema":
        return cls(
            j=outcome.label.j,
            sign=outcome.label.sign,
            p=outcome.probability,
            fidelity=outcome.fidelity,
            vanished=outcome.vanished,
        )


def outcomes_to_schema(outcomes: Sequence[TeleportOutcome]) -> List[OutcomeSchema]:
    return [OutcomeSchema.from_outcome(o) for o in outcomes]
