from typing import List

from pydantic import BaseModel, ConfigDict, Field, ValidationError

from channel.services.schmidt import new_channel
from channel.types import SchmidtChannel
from corelin.exceptions import RejectedInput


class ChannelSchema(BaseModel):
    model_config = ConfigDict(extra="forbid")

    n: int = Field(ge=2)
    coeffs: List[float]

    @classmethod
    def from_channel(cls, ch: SchmidtChannel) -> "ChannelSchema":
        return cls(n=ch.n, coeffs=[float(a) for a in ch.coeffs])


def channel_to_json(ch: SchmidtChannel) -> str:
    return ChannelSchema.from_channel(ch).model_dump_json()


def channel_from_json(payload: str) -> SchmidtChannel:
    """Parse {"n": int, "coeffs": [...]} and validate the coefficients."""
    try:
        schema = ChannelSchema.model_validate_json(payload)
    except ValidationError as e:
        raise RejectedInput(f"malformed channel JSON: {e}") from e
    if len(schema.coeffs) != schema.n + 1:
        raise RejectedInput(f"n={schema.n} needs {schema.n + 1} coefficients")
    return new_channel(schema.coeffs)
