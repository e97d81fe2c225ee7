from typing import List

from pydantic import BaseModel, Field

from metrics.types import ResourceReport


class ResourceReportSchema(BaseModel):
    channel_entropy: float
    measurement_entanglement: float = Field(ge=0.0)
    classical_bits: float = Field(ge=0.0)
    concurrences: List[float]

    @classmethod
    def from_report(cls, report: ResourceReport) -> "ResourceReportSchema":
        return cls(
            channel_entropy=report.channel_entropy,
            measurement_entanglement=report.measurement_entanglement,
            classical_bits=report.classical_bits,
            concurrences=list(report.concurrences),
        )
