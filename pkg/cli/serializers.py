from typing import List

from pydantic import BaseModel

from channel.serializers import ChannelSchema
from metrics.serializers import ResourceReportSchema
from protocol.serializers import OutcomeSchema


class TeleportReportSchema(BaseModel):
    channel: ChannelSchema
    outcomes: List[OutcomeSchema]
    resources: ResourceReportSchema
