"""Pydantic request models for the HTTP API.

Mutating request bodies may carry the expected case revision in a `revision`
field; the If-Match header is the alternative. Responses are emitted from the
canonical serializer, not from these models.
"""

from __future__ import annotations

from datetime import date, datetime

from pydantic import BaseModel, ConfigDict, Field


class SectorIn(BaseModel):
    sector_id: str
    label: str


class CreateCaseRequest(BaseModel):
    display_name: str
    gender: str | None = None
    birth_date: date | None = None
    case_id: str | None = None
    sectors: list[SectorIn] | None = None  # None = default sector set


class PositionIn(BaseModel):
    sector_id: str
    radius: float
    angle_frac: float


class ContactIn(BaseModel):
    contact_id: str | None = None  # server-assigned when omitted
    display_name: str
    gender: str | None = None
    role: str | None = None
    age: int | None = None
    is_human: bool = True
    emoji: str | None = None
    position: PositionIn
    revision: int | None = None


class EdgeIn(BaseModel):
    a: str
    b: str
    revision: int | None = None


class NewVersionRequest(BaseModel):
    model_config = ConfigDict(populate_by_name=True)

    label: str = ""
    from_version: str | None = Field(default=None, alias="from")
    revision: int | None = None


class VersionReplace(BaseModel):
    label: str = ""
    created_at: datetime | None = None
    sector_config: dict | None = None  # None keeps the version's current sectors
    contacts: list[dict] = Field(default_factory=list)
    edges: list[dict] = Field(default_factory=list)
    revision: int | None = None


class LayoutParamsIn(BaseModel):
    mark_radius: float = 0.03
    radius_tolerance: float = 0.02


class LaneIn(BaseModel):
    lane_id: str
    label: str
    standard: bool = False
    order_index: int = 0


class TimeBarReplace(BaseModel):
    birth_date: date | None = None  # None = the client's birth date
    domain_end: date | None = None  # None = today
    lanes: list[LaneIn] | None = None  # None = the six standard lanes
    events: list[dict] = Field(default_factory=list)
    revision: int | None = None


class EventIn(BaseModel):
    event_id: str | None = None  # server-assigned when omitted
    lane_id: str
    start: date
    end: date | None = None
    title: str
    note: str = ""
    emoji: str | None = None
    revision: int | None = None


class DeleteBody(BaseModel):
    revision: int | None = None
