"""Dict codecs for the domain types and the canonical JSON text form.

Canonical form: UTF-8 JSON, object keys sorted, two-space indent, arrays in
model order, dates as YYYY-MM-DD, timestamps as UTC RFC 3339 with a Z suffix,
terminated by a single newline. Encoding the same document twice yields
identical bytes, which makes case files diffable and golden-testable.
"""

from __future__ import annotations

import json
from datetime import date, datetime, timezone
from typing import Any

from sodia.netmap.model import Contact, Edge, NetMapVersion, Position, Sector, SectorConfig
from sodia.timebar.model import Lane, LifeEvent, TimeBar


def canonical_json_bytes(doc: Any) -> bytes:
    return (json.dumps(doc, ensure_ascii=False, indent=2, sort_keys=True) + "\n").encode("utf-8")


def timestamp_to_text(dt: datetime) -> str:
    if dt.tzinfo is None:
        raise ValueError("timestamps must be timezone-aware")
    return dt.astimezone(timezone.utc).isoformat().replace("+00:00", "Z")


def timestamp_from_text(s: str) -> datetime:
    dt = datetime.fromisoformat(s.replace("Z", "+00:00"))
    if dt.tzinfo is None:
        raise ValueError(f"timestamp lacks a timezone: {s!r}")
    return dt.astimezone(timezone.utc)


def date_from_text(s: str) -> date:
    return date.fromisoformat(s)


def opt_date_from_text(s: str | None) -> date | None:
    return None if s is None else date.fromisoformat(s)


# -- network map ------------------------------------------------------------


def sector_config_to_dict(cfg: SectorConfig) -> dict:
    return {"sectors": [{"sector_id": s.sector_id, "label": s.label} for s in cfg.sectors]}


def sector_config_from_dict(d: dict) -> SectorConfig:
    return SectorConfig([Sector(str(s["sector_id"]), str(s["label"])) for s in d["sectors"]])


def position_to_dict(p: Position) -> dict:
    return {"sector_id": p.sector_id, "radius": p.radius, "angle_frac": p.angle_frac}


def position_from_dict(d: dict) -> Position:
    return Position(
        sector_id=str(d["sector_id"]),
        radius=float(d["radius"]),
        angle_frac=float(d["angle_frac"]),
    )


def contact_to_dict(c: Contact) -> dict:
    return {
        "contact_id": c.contact_id,
        "display_name": c.display_name,
        "gender": c.gender,
        "role": c.role,
        "age": c.age,
        "is_human": c.is_human,
        "emoji": c.emoji,
        "position": position_to_dict(c.position),
    }


def contact_from_dict(d: dict) -> Contact:
    age = d.get("age")
    return Contact(
        contact_id=str(d["contact_id"]),
        display_name=str(d["display_name"]),
        gender=None if d.get("gender") is None else str(d["gender"]),
        role=None if d.get("role") is None else str(d["role"]),
        age=None if age is None else int(age),
        is_human=bool(d.get("is_human", True)),
        emoji=None if d.get("emoji") is None else str(d["emoji"]),
        position=position_from_dict(d["position"]),
    )


def edge_to_dict(e: Edge) -> dict:
    return {"a": e.a, "b": e.b}


def edge_from_dict(d: dict) -> Edge:
    return Edge(a=str(d["a"]), b=str(d["b"]))


def version_to_dict(v: NetMapVersion) -> dict:
    return {
        "version_id": v.version_id,
        "label": v.label,
        "created_at": timestamp_to_text(v.created_at),
        "sector_config": sector_config_to_dict(v.sector_config),
        "contacts": [contact_to_dict(c) for c in v.contacts],
        "edges": [edge_to_dict(e) for e in v.edges],
    }


def version_from_dict(d: dict) -> NetMapVersion:
    return NetMapVersion(
        version_id=str(d["version_id"]),
        label=str(d["label"]),
        created_at=timestamp_from_text(d["created_at"]),
        sector_config=sector_config_from_dict(d["sector_config"]),
        contacts=[contact_from_dict(c) for c in d["contacts"]],
        edges=[edge_from_dict(e) for e in d["edges"]],
    )


# -- time bar ---------------------------------------------------------------


def lane_to_dict(ln: Lane) -> dict:
    return {
        "lane_id": ln.lane_id,
        "label": ln.label,
        "standard": ln.standard,
        "order_index": ln.order_index,
    }


def lane_from_dict(d: dict) -> Lane:
    return Lane(
        lane_id=str(d["lane_id"]),
        label=str(d["label"]),
        standard=bool(d["standard"]),
        order_index=int(d["order_index"]),
    )


def event_to_dict(e: LifeEvent) -> dict:
    return {
        "event_id": e.event_id,
        "lane_id": e.lane_id,
        "start": e.start.isoformat(),
        "end": None if e.end is None else e.end.isoformat(),
        "title": e.title,
        "note": e.note,
        "emoji": e.emoji,
    }


def event_from_dict(d: dict) -> LifeEvent:
    return LifeEvent(
        event_id=str(d["event_id"]),
        lane_id=str(d["lane_id"]),
        start=date_from_text(d["start"]),
        end=opt_date_from_text(d.get("end")),
        title=str(d["title"]),
        note=str(d.get("note", "")),
        emoji=None if d.get("emoji") is None else str(d["emoji"]),
    )


def timebar_to_dict(t: TimeBar) -> dict:
    return {
        "birth_date": t.birth_date.isoformat(),
        "domain_end": t.domain_end.isoformat(),
        "lanes": [lane_to_dict(ln) for ln in t.lanes],
        "events": [event_to_dict(e) for e in t.events],
    }


def timebar_from_dict(d: dict) -> TimeBar:
    return TimeBar(
        birth_date=date_from_text(d["birth_date"]),
        domain_end=date_from_text(d["domain_end"]),
        lanes=[lane_from_dict(ln) for ln in d["lanes"]],
        events=[event_from_dict(e) for e in d["events"]],
    )
