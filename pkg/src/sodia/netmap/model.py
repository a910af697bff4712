"""Ego-centred network map: domain types, validation, polar geometry.

The map is a disc. The client (ego) sits at the origin; contacts (alters) are
marks placed at a radius in (0, 1] (smaller = emotionally closer) inside a
thematic sector. Sectors split the full circle into equal wedges, clockwise
from 12 o'clock, in configuration order. A contact's position is stored per
sector as (sector_id, radius, angle_frac) so that re-labeling or re-ordering
sectors never silently changes which life domain a contact belongs to.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from datetime import datetime

from sodia.errors import (
    EgoReservedError,
    NotFoundError,
    OutsideCanvasError,
    Violation,
)
from sodia.text import is_single_grapheme

TAU = 2.0 * math.pi

# Replaceable default sector set; cases may configure their own.
DEFAULT_SECTORS = (
    ("family", "Family"),
    ("relatives", "Relatives"),
    ("friends", "Friends & acquaintances"),
    ("work", "Work / school"),
    ("neighbors", "Neighbors"),
    ("helpers", "Professional helpers"),
)


@dataclass
class Sector:
    sector_id: str
    label: str


@dataclass
class SectorConfig:
    """Ordered sectors; each occupies an equal wedge of the full circle."""

    sectors: list[Sector] = field(default_factory=list)

    def index_of(self, sector_id: str) -> int:
        for i, s in enumerate(self.sectors):
            if s.sector_id == sector_id:
                return i
        raise NotFoundError("sector", sector_id)

    @property
    def wedge_angle(self) -> float:
        return TAU / len(self.sectors)


def default_sector_config() -> SectorConfig:
    return SectorConfig([Sector(sid, label) for sid, label in DEFAULT_SECTORS])


@dataclass
class Position:
    """Placement of a contact: sector membership plus polar coordinates.

    angle_frac is the fraction across the sector's wedge, 0 at the
    counterclockwise wedge edge (the one nearer 12 o'clock in list order).
    """

    sector_id: str
    radius: float  # (0, 1]; the origin is reserved for the ego
    angle_frac: float  # [0, 1)


@dataclass
class Contact:
    contact_id: str
    display_name: str
    position: Position
    gender: str | None = None
    role: str | None = None  # free text; predefined roles are only suggestions
    age: int | None = None
    is_human: bool = True  # False marks pets and other non-human contacts
    emoji: str | None = None


@dataclass
class Edge:
    """Unordered tie between two alters. Ego-alter ties are implicit."""

    a: str
    b: str

    def key(self) -> tuple[str, str]:
        return (self.a, self.b) if self.a <= self.b else (self.b, self.a)


@dataclass
class NetMapVersion:
    version_id: str
    label: str
    created_at: datetime
    sector_config: SectorConfig
    contacts: list[Contact] = field(default_factory=list)
    edges: list[Edge] = field(default_factory=list)

    def contact_by_id(self, contact_id: str) -> Contact:
        for c in self.contacts:
            if c.contact_id == contact_id:
                return c
        raise NotFoundError("contact", contact_id)


def validate_sector_config(cfg: SectorConfig) -> list[Violation]:
    out: list[Violation] = []
    if not cfg.sectors:
        out.append(Violation("sector_config", "no_sectors", "at least one sector is required"))
    seen: set[str] = set()
    for s in cfg.sectors:
        if not s.sector_id:
            out.append(Violation("sector_config", "empty_sector_id", "sector id must be non-empty"))
        if s.sector_id in seen:
            out.append(
                Violation(f"sector:{s.sector_id}", "duplicate_sector_id", f"sector id {s.sector_id!r} occurs twice")
            )
        seen.add(s.sector_id)
        if not s.label.strip():
            out.append(Violation(f"sector:{s.sector_id}", "empty_sector_label", "sector label must be non-empty"))
    return out


def validate_version(v: NetMapVersion) -> list[Violation]:
    """Check every invariant of a network map version. Empty list = valid."""
    out = validate_sector_config(v.sector_config)
    known_sectors = {s.sector_id for s in v.sector_config.sectors}

    seen_ids: set[str] = set()
    humans: set[str] = set()
    all_ids: set[str] = set()
    for c in v.contacts:
        ent = f"contact:{c.contact_id}"
        if not c.contact_id:
            out.append(Violation(ent, "empty_id", "contact id must be non-empty"))
        if c.contact_id in seen_ids:
            out.append(Violation(ent, "duplicate_contact_id", f"contact id {c.contact_id!r} occurs twice"))
        seen_ids.add(c.contact_id)
        all_ids.add(c.contact_id)
        if c.is_human:
            humans.add(c.contact_id)
        if not c.display_name.strip():
            out.append(Violation(ent, "empty_name", "display name must be non-empty"))
        if c.age is not None and c.age < 0:
            out.append(Violation(ent, "negative_age", f"age must be >= 0, got {c.age}"))
        if c.emoji is not None and not is_single_grapheme(c.emoji):
            out.append(Violation(ent, "invalid_emoji", "emoji must be a single symbol"))
        p = c.position
        if not (0.0 < p.radius <= 1.0):
            out.append(Violation(ent, "radius_out_of_range", f"radius must be in (0, 1], got {p.radius}"))
        if not (0.0 <= p.angle_frac < 1.0):
            out.append(Violation(ent, "angle_out_of_range", f"angle_frac must be in [0, 1), got {p.angle_frac}"))
        if p.sector_id not in known_sectors:
            out.append(Violation(ent, "unknown_sector", f"position refers to unknown sector {p.sector_id!r}"))

    seen_pairs: set[tuple[str, str]] = set()
    for e in v.edges:
        ent = f"edge:{e.a}-{e.b}"
        if e.a == e.b:
            out.append(Violation(ent, "self_loop", "an edge must connect two different contacts"))
            continue
        missing = [x for x in (e.a, e.b) if x not in all_ids]
        if missing:
            out.append(Violation(ent, "unknown_endpoint", f"edge endpoint(s) {missing} do not exist"))
            continue
        # Ties to non-human contacts carry no social capital and are rejected
        # outright so the metrics exclusion rule stays trivially true.
        non_human = [x for x in (e.a, e.b) if x not in humans]
        if non_human:
            out.append(Violation(ent, "non_human_edge", f"edges may not attach to non-human contact(s) {non_human}"))
        if e.key() in seen_pairs:
            out.append(Violation(ent, "duplicate_edge", f"edge {e.key()} occurs twice"))
        seen_pairs.add(e.key())
    return out


def _absolute_angle(p: Position, cfg: SectorConfig) -> float:
    """Angle in radians, clockwise from 12 o'clock."""
    idx = cfg.index_of(p.sector_id)
    return (idx + p.angle_frac) * cfg.wedge_angle


def to_canvas(p: Position, cfg: SectorConfig, canvas_radius: float) -> tuple[float, float]:
    """Map a stored position onto canvas coordinates.

    Origin at the canvas center, x to the right, y downward (screen/SVG
    convention), so 12 o'clock is (0, -canvas_radius).
    """
    theta = _absolute_angle(p, cfg)
    r = canvas_radius * p.radius
    return (r * math.sin(theta), -r * math.cos(theta))


# Fractions of a wedge closer to a boundary than this snap to it, keeping
# sector recovery exact for positions placed right on a wedge edge.
_BOUNDARY_SNAP = 1e-9


def from_canvas(x: float, y: float, cfg: SectorConfig, canvas_radius: float) -> Position:
    """Inverse of to_canvas: canvas point -> stored position.

    The exact origin is rejected (reserved for the ego), as are points
    outside the plot disc.
    """
    r = math.hypot(x, y) / canvas_radius
    if r == 0.0:
        raise EgoReservedError("the origin is reserved for the ego")
    if r > 1.0 + _BOUNDARY_SNAP:
        raise OutsideCanvasError(f"point lies outside the plot disc (radius {r:.6f})")
    r = min(r, 1.0)

    theta = math.atan2(x, -y) % TAU
    n = len(cfg.sectors)
    t = theta / cfg.wedge_angle
    if t >= n:  # guard against rounding at the full-circle seam
        t -= n
    idx = int(t)
    frac = t - idx
    if frac >= 1.0 - _BOUNDARY_SNAP:
        idx = (idx + 1) % n
        frac = 0.0
    elif frac < _BOUNDARY_SNAP:
        frac = 0.0
    return Position(sector_id=cfg.sectors[idx].sector_id, radius=r, angle_frac=frac)
