"""Semi-automated declutter layout for network maps.

Placement on the map is client-expressed, so decluttering must never change
what a position means: moved contacts keep their sector, and their radius may
shift by at most a small tolerance. The algorithm is deterministic and purely
suggestive; callers apply the result explicitly.

Two passes over the map, all geometry in normalized canvas space (unit disc):

1. Angular spread. Per sector, contacts whose radii chain closer than the
   minimum separation form a radial band. A band containing at least one
   colliding pair gets its members' angle fractions re-assigned evenly across
   the wedge (with a margin of one mark half-width at the band's mean
   radius), preserving their existing angular order.
2. Radial nudge. Any pair still colliding has the later contact (clockwise
   order, ties by name then id) pushed outward by the smallest half-tolerance
   step that resolves the pair, capped at the full tolerance.

Pairs that survive both passes are reported as unresolved, never moved
further; crowding beyond wedge capacity is the practitioner's call.
"""

from __future__ import annotations

import copy
import math
from dataclasses import dataclass, field

from sodia.errors import ValidationFailedError
from sodia.netmap.model import (
    Contact,
    NetMapVersion,
    Position,
    SectorConfig,
    validate_version,
)


@dataclass
class LayoutParams:
    mark_radius: float = 0.03  # normalized units
    radius_tolerance: float = 0.02  # max |radius change| per contact

    def __post_init__(self):
        if not (0.0 < self.mark_radius < 0.5):
            raise ValueError(f"mark_radius must be in (0, 0.5), got {self.mark_radius}")
        if not (0.0 <= self.radius_tolerance < 0.1):
            raise ValueError(f"radius_tolerance must be in [0, 0.1), got {self.radius_tolerance}")

    @property
    def min_separation(self) -> float:
        return 2.0 * self.mark_radius


@dataclass
class LayoutSuggestion:
    moves: dict[str, Position] = field(default_factory=dict)
    unresolved: list[tuple[str, str]] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "moves": {
                cid: {"sector_id": p.sector_id, "radius": p.radius, "angle_frac": p.angle_frac}
                for cid, p in self.moves.items()
            },
            "unresolved": [list(pair) for pair in self.unresolved],
        }


def _unit_xy(p: Position, cfg: SectorConfig) -> tuple[float, float]:
    theta = (cfg.index_of(p.sector_id) + p.angle_frac) * cfg.wedge_angle
    return (p.radius * math.sin(theta), -p.radius * math.cos(theta))


def _distance(pa: Position, pb: Position, cfg: SectorConfig) -> float:
    xa, ya = _unit_xy(pa, cfg)
    xb, yb = _unit_xy(pb, cfg)
    return math.hypot(xa - xb, ya - yb)


def collisions(v: NetMapVersion, params: LayoutParams) -> list[tuple[str, str]]:
    """All unordered contact pairs closer than the minimum separation."""
    return _collisions_of(
        {c.contact_id: c.position for c in v.contacts}, v.sector_config, params.min_separation
    )


def _collisions_of(
    positions: dict[str, Position], cfg: SectorConfig, min_sep: float
) -> list[tuple[str, str]]:
    ids = sorted(positions)
    out: list[tuple[str, str]] = []
    for i, a in enumerate(ids):
        for b in ids[i + 1 :]:
            if _distance(positions[a], positions[b], cfg) < min_sep:
                out.append((a, b))
    return out


def suggest_layout(v: NetMapVersion, params: LayoutParams) -> LayoutSuggestion:
    violations = validate_version(v)
    if violations:
        raise ValidationFailedError(violations)

    cfg = v.sector_config
    wedge = cfg.wedge_angle
    min_sep = params.min_separation
    by_id = {c.contact_id: c for c in v.contacts}
    original = {c.contact_id: c.position for c in v.contacts}
    positions = {cid: copy.copy(p) for cid, p in original.items()}

    # Pass 1: angular spread within radial bands.
    for sector in cfg.sectors:
        members = [c for c in v.contacts if c.position.sector_id == sector.sector_id]
        members.sort(key=lambda c: (c.position.radius, c.display_name, c.contact_id))
        bands: list[list[Contact]] = []
        for c in members:
            if bands and c.position.radius - bands[-1][-1].position.radius < min_sep:
                bands[-1].append(c)
            else:
                bands.append([c])
        for band in bands:
            if len(band) < 2:
                continue
            band_positions = {c.contact_id: positions[c.contact_id] for c in band}
            if not _collisions_of(band_positions, cfg, min_sep):
                continue  # already readable; leave client placement alone
            mean_radius = sum(c.position.radius for c in band) / len(band)
            half_width = math.asin(min(1.0, params.mark_radius / mean_radius))
            margin = min(half_width / wedge, 0.5)
            ordered = sorted(
                band,
                key=lambda c: (positions[c.contact_id].angle_frac, c.display_name, c.contact_id),
            )
            step = (1.0 - 2.0 * margin) / (len(ordered) - 1)
            for j, c in enumerate(ordered):
                positions[c.contact_id].angle_frac = margin + j * step

    # Pass 2: bounded radial nudge, clockwise-later contact moves outward.
    order_key = {
        cid: (
            cfg.index_of(positions[cid].sector_id),
            positions[cid].angle_frac,
            by_id[cid].display_name,
            cid,
        )
        for cid in positions
    }
    half_step = params.radius_tolerance / 2.0
    nudge_steps = {cid: 0 for cid in positions}
    pending = [
        tuple(sorted(pair, key=lambda cid: order_key[cid]))
        for pair in _collisions_of(positions, cfg, min_sep)
    ]
    pending.sort(key=lambda pair: (order_key[pair[0]], order_key[pair[1]]))
    for earlier, later in pending:
        if _distance(positions[earlier], positions[later], cfg) >= min_sep:
            continue  # an earlier nudge already separated this pair
        for steps in range(nudge_steps[later] + 1, 3):
            candidate = original[later].radius + steps * half_step
            if candidate > 1.0:
                break
            trial = copy.copy(positions[later])
            trial.radius = candidate
            if _distance(positions[earlier], trial, cfg) >= min_sep:
                positions[later].radius = candidate
                nudge_steps[later] = steps
                break

    moves = {
        cid: positions[cid]
        for cid in positions
        if (positions[cid].radius, positions[cid].angle_frac)
        != (original[cid].radius, original[cid].angle_frac)
    }
    unresolved = _collisions_of(positions, cfg, min_sep)
    return LayoutSuggestion(moves=moves, unresolved=unresolved)


def apply_suggestion(v: NetMapVersion, suggestion: LayoutSuggestion) -> NetMapVersion:
    """New version with the suggested moves applied; the input is untouched."""
    out = copy.deepcopy(v)
    for c in out.contacts:
        move = suggestion.moves.get(c.contact_id)
        if move is not None:
            c.position = copy.copy(move)
    return out
