"""Resource-split layout for swim lanes.

All lanes are equally tall. When several events in one lane co-occur, they
split the lane's height equally over the overlap: two parallel jobs each take
half the height of one full-time job, three take a third, and so on.

Vertical slots follow a global rank per event (start, then end, then id),
assigned once, so an event never visually crosses another when a neighbor
ends; it only expands to fill freed space. Heights are exact rationals so a
segment with k active events tiles [0, 1] without float residue.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from datetime import date
from fractions import Fraction

from sodia.errors import SodiaError
from sodia.timebar.model import LifeEvent, TimeBar


@dataclass
class Fragment:
    event_id: str
    t0: date
    t1: date  # exclusive; always > t0
    y0: Fraction  # fraction of lane height, 0 = lane top
    y1: Fraction

    def to_dict(self) -> dict:
        return {
            "event_id": self.event_id,
            "t0": self.t0.isoformat(),
            "t1": self.t1.isoformat(),
            "y0": float(self.y0),
            "y1": float(self.y1),
        }


@dataclass
class LaneLayout:
    lane_id: str
    fragments: list[Fragment] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {"lane_id": self.lane_id, "fragments": [f.to_dict() for f in self.fragments]}


def layout_lane(events: list[LifeEvent], domain_end: date) -> LaneLayout:
    """Compute the fragment tiling for the events of a single lane."""
    lane_ids = {e.lane_id for e in events}
    if len(lane_ids) > 1:
        raise SodiaError(f"events span multiple lanes: {sorted(lane_ids)}")
    lane_id = lane_ids.pop() if lane_ids else ""

    clamped = [(e, e.start, e.clamped_end(domain_end)) for e in events]
    ranked = sorted(clamped, key=lambda item: (item[1], item[2], item[0].event_id))
    rank = {e.event_id: i for i, (e, _, _) in enumerate(ranked)}

    bounds = sorted({b for _, s, end in clamped for b in (s, end)})
    per_event: dict[str, list[Fragment]] = {e.event_id: [] for e, _, _ in ranked}
    for seg_start, seg_end in zip(bounds, bounds[1:]):
        active = [
            (rank[e.event_id], e.event_id)
            for e, s, end in clamped
            if s <= seg_start and end >= seg_end
        ]
        if not active:
            continue
        active.sort()
        k = len(active)
        for slot, (_, event_id) in enumerate(active):
            y0 = Fraction(slot, k)
            y1 = Fraction(slot + 1, k)
            frags = per_event[event_id]
            if frags and frags[-1].t1 == seg_start and (frags[-1].y0, frags[-1].y1) == (y0, y1):
                frags[-1].t1 = seg_end
            else:
                frags.append(Fragment(event_id, seg_start, seg_end, y0, y1))

    fragments = [f for e, _, _ in ranked for f in per_event[e.event_id]]
    return LaneLayout(lane_id=lane_id, fragments=fragments)


def layout_all(t: TimeBar) -> list[LaneLayout]:
    """One layout per lane, in lane order; lanes without events stay empty."""
    by_lane: dict[str, list[LifeEvent]] = {ln.lane_id: [] for ln in t.lanes}
    for e in t.events:
        by_lane[e.lane_id].append(e)
    out = []
    for ln in t.ordered_lanes():
        layout = layout_lane(by_lane[ln.lane_id], t.domain_end)
        layout.lane_id = ln.lane_id  # empty lanes carry their id too
        out.append(layout)
    return out
