"""Biography time bar: swim lanes, life events, and the year/age axis.

The horizontal axis runs from the client's birth date to the bar's domain
end. Six standard lanes (Family, Housing, Education, Work, Health,
Treatment/Help) are fixed in label and order so bars stay comparable across
cases; custom lanes may be added below them. Events are date intervals,
half-open at the end: [start, end). An open end means "still ongoing" and
clamps to the domain end.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from datetime import date

from sodia.errors import Violation
from sodia.text import is_single_grapheme

# Fixed id, label, and order of the standard lanes.
STANDARD_LANES = (
    ("family", "Family"),
    ("housing", "Housing"),
    ("education", "Education"),
    ("work", "Work"),
    ("health", "Health"),
    ("treatment", "Treatment/Help"),
)


@dataclass
class Lane:
    lane_id: str
    label: str
    standard: bool = False
    order_index: int = 0


def standard_lanes() -> list[Lane]:
    return [
        Lane(lane_id=sid, label=label, standard=True, order_index=i)
        for i, (sid, label) in enumerate(STANDARD_LANES)
    ]


@dataclass
class LifeEvent:
    event_id: str
    lane_id: str
    start: date
    end: date | None  # None = ongoing; clamps to the bar's domain end
    title: str
    note: str = ""
    emoji: str | None = None

    def clamped_end(self, domain_end: date) -> date:
        return self.end if self.end is not None else domain_end


@dataclass
class TimeBar:
    birth_date: date
    domain_end: date
    lanes: list[Lane] = field(default_factory=standard_lanes)
    events: list[LifeEvent] = field(default_factory=list)

    def ordered_lanes(self) -> list[Lane]:
        return sorted(self.lanes, key=lambda ln: (ln.order_index, ln.lane_id))

    def event_by_id(self, event_id: str) -> LifeEvent:
        for e in self.events:
            if e.event_id == event_id:
                return e
        from sodia.errors import NotFoundError

        raise NotFoundError("event", event_id)


def new_timebar(birth_date: date, domain_end: date | None = None) -> TimeBar:
    return TimeBar(birth_date=birth_date, domain_end=domain_end or date.today())


@dataclass
class AxisTick:
    date: date  # always Jan 1
    year: int
    age: int  # completed years of age at the tick date


def axis_ticks(t: TimeBar) -> list[AxisTick]:
    """One tick per Jan 1 in (birth_date, domain_end], with the client's age.

    Age counts completed years; an anniversary falling exactly on the tick
    (a Jan 1 birthday) counts as completed.
    """
    ticks: list[AxisTick] = []
    birth = t.birth_date
    for year in range(birth.year, t.domain_end.year + 1):
        d = date(year, 1, 1)
        if not (birth < d <= t.domain_end):
            continue
        age = year - birth.year
        if (1, 1) < (birth.month, birth.day):
            age -= 1
        ticks.append(AxisTick(date=d, year=year, age=age))
    return ticks


def validate_timebar(t: TimeBar) -> list[Violation]:
    out: list[Violation] = []
    if t.domain_end < t.birth_date:
        out.append(
            Violation("timebar", "domain_before_birth", "domain end precedes the birth date")
        )

    expected = standard_lanes()
    actual_standard = sorted((ln for ln in t.lanes if ln.standard), key=lambda ln: ln.order_index)
    if [(ln.lane_id) for ln in actual_standard] != [ln.lane_id for ln in expected]:
        out.append(
            Violation(
                "lanes",
                "standard_lane_set",
                "the six standard lanes (Family, Housing, Education, Work, Health, "
                "Treatment/Help) must all be present, in that order",
            )
        )
    else:
        for got, want in zip(actual_standard, expected):
            ent = f"lane:{got.lane_id}"
            if got.label != want.label:
                out.append(Violation(ent, "standard_lane_label", f"standard lane label is fixed to {want.label!r}"))
            if got.order_index != want.order_index:
                out.append(
                    Violation(ent, "standard_lane_order", f"standard lane order index is fixed to {want.order_index}")
                )

    max_standard_order = max((ln.order_index for ln in t.lanes if ln.standard), default=-1)
    seen_lane_ids: set[str] = set()
    for ln in t.lanes:
        ent = f"lane:{ln.lane_id}"
        if not ln.lane_id:
            out.append(Violation(ent, "empty_id", "lane id must be non-empty"))
        if ln.lane_id in seen_lane_ids:
            out.append(Violation(ent, "duplicate_lane_id", f"lane id {ln.lane_id!r} occurs twice"))
        seen_lane_ids.add(ln.lane_id)
        if not ln.label.strip():
            out.append(Violation(ent, "empty_lane_label", "lane label must be non-empty"))
        if not ln.standard and ln.order_index <= max_standard_order:
            out.append(
                Violation(ent, "custom_lane_order", "custom lanes must be ordered below the standard lanes")
            )

    seen_event_ids: set[str] = set()
    for e in t.events:
        ent = f"event:{e.event_id}"
        if not e.event_id:
            out.append(Violation(ent, "empty_id", "event id must be non-empty"))
        if e.event_id in seen_event_ids:
            out.append(Violation(ent, "duplicate_event_id", f"event id {e.event_id!r} occurs twice"))
        seen_event_ids.add(e.event_id)
        if not e.title.strip():
            out.append(Violation(ent, "empty_title", "event title must be non-empty"))
        if e.emoji is not None and not is_single_grapheme(e.emoji):
            out.append(Violation(ent, "invalid_emoji", "emoji must be a single symbol"))
        if e.lane_id not in seen_lane_ids:
            out.append(Violation(ent, "unknown_lane", f"event refers to unknown lane {e.lane_id!r}"))
        if e.start < t.birth_date:
            out.append(Violation(ent, "event_before_birth", "event starts before the birth date"))
        if e.end is not None and e.end < e.start:
            out.append(Violation(ent, "event_end_before_start", "event ends before it starts"))
        if e.clamped_end(t.domain_end) > t.domain_end or e.start > t.domain_end:
            out.append(Violation(ent, "event_after_domain_end", "event extends beyond the domain end"))
    return out
