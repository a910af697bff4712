"""Deterministic SVG rendering of network maps and time bars.

Output is plain SVG 1.1 text built line by line: identical input and spec
yield byte-identical output, so renders can be golden-file tested and their
geometry read back by an XML parser. Styling is intentionally neutral.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from datetime import date
from xml.sax.saxutils import escape

from sodia.errors import SodiaError, ValidationFailedError
from sodia.netmap.model import NetMapVersion, to_canvas, validate_version
from sodia.timebar.model import TimeBar, axis_ticks
from sodia.timebar.layout import LaneLayout


@dataclass
class RenderSpec:
    netmap_size: float = 1000.0  # square canvas, ego at the center
    netmap_plot_radius: float = 450.0
    netmap_mark_radius: float = 12.0
    timebar_width: float = 1200.0
    lane_height: float = 120.0
    label_gutter: float = 140.0  # left band for lane labels
    axis_band: float = 40.0  # top band for year/age labels


def _fmt(x: float) -> str:
    s = f"{x:.3f}".rstrip("0").rstrip(".")
    return "0" if s in ("", "-0") else s


def _attr(value: str) -> str:
    return escape(value, {'"': "&quot;"})


def render_netmap(v: NetMapVersion, spec: RenderSpec | None = None) -> str:
    violations = validate_version(v)
    if violations:
        raise ValidationFailedError(violations)
    spec = spec or RenderSpec()

    size = spec.netmap_size
    cx = cy = size / 2.0
    plot_r = spec.netmap_plot_radius
    mark_r = spec.netmap_mark_radius
    cfg = v.sector_config

    def canvas_xy(position) -> tuple[float, float]:
        x, y = to_canvas(position, cfg, plot_r)
        return (cx + x, cy + y)

    lines = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{_fmt(size)}" height="{_fmt(size)}" '
        f'viewBox="0 0 {_fmt(size)} {_fmt(size)}" font-family="sans-serif">',
    ]

    lines.append('<g class="sectors" stroke="#999999" stroke-width="1">')
    wedge = cfg.wedge_angle
    for i, sector in enumerate(cfg.sectors):
        theta = i * wedge
        bx = cx + plot_r * math.sin(theta)
        by = cy - plot_r * math.cos(theta)
        lines.append(
            f'<line class="sector-boundary" x1="{_fmt(cx)}" y1="{_fmt(cy)}" x2="{_fmt(bx)}" y2="{_fmt(by)}"/>'
        )
        mid = (i + 0.5) * wedge
        lx = cx + (plot_r + 24.0) * math.sin(mid)
        ly = cy - (plot_r + 24.0) * math.cos(mid)
        lines.append(
            f'<text class="sector-label" x="{_fmt(lx)}" y="{_fmt(ly)}" text-anchor="middle" '
            f'font-size="16" stroke="none" fill="#333333">{escape(sector.label)}</text>'
        )
    lines.append("</g>")

    lines.append('<g class="guides" fill="none" stroke="#dddddd" stroke-width="1">')
    for k in (1, 2, 3):
        lines.append(
            f'<circle class="guide" cx="{_fmt(cx)}" cy="{_fmt(cy)}" r="{_fmt(plot_r * k / 3.0)}"/>'
        )
    lines.append("</g>")

    lines.append(f'<circle class="ego" cx="{_fmt(cx)}" cy="{_fmt(cy)}" r="{_fmt(mark_r)}" fill="#222222"/>')

    lines.append('<g class="edges" stroke="#777777" stroke-width="1.5">')
    positions = {c.contact_id: canvas_xy(c.position) for c in v.contacts}
    for e in sorted(v.edges, key=lambda e: e.key()):
        a, b = e.key()
        (x1, y1), (x2, y2) = positions[a], positions[b]
        lines.append(
            f'<line class="edge" data-a="{_attr(a)}" data-b="{_attr(b)}" '
            f'x1="{_fmt(x1)}" y1="{_fmt(y1)}" x2="{_fmt(x2)}" y2="{_fmt(y2)}"/>'
        )
    lines.append("</g>")

    lines.append('<g class="contacts">')
    for c in sorted(v.contacts, key=lambda c: c.contact_id):
        x, y = positions[c.contact_id]
        lines.append(f'<g class="contact" id="contact-{_attr(c.contact_id)}">')
        if c.emoji is not None:
            lines.append(
                f'<text class="contact-emoji" x="{_fmt(x)}" y="{_fmt(y)}" text-anchor="middle" '
                f'dominant-baseline="central" font-size="{_fmt(2 * mark_r)}">{escape(c.emoji)}</text>'
            )
        else:
            fill = "#4a7fb5" if c.is_human else "#b58a4a"
            lines.append(
                f'<circle class="contact-mark" cx="{_fmt(x)}" cy="{_fmt(y)}" r="{_fmt(mark_r)}" fill="{fill}"/>'
            )
        lines.append(
            f'<text class="contact-name" x="{_fmt(x)}" y="{_fmt(y + mark_r + 14.0)}" '
            f'text-anchor="middle" font-size="13" fill="#333333">{escape(c.display_name)}</text>'
        )
        lines.append("</g>")
    lines.append("</g>")

    lines.append("</svg>")
    return "\n".join(lines) + "\n"


def render_timebar(t: TimeBar, layouts: list[LaneLayout], spec: RenderSpec | None = None) -> str:
    spec = spec or RenderSpec()
    ordered = t.ordered_lanes()
    if [layout.lane_id for layout in layouts] != [ln.lane_id for ln in ordered]:
        raise SodiaError("layouts do not match the time bar's lanes")
    events_by_id = {e.event_id: e for e in t.events}
    for layout in layouts:
        for f in layout.fragments:
            e = events_by_id.get(f.event_id)
            if e is None or e.lane_id != layout.lane_id:
                raise SodiaError(f"layout fragment refers to unknown event {f.event_id!r}")

    width = spec.timebar_width
    gutter = spec.label_gutter
    band = spec.axis_band
    lane_h = spec.lane_height
    height = band + lane_h * len(ordered)
    span_days = (t.domain_end - t.birth_date).days

    def x_of(d: date) -> float:
        if span_days == 0:
            return gutter
        return gutter + (d - t.birth_date).days / span_days * (width - gutter)

    lines = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{_fmt(width)}" height="{_fmt(height)}" '
        f'viewBox="0 0 {_fmt(width)} {_fmt(height)}" font-family="sans-serif">',
    ]

    lines.append('<g class="axis" font-size="12" fill="#333333">')
    for tick in axis_ticks(t):
        x = x_of(tick.date)
        lines.append(
            f'<line class="axis-tick" x1="{_fmt(x)}" y1="{_fmt(band)}" x2="{_fmt(x)}" '
            f'y2="{_fmt(height)}" stroke="#e0e0e0" stroke-width="1"/>'
        )
        lines.append(
            f'<text class="axis-year" x="{_fmt(x)}" y="16" text-anchor="middle">{tick.year}</text>'
        )
        lines.append(
            f'<text class="axis-age" x="{_fmt(x)}" y="32" text-anchor="middle" fill="#777777">{tick.age}</text>'
        )
    lines.append("</g>")

    lines.append('<g class="lanes">')
    for i, ln in enumerate(ordered):
        top = band + i * lane_h
        lines.append(
            f'<rect class="lane-band" data-lane="{_attr(ln.lane_id)}" x="{_fmt(gutter)}" y="{_fmt(top)}" '
            f'width="{_fmt(width - gutter)}" height="{_fmt(lane_h)}" fill="none" stroke="#bbbbbb" stroke-width="1"/>'
        )
        lines.append(
            f'<text class="lane-label" x="8" y="{_fmt(top + lane_h / 2.0 + 4.0)}" '
            f'font-size="14" fill="#333333">{escape(ln.label)}</text>'
        )
    lines.append("</g>")

    lines.append('<g class="events">')
    for i, layout in enumerate(layouts):
        top = band + i * lane_h
        if not layout.fragments:
            continue
        lines.append(f'<g class="lane-events" data-lane="{_attr(layout.lane_id)}">')
        for f in layout.fragments:
            x0, x1 = x_of(f.t0), x_of(f.t1)
            y0 = top + float(f.y0) * lane_h
            y1 = top + float(f.y1) * lane_h
            lines.append(
                f'<rect class="event-fragment" data-event-id="{_attr(f.event_id)}" '
                f'x="{_fmt(x0)}" y="{_fmt(y0)}" width="{_fmt(x1 - x0)}" height="{_fmt(y1 - y0)}" '
                f'fill="#9ecae1" stroke="#5a87a8" stroke-width="1"/>'
            )
        # one label per event, centered in its widest fragment
        seen: set[str] = set()
        for f in layout.fragments:
            if f.event_id in seen:
                continue
            seen.add(f.event_id)
            frags = [g for g in layout.fragments if g.event_id == f.event_id]
            widest = max(frags, key=lambda g: ((g.t1 - g.t0).days, -g.t0.toordinal()))
            e = events_by_id[f.event_id]
            text = f"{e.emoji} {e.title}" if e.emoji else e.title
            tx = (x_of(widest.t0) + x_of(widest.t1)) / 2.0
            ty = top + (float(widest.y0) + float(widest.y1)) / 2.0 * lane_h + 4.0
            lines.append(
                f'<text class="event-title" data-event-id="{_attr(f.event_id)}" x="{_fmt(tx)}" '
                f'y="{_fmt(ty)}" text-anchor="middle" font-size="12" fill="#1a1a1a">{escape(text)}</text>'
            )
        lines.append("</g>")
    lines.append("</g>")

    lines.append("</svg>")
    return "\n".join(lines) + "\n"
