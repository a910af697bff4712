/** Biography time bar editor.
 *
 * Lanes render in service order; event rectangles come verbatim from the
 * service's layout response (the view does no overlap math of its own).
 * Dragging horizontally inside a lane creates an event over that date
 * range; clicking a rectangle opens the documentation editor.
 */

import type { SessionStore } from "./store.js";
import type { LaneLayoutDoc, TimeBarDoc } from "./types.js";

const SVG_NS = "http://www.w3.org/2000/svg";

export const BAR_WIDTH = 1100;
export const LANE_HEIGHT = 64;
export const GUTTER = 120;
const AXIS_BAND = 30;

function dayNumber(iso: string): number {
  return Date.parse(iso + "T00:00:00Z") / 86400000;
}

function isoFromDayNumber(day: number): string {
  return new Date(Math.round(day) * 86400000).toISOString().slice(0, 10);
}

interface DragState {
  laneId: string;
  fromX: number;
  toX: number;
}

export class TimebarView {
  private drag: DragState | null = null;

  constructor(
    private readonly root: HTMLElement,
    private readonly store: SessionStore,
  ) {
    store.subscribe(() => this.render());
    this.render();
  }

  private xOf(bar: TimeBarDoc, iso: string): number {
    const lo = dayNumber(bar.birth_date);
    const hi = dayNumber(bar.domain_end);
    if (hi === lo) return GUTTER;
    return GUTTER + ((dayNumber(iso) - lo) / (hi - lo)) * (BAR_WIDTH - GUTTER);
  }

  private isoAt(bar: TimeBarDoc, x: number): string {
    const lo = dayNumber(bar.birth_date);
    const hi = dayNumber(bar.domain_end);
    const frac = Math.min(1, Math.max(0, (x - GUTTER) / (BAR_WIDTH - GUTTER)));
    return isoFromDayNumber(lo + frac * (hi - lo));
  }

  render(): void {
    this.root.innerHTML = "";
    const bar = this.store.state.caseDoc?.timebar;
    if (!bar) {
      const hint = document.createElement("p");
      hint.className = "empty-hint";
      hint.textContent = "No time bar yet.";
      this.root.appendChild(hint);
      return;
    }
    const layouts = this.store.state.laneLayouts ?? [];
    const lanes = [...bar.lanes].sort((a, b) =>
      a.order_index === b.order_index ? a.lane_id.localeCompare(b.lane_id) : a.order_index - b.order_index,
    );
    const height = AXIS_BAND + lanes.length * LANE_HEIGHT;

    const svg = document.createElementNS(SVG_NS, "svg");
    svg.setAttribute("class", "timebar-canvas");
    svg.setAttribute("width", String(BAR_WIDTH));
    svg.setAttribute("height", String(height));

    // year axis (presentation only; ages and layout stay server-side)
    const firstYear = Number(bar.birth_date.slice(0, 4)) + 1;
    const lastYear = Number(bar.domain_end.slice(0, 4));
    const step = Math.max(1, Math.ceil((lastYear - firstYear + 1) / 24));
    for (let year = firstYear; year <= lastYear; year += step) {
      const iso = `${year}-01-01`;
      if (iso <= bar.birth_date || iso > bar.domain_end) continue;
      const x = this.xOf(bar, iso);
      const tick = document.createElementNS(SVG_NS, "line");
      tick.setAttribute("x1", String(x));
      tick.setAttribute("y1", String(AXIS_BAND));
      tick.setAttribute("x2", String(x));
      tick.setAttribute("y2", String(height));
      tick.setAttribute("stroke", "#eee");
      svg.appendChild(tick);
      const label = document.createElementNS(SVG_NS, "text");
      label.setAttribute("class", "axis-year");
      label.setAttribute("x", String(x));
      label.setAttribute("y", "14");
      label.setAttribute("text-anchor", "middle");
      label.setAttribute("font-size", "10");
      label.textContent = String(year);
      svg.appendChild(label);
    }

    lanes.forEach((lane, index) => {
      const top = AXIS_BAND + index * LANE_HEIGHT;
      const band = document.createElementNS(SVG_NS, "rect");
      band.setAttribute("class", "lane-band");
      band.dataset.laneId = lane.lane_id;
      band.setAttribute("x", String(GUTTER));
      band.setAttribute("y", String(top));
      band.setAttribute("width", String(BAR_WIDTH - GUTTER));
      band.setAttribute("height", String(LANE_HEIGHT));
      band.setAttribute("fill", index % 2 ? "#fafafa" : "#ffffff");
      band.setAttribute("stroke", "#ccc");
      svg.appendChild(band);

      const label = document.createElementNS(SVG_NS, "text");
      label.setAttribute("class", "lane-label");
      label.setAttribute("x", "6");
      label.setAttribute("y", String(top + LANE_HEIGHT / 2 + 4));
      label.setAttribute("font-size", "12");
      label.textContent = lane.label;
      svg.appendChild(label);

      const layout = layouts.find((l) => l.lane_id === lane.lane_id);
      if (layout) this.renderFragments(svg, bar, layout, top);
    });

    svg.addEventListener("mousedown", (event) => {
      const band = (event.target as Element).closest<SVGRectElement>(".lane-band");
      if (!band) return;
      const rect = svg.getBoundingClientRect();
      this.drag = {
        laneId: band.dataset.laneId!,
        fromX: event.clientX - rect.left,
        toX: event.clientX - rect.left,
      };
    });
    svg.addEventListener("mousemove", (event) => {
      if (!this.drag) return;
      const rect = svg.getBoundingClientRect();
      this.drag.toX = event.clientX - rect.left;
    });
    svg.addEventListener("mouseup", () => {
      const drag = this.drag;
      this.drag = null;
      if (!drag || Math.abs(drag.toX - drag.fromX) < 3) return;
      void this.store.eventDragCreated(
        drag.laneId,
        this.isoAt(bar, drag.fromX),
        this.isoAt(bar, drag.toX),
      );
    });

    this.root.appendChild(svg);
  }

  private renderFragments(svg: SVGSVGElement, bar: TimeBarDoc, layout: LaneLayoutDoc, top: number): void {
    const titled = new Set<string>();
    for (const fragment of layout.fragments) {
      const x0 = this.xOf(bar, fragment.t0);
      const x1 = this.xOf(bar, fragment.t1);
      const y0 = top + fragment.y0 * LANE_HEIGHT;
      const y1 = top + fragment.y1 * LANE_HEIGHT;
      const rect = document.createElementNS(SVG_NS, "rect");
      rect.setAttribute("class", "event-fragment");
      rect.dataset.eventId = fragment.event_id;
      rect.setAttribute("x", String(x0));
      rect.setAttribute("y", String(y0));
      rect.setAttribute("width", String(Math.max(1, x1 - x0)));
      rect.setAttribute("height", String(y1 - y0));
      rect.setAttribute("fill", "#9ecae1");
      rect.setAttribute("stroke", "#5a87a8");
      rect.addEventListener("click", () => this.store.openEventEditor(fragment.event_id));
      svg.appendChild(rect);

      if (!titled.has(fragment.event_id)) {
        titled.add(fragment.event_id);
        const event = bar.events.find((e) => e.event_id === fragment.event_id);
        if (event) {
          const text = document.createElementNS(SVG_NS, "text");
          text.setAttribute("class", "event-label");
          text.dataset.eventId = fragment.event_id;
          text.setAttribute("x", String((x0 + x1) / 2));
          text.setAttribute("y", String((y0 + y1) / 2 + 4));
          text.setAttribute("text-anchor", "middle");
          text.setAttribute("font-size", "11");
          text.setAttribute("pointer-events", "none");
          text.textContent = (event.emoji ? `${event.emoji} ` : "") + event.title;
          svg.appendChild(text);
        }
      }
    }
  }
}
