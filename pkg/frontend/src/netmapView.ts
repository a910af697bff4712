/** Network map editor: SVG map on the right, contact list on the left.
 *
 * Double-clicking empty map space opens the add dialog pre-filled with the
 * position under the cursor; dragging a mark issues one update on drop;
 * clicking two marks in sequence toggles the tie between them. Declutter
 * previews arrive from the service and are drawn as outlines until the
 * counselor confirms.
 */

import { positionToCanvas, canvasToPosition } from "./geometry.js";
import type { SessionStore } from "./store.js";
import type { ContactDoc } from "./types.js";

const SVG_NS = "http://www.w3.org/2000/svg";

export const MAP_SIZE = 600;
export const PLOT_RADIUS = 260;
const MARK_RADIUS = 9;
const DRAG_THRESHOLD_PX = 3;

interface DragState {
  contactId: string;
  startX: number;
  startY: number;
  moved: boolean;
  mark: SVGGElement;
}

export class NetmapView {
  private drag: DragState | null = null;

  constructor(
    private readonly root: HTMLElement,
    private readonly store: SessionStore,
  ) {
    store.subscribe(() => this.render());
    this.render();
  }

  render(): void {
    this.root.innerHTML = "";
    const version = this.store.activeVersion();
    if (!version) {
      const empty = document.createElement("p");
      empty.className = "empty-hint";
      empty.textContent = "No map version yet. Create one to start placing contacts.";
      this.root.appendChild(empty);
      return;
    }

    const wrap = document.createElement("div");
    wrap.className = "netmap-editor";
    wrap.appendChild(this.renderContactList(version.contacts));
    wrap.appendChild(this.renderMap(version));
    this.root.appendChild(wrap);
  }

  private renderContactList(contacts: ContactDoc[]): HTMLElement {
    const panel = document.createElement("div");
    panel.className = "contact-list";
    const heading = document.createElement("h3");
    heading.textContent = "Contacts";
    panel.appendChild(heading);

    const addButton = document.createElement("button");
    addButton.className = "contact-add";
    addButton.textContent = "Add contact";
    addButton.addEventListener("click", () => {
      // list-side adding starts mid-way into the first sector
      const version = this.store.activeVersion();
      if (!version) return;
      this.store.mapDoubleClicked(0, -PLOT_RADIUS / 2, PLOT_RADIUS);
    });
    panel.appendChild(addButton);

    const list = document.createElement("ul");
    for (const contact of [...contacts].sort((a, b) => a.display_name.localeCompare(b.display_name))) {
      const item = document.createElement("li");
      item.dataset.contactId = contact.contact_id;
      const label = document.createElement("span");
      label.textContent =
        (contact.emoji ? `${contact.emoji} ` : "") +
        contact.display_name +
        (contact.is_human ? "" : " (non-human)");
      item.appendChild(label);

      const edit = document.createElement("button");
      edit.textContent = "Edit";
      edit.className = "contact-edit";
      edit.addEventListener("click", () => this.store.openContactEditor(contact.contact_id));
      item.appendChild(edit);

      const remove = document.createElement("button");
      remove.textContent = "Delete";
      remove.className = "contact-delete";
      remove.addEventListener("click", () => void this.store.deleteContact(contact.contact_id));
      item.appendChild(remove);

      list.appendChild(item);
    }
    panel.appendChild(list);
    return panel;
  }

  private renderMap(version: { contacts: ContactDoc[]; edges: { a: string; b: string }[]; sector_config: { sectors: { sector_id: string; label: string }[] } }): SVGSVGElement {
    const svg = document.createElementNS(SVG_NS, "svg");
    svg.setAttribute("class", "netmap-canvas");
    svg.setAttribute("width", String(MAP_SIZE));
    svg.setAttribute("height", String(MAP_SIZE));
    svg.setAttribute("viewBox", `0 0 ${MAP_SIZE} ${MAP_SIZE}`);
    const center = MAP_SIZE / 2;
    const cfg = version.sector_config;

    // sector boundaries and labels
    const wedge = (2 * Math.PI) / cfg.sectors.length;
    cfg.sectors.forEach((sector, i) => {
      const theta = i * wedge;
      const line = document.createElementNS(SVG_NS, "line");
      line.setAttribute("x1", String(center));
      line.setAttribute("y1", String(center));
      line.setAttribute("x2", String(center + PLOT_RADIUS * Math.sin(theta)));
      line.setAttribute("y2", String(center - PLOT_RADIUS * Math.cos(theta)));
      line.setAttribute("stroke", "#bbb");
      svg.appendChild(line);
      const mid = (i + 0.5) * wedge;
      const text = document.createElementNS(SVG_NS, "text");
      text.setAttribute("class", "sector-label");
      text.setAttribute("x", String(center + (PLOT_RADIUS + 18) * Math.sin(mid)));
      text.setAttribute("y", String(center - (PLOT_RADIUS + 18) * Math.cos(mid)));
      text.setAttribute("text-anchor", "middle");
      text.setAttribute("font-size", "11");
      text.textContent = sector.label;
      svg.appendChild(text);
    });
    for (const k of [1, 2, 3]) {
      const guide = document.createElementNS(SVG_NS, "circle");
      guide.setAttribute("cx", String(center));
      guide.setAttribute("cy", String(center));
      guide.setAttribute("r", String((PLOT_RADIUS * k) / 3));
      guide.setAttribute("fill", "none");
      guide.setAttribute("stroke", "#e4e4e4");
      svg.appendChild(guide);
    }
    const ego = document.createElementNS(SVG_NS, "circle");
    ego.setAttribute("class", "ego-mark");
    ego.setAttribute("cx", String(center));
    ego.setAttribute("cy", String(center));
    ego.setAttribute("r", String(MARK_RADIUS));
    ego.setAttribute("fill", "#222");
    svg.appendChild(ego);

    const at = (contactId: string) => {
      const contact = version.contacts.find((c) => c.contact_id === contactId)!;
      const { x, y } = positionToCanvas(contact.position, cfg, PLOT_RADIUS);
      return { x: center + x, y: center + y };
    };

    for (const edge of version.edges) {
      const p1 = at(edge.a);
      const p2 = at(edge.b);
      const line = document.createElementNS(SVG_NS, "line");
      line.setAttribute("class", "edge-line");
      line.setAttribute("x1", String(p1.x));
      line.setAttribute("y1", String(p1.y));
      line.setAttribute("x2", String(p2.x));
      line.setAttribute("y2", String(p2.y));
      line.setAttribute("stroke", "#888");
      svg.appendChild(line);
    }

    for (const contact of version.contacts) {
      svg.appendChild(this.renderMark(contact, at(contact.contact_id)));
    }

    // declutter preview: outline circles at the suggested spots
    const suggestion = this.store.state.suggestion;
    if (suggestion) {
      for (const [contactId, position] of Object.entries(suggestion.moves)) {
        const { x, y } = positionToCanvas(position, cfg, PLOT_RADIUS);
        const ghost = document.createElementNS(SVG_NS, "circle");
        ghost.setAttribute("class", "declutter-preview");
        ghost.dataset.contactId = contactId;
        ghost.setAttribute("cx", String(center + x));
        ghost.setAttribute("cy", String(center + y));
        ghost.setAttribute("r", String(MARK_RADIUS));
        ghost.setAttribute("fill", "none");
        ghost.setAttribute("stroke", "#d9822b");
        ghost.setAttribute("stroke-dasharray", "3 2");
        svg.appendChild(ghost);
      }
    }

    svg.addEventListener("dblclick", (event) => {
      if ((event.target as Element).closest(".contact-mark-group")) return;
      const rect = svg.getBoundingClientRect();
      const dx = event.clientX - rect.left - center;
      const dy = event.clientY - rect.top - center;
      this.store.mapDoubleClicked(dx, dy, PLOT_RADIUS);
    });

    svg.addEventListener("mousemove", (event) => {
      if (!this.drag) return;
      this.drag.moved =
        this.drag.moved ||
        Math.hypot(event.clientX - this.drag.startX, event.clientY - this.drag.startY) >
          DRAG_THRESHOLD_PX;
      if (this.drag.moved) {
        const rect = svg.getBoundingClientRect();
        this.drag.mark.setAttribute(
          "transform",
          `translate(${event.clientX - rect.left}, ${event.clientY - rect.top})`,
        );
      }
    });

    svg.addEventListener("mouseup", (event) => {
      const drag = this.drag;
      this.drag = null;
      if (!drag) return;
      const contactId = drag.contactId;
      if (!drag.moved) {
        void this.store.contactClicked(contactId);
        return;
      }
      const rect = svg.getBoundingClientRect();
      const version2 = this.store.activeVersion();
      if (!version2) return;
      const position = canvasToPosition(
        event.clientX - rect.left - center,
        event.clientY - rect.top - center,
        version2.sector_config,
        PLOT_RADIUS,
      );
      if (position) {
        void this.store.moveContact(contactId, position);
      } else {
        this.render(); // snap back from the reserved origin / outside
      }
    });

    return svg;
  }

  private renderMark(contact: ContactDoc, point: { x: number; y: number }): SVGGElement {
    const group = document.createElementNS(SVG_NS, "g");
    group.setAttribute("class", "contact-mark-group");
    group.dataset.contactId = contact.contact_id;
    group.setAttribute("transform", `translate(${point.x}, ${point.y})`);

    if (contact.emoji) {
      const emoji = document.createElementNS(SVG_NS, "text");
      emoji.setAttribute("class", "contact-mark");
      emoji.setAttribute("text-anchor", "middle");
      emoji.setAttribute("dominant-baseline", "central");
      emoji.setAttribute("font-size", String(MARK_RADIUS * 2));
      emoji.textContent = contact.emoji;
      group.appendChild(emoji);
    } else {
      const circle = document.createElementNS(SVG_NS, "circle");
      circle.setAttribute("class", "contact-mark");
      circle.setAttribute("r", String(MARK_RADIUS));
      circle.setAttribute("fill", contact.is_human ? "#4a7fb5" : "#b58a4a");
      if (this.store.state.pendingEdgeFrom === contact.contact_id) {
        circle.setAttribute("stroke", "#d9822b");
        circle.setAttribute("stroke-width", "3");
      }
      group.appendChild(circle);
    }
    const name = document.createElementNS(SVG_NS, "text");
    name.setAttribute("class", "contact-mark-name");
    name.setAttribute("y", String(MARK_RADIUS + 12));
    name.setAttribute("text-anchor", "middle");
    name.setAttribute("font-size", "11");
    name.textContent = contact.display_name;
    group.appendChild(name);

    group.addEventListener("mousedown", (event) => {
      this.drag = {
        contactId: contact.contact_id,
        startX: event.clientX,
        startY: event.clientY,
        moved: false,
        mark: group,
      };
    });
    return group;
  }
}
