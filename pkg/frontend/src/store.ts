/** Session state for one open case.
 *
 * Everything persistent flows through the service: the store refetches the
 * case, the metrics, and the lane layouts after every successful mutation
 * and never computes metrics or layouts locally. A stale-revision conflict
 * flips `conflict` on, which the shell renders as a reload banner; no edit
 * is retried silently.
 */

import { ApiClient, ConflictError } from "./api.js";
import { canvasToPosition, clampDate, snapToMonth } from "./geometry.js";
import type {
  CaseDoc,
  ContactDoc,
  ContactInput,
  EventInput,
  LaneLayoutDoc,
  MetricsDoc,
  PositionDoc,
  SuggestionDoc,
  VersionDoc,
} from "./types.js";

export interface ContactDialogState {
  kind: "contact";
  contactId: string | null; // null while adding
  display_name: string;
  gender: string;
  role: string;
  age: string;
  is_human: boolean;
  emoji: string;
  position: PositionDoc;
}

export interface EventDialogState {
  kind: "event";
  eventId: string | null;
  lane_id: string;
  start: string;
  end: string | null;
  title: string;
  note: string;
  emoji: string;
}

export type DialogState = ContactDialogState | EventDialogState;

export interface ViewState {
  caseDoc: CaseDoc | null;
  activeVersionId: string | null;
  selectedContactId: string | null;
  pendingEdgeFrom: string | null;
  metrics: MetricsDoc | null;
  laneLayouts: LaneLayoutDoc[] | null;
  suggestion: SuggestionDoc | null;
  dialog: DialogState | null;
  conflict: boolean;
  notice: string | null;
  snapMonths: boolean;
}

function initialState(): ViewState {
  return {
    caseDoc: null,
    activeVersionId: null,
    selectedContactId: null,
    pendingEdgeFrom: null,
    metrics: null,
    laneLayouts: null,
    suggestion: null,
    dialog: null,
    conflict: false,
    notice: null,
    snapMonths: false,
  };
}

export class SessionStore {
  state: ViewState = initialState();
  private listeners: Array<() => void> = [];

  constructor(readonly api: ApiClient) {}

  subscribe(listener: () => void): () => void {
    this.listeners.push(listener);
    return () => {
      this.listeners = this.listeners.filter((l) => l !== listener);
    };
  }

  private emit(): void {
    for (const listener of [...this.listeners]) listener();
  }

  /** Run a mutation; a 409 raises the reload banner instead of propagating. */
  private async guarded<T>(op: () => Promise<T>): Promise<T | undefined> {
    try {
      return await op();
    } catch (err) {
      if (err instanceof ConflictError) {
        this.state.conflict = true;
        this.emit();
        return undefined;
      }
      throw err;
    }
  }

  activeVersion(): VersionDoc | null {
    const { caseDoc, activeVersionId } = this.state;
    if (!caseDoc || activeVersionId === null) return null;
    return caseDoc.netmap_versions.find((v) => v.version_id === activeVersionId) ?? null;
  }

  contactById(contactId: string): ContactDoc | null {
    return this.activeVersion()?.contacts.find((c) => c.contact_id === contactId) ?? null;
  }

  async openCase(caseId: string): Promise<void> {
    const doc = await this.api.getCase(caseId);
    this.state = { ...initialState(), snapMonths: this.state.snapMonths, caseDoc: doc };
    const versions = doc.netmap_versions;
    this.state.activeVersionId = versions.length ? versions[versions.length - 1].version_id : null;
    await this.refreshMetrics();
    await this.refreshLayouts();
    this.emit();
  }

  async reloadCase(): Promise<void> {
    const caseId = this.state.caseDoc?.case_id;
    if (caseId) await this.openCase(caseId);
  }

  private async refreshCase(): Promise<void> {
    const caseId = this.state.caseDoc?.case_id;
    if (!caseId) return;
    const doc = await this.api.getCase(caseId);
    this.state.caseDoc = doc;
    if (!doc.netmap_versions.some((v) => v.version_id === this.state.activeVersionId)) {
      this.state.activeVersionId = doc.netmap_versions.length
        ? doc.netmap_versions[doc.netmap_versions.length - 1].version_id
        : null;
    }
  }

  private async refreshMetrics(): Promise<void> {
    const caseId = this.state.caseDoc?.case_id;
    if (caseId && this.state.activeVersionId) {
      this.state.metrics = await this.api.metrics(caseId, this.state.activeVersionId);
    } else {
      this.state.metrics = null;
    }
  }

  private async refreshLayouts(): Promise<void> {
    const caseDoc = this.state.caseDoc;
    if (caseDoc?.timebar) {
      this.state.laneLayouts = (await this.api.timebarLayout(caseDoc.case_id)).lanes;
    } else {
      this.state.laneLayouts = null;
    }
  }

  private async afterMapMutation(): Promise<void> {
    await this.refreshCase();
    await this.refreshMetrics();
    this.emit();
  }

  private async afterTimebarMutation(): Promise<void> {
    await this.refreshCase();
    await this.refreshLayouts();
    this.emit();
  }

  // -- map versions ---------------------------------------------------------

  async switchVersion(versionId: string): Promise<void> {
    this.state.activeVersionId = versionId;
    this.state.suggestion = null;
    this.state.pendingEdgeFrom = null;
    await this.refreshMetrics();
    this.emit();
  }

  async createVersion(label: string, fromVersion?: string): Promise<void> {
    const caseId = this.state.caseDoc?.case_id;
    if (!caseId) return;
    const created = await this.guarded(() => this.api.createVersion(caseId, label, fromVersion));
    if (!created) return;
    await this.refreshCase();
    this.state.activeVersionId = created.version.version_id;
    await this.refreshMetrics();
    this.emit();
  }

  // -- contact editing ------------------------------------------------------

  /** Double click on the map: offsets are relative to the map center. */
  mapDoubleClicked(dx: number, dy: number, canvasRadius: number): void {
    const version = this.activeVersion();
    if (!version) return;
    const position = canvasToPosition(dx, dy, version.sector_config, canvasRadius);
    if (!position) {
      this.state.notice = "that spot is reserved for the client or outside the map";
      this.emit();
      return;
    }
    this.state.dialog = {
      kind: "contact",
      contactId: null,
      display_name: "",
      gender: "",
      role: "",
      age: "",
      is_human: true,
      emoji: "",
      position,
    };
    this.emit();
  }

  openContactEditor(contactId: string): void {
    const contact = this.contactById(contactId);
    if (!contact) return;
    this.state.dialog = {
      kind: "contact",
      contactId,
      display_name: contact.display_name,
      gender: contact.gender ?? "",
      role: contact.role ?? "",
      age: contact.age === null ? "" : String(contact.age),
      is_human: contact.is_human,
      emoji: contact.emoji ?? "",
      position: contact.position,
    };
    this.emit();
  }

  closeDialog(): void {
    this.state.dialog = null;
    this.emit();
  }

  async submitContactDialog(): Promise<void> {
    const dialog = this.state.dialog;
    const caseId = this.state.caseDoc?.case_id;
    const versionId = this.state.activeVersionId;
    if (!dialog || dialog.kind !== "contact" || !caseId || !versionId) return;
    const body: ContactInput = {
      display_name: dialog.display_name,
      gender: dialog.gender.trim() ? dialog.gender.trim() : null,
      role: dialog.role.trim() ? dialog.role.trim() : null,
      age: dialog.age.trim() ? Number(dialog.age) : null,
      is_human: dialog.is_human,
      emoji: dialog.emoji.trim() ? dialog.emoji.trim() : null,
      position: dialog.position,
    };
    const done = await this.guarded(() =>
      dialog.contactId === null
        ? this.api.addContact(caseId, versionId, body)
        : this.api.updateContact(caseId, versionId, dialog.contactId, body),
    );
    if (!done) return;
    this.state.dialog = null;
    await this.afterMapMutation();
  }

  /** Drop after dragging a contact mark. */
  async moveContact(contactId: string, position: PositionDoc): Promise<void> {
    const caseId = this.state.caseDoc?.case_id;
    const versionId = this.state.activeVersionId;
    const contact = this.contactById(contactId);
    if (!caseId || !versionId || !contact) return;
    const done = await this.guarded(() =>
      this.api.updateContact(caseId, versionId, contactId, { ...contact, position }),
    );
    if (done) await this.afterMapMutation();
  }

  async deleteContact(contactId: string): Promise<void> {
    const caseId = this.state.caseDoc?.case_id;
    const versionId = this.state.activeVersionId;
    if (!caseId || !versionId) return;
    const done = await this.guarded(() => this.api.deleteContact(caseId, versionId, contactId));
    if (done) await this.afterMapMutation();
  }

  /** Clicking two contacts in sequence toggles the tie between them. */
  async contactClicked(contactId: string): Promise<void> {
    const pending = this.state.pendingEdgeFrom;
    if (pending === null) {
      this.state.pendingEdgeFrom = contactId;
      this.state.selectedContactId = contactId;
      this.emit();
      return;
    }
    if (pending === contactId) {
      this.state.pendingEdgeFrom = null;
      this.emit();
      return;
    }
    const caseId = this.state.caseDoc?.case_id;
    const versionId = this.state.activeVersionId;
    const version = this.activeVersion();
    if (!caseId || !versionId || !version) return;
    const exists = version.edges.some(
      (e) => (e.a === pending && e.b === contactId) || (e.a === contactId && e.b === pending),
    );
    this.state.pendingEdgeFrom = null;
    const done = await this.guarded(() =>
      exists
        ? this.api.deleteEdge(caseId, versionId, pending, contactId)
        : this.api.addEdge(caseId, versionId, pending, contactId),
    );
    if (done) await this.afterMapMutation();
  }

  // -- declutter ------------------------------------------------------------

  async requestDeclutter(): Promise<void> {
    const caseId = this.state.caseDoc?.case_id;
    const versionId = this.state.activeVersionId;
    if (!caseId || !versionId) return;
    this.state.suggestion = await this.api.suggestLayout(caseId, versionId);
    this.emit();
  }

  dismissDeclutter(): void {
    this.state.suggestion = null;
    this.emit();
  }

  /** The service never applies moves on its own; accepting the preview sends
   * the moved version back through a normal replace. */
  async applyDeclutter(): Promise<void> {
    const suggestion = this.state.suggestion;
    const caseId = this.state.caseDoc?.case_id;
    const version = this.activeVersion();
    if (!suggestion || !caseId || !version) return;
    const moved: VersionDoc = {
      ...version,
      contacts: version.contacts.map((c) =>
        suggestion.moves[c.contact_id] ? { ...c, position: suggestion.moves[c.contact_id] } : c,
      ),
    };
    const done = await this.guarded(() => this.api.replaceVersion(caseId, moved));
    if (!done) return;
    this.state.suggestion = null;
    await this.afterMapMutation();
  }

  // -- time bar -------------------------------------------------------------

  async initTimebar(domainEnd: string): Promise<void> {
    const caseId = this.state.caseDoc?.case_id;
    if (!caseId) return;
    const done = await this.guarded(() => this.api.putTimebar(caseId, { domain_end: domainEnd }));
    if (done) await this.afterTimebarMutation();
  }

  /** Horizontal drag inside a lane; dates arrive in drag order. */
  async eventDragCreated(laneId: string, fromIso: string, toIso: string): Promise<void> {
    const bar = this.state.caseDoc?.timebar;
    if (!bar) return;
    let [start, end] = fromIso <= toIso ? [fromIso, toIso] : [toIso, fromIso];
    if (this.state.snapMonths) {
      start = snapToMonth(start, false);
      end = snapToMonth(end, true);
    }
    const clampedStart = clampDate(start, bar.birth_date, bar.domain_end);
    const clampedEnd = clampDate(end, bar.birth_date, bar.domain_end);
    if (clampedStart !== start || clampedEnd !== end) {
      this.state.notice = "event trimmed to the life span";
    }
    this.state.dialog = {
      kind: "event",
      eventId: null,
      lane_id: laneId,
      start: clampedStart,
      end: clampedEnd,
      title: "",
      note: "",
      emoji: "",
    };
    this.emit();
  }

  openEventEditor(eventId: string): void {
    const event = this.state.caseDoc?.timebar?.events.find((e) => e.event_id === eventId);
    if (!event) return;
    this.state.dialog = {
      kind: "event",
      eventId,
      lane_id: event.lane_id,
      start: event.start,
      end: event.end,
      title: event.title,
      note: event.note,
      emoji: event.emoji ?? "",
    };
    this.emit();
  }

  async submitEventDialog(): Promise<void> {
    const dialog = this.state.dialog;
    const caseId = this.state.caseDoc?.case_id;
    if (!dialog || dialog.kind !== "event" || !caseId) return;
    const body: EventInput = {
      lane_id: dialog.lane_id,
      start: dialog.start,
      end: dialog.end,
      title: dialog.title,
      note: dialog.note,
      emoji: dialog.emoji.trim() ? dialog.emoji.trim() : null,
    };
    const done = await this.guarded(() =>
      dialog.eventId === null
        ? this.api.addEvent(caseId, body)
        : this.api.updateEvent(caseId, dialog.eventId, body),
    );
    if (!done) return;
    this.state.dialog = null;
    await this.afterTimebarMutation();
  }

  async deleteEvent(eventId: string): Promise<void> {
    const caseId = this.state.caseDoc?.case_id;
    if (!caseId) return;
    const done = await this.guarded(() => this.api.deleteEvent(caseId, eventId));
    if (done) await this.afterTimebarMutation();
  }

  setSnapMonths(on: boolean): void {
    this.state.snapMonths = on;
    this.emit();
  }

  clearNotice(): void {
    this.state.notice = null;
    this.emit();
  }
}
