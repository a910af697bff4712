/** Application shell: case picker, panels, dialogs, and the conflict banner. */

import { ApiClient } from "./api.js";
import { NetmapView } from "./netmapView.js";
import { SessionStore } from "./store.js";
import { TimebarView } from "./timebarView.js";
import type { ContactDialogState, EventDialogState } from "./store.js";

function el<K extends keyof HTMLElementTagNameMap>(
  tag: K,
  className?: string,
  text?: string,
): HTMLElementTagNameMap[K] {
  const node = document.createElement(tag);
  if (className) node.className = className;
  if (text !== undefined) node.textContent = text;
  return node;
}

type FetchLike = (input: string, init?: RequestInit) => Promise<Response>;

export function mountApp(root: HTMLElement, baseUrl = "", fetchFn?: FetchLike): SessionStore {
  const api = fetchFn ? new ApiClient(baseUrl, fetchFn) : new ApiClient(baseUrl);
  const store = new SessionStore(api);

  root.innerHTML = "";
  const banner = el("div", "conflict-banner");
  banner.style.display = "none";
  const bannerText = el("span", undefined, "Someone else edited this case. Reload to continue.");
  const reloadButton = el("button", "banner-reload", "Reload");
  reloadButton.addEventListener("click", () => void store.reloadCase());
  banner.append(bannerText, reloadButton);
  root.appendChild(banner);

  const notice = el("div", "notice-line");
  notice.style.display = "none";
  root.appendChild(notice);

  const picker = el("div", "case-picker");
  const nameInput = el("input") as HTMLInputElement;
  nameInput.placeholder = "Client name";
  const birthInput = el("input") as HTMLInputElement;
  birthInput.placeholder = "Birth date (YYYY-MM-DD)";
  const createButton = el("button", undefined, "New case");
  createButton.addEventListener("click", () => {
    void (async () => {
      const doc = await api.createCase({
        display_name: nameInput.value,
        birth_date: birthInput.value || null,
      });
      await store.openCase(doc.case_id);
    })();
  });
  const caseSelect = el("select") as HTMLSelectElement;
  const openButton = el("button", undefined, "Open");
  openButton.addEventListener("click", () => {
    if (caseSelect.value) void store.openCase(caseSelect.value);
  });
  void api.listCases().then((cases) => {
    for (const summary of cases) {
      const option = el("option", undefined, `${summary.display_name} (${summary.case_id})`) as HTMLOptionElement;
      option.value = summary.case_id;
      caseSelect.appendChild(option);
    }
  });
  picker.append(nameInput, birthInput, createButton, caseSelect, openButton);
  root.appendChild(picker);

  const versionBar = el("div", "version-bar");
  root.appendChild(versionBar);

  const columns = el("div", "columns");
  const left = el("div", "left-column");
  const metricsPanel = el("div", "metrics-panel");
  left.appendChild(metricsPanel);
  const mapRoot = el("div", "netmap-root");
  columns.append(left, mapRoot);
  root.appendChild(columns);

  const declutterBar = el("div", "declutter-bar");
  root.appendChild(declutterBar);

  const timebarControls = el("div", "timebar-controls");
  root.appendChild(timebarControls);
  const timebarRoot = el("div", "timebar-root");
  root.appendChild(timebarRoot);

  const dialogRoot = el("div", "dialog-root");
  root.appendChild(dialogRoot);

  new NetmapView(mapRoot, store);
  new TimebarView(timebarRoot, store);

  const renderMetrics = () => {
    metricsPanel.innerHTML = "";
    metricsPanel.appendChild(el("h3", undefined, "Key metrics"));
    const metrics = store.state.metrics;
    if (!metrics) {
      metricsPanel.appendChild(el("p", "empty-hint", "No metrics yet."));
      return;
    }
    const dl = el("dl");
    const entry = (label: string, value: string, cls: string) => {
      dl.appendChild(el("dt", undefined, label));
      dl.appendChild(el("dd", cls, value));
    };
    const fmt = (value: number | null) => (value === null ? "-" : value.toFixed(3));
    entry("Network size", String(metrics.network_size), "metric-network-size");
    entry("Non-human contacts", String(metrics.non_human_count), "metric-non-human");
    entry("Occupied sectors", fmt(metrics.occupied_sector_fraction), "metric-occupied");
    entry("Mean closeness", fmt(metrics.mean_closeness), "metric-closeness");
    entry("Tie density", fmt(metrics.alter_density), "metric-density");
    entry("Isolated contacts", String(metrics.isolated_alter_count), "metric-isolated");
    metricsPanel.appendChild(dl);
  };

  const renderVersionBar = () => {
    versionBar.innerHTML = "";
    const doc = store.state.caseDoc;
    if (!doc) return;
    versionBar.appendChild(el("strong", undefined, doc.client.display_name));
    const select = el("select", "version-switcher") as HTMLSelectElement;
    for (const version of doc.netmap_versions) {
      const option = el(
        "option",
        undefined,
        `${version.version_id} ${version.label} (${version.created_at.slice(0, 10)})`,
      ) as HTMLOptionElement;
      option.value = version.version_id;
      option.selected = version.version_id === store.state.activeVersionId;
      select.appendChild(option);
    }
    select.addEventListener("change", () => void store.switchVersion(select.value));
    versionBar.appendChild(select);
    const newVersion = el("button", undefined, "New version");
    newVersion.addEventListener("click", () => {
      void store.createVersion("follow-up", store.state.activeVersionId ?? undefined);
    });
    versionBar.appendChild(newVersion);
  };

  const renderDeclutter = () => {
    declutterBar.innerHTML = "";
    if (!store.activeVersion()) return;
    const suggestion = store.state.suggestion;
    if (!suggestion) {
      const button = el("button", "declutter-request", "Declutter…");
      button.addEventListener("click", () => void store.requestDeclutter());
      declutterBar.appendChild(button);
      return;
    }
    const moves = Object.keys(suggestion.moves).length;
    declutterBar.appendChild(
      el(
        "span",
        "declutter-summary",
        `${moves} move(s) suggested, ${suggestion.unresolved.length} pair(s) still crowded`,
      ),
    );
    const apply = el("button", "declutter-apply", "Apply");
    apply.addEventListener("click", () => void store.applyDeclutter());
    const cancel = el("button", "declutter-cancel", "Dismiss");
    cancel.addEventListener("click", () => store.dismissDeclutter());
    declutterBar.append(apply, cancel);
  };

  const renderTimebarControls = () => {
    timebarControls.innerHTML = "";
    const doc = store.state.caseDoc;
    if (!doc) return;
    if (!doc.timebar) {
      const button = el("button", "timebar-init", "Start time bar");
      button.addEventListener("click", () => {
        void store.initTimebar(new Date().toISOString().slice(0, 10));
      });
      timebarControls.appendChild(button);
      return;
    }
    const label = el("label", "snap-toggle");
    const checkbox = el("input") as HTMLInputElement;
    checkbox.type = "checkbox";
    checkbox.checked = store.state.snapMonths;
    checkbox.addEventListener("change", () => store.setSnapMonths(checkbox.checked));
    label.append(checkbox, document.createTextNode(" snap to months"));
    timebarControls.appendChild(label);
  };

  const renderDialog = () => {
    dialogRoot.innerHTML = "";
    const dialog = store.state.dialog;
    if (!dialog) return;
    dialogRoot.appendChild(
      dialog.kind === "contact" ? contactForm(store, dialog) : eventForm(store, dialog),
    );
  };

  store.subscribe(() => {
    banner.style.display = store.state.conflict ? "block" : "none";
    notice.style.display = store.state.notice ? "block" : "none";
    notice.textContent = store.state.notice ?? "";
    renderVersionBar();
    renderMetrics();
    renderDeclutter();
    renderTimebarControls();
    renderDialog();
  });

  return store;
}

function field(labelText: string, input: HTMLElement): HTMLElement {
  const wrap = el("label", "field");
  wrap.appendChild(el("span", undefined, labelText));
  wrap.appendChild(input);
  return wrap;
}

function contactForm(store: SessionStore, dialog: ContactDialogState): HTMLElement {
  const form = el("form", "contact-dialog");
  form.addEventListener("submit", (e) => {
    e.preventDefault();
    void store.submitContactDialog();
  });

  const name = el("input", "field-name") as HTMLInputElement;
  name.value = dialog.display_name;
  name.addEventListener("input", () => (dialog.display_name = name.value));
  form.appendChild(field("Name", name));

  const gender = el("input", "field-gender") as HTMLInputElement;
  gender.value = dialog.gender;
  gender.addEventListener("input", () => (dialog.gender = gender.value));
  form.appendChild(field("Gender", gender));

  const role = el("input", "field-role") as HTMLInputElement;
  role.value = dialog.role;
  role.setAttribute("list", "role-suggestions");
  role.addEventListener("input", () => (dialog.role = role.value));
  form.appendChild(field("Role", role));
  const datalist = el("datalist") as HTMLDataListElement;
  datalist.id = "role-suggestions";
  for (const suggestion of ["family member", "friend", "neighbor", "colleague", "counselor", "physician"]) {
    const option = el("option") as HTMLOptionElement;
    option.value = suggestion;
    datalist.appendChild(option);
  }
  form.appendChild(datalist);

  const age = el("input", "field-age") as HTMLInputElement;
  age.value = dialog.age;
  age.addEventListener("input", () => (dialog.age = age.value));
  form.appendChild(field("Age", age));

  const human = el("input", "field-human") as HTMLInputElement;
  human.type = "checkbox";
  human.checked = !dialog.is_human;
  human.addEventListener("change", () => (dialog.is_human = !human.checked));
  form.appendChild(field("Non-human (pet etc.)", human));

  const emoji = el("input", "field-emoji") as HTMLInputElement;
  emoji.value = dialog.emoji;
  emoji.addEventListener("input", () => (dialog.emoji = emoji.value));
  form.appendChild(field("Emoji", emoji));

  form.appendChild(
    el(
      "p",
      "position-preview",
      `sector ${dialog.position.sector_id}, closeness ${(1 - dialog.position.radius).toFixed(2)}`,
    ),
  );

  const submit = el("button", "dialog-save", dialog.contactId === null ? "Add" : "Save") as HTMLButtonElement;
  submit.type = "submit";
  form.appendChild(submit);
  const cancel = el("button", "dialog-cancel", "Cancel") as HTMLButtonElement;
  cancel.type = "button";
  cancel.addEventListener("click", () => store.closeDialog());
  form.appendChild(cancel);
  return form;
}

function eventForm(store: SessionStore, dialog: EventDialogState): HTMLElement {
  const form = el("form", "event-dialog");
  form.addEventListener("submit", (e) => {
    e.preventDefault();
    void store.submitEventDialog();
  });

  const title = el("input", "field-title") as HTMLInputElement;
  title.value = dialog.title;
  title.addEventListener("input", () => (dialog.title = title.value));
  form.appendChild(field("Title", title));

  const start = el("input", "field-start") as HTMLInputElement;
  start.value = dialog.start;
  start.addEventListener("input", () => (dialog.start = start.value));
  form.appendChild(field("From", start));

  const end = el("input", "field-end") as HTMLInputElement;
  end.value = dialog.end ?? "";
  end.addEventListener("input", () => (dialog.end = end.value || null));
  form.appendChild(field("Until (empty = ongoing)", end));

  const note = el("textarea", "field-note") as HTMLTextAreaElement;
  note.value = dialog.note;
  note.addEventListener("input", () => (dialog.note = note.value));
  form.appendChild(field("Documentation", note));

  const emoji = el("input", "field-emoji") as HTMLInputElement;
  emoji.value = dialog.emoji;
  emoji.addEventListener("input", () => (dialog.emoji = emoji.value));
  form.appendChild(field("Emoji", emoji));

  const submit = el("button", "dialog-save", dialog.eventId === null ? "Add" : "Save") as HTMLButtonElement;
  submit.type = "submit";
  form.appendChild(submit);

  if (dialog.eventId !== null) {
    const remove = el("button", "dialog-delete", "Delete") as HTMLButtonElement;
    remove.type = "button";
    remove.addEventListener("click", () => {
      void (async () => {
        await store.deleteEvent(dialog.eventId!);
        store.closeDialog();
      })();
    });
    form.appendChild(remove);
  }
  const cancel = el("button", "dialog-cancel", "Cancel") as HTMLButtonElement;
  cancel.type = "button";
  cancel.addEventListener("click", () => store.closeDialog());
  form.appendChild(cancel);
  return form;
}

if (typeof document !== "undefined" && document.getElementById("app")) {
  mountApp(document.getElementById("app")!);
}
