/**
 * Read-only record timeline. Records render as plain text cards with no
 * edit or delete affordance anywhere; the append-only rule is mirrored in
 * the client by simply having no way to express a mutation.
 */

import type { Api, MedicalRecord } from "./api.js";
import { ApiError } from "./api.js";
import type { SessionStore } from "./session.js";
import { clear, el } from "./dom.js";

export class HistoryView {
  readonly element: HTMLElement;
  private readonly list: HTMLElement;
  private readonly controls: HTMLElement;
  private readonly patientInput: HTMLInputElement;

  constructor(
    private readonly api: Api,
    private readonly sessions: SessionStore,
    private readonly onAuthRequired: () => void,
  ) {
    this.patientInput = el("input", {
      class: "patient-id-input",
      type: "number",
      min: "1",
      placeholder: "patient id",
      "aria-label": "patient id",
    });
    const load = el("button", { class: "load-history", type: "button" }, ["Load history"]);
    load.addEventListener("click", () => {
      const id = Number(this.patientInput.value);
      if (Number.isInteger(id) && id >= 1) void this.show(id);
    });
    this.controls = el("div", { class: "history-controls" }, [this.patientInput, load]);
    this.list = el("div", { class: "history-list" });
    this.element = el("section", { class: "view view-history" }, [
      el("h2", {}, ["Medical history"]),
      this.controls,
      this.list,
    ]);
    this.refreshControls();
  }

  refreshControls(): void {
    const session = this.sessions.current();
    // patients can only see their own records; no id field for them
    this.controls.style.display = session?.role === "doctor" ? "" : "none";
  }

  async showOwn(): Promise<void> {
    const session = this.sessions.current();
    if (!session) {
      this.onAuthRequired();
      return;
    }
    await this.show(session.userId);
  }

  async show(patientId: number): Promise<void> {
    clear(this.list);
    const session = this.sessions.current();
    if (!session) {
      this.onAuthRequired();
      return;
    }
    try {
      const { records } = await this.api.history(patientId);
      if (!records.length) {
        this.list.append(
          el("p", { class: "empty-state" }, ["No records for this patient yet."]),
        );
        return;
      }
      for (const record of records) this.list.append(this.card(record));
    } catch (error) {
      if (error instanceof ApiError && error.status === 401) {
        this.sessions.clear();
        this.onAuthRequired();
        return;
      }
      if (error instanceof ApiError && error.status === 403) {
        this.list.append(
          el("div", { class: "banner banner-error access-denied" }, [
            "Access denied: you can only view your own history.",
          ]),
        );
        return;
      }
      this.list.append(
        el("div", { class: "banner banner-error" }, ["Could not load the history."]),
      );
    }
  }

  private card(record: MedicalRecord): HTMLElement {
    return el("article", { class: "record-card", "data-record-id": String(record.record_id) }, [
      el("header", { class: "record-header" }, [
        el("span", { class: "record-diagnosis" }, [record.diagnosis]),
        el("time", { class: "record-time", datetime: record.created_at }, [
          record.created_at,
        ]),
      ]),
      el("p", { class: "record-symptoms" }, ["Symptoms: " + record.symptoms.join(", ")]),
      record.notes ? el("p", { class: "record-notes" }, [record.notes]) : el("span"),
      el("footer", { class: "record-footer" }, [
        `record #${record.record_id} by doctor #${record.doctor_id}`,
      ]),
    ]);
  }
}
