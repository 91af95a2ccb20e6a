/**
 * Doctor-only medical record creation. The form is not rendered at all for
 * anonymous or patient sessions; a successful submit navigates to the
 * patient's refreshed history.
 */

import type { Api } from "./api.js";
import { ApiError } from "./api.js";
import type { SessionStore } from "./session.js";
import { clear, el } from "./dom.js";

export class RecordForm {
  readonly element: HTMLElement;
  private readonly banner: HTMLElement;

  constructor(
    private readonly api: Api,
    private readonly sessions: SessionStore,
    private readonly onSaved: (patientId: number) => void,
    private readonly onAuthRequired: () => void,
  ) {
    this.banner = el("div", { class: "notice" });
    this.element = el("section", { class: "view view-record-form" });
    this.refresh();
  }

  refresh(): void {
    clear(this.element);
    const session = this.sessions.current();
    if (session?.role !== "doctor") {
      // deliberately nothing rendered: the form must not exist for others
      return;
    }

    const patientInput = el("input", {
      class: "record-patient",
      type: "number",
      min: "1",
      placeholder: "patient id",
      "aria-label": "patient id",
    });
    const symptomsInput = el("input", {
      class: "record-symptoms-input",
      type: "text",
      placeholder: "symptoms, comma separated",
      "aria-label": "symptoms",
    });
    const diagnosisInput = el("input", {
      class: "record-diagnosis-input",
      type: "text",
      placeholder: "diagnosis",
      "aria-label": "diagnosis",
    });
    const notesInput = el("textarea", {
      class: "record-notes-input",
      placeholder: "notes (optional)",
      "aria-label": "notes",
    });
    const submit = el("button", { class: "record-submit", type: "submit" }, [
      "Create record",
    ]);
    const form = el("form", { class: "record-form" }, [
      patientInput,
      symptomsInput,
      diagnosisInput,
      notesInput,
      submit,
      this.banner,
    ]);
    form.addEventListener("submit", (event) => {
      event.preventDefault();
      const patientId = Number(patientInput.value);
      const diagnosis = diagnosisInput.value.trim();
      if (!Number.isInteger(patientId) || patientId < 1 || !diagnosis) return;
      void this.save(patientId, symptomsInput.value, diagnosis, notesInput.value);
    });
    this.element.append(el("h2", {}, ["New medical record"]), form);
  }

  private async save(
    patientId: number,
    symptomsText: string,
    diagnosis: string,
    notes: string,
  ): Promise<void> {
    clear(this.banner);
    const symptoms = symptomsText
      .split(",")
      .map((s) => s.trim())
      .filter(Boolean);
    try {
      await this.api.createRecord({ patient_id: patientId, symptoms, diagnosis, notes });
      this.onSaved(patientId);
    } catch (error) {
      if (error instanceof ApiError && error.status === 401) {
        this.sessions.clear();
        this.onAuthRequired();
        return;
      }
      const message =
        error instanceof ApiError
          ? error.status === 403
            ? "Only doctors can create records."
            : error.message
          : "Network problem, record not saved.";
      this.banner.append(el("div", { class: "banner banner-error" }, [message]));
    }
  }
}
