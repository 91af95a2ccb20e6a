/** Quick diagnosis: top disease and its over-the-counter options only. */

import type { Api } from "./api.js";
import { ApiError } from "./api.js";
import { clear, el, percent } from "./dom.js";
import { SymptomPicker } from "./symptomPicker.js";

export class QuickDiagnosisView {
  readonly element: HTMLElement;
  readonly picker: SymptomPicker;
  private readonly button: HTMLButtonElement;
  private readonly panel: HTMLElement;
  private inFlight = false;

  constructor(private readonly api: Api) {
    this.picker = new SymptomPicker(() => this.syncButton());
    this.button = el("button", { class: "quick-button", type: "button" }, [
      "Quick diagnosis",
    ]);
    this.button.disabled = true;
    this.panel = el("div", { class: "quick-panel" });
    this.element = el("section", { class: "view view-quick" }, [
      el("h2", {}, ["Quick diagnosis"]),
      el("p", { class: "hint" }, [
        "Get the most likely condition and matching over-the-counter options.",
      ]),
      this.picker.element,
      this.button,
      this.panel,
    ]);
    this.button.addEventListener("click", () => {
      void this.submit();
    });
  }

  private syncButton(): void {
    this.button.disabled = this.inFlight || this.picker.selection().length === 0;
  }

  async submit(): Promise<void> {
    const symptoms = this.picker.selection();
    if (symptoms.length === 0) return;
    this.inFlight = true;
    this.syncButton();
    clear(this.panel);
    try {
      const response = await this.api.quickDiagnosis(symptoms);
      const top = response.predictions[0];
      if (!top) return;
      this.panel.append(
        el("div", { class: "top-result" }, [
          el("span", { class: "top-disease" }, [top.disease]),
          el("span", { class: "top-confidence" }, [percent(top.probability)]),
        ]),
      );
      const entry = response.recommendation.per_disease[0];
      if (entry && entry.otc.length) {
        this.panel.append(
          el("h4", {}, ["Over-the-counter options"]),
          el("ul", { class: "otc-list" }, entry.otc.map((m) => el("li", {}, [m]))),
        );
      } else {
        this.panel.append(
          el("p", { class: "empty-state" }, [
            entry && entry.matched
              ? "No over-the-counter option is listed for this condition."
              : "This condition is not in the recommendation table.",
          ]),
        );
      }
    } catch (error) {
      if (error instanceof ApiError && error.status === 422) {
        this.panel.append(
          el("div", { class: "banner banner-warning" }, [
            "Unrecognized symptoms: " + (error.unknownSymptoms.join(", ") || "all"),
          ]),
        );
      } else {
        this.panel.append(
          el("div", { class: "banner banner-error" }, ["Quick diagnosis unavailable."]),
        );
      }
    } finally {
      this.inFlight = false;
      this.syncButton();
    }
  }
}
