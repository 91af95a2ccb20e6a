/**
 * Symptom selection plus live prediction panel.
 *
 * One press of the predict control issues exactly one POST /api/predict;
 * the control is disabled while a call is in flight and responses that have
 * been superseded by a newer request are discarded via a sequence number.
 * Nothing in the panel is invented client-side: diseases, weights, tests
 * and medicines are rendered verbatim from the response.
 */

import type { Api, PredictResponse } from "./api.js";
import { ApiError } from "./api.js";
import { clear, el, percent } from "./dom.js";
import { SymptomPicker } from "./symptomPicker.js";

export class PredictView {
  readonly element: HTMLElement;
  readonly picker: SymptomPicker;
  private readonly button: HTMLButtonElement;
  private readonly panel: HTMLElement;
  private readonly notice: HTMLElement;
  private sequence = 0;
  private inFlight = false;

  constructor(private readonly api: Api) {
    this.picker = new SymptomPicker(() => this.syncButton());
    this.button = el("button", { class: "predict-button", type: "button" }, [
      "Predict disease",
    ]);
    this.button.disabled = true;
    this.notice = el("div", { class: "notice" });
    this.panel = el("div", { class: "predict-panel" });
    this.element = el("section", { class: "view view-predict" }, [
      el("h2", {}, ["Disease prediction"]),
      el("p", { class: "hint" }, [
        "Select one or more symptoms from the list, then press predict.",
      ]),
      this.picker.element,
      this.button,
      this.notice,
      this.panel,
    ]);
    this.button.addEventListener("click", () => {
      void this.submit();
    });
  }

  private syncButton(): void {
    this.button.disabled = this.inFlight || this.picker.selection().length === 0;
  }

  /** Issues the request for the current selection; one call per invocation. */
  async submit(): Promise<void> {
    const symptoms = this.picker.selection();
    if (symptoms.length === 0) return;
    const mySequence = ++this.sequence;
    this.inFlight = true;
    this.syncButton();
    clear(this.notice);
    try {
      const response = await this.api.predict(symptoms);
      if (mySequence !== this.sequence) return; // superseded
      this.renderResult(response);
    } catch (error) {
      if (mySequence !== this.sequence) return;
      this.renderError(error, symptoms);
    } finally {
      if (mySequence === this.sequence) {
        this.inFlight = false;
        this.syncButton();
      }
    }
  }

  private renderError(error: unknown, symptoms: string[]): void {
    clear(this.panel);
    if (error instanceof ApiError && error.status === 422) {
      const unknown = error.unknownSymptoms;
      this.notice.append(
        el("div", { class: "banner banner-warning" }, [
          "Unrecognized symptoms: ",
          unknown.join(", ") || symptoms.join(", "),
        ]),
      );
      return;
    }
    if (error instanceof ApiError) {
      this.notice.append(
        el("div", { class: "banner banner-error" }, [
          `The prediction service is unavailable (${error.status}).`,
        ]),
      );
      return;
    }
    const retry = el("button", { class: "retry-button", type: "button" }, ["Retry"]);
    retry.addEventListener("click", () => {
      void this.submit();
    });
    this.notice.append(
      el("div", { class: "banner banner-error" }, ["Network problem. ", retry]),
    );
  }

  private renderResult(response: PredictResponse): void {
    clear(this.panel);
    const top = response.predictions[0];
    if (!top) return;

    const ranked = el("ol", { class: "ranked-diseases" });
    for (const prediction of response.predictions) {
      ranked.append(
        el("li", {}, [
          el("span", { class: "disease-name" }, [prediction.disease]),
          el("span", { class: "disease-prob" }, [percent(prediction.probability)]),
        ]),
      );
    }

    const members = el("table", { class: "classifier-table" }, [
      el("thead", {}, [
        el("tr", {}, [
          el("th", {}, ["classifier"]),
          el("th", {}, ["weight"]),
          el("th", {}, ["top disease"]),
          el("th", {}, ["confidence"]),
        ]),
      ]),
    ]);
    const body = el("tbody");
    for (const [name, summary] of Object.entries(response.per_classifier)) {
      body.append(
        el("tr", {}, [
          el("td", {}, [name]),
          el("td", {}, [`${summary.weight_percent.toFixed(2)}%`]),
          el("td", {}, [summary.top_disease]),
          el("td", {}, [percent(summary.confidence)]),
        ]),
      );
    }
    members.append(body);

    const recommendation = el("div", { class: "recommendation" });
    const tests = response.recommendation.tests ?? [];
    const otc = response.recommendation.otc;
    if (tests.length) {
      recommendation.append(
        el("h4", {}, ["Recommended tests"]),
        el("ul", { class: "test-list" }, tests.map((t) => el("li", {}, [t]))),
      );
    }
    if (otc.length) {
      recommendation.append(
        el("h4", {}, ["Over-the-counter options"]),
        el("ul", { class: "otc-list" }, otc.map((m) => el("li", {}, [m]))),
      );
    }

    this.panel.append(
      el("div", { class: "top-result" }, [
        el("span", { class: "top-disease" }, [top.disease]),
        el("span", { class: "top-confidence" }, [percent(top.probability)]),
      ]),
      ranked,
      members,
      recommendation,
    );
    if (response.unknown_symptoms.length) {
      this.panel.append(
        el("div", { class: "banner banner-warning" }, [
          "Ignored unrecognized symptoms: ",
          response.unknown_symptoms.join(", "),
        ]),
      );
    }
  }
}
