/**
 * Multi-select with type-ahead over the served symptom vocabulary.
 *
 * The selectable list is exactly what the backend serves; duplicates are
 * impossible (a chosen symptom is dropped from the suggestions) and the
 * chosen set keeps its selection order.
 */

import { clear, el } from "./dom.js";

export class SymptomPicker {
  readonly element: HTMLElement;
  private vocabulary: string[] = [];
  private chosen: string[] = [];
  private readonly input: HTMLInputElement;
  private readonly suggestions: HTMLElement;
  private readonly chips: HTMLElement;

  constructor(private readonly onChange: (chosen: string[]) => void) {
    this.input = el("input", {
      class: "picker-input",
      type: "text",
      placeholder: "type to search symptoms...",
      "aria-label": "symptom search",
    });
    this.suggestions = el("ul", { class: "picker-suggestions" });
    this.chips = el("div", { class: "picker-chips" });
    this.element = el("div", { class: "symptom-picker" }, [
      this.chips,
      this.input,
      this.suggestions,
    ]);
    this.input.addEventListener("input", () => this.renderSuggestions());
    this.input.addEventListener("keydown", (event) => {
      if (event.key === "Enter") {
        event.preventDefault();
        const first = this.matches()[0];
        if (first) this.add(first);
      }
    });
  }

  setVocabulary(symptoms: string[]): void {
    this.vocabulary = [...symptoms];
    this.renderSuggestions();
  }

  selection(): string[] {
    return [...this.chosen];
  }

  add(symptom: string): void {
    if (!this.vocabulary.includes(symptom) || this.chosen.includes(symptom)) return;
    this.chosen.push(symptom);
    this.input.value = "";
    this.render();
  }

  remove(symptom: string): void {
    this.chosen = this.chosen.filter((s) => s !== symptom);
    this.render();
  }

  reset(): void {
    this.chosen = [];
    this.render();
  }

  private matches(): string[] {
    const query = this.input.value.trim().toLowerCase().replace(/\s+/g, "_");
    return this.vocabulary
      .filter((s) => !this.chosen.includes(s))
      .filter((s) => !query || s.includes(query))
      .slice(0, 8);
  }

  private render(): void {
    clear(this.chips);
    for (const symptom of this.chosen) {
      const removeButton = el("button", { class: "chip-remove", type: "button" }, ["x"]);
      removeButton.addEventListener("click", () => this.remove(symptom));
      this.chips.append(el("span", { class: "chip" }, [symptom, removeButton]));
    }
    this.renderSuggestions();
    this.onChange(this.selection());
  }

  private renderSuggestions(): void {
    clear(this.suggestions);
    for (const symptom of this.matches()) {
      const item = el("li", { class: "picker-suggestion", role: "option" }, [symptom]);
      item.addEventListener("click", () => this.add(symptom));
      this.suggestions.append(item);
    }
  }
}
