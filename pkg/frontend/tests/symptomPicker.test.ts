import { beforeEach, describe, expect, it } from "vitest";

import { SymptomPicker } from "../src/symptomPicker.js";

const VOCAB = ["chills", "headache", "high_fever", "itching", "skin_rash"];

let picker: SymptomPicker;
let changes: string[][];

beforeEach(() => {
  changes = [];
  picker = new SymptomPicker((chosen) => changes.push(chosen));
  picker.setVocabulary(VOCAB);
  document.body.innerHTML = "";
  document.body.append(picker.element);
});

describe("symptom picker", () => {
  it("filters suggestions by typed query, normalizing spaces", () => {
    const input = picker.element.querySelector(".picker-input") as HTMLInputElement;
    input.value = "high fe";
    input.dispatchEvent(new Event("input"));
    const shown = [...picker.element.querySelectorAll(".picker-suggestion")].map(
      (n) => n.textContent,
    );
    expect(shown).toEqual(["high_fever"]);
  });

  it("keeps the chosen set ordered and free of duplicates", () => {
    picker.add("itching");
    picker.add("chills");
    picker.add("itching");
    expect(picker.selection()).toEqual(["itching", "chills"]);
    const chips = [...picker.element.querySelectorAll(".chip")].map((c) =>
      c.textContent?.replace("x", ""),
    );
    expect(chips).toEqual(["itching", "chills"]);
  });

  it("refuses symptoms outside the served vocabulary", () => {
    picker.add("quantum_flu");
    expect(picker.selection()).toEqual([]);
  });

  it("removes a symptom via its chip control", () => {
    picker.add("itching");
    picker.add("chills");
    (picker.element.querySelector(".chip-remove") as HTMLButtonElement).click();
    expect(picker.selection()).toEqual(["chills"]);
  });

  it("omits already-chosen symptoms from the suggestions", () => {
    picker.add("chills");
    const shown = [...picker.element.querySelectorAll(".picker-suggestion")].map(
      (n) => n.textContent,
    );
    expect(shown).not.toContain("chills");
  });
});
