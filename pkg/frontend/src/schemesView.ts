/** Health-schemes listing, rendered verbatim from the API. */

import type { Api } from "./api.js";
import { clear, el } from "./dom.js";

export class SchemesView {
  readonly element: HTMLElement;
  private readonly list: HTMLElement;

  constructor(private readonly api: Api) {
    this.list = el("div", { class: "schemes-list" });
    this.element = el("section", { class: "view view-schemes" }, [
      el("h2", {}, ["Health schemes"]),
      this.list,
    ]);
  }

  async load(): Promise<void> {
    clear(this.list);
    try {
      const schemes = await this.api.schemes();
      if (!schemes.length) {
        this.list.append(
          el("p", { class: "empty-state" }, ["No schemes are published right now."]),
        );
        return;
      }
      for (const scheme of schemes) {
        const card = el("article", { class: "scheme-card" }, [
          el("h3", {}, [scheme.name]),
        ]);
        if (scheme.summary) card.append(el("p", {}, [scheme.summary]));
        if (scheme.eligibility) {
          card.append(el("p", { class: "scheme-eligibility" }, [scheme.eligibility]));
        }
        if (scheme.link) {
          card.append(el("a", { href: scheme.link, rel: "noopener" }, ["details"]));
        }
        this.list.append(card);
      }
    } catch {
      this.list.append(
        el("div", { class: "banner banner-error" }, ["Schemes are unavailable."]),
      );
    }
  }
}
