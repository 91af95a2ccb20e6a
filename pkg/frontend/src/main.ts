/** App shell: tabbed navigation wiring the views to the API and session. */

import { Api, resolveBaseUrl } from "./api.js";
import { AuthView } from "./authView.js";
import { HistoryView } from "./historyView.js";
import { PredictView } from "./predictView.js";
import { QuickDiagnosisView } from "./quickView.js";
import { RecordForm } from "./recordForm.js";
import { SchemesView } from "./schemesView.js";
import { SessionStore } from "./session.js";
import { clear, el } from "./dom.js";

const TABS = [
  ["predict", "Predict"],
  ["quick", "Quick diagnosis"],
  ["history", "History"],
  ["new-record", "New record"],
  ["schemes", "Schemes"],
  ["account", "Account"],
] as const;

type TabId = (typeof TABS)[number][0];

export class App {
  private active: TabId = "predict";
  private readonly views: Record<TabId, { element: HTMLElement }>;
  private readonly nav: HTMLElement;
  private readonly outlet: HTMLElement;
  readonly predict: PredictView;
  readonly quick: QuickDiagnosisView;
  readonly history: HistoryView;
  readonly recordForm: RecordForm;
  readonly schemes: SchemesView;
  readonly auth: AuthView;

  constructor(
    private readonly root: HTMLElement,
    private readonly api: Api,
    private readonly sessions: SessionStore,
  ) {
    this.predict = new PredictView(api);
    this.quick = new QuickDiagnosisView(api);
    this.history = new HistoryView(api, sessions, () => this.show("account"));
    this.recordForm = new RecordForm(
      api,
      sessions,
      (patientId) => {
        this.show("history");
        void this.history.show(patientId);
      },
      () => this.show("account"),
    );
    this.schemes = new SchemesView(api);
    this.auth = new AuthView(api, sessions, () => this.show("predict"));
    this.views = {
      predict: this.predict,
      quick: this.quick,
      history: this.history,
      "new-record": this.recordForm,
      schemes: this.schemes,
      account: this.auth,
    };

    this.nav = el("nav", { class: "tabs", role: "tablist" });
    this.outlet = el("main", { class: "outlet" });
    root.append(
      el("header", { class: "app-header" }, [el("h1", {}, ["Diagnostic portal"])]),
      this.nav,
      this.outlet,
    );
    sessions.onChange(() => {
      this.recordForm.refresh();
      this.history.refreshControls();
      this.renderNav();
    });
    this.renderNav();
    this.show("predict");
  }

  private visibleTabs(): readonly (readonly [TabId, string])[] {
    const session = this.sessions.current();
    return TABS.filter(([id]) => {
      if (id === "history") return session !== null;
      if (id === "new-record") return session?.role === "doctor";
      return true;
    });
  }

  private renderNav(): void {
    clear(this.nav);
    for (const [id, label] of this.visibleTabs()) {
      const tab = el(
        "button",
        {
          class: `tab${id === this.active ? " tab-active" : ""}`,
          type: "button",
          role: "tab",
          "data-tab": id,
        },
        [label],
      );
      tab.addEventListener("click", () => this.show(id));
      this.nav.append(tab);
    }
  }

  show(tab: TabId): void {
    const allowed = this.visibleTabs().some(([id]) => id === tab);
    this.active = allowed ? tab : "account";
    this.renderNav();
    clear(this.outlet);
    const view = this.views[this.active];
    this.outlet.append(view.element);
    if (this.active === "schemes") void this.schemes.load();
    if (this.active === "history" && this.sessions.current()?.role === "patient") {
      void this.history.showOwn();
    }
  }

  async loadVocabulary(): Promise<void> {
    const { symptoms } = await this.api.symptoms();
    this.predict.picker.setVocabulary(symptoms);
    this.quick.picker.setVocabulary(symptoms);
  }
}

export function boot(root: HTMLElement): App {
  const sessions = new SessionStore(window.localStorage);
  const api = new Api(resolveBaseUrl(window.location.href), () => sessions.token());
  const app = new App(root, api, sessions);
  void app.loadVocabulary();
  return app;
}

const rootElement = typeof document !== "undefined" ? document.getElementById("app") : null;
if (rootElement) boot(rootElement);
