/** Shared fetch mock: routes keyed by "METHOD /path", every call recorded. */

import { vi } from "vitest";

export interface RecordedCall {
  method: string;
  path: string;
  body: unknown;
  headers: Record<string, string>;
}

export type RouteResult = { status?: number; body: unknown } | Promise<{ status?: number; body: unknown }>;

export class FetchMock {
  calls: RecordedCall[] = [];
  private routes = new Map<string, (body: unknown) => RouteResult>();

  on(key: string, handler: (body: unknown) => RouteResult): this {
    this.routes.set(key, handler);
    return this;
  }

  json(key: string, body: unknown, status = 200): this {
    return this.on(key, () => ({ status, body }));
  }

  install(): void {
    vi.stubGlobal("fetch", async (input: string | URL, init?: RequestInit) => {
      const url = new URL(String(input), "http://api.test");
      const method = init?.method ?? "GET";
      const parsedBody = init?.body ? JSON.parse(String(init.body)) : undefined;
      this.calls.push({
        method,
        path: url.pathname,
        body: parsedBody,
        headers: (init?.headers as Record<string, string>) ?? {},
      });
      const handler = this.routes.get(`${method} ${url.pathname}`);
      if (!handler) {
        return new Response(
          JSON.stringify({ error: { code: "not_found", message: "Not Found", details: {} } }),
          { status: 404 },
        );
      }
      const result = await handler(parsedBody);
      return new Response(JSON.stringify(result.body), { status: result.status ?? 200 });
    });
  }

  callsTo(key: string): RecordedCall[] {
    return this.calls.filter((c) => `${c.method} ${c.path}` === key);
  }

  methodsUsed(): Set<string> {
    return new Set(this.calls.map((c) => c.method));
  }
}

export function errorBody(code: string, message: string, details: Record<string, unknown> = {}) {
  return { error: { code, message, details } };
}

export const PREDICT_RESPONSE = {
  predictions: [
    { disease: "malaria", probability: 0.62 },
    { disease: "typhoid", probability: 0.21 },
    { disease: "dengue", probability: 0.08 },
  ],
  per_classifier: {
    knn: { weight_percent: 93.53, top_disease: "malaria", confidence: 0.8 },
    naive_bayes: { weight_percent: 84.02, top_disease: "typhoid", confidence: 0.55 },
    random_forest: { weight_percent: 93.65, top_disease: "malaria", confidence: 0.71 },
  },
  unknown_symptoms: [],
  recommendation: {
    per_disease: [
      { disease: "malaria", matched: true, tests: ["blood smear"], otc: ["paracetamol"] },
      { disease: "typhoid", matched: true, tests: ["widal test"], otc: [] },
      { disease: "dengue", matched: false, tests: [], otc: [] },
    ],
    tests: ["blood smear", "widal test"],
    otc: ["paracetamol"],
  },
};

export const LOGIN_DOCTOR = {
  token: "tok-doc",
  expires_at: Date.now() / 1000 + 3600,
  user_id: 1,
  username: "dr_rao",
  role: "doctor" as const,
};

export const LOGIN_PATIENT = {
  token: "tok-pat",
  expires_at: Date.now() / 1000 + 3600,
  user_id: 2,
  username: "asha",
  role: "patient" as const,
};

export const RECORDS = [
  {
    record_id: 1,
    patient_id: 2,
    doctor_id: 1,
    symptoms: ["chills", "high_fever"],
    diagnosis: "malaria",
    notes: "hydrate well",
    created_at: "2026-01-05T10:00:00+00:00",
  },
  {
    record_id: 2,
    patient_id: 2,
    doctor_id: 1,
    symptoms: ["headache"],
    diagnosis: "migraine",
    notes: "",
    created_at: "2026-02-11T09:30:00+00:00",
  },
];

export function flush(): Promise<void> {
  return new Promise((resolve) => setTimeout(resolve, 0));
}
