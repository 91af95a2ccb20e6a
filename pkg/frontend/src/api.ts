/**
 * Typed client for the sympredict JSON API.
 *
 * Every piece of medical content shown in the UI (disease names, test and
 * medicine lists, record texts) comes from these responses; the client adds
 * no medical strings of its own. The client deliberately exposes only GET
 * and POST: records are append-only and the UI must not even be able to
 * issue PUT/PATCH/DELETE.
 */

export interface RankedDisease {
  disease: string;
  probability: number;
}

export interface ClassifierSummary {
  weight_percent: number;
  top_disease: string;
  confidence: number;
}

export interface DiseaseRecommendation {
  disease: string;
  matched: boolean;
  tests?: string[];
  otc: string[];
}

export interface Recommendation {
  per_disease: DiseaseRecommendation[];
  tests?: string[];
  otc: string[];
}

export interface PredictResponse {
  predictions: RankedDisease[];
  per_classifier: Record<string, ClassifierSummary>;
  unknown_symptoms: string[];
  recommendation: Recommendation;
}

export interface LoginResponse {
  token: string;
  expires_at: number;
  user_id: number;
  username: string;
  role: "doctor" | "patient";
}

export interface RegisteredUser {
  user_id: number;
  username: string;
  role: string;
}

export interface MedicalRecord {
  record_id: number;
  patient_id: number;
  doctor_id: number;
  symptoms: string[];
  diagnosis: string;
  notes: string;
  created_at: string;
}

export interface Scheme {
  name: string;
  summary?: string;
  eligibility?: string;
  link?: string;
}

export interface ApiErrorBody {
  code: string;
  message: string;
  details: Record<string, unknown>;
}

/** Non-2xx response, carrying the server's uniform error body. */
export class ApiError extends Error {
  constructor(
    readonly status: number,
    readonly body: ApiErrorBody,
  ) {
    super(body.message);
  }

  get unknownSymptoms(): string[] {
    const value = this.body.details["unknown_symptoms"];
    return Array.isArray(value) ? value.map(String) : [];
  }
}

/** Resolve the API origin: ?api= query param, else same origin. */
export function resolveBaseUrl(href: string): string {
  try {
    const url = new URL(href);
    const override = url.searchParams.get("api");
    if (override) return override.replace(/\/$/, "");
    return url.origin;
  } catch {
    return "";
  }
}

export class Api {
  constructor(
    private readonly baseUrl: string,
    private readonly getToken: () => string | null = () => null,
  ) {}

  private async request<T>(method: "GET" | "POST", path: string, body?: unknown): Promise<T> {
    const headers: Record<string, string> = {};
    if (body !== undefined) headers["Content-Type"] = "application/json";
    const token = this.getToken();
    if (token) headers["Authorization"] = `Bearer ${token}`;
    const response = await fetch(this.baseUrl + path, {
      method,
      headers,
      body: body === undefined ? undefined : JSON.stringify(body),
    });
    const text = await response.text();
    const parsed = text ? JSON.parse(text) : null;
    if (!response.ok) {
      const error: ApiErrorBody = parsed?.error ?? {
        code: "http_error",
        message: `request failed with status ${response.status}`,
        details: {},
      };
      throw new ApiError(response.status, error);
    }
    return parsed as T;
  }

  health(): Promise<{ status: string; model_loaded: boolean }> {
    return this.request("GET", "/api/health");
  }

  symptoms(): Promise<{ symptoms: string[] }> {
    return this.request("GET", "/api/symptoms");
  }

  schemes(): Promise<Scheme[]> {
    return this.request("GET", "/api/schemes");
  }

  predict(symptoms: string[], topK = 3): Promise<PredictResponse> {
    return this.request("POST", "/api/predict", { symptoms, top_k: topK });
  }

  quickDiagnosis(symptoms: string[]): Promise<PredictResponse> {
    return this.request("POST", "/api/quick-diagnosis", { symptoms });
  }

  register(username: string, credential: string, role: string): Promise<RegisteredUser> {
    return this.request("POST", "/api/register", { username, credential, role });
  }

  login(username: string, credential: string): Promise<LoginResponse> {
    return this.request("POST", "/api/login", { username, credential });
  }

  createRecord(record: {
    patient_id: number;
    symptoms: string[];
    diagnosis: string;
    notes?: string;
  }): Promise<MedicalRecord> {
    return this.request("POST", "/api/records", record);
  }

  history(patientId: number): Promise<{ patient_id: number; records: MedicalRecord[] }> {
    return this.request("GET", `/api/patients/${patientId}/history`);
  }
}
