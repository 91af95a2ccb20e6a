import { describe, expect, it } from "vitest";

import { ApiError, resolveBaseUrl } from "../src/api.js";
import { SessionStore } from "../src/session.js";
import { LOGIN_PATIENT } from "./helpers.js";

function fakeStorage(): Pick<Storage, "getItem" | "setItem" | "removeItem"> {
  const data = new Map<string, string>();
  return {
    getItem: (k) => data.get(k) ?? null,
    setItem: (k, v) => void data.set(k, v),
    removeItem: (k) => void data.delete(k),
  };
}

describe("session store", () => {
  it("starts, reads and clears a session", () => {
    const store = new SessionStore(fakeStorage());
    expect(store.current()).toBeNull();
    store.start(LOGIN_PATIENT);
    expect(store.current()?.username).toBe("asha");
    expect(store.token()).toBe("tok-pat");
    store.clear();
    expect(store.current()).toBeNull();
    expect(store.token()).toBeNull();
  });

  it("expires sessions by wall clock", () => {
    let now = 1000;
    const store = new SessionStore(fakeStorage(), () => now);
    store.start({ ...LOGIN_PATIENT, expires_at: 2000 });
    expect(store.current()).not.toBeNull();
    now = 2000;
    expect(store.current()).toBeNull();
    expect(store.token()).toBeNull();
  });

  it("notifies listeners on change", () => {
    const store = new SessionStore(fakeStorage());
    const seen: (string | null)[] = [];
    store.onChange((s) => seen.push(s?.role ?? null));
    store.start(LOGIN_PATIENT);
    store.clear();
    expect(seen).toEqual(["patient", null]);
  });

  it("drops corrupt stored sessions", () => {
    const storage = fakeStorage();
    storage.setItem("sympredict.session", "{not json");
    const store = new SessionStore(storage);
    expect(store.current()).toBeNull();
  });
});

describe("api base url", () => {
  it("uses the page origin by default and honors the ?api= override", () => {
    expect(resolveBaseUrl("http://portal.example/app/")).toBe("http://portal.example");
    expect(resolveBaseUrl("http://portal.example/?api=http://api.example:8000/")).toBe(
      "http://api.example:8000",
    );
  });
});

describe("api error", () => {
  it("extracts unknown symptom details", () => {
    const error = new ApiError(422, {
      code: "no_recognized_symptoms",
      message: "no recognized symptoms",
      details: { unknown_symptoms: ["a", "b"] },
    });
    expect(error.unknownSymptoms).toEqual(["a", "b"]);
    const bare = new ApiError(500, { code: "internal", message: "x", details: {} });
    expect(bare.unknownSymptoms).toEqual([]);
  });
});
