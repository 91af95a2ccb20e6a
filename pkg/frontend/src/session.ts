/**
 * Browser session state. Absence of a token is the anonymous mode: the
 * prediction views stay fully usable, only records and history need login.
 */

import type { LoginResponse } from "./api.js";

export interface UiSession {
  token: string;
  role: "doctor" | "patient";
  username: string;
  userId: number;
  expiresAt: number; // epoch seconds
}

const STORAGE_KEY = "sympredict.session";

type Listener = (session: UiSession | null) => void;

export class SessionStore {
  private listeners: Listener[] = [];

  constructor(
    private readonly storage: Pick<Storage, "getItem" | "setItem" | "removeItem">,
    private readonly now: () => number = () => Date.now() / 1000,
  ) {}

  current(): UiSession | null {
    const raw = this.storage.getItem(STORAGE_KEY);
    if (!raw) return null;
    try {
      const session = JSON.parse(raw) as UiSession;
      if (!session.token || session.expiresAt <= this.now()) {
        this.clear();
        return null;
      }
      return session;
    } catch {
      this.clear();
      return null;
    }
  }

  token(): string | null {
    return this.current()?.token ?? null;
  }

  start(login: LoginResponse): UiSession {
    const session: UiSession = {
      token: login.token,
      role: login.role,
      username: login.username,
      userId: login.user_id,
      expiresAt: login.expires_at,
    };
    this.storage.setItem(STORAGE_KEY, JSON.stringify(session));
    this.notify(session);
    return session;
  }

  clear(): void {
    this.storage.removeItem(STORAGE_KEY);
    this.notify(null);
  }

  onChange(listener: Listener): void {
    this.listeners.push(listener);
  }

  private notify(session: UiSession | null): void {
    for (const listener of this.listeners) listener(session);
  }
}
