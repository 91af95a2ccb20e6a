/** Login and registration forms; successful login starts the UiSession. */

import type { Api } from "./api.js";
import { ApiError } from "./api.js";
import type { SessionStore } from "./session.js";
import { clear, el } from "./dom.js";

export class AuthView {
  readonly element: HTMLElement;
  private readonly banner: HTMLElement;

  constructor(
    private readonly api: Api,
    private readonly sessions: SessionStore,
    private readonly onLoggedIn: () => void,
  ) {
    this.banner = el("div", { class: "notice" });
    this.element = el("section", { class: "view view-auth" });
    this.refresh();
  }

  refresh(): void {
    clear(this.element);
    const session = this.sessions.current();
    if (session) {
      const logout = el("button", { class: "logout-button", type: "button" }, ["Log out"]);
      logout.addEventListener("click", () => {
        this.sessions.clear();
        this.refresh();
      });
      this.element.append(
        el("h2", {}, ["Account"]),
        el("p", { class: "whoami" }, [
          `Signed in as ${session.username} (${session.role}).`,
        ]),
        logout,
      );
      return;
    }

    const username = el("input", {
      class: "auth-username",
      type: "text",
      placeholder: "username",
      "aria-label": "username",
      autocomplete: "username",
    });
    const credential = el("input", {
      class: "auth-credential",
      type: "password",
      placeholder: "credential (min 8 chars)",
      "aria-label": "credential",
      autocomplete: "current-password",
    });
    const role = el("select", { class: "auth-role", "aria-label": "role" }, [
      el("option", { value: "patient" }, ["patient"]),
      el("option", { value: "doctor" }, ["doctor"]),
    ]);
    const loginButton = el("button", { class: "auth-login", type: "button" }, ["Sign in"]);
    const registerButton = el("button", { class: "auth-register", type: "button" }, [
      "Register",
    ]);

    loginButton.addEventListener("click", () => {
      void this.login(username.value, credential.value);
    });
    registerButton.addEventListener("click", () => {
      void this.register(username.value, credential.value, role.value);
    });

    this.element.append(
      el("h2", {}, ["Sign in or register"]),
      el("p", { class: "hint" }, [
        "Prediction works without an account; records and history need one.",
      ]),
      username,
      credential,
      role,
      el("div", { class: "auth-buttons" }, [loginButton, registerButton]),
      this.banner,
    );
  }

  private async login(username: string, credential: string): Promise<void> {
    clear(this.banner);
    try {
      const response = await this.api.login(username.trim(), credential);
      this.sessions.start(response);
      this.refresh();
      this.onLoggedIn();
    } catch (error) {
      const message =
        error instanceof ApiError && error.status === 401
          ? "Invalid username or credential."
          : "Sign-in failed, try again.";
      this.banner.append(el("div", { class: "banner banner-error" }, [message]));
    }
  }

  private async register(username: string, credential: string, role: string): Promise<void> {
    clear(this.banner);
    try {
      await this.api.register(username.trim(), credential, role);
      await this.login(username, credential);
    } catch (error) {
      const message =
        error instanceof ApiError ? error.message : "Registration failed, try again.";
      this.banner.append(el("div", { class: "banner banner-error" }, [message]));
    }
  }
}
