"""Users, sessions, and append-only medical records.

Persistence is a line-delimited JSON journal: one object per line, either a
user or a medical record, distinguished by a `kind` field. The journal is
replayed into memory at startup and every append is flushed and fsynced
before the call returns. There is deliberately no code path that rewrites
or removes a line, which is what makes records tamper-proof: a diagnosis,
once written, can only ever be followed by newer entries.

Credentials are stored as salted PBKDF2 hashes; login failures are
indistinguishable between unknown user and wrong credential.
"""

from __future__ import annotations

import hashlib
import hmac
import json
import os
import secrets
import threading
import time
from dataclasses import dataclass
from datetime import datetime, timezone

from .errors import (
    AuthError,
    ConflictError,
    ForbiddenError,
    ImmutableError,
    NotFoundError,
    ValidationError,
)

ROLES = ("doctor", "patient")
MIN_CREDENTIAL_LENGTH = 8
SESSION_LIFETIME_SECONDS = 24 * 3600
_PBKDF2_ITERATIONS = 60_000


@dataclass(frozen=True)
class User:
    user_id: int
    username: str
    role: str


@dataclass(frozen=True)
class MedicalRecord:
    record_id: int
    patient_id: int
    doctor_id: int
    symptoms: tuple[str, ...]
    diagnosis: str
    notes: str
    created_at: str  # UTC ISO-8601


@dataclass(frozen=True)
class Session:
    token: str
    user_id: int
    expires_at: float  # epoch seconds


@dataclass
class _StoredUser:
    user: User
    salt: bytes
    credential_hash: bytes


def _hash_credential(credential: str, salt: bytes) -> bytes:
    return hashlib.pbkdf2_hmac(
        "sha256", credential.encode("utf-8"), salt, _PBKDF2_ITERATIONS
    )


class RecordStore:
    """Journal-backed store; one writer lock, lock-free reads of snapshots."""

    def __init__(self, journal_path: str | None = None, clock=time.time):
        self._journal_path = journal_path
        self._clock = clock
        self._lock = threading.Lock()
        self._users_by_name: dict[str, _StoredUser] = {}
        self._users_by_id: dict[int, _StoredUser] = {}
        self._records: list[MedicalRecord] = []
        self._sessions: dict[str, Session] = {}
        self._next_user_id = 1
        self._next_record_id = 1
        if journal_path and os.path.exists(journal_path):
            self._replay()

    # -- journal ----------------------------------------------------------

    def _replay(self) -> None:
        with open(self._journal_path, encoding="utf-8") as fh:
            for line_no, line in enumerate(fh, start=1):
                line = line.strip()
                if not line:
                    continue
                try:
                    obj = json.loads(line)
                except json.JSONDecodeError as exc:
                    raise ValidationError(
                        f"corrupt journal line {line_no}: {exc}"
                    ) from exc
                kind = obj.get("kind")
                if kind == "user":
                    stored = _StoredUser(
                        user=User(
                            user_id=obj["user_id"],
                            username=obj["username"],
                            role=obj["role"],
                        ),
                        salt=bytes.fromhex(obj["salt"]),
                        credential_hash=bytes.fromhex(obj["credential_hash"]),
                    )
                    self._users_by_name[stored.user.username] = stored
                    self._users_by_id[stored.user.user_id] = stored
                    self._next_user_id = max(self._next_user_id, stored.user.user_id + 1)
                elif kind == "record":
                    record = MedicalRecord(
                        record_id=obj["record_id"],
                        patient_id=obj["patient_id"],
                        doctor_id=obj["doctor_id"],
                        symptoms=tuple(obj["symptoms"]),
                        diagnosis=obj["diagnosis"],
                        notes=obj["notes"],
                        created_at=obj["created_at"],
                    )
                    if record.record_id < self._next_record_id:
                        raise ValidationError(
                            f"journal line {line_no}: record ids not increasing"
                        )
                    self._records.append(record)
                    self._next_record_id = record.record_id + 1
                else:
                    raise ValidationError(f"journal line {line_no}: unknown kind {kind!r}")

    def _append(self, obj: dict) -> None:
        if not self._journal_path:
            return
        line = json.dumps(obj, separators=(",", ":"), sort_keys=True)
        with open(self._journal_path, "a", encoding="utf-8") as fh:
            fh.write(line + "\n")
            fh.flush()
            os.fsync(fh.fileno())

    # -- users and sessions -------------------------------------------------

    def register(self, username: str, credential: str, role: str) -> User:
        username = username.strip()
        if not username:
            raise ValidationError("username must not be empty")
        if role not in ROLES:
            raise ValidationError(f"role must be one of {ROLES}")
        if len(credential) < MIN_CREDENTIAL_LENGTH:
            raise ValidationError(
                f"credential must be at least {MIN_CREDENTIAL_LENGTH} characters"
            )
        with self._lock:
            if username in self._users_by_name:
                raise ConflictError(f"username {username!r} is taken")
            salt = secrets.token_bytes(16)
            stored = _StoredUser(
                user=User(user_id=self._next_user_id, username=username, role=role),
                salt=salt,
                credential_hash=_hash_credential(credential, salt),
            )
            self._append(
                {
                    "kind": "user",
                    "user_id": stored.user.user_id,
                    "username": username,
                    "role": role,
                    "salt": salt.hex(),
                    "credential_hash": stored.credential_hash.hex(),
                }
            )
            self._users_by_name[username] = stored
            self._users_by_id[stored.user.user_id] = stored
            self._next_user_id += 1
            return stored.user

    def login(self, username: str, credential: str) -> Session:
        stored = self._users_by_name.get(username.strip())
        if stored is None:
            # hash anyway so timing does not reveal whether the user exists
            _hash_credential(credential, b"\x00" * 16)
            raise AuthError("invalid username or credential")
        candidate = _hash_credential(credential, stored.salt)
        if not hmac.compare_digest(candidate, stored.credential_hash):
            raise AuthError("invalid username or credential")
        session = Session(
            token=secrets.token_hex(16),
            user_id=stored.user.user_id,
            expires_at=self._clock() + SESSION_LIFETIME_SECONDS,
        )
        with self._lock:
            self._sessions[session.token] = session
        return session

    def resolve_session(self, token: str | None) -> User:
        """User for a live session token; AuthError otherwise."""
        if not token:
            raise AuthError("missing session token")
        session = self._sessions.get(token)
        if session is None or session.expires_at <= self._clock():
            raise AuthError("invalid or expired session")
        return self._users_by_id[session.user_id].user

    def get_user(self, user_id: int) -> User | None:
        stored = self._users_by_id.get(user_id)
        return stored.user if stored else None

    # -- medical records ----------------------------------------------------

    def create_record(
        self,
        session_token: str,
        patient_id: int,
        symptoms: list[str],
        diagnosis: str,
        notes: str = "",
    ) -> MedicalRecord:
        author = self.resolve_session(session_token)
        if author.role != "doctor":
            raise ForbiddenError("only doctors can create medical records")
        if patient_id not in self._users_by_id:
            raise NotFoundError(f"no such patient: {patient_id}")
        if not diagnosis.strip():
            raise ValidationError("diagnosis must not be empty")
        with self._lock:
            record = MedicalRecord(
                record_id=self._next_record_id,
                patient_id=patient_id,
                doctor_id=author.user_id,
                symptoms=tuple(symptoms),
                diagnosis=diagnosis,
                notes=notes,
                created_at=datetime.fromtimestamp(
                    self._clock(), tz=timezone.utc
                ).isoformat(),
            )
            self._append(
                {
                    "kind": "record",
                    "record_id": record.record_id,
                    "patient_id": record.patient_id,
                    "doctor_id": record.doctor_id,
                    "symptoms": list(record.symptoms),
                    "diagnosis": record.diagnosis,
                    "notes": record.notes,
                    "created_at": record.created_at,
                }
            )
            self._records.append(record)
            self._next_record_id += 1
            return record

    def get_history(self, session_token: str, patient_id: int) -> list[MedicalRecord]:
        requester = self.resolve_session(session_token)
        if requester.role != "doctor" and requester.user_id != patient_id:
            raise ForbiddenError("patients can only read their own history")
        found = [r for r in self._records if r.patient_id == patient_id]
        return sorted(found, key=lambda r: (r.created_at, r.record_id))

    def attempt_mutation(self, record_id: int, changes: dict | None = None) -> None:
        """Records are append-only; any mutation attempt is an error."""
        raise ImmutableError(
            f"record {record_id} is immutable; corrections go in a new record"
        )

    # -- introspection (tests, replay verification) ---------------------------

    def state_dump(self) -> dict:
        """Canonical snapshot of persisted state (sessions excluded)."""
        return {
            "users": [
                {
                    "user_id": s.user.user_id,
                    "username": s.user.username,
                    "role": s.user.role,
                    "salt": s.salt.hex(),
                    "credential_hash": s.credential_hash.hex(),
                }
                for _, s in sorted(self._users_by_id.items())
            ],
            "records": [
                {
                    "record_id": r.record_id,
                    "patient_id": r.patient_id,
                    "doctor_id": r.doctor_id,
                    "symptoms": list(r.symptoms),
                    "diagnosis": r.diagnosis,
                    "notes": r.notes,
                    "created_at": r.created_at,
                }
                for r in self._records
            ],
        }

    @property
    def record_count(self) -> int:
        return len(self._records)
