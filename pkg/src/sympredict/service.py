"""HTTP JSON API: prediction, quick diagnosis, records, schemes.

Prediction endpoints are anonymous and stateless; only record creation and
history lookup require a bearer token. Every error body has the same shape:
{"error": {"code", "message", "details"}}. The records surface exposes no
update or delete: PUT/PATCH/DELETE on /api/records* always answer 405.
"""

from __future__ import annotations

import json
import os

from fastapi import FastAPI, Header, Request
from fastapi.exceptions import RequestValidationError
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse
from pydantic import BaseModel, Field
from starlette.exceptions import HTTPException as StarletteHTTPException

from . import __version__
from .dataset import encode_symptoms
from .ensemble import EnsembleModel, ensemble_predict, member_posteriors
from .errors import (
    AuthError,
    ConflictError,
    EncodeError,
    ForbiddenError,
    ImmutableError,
    NotFoundError,
    SympredictError,
    ValidationError,
)
from .recommender import Recommendation, RecommendationTable, recommend
from .records import MedicalRecord, RecordStore

_ERROR_STATUS = {
    ValidationError: (422, "validation_error"),
    EncodeError: (422, "no_recognized_symptoms"),
    ConflictError: (409, "conflict"),
    AuthError: (401, "auth_error"),
    ForbiddenError: (403, "forbidden"),
    NotFoundError: (404, "not_found"),
    ImmutableError: (405, "immutable"),
}


def _error_body(code: str, message: str, details=None) -> dict:
    return {"error": {"code": code, "message": message, "details": details or {}}}


class ServiceUnavailable(SympredictError):
    pass


class PredictRequest(BaseModel):
    symptoms: list[str]
    top_k: int = Field(default=3, ge=1)


class RegisterRequest(BaseModel):
    username: str
    credential: str
    role: str


class LoginRequest(BaseModel):
    username: str
    credential: str


class CreateRecordRequest(BaseModel):
    patient_id: int
    symptoms: list[str] = Field(default_factory=list)
    diagnosis: str
    notes: str = ""


def _record_json(record: MedicalRecord) -> dict:
    return {
        "record_id": record.record_id,
        "patient_id": record.patient_id,
        "doctor_id": record.doctor_id,
        "symptoms": list(record.symptoms),
        "diagnosis": record.diagnosis,
        "notes": record.notes,
        "created_at": record.created_at,
    }


def _recommendation_json(rec: Recommendation, otc_only: bool = False) -> dict:
    per_disease = []
    for entry in rec.per_disease:
        item = {"disease": entry.disease, "matched": entry.matched, "otc": list(entry.otc)}
        if not otc_only:
            item["tests"] = list(entry.tests)
        per_disease.append(item)
    body = {"per_disease": per_disease, "otc": list(rec.otc)}
    if not otc_only:
        body["tests"] = list(rec.tests)
    return body


def create_app(
    model: EnsembleModel | None = None,
    store: RecordStore | None = None,
    recommendations: RecommendationTable | None = None,
    schemes_path: str | None = None,
    cors_origins: list[str] | None = None,
) -> FastAPI:
    app = FastAPI(
        title="sympredict", version=__version__,
        openapi_url=None, docs_url=None, redoc_url=None,
    )
    app.add_middleware(
        CORSMiddleware,
        allow_origins=cors_origins or ["*"],
        allow_methods=["*"],
        allow_headers=["*"],
    )
    store = store if store is not None else RecordStore()
    recommendations = recommendations or RecommendationTable(entries={})

    # -- error shaping ------------------------------------------------------

    @app.exception_handler(SympredictError)
    async def _domain_error(request: Request, exc: SympredictError):
        if isinstance(exc, ServiceUnavailable):
            return JSONResponse(
                status_code=503, content=_error_body("service_unavailable", str(exc))
            )
        for err_type, (status, code) in _ERROR_STATUS.items():
            if isinstance(exc, err_type):
                details = (
                    {"unknown_symptoms": exc.unknown}
                    if isinstance(exc, EncodeError)
                    else {}
                )
                return JSONResponse(
                    status_code=status, content=_error_body(code, str(exc), details)
                )
        return JSONResponse(status_code=500, content=_error_body("internal", str(exc)))

    @app.exception_handler(RequestValidationError)
    async def _invalid_request(request: Request, exc: RequestValidationError):
        return JSONResponse(
            status_code=422,
            content=_error_body(
                "validation_error",
                "request body failed validation",
                {"errors": json.loads(json.dumps(exc.errors(), default=str))},
            ),
        )

    @app.exception_handler(StarletteHTTPException)
    async def _http_error(request: Request, exc: StarletteHTTPException):
        code = {404: "not_found", 405: "method_not_allowed"}.get(exc.status_code, "http_error")
        return JSONResponse(
            status_code=exc.status_code, content=_error_body(code, str(exc.detail))
        )

    # -- helpers -------------------------------------------------------------

    def _require_model() -> EnsembleModel:
        if model is None:
            raise ServiceUnavailable("no model loaded")
        return model

    def _bearer_token(authorization: str | None) -> str:
        if not authorization or not authorization.startswith("Bearer "):
            raise AuthError("missing bearer token")
        return authorization.removeprefix("Bearer ")

    def _predict(req: PredictRequest) -> tuple[dict, list[str]]:
        m = _require_model()
        vector, unknown = encode_symptoms(req.symptoms, m.vocabulary)
        posterior = ensemble_predict(m, vector)
        members = member_posteriors(m, vector)
        ranked = [
            {"disease": m.class_names[c], "probability": p}
            for c, p in posterior.top_k(req.top_k)
        ]
        per_classifier = {
            name: {
                "weight_percent": round(m.weights[name] * 100, 2),
                "top_disease": m.class_names[post.argmax],
                "confidence": post.confidence,
            }
            for name, post in members.items()
        }
        body = {
            "predictions": ranked,
            "per_classifier": per_classifier,
            "unknown_symptoms": unknown,
        }
        return body, [entry["disease"] for entry in ranked]

    # -- routes ---------------------------------------------------------------

    @app.get("/api/health")
    def health():
        return {"status": "ok", "model_loaded": model is not None}

    @app.get("/api/symptoms")
    def symptoms():
        m = _require_model()
        return {"symptoms": list(m.vocabulary.symptoms)}

    @app.get("/api/schemes")
    def schemes():
        if not schemes_path or not os.path.exists(schemes_path):
            raise ServiceUnavailable("schemes data file is not available")
        with open(schemes_path, encoding="utf-8") as fh:
            text = fh.read()
        if not text.strip():
            return []
        try:
            return json.loads(text)
        except json.JSONDecodeError as exc:
            raise ServiceUnavailable(f"schemes data file is corrupt: {exc}") from exc

    @app.post("/api/register", status_code=201)
    def register(req: RegisterRequest):
        user = store.register(req.username, req.credential, req.role)
        return {"user_id": user.user_id, "username": user.username, "role": user.role}

    @app.post("/api/login")
    def login(req: LoginRequest):
        session = store.login(req.username, req.credential)
        user = store.get_user(session.user_id)
        return {
            "token": session.token,
            "expires_at": session.expires_at,
            "user_id": user.user_id,
            "username": user.username,
            "role": user.role,
        }

    @app.post("/api/predict")
    def predict(req: PredictRequest):
        body, ranked = _predict(req)
        body["recommendation"] = _recommendation_json(recommend(recommendations, ranked))
        return body

    @app.post("/api/quick-diagnosis")
    def quick_diagnosis(req: PredictRequest):
        body, ranked = _predict(req)
        body["predictions"] = body["predictions"][:1]
        body["recommendation"] = _recommendation_json(
            recommend(recommendations, ranked[:1]), otc_only=True
        )
        return body

    @app.post("/api/records", status_code=201)
    def create_record(req: CreateRecordRequest, authorization: str | None = Header(default=None)):
        token = _bearer_token(authorization)
        record = store.create_record(
            token, req.patient_id, req.symptoms, req.diagnosis, req.notes
        )
        return _record_json(record)

    @app.get("/api/patients/{patient_id}/history")
    def history(patient_id: int, authorization: str | None = Header(default=None)):
        token = _bearer_token(authorization)
        records = store.get_history(token, patient_id)
        return {"patient_id": patient_id, "records": [_record_json(r) for r in records]}

    @app.api_route("/api/records", methods=["PUT", "PATCH", "DELETE"])
    @app.api_route("/api/records/{record_id}", methods=["PUT", "PATCH", "DELETE"])
    def mutate_record(record_id: int | None = None):
        store.attempt_mutation(record_id if record_id is not None else -1)

    return app
