"""Diagnosis REST service.

Endpoints (JSON bodies; errors carry {"error", "details"}):

    POST /api/login    {username, password} -> {token, expires_at}
    POST /api/predict  object of the 13 features -> PredictionResult
    POST /api/upload   multipart file or raw CSV -> BatchReport
    GET  /api/model    model metadata + health (auth required)
    GET  /api/health   "ok" (no auth)

Authentication is a bearer token from /api/login; users live in a JSON
file of salted, iterated PBKDF2 password hashes.  The loaded model
envelope is immutable and swapped as a whole reference, so concurrent
requests never observe a half-loaded model.
"""

from __future__ import annotations

import binascii
import csv
import hashlib
import hmac
import io
import json
import secrets
import threading
import time
from dataclasses import dataclass

from fastapi import FastAPI, Header, Request
from fastapi.exceptions import RequestValidationError
from fastapi.responses import JSONResponse
from starlette.exceptions import HTTPException as StarletteHTTPException

from .data import CATEGORICAL_CODES, FEATURE_NAMES, validate_feature_value
from ._validation import DataError
from .model_store import load_model

DEFAULT_TOKEN_TTL = 24 * 3600
DEFAULT_UPLOAD_LIMIT = 1 << 20  # 1 MiB
MIN_PBKDF2_ITERATIONS = 100_000
DEFAULT_PBKDF2_ITERATIONS = 120_000

_DUMMY_SALT = bytes(16)


class ApiError(Exception):
    def __init__(self, status: int, error: str, details):
        super().__init__(error)
        self.status = status
        self.error = error
        self.details = details


# ---------------------------------------------------------------------------
# credentials

def hash_password(password: str, salt: bytes | None = None, iterations: int = DEFAULT_PBKDF2_ITERATIONS) -> dict:
    if iterations < MIN_PBKDF2_ITERATIONS:
        raise ValueError(f"iterations must be >= {MIN_PBKDF2_ITERATIONS}")
    salt = secrets.token_bytes(16) if salt is None else salt
    digest = hashlib.pbkdf2_hmac("sha256", password.encode(), salt, iterations)
    return {
        "algorithm": "pbkdf2_sha256",
        "salt": salt.hex(),
        "iterations": iterations,
        "digest": digest.hex(),
    }


def create_users_file(path, credentials: dict[str, str], iterations: int = DEFAULT_PBKDF2_ITERATIONS) -> None:
    users = {name: hash_password(pw, iterations=iterations) for name, pw in credentials.items()}
    with open(path, "w", encoding="utf-8") as fh:
        json.dump({"version": 1, "users": users}, fh, indent=1)
        fh.write("\n")


def load_users(path) -> dict[str, dict]:
    with open(path, encoding="utf-8") as fh:
        doc = json.load(fh)
    users = doc.get("users", {})
    salts = set()
    for name, rec in users.items():
        if rec.get("algorithm") != "pbkdf2_sha256":
            raise ValueError(f"user {name!r}: unsupported algorithm {rec.get('algorithm')!r}")
        if rec.get("iterations", 0) < MIN_PBKDF2_ITERATIONS:
            raise ValueError(f"user {name!r}: iteration count below {MIN_PBKDF2_ITERATIONS}")
        if rec["salt"] in salts:
            raise ValueError(f"user {name!r}: salt reused across users")
        salts.add(rec["salt"])
    return users


def verify_password(users: dict, username, password) -> bool:
    record = users.get(username)
    # always derive a hash so unknown users cost the same as wrong passwords
    salt = binascii.unhexlify(record["salt"]) if record else _DUMMY_SALT
    iterations = record["iterations"] if record else DEFAULT_PBKDF2_ITERATIONS
    expected = binascii.unhexlify(record["digest"]) if record else b"\x00" * 32
    digest = hashlib.pbkdf2_hmac("sha256", str(password).encode(), salt, iterations)
    return hmac.compare_digest(digest, expected) and record is not None


# ---------------------------------------------------------------------------
# request-side record validation

def parse_record_fields(fields: dict) -> tuple[list[float] | None, str, dict]:
    """Validate one patient's 13 fields.

    Returns (values in feature order, row_status, details); values is None
    unless the status is "ok".
    """
    missing = []
    for name in FEATURE_NAMES:
        value = fields.get(name)
        if value is None or (isinstance(value, str) and value.strip() in ("", "?")):
            missing.append(name)
    if missing:
        return None, "missing_values", {"missing": missing}
    values = []
    for name in FEATURE_NAMES:
        raw = fields[name]
        try:
            number = float(raw)
        except (TypeError, ValueError):
            return None, "invalid_value", {"field": name, "message": f"{name}={raw!r} is not numeric"}
        try:
            values.append(validate_feature_value(name, number))
        except DataError as exc:
            details = {"field": name, "message": str(exc)}
            if name in CATEGORICAL_CODES:
                details["allowed"] = sorted(CATEGORICAL_CODES[name])
            return None, "invalid_value", details
    return values, "ok", {}


def run_batch_csv(envelope, text: str) -> tuple[list[dict], int]:
    """Score a header-ed CSV of patients; one result per input row, in order.

    The optional ``id`` column is ignored for inference and echoed back on
    each result (ids are auto-assigned 1..n when absent); extra columns are
    ignored.  Rows with missing or invalid cells get a non-ok status rather
    than being dropped.  Raises DataError for structural problems.
    """
    rows = [r for r in csv.reader(io.StringIO(text)) if r and any(c.strip() for c in r)]
    if len(rows) < 2:
        raise DataError("file needs a header row and at least one data row")
    header = [c.strip().lower() for c in rows[0]]
    missing = [name for name in FEATURE_NAMES if name not in header]
    if missing:
        exc = DataError(f"header is missing required columns: {', '.join(missing)}")
        exc.details = {"missing": missing}
        raise exc
    id_col = header.index("id") if "id" in header else None
    results: list[dict] = []
    ok_count = 0
    batch_rows, batch_slots = [], []
    for i, row in enumerate(rows[1:], start=1):
        cells = [c.strip() for c in row]
        fields = {
            name: cells[header.index(name)] if header.index(name) < len(cells) else ""
            for name in FEATURE_NAMES
        }
        pid = (
            cells[id_col]
            if id_col is not None and id_col < len(cells) and cells[id_col]
            else str(i)
        )
        values, status, _details = parse_record_fields(fields)
        results.append({"patient_id": pid, "label": None, "probability": None, "row_status": status})
        if status == "ok":
            batch_rows.append(values)
            batch_slots.append(len(results) - 1)
    if batch_rows:
        labels, scores = envelope.predict(batch_rows)
        for slot, label, score in zip(batch_slots, labels, scores):
            results[slot]["label"] = int(label)
            results[slot]["probability"] = float(score)
            ok_count += 1
    return results, ok_count


# ---------------------------------------------------------------------------
# application state

@dataclass
class _Session:
    username: str
    expires_at: float


class ServiceState:
    def __init__(self, users: dict, token_ttl: int, upload_limit: int):
        self.users = users
        self.token_ttl = token_ttl
        self.upload_limit = upload_limit
        self.envelope = None  # swapped atomically as a whole reference
        self.started_at = time.time()
        self._sessions: dict[str, _Session] = {}
        self._lock = threading.Lock()

    def issue_token(self, username: str) -> tuple[str, float]:
        token = secrets.token_hex(16)  # 128 bits
        expires = time.time() + self.token_ttl
        with self._lock:
            self._sessions[token] = _Session(username, expires)
        return token, expires

    def check_token(self, token: str | None) -> _Session | None:
        if not token:
            return None
        with self._lock:
            session = self._sessions.get(token)
            if session is None:
                return None
            if session.expires_at <= time.time():
                del self._sessions[token]
                return None
            return session

    def expire_token(self, token: str) -> None:
        with self._lock:
            session = self._sessions.get(token)
            if session:
                session.expires_at = 0.0


def _model_snapshot(state: ServiceState) -> dict:
    env = state.envelope
    if env is None:
        return {"loaded": False, "model_type": None, "metadata": None}
    return {"loaded": True, "model_type": env.model_type, "metadata": env.metadata}


def create_app(
    model_path=None,
    users_path=None,
    *,
    users: dict | None = None,
    token_ttl: int = DEFAULT_TOKEN_TTL,
    upload_limit: int = DEFAULT_UPLOAD_LIMIT,
    static_dir=None,
) -> FastAPI:
    """Build the service; pass ``users`` directly or a ``users_path`` file."""
    if users is None:
        users = load_users(users_path) if users_path else {}
    state = ServiceState(users, token_ttl, upload_limit)
    if model_path is not None:
        state.envelope = load_model(model_path)

    app = FastAPI(title="heartml diagnosis service", docs_url=None, redoc_url=None)
    app.state.heartml = state

    @app.exception_handler(ApiError)
    async def _api_error(_request, exc: ApiError):
        return JSONResponse(status_code=exc.status, content={"error": exc.error, "details": exc.details})

    @app.exception_handler(RequestValidationError)
    async def _validation_error(_request, exc: RequestValidationError):
        return JSONResponse(status_code=422, content={"error": "validation", "details": str(exc)})

    @app.exception_handler(StarletteHTTPException)
    async def _http_error(_request, exc: StarletteHTTPException):
        return JSONResponse(status_code=exc.status_code, content={"error": "http", "details": exc.detail})

    def authenticate(authorization: str | None) -> _Session:
        token = None
        if authorization and authorization.startswith("Bearer "):
            token = authorization[len("Bearer "):].strip()
        session = state.check_token(token)
        if session is None:
            raise ApiError(401, "unauthorized", "missing, invalid, or expired token")
        return session

    def require_model():
        env = state.envelope
        if env is None:
            raise ApiError(503, "no_model", "no model envelope is loaded")
        return env

    @app.get("/api/health")
    def health():
        return JSONResponse(content="ok")

    @app.post("/api/login")
    async def login(request: Request):
        try:
            body = json.loads(await request.body())
        except json.JSONDecodeError:
            raise ApiError(422, "validation", "request body must be a JSON object")
        if not isinstance(body, dict) or not isinstance(body.get("username"), str) or not isinstance(body.get("password"), str):
            raise ApiError(422, "validation", "username and password are required strings")
        if not verify_password(state.users, body["username"], body["password"]):
            raise ApiError(401, "authentication_failed", "unknown user or wrong password")
        token, expires = state.issue_token(body["username"])
        iso = time.strftime("%Y-%m-%dT%H:%M:%S+00:00", time.gmtime(expires))
        return {"token": token, "expires_at": iso}

    @app.get("/api/model")
    def model_info(authorization: str | None = Header(default=None)):
        authenticate(authorization)
        snapshot = _model_snapshot(state)
        snapshot["uptime_seconds"] = round(time.time() - state.started_at, 3)
        return snapshot

    @app.post("/api/predict")
    async def predict_single(request: Request, authorization: str | None = Header(default=None)):
        authenticate(authorization)
        env = require_model()
        try:
            body = json.loads(await request.body())
        except json.JSONDecodeError:
            raise ApiError(422, "validation", "request body must be a JSON object")
        if not isinstance(body, dict):
            raise ApiError(422, "validation", "request body must be a JSON object")
        values, status, details = parse_record_fields(body)
        if status == "missing_values":
            raise ApiError(422, "missing_fields", details)
        if status == "invalid_value":
            raise ApiError(422, "invalid_value", details)
        labels, scores = env.predict([values])
        pid = body.get("patient_id")
        return {
            "patient_id": None if pid is None else str(pid),
            "label": int(labels[0]),
            "probability": float(scores[0]),
            "row_status": "ok",
        }

    async def _read_upload(request: Request) -> bytes:
        declared = request.headers.get("content-length")
        if declared and declared.isdigit() and int(declared) > state.upload_limit:
            raise ApiError(413, "too_large", f"upload exceeds {state.upload_limit} bytes")
        content_type = request.headers.get("content-type", "")
        if content_type.startswith("multipart/form-data"):
            form = await request.form()
            for value in form.values():
                if hasattr(value, "read"):
                    return await value.read()
            raise ApiError(422, "validation", "multipart body contains no file field")
        return await request.body()

    @app.post("/api/upload")
    async def upload_batch(request: Request, authorization: str | None = Header(default=None)):
        authenticate(authorization)
        env = require_model()
        data = await _read_upload(request)
        if len(data) > state.upload_limit:
            raise ApiError(413, "too_large", f"upload exceeds {state.upload_limit} bytes")
        if not data.strip():
            raise ApiError(422, "validation", "uploaded file is empty")
        try:
            text = data.decode("utf-8-sig")
        except UnicodeDecodeError:
            raise ApiError(422, "validation", "uploaded file is not UTF-8 text")
        try:
            results, ok_count = run_batch_csv(env, text)
        except DataError as exc:
            raise ApiError(422, "validation", getattr(exc, "details", None) or str(exc))
        return {
            "results": results,
            "ok_count": ok_count,
            "skipped_count": len(results) - ok_count,
            "model": _model_snapshot(state),
        }

    if static_dir is not None:
        from fastapi.staticfiles import StaticFiles

        app.mount("/", StaticFiles(directory=static_dir, html=True), name="ui")

    return app
