"""HTTP service for live inconsistency monitoring.

A session holds one incomplete matrix that the decision-maker fills
comparison by comparison; every mutation returns a fresh status report
with the consistency ratio judged against the graph-specific random
index.  Size-four thresholds are exact enumerations, larger sizes use
seeded Monte Carlo; either way the value is cached per canonical code
with single-flight computation, so repeated hits are instant and
identical.

Wire format (JSON, 1-based indices to match the usual rendering):

    POST   /sessions {"n": 4}                  -> {"session_id": ...}
    PUT    /sessions/{id}/comparisons          {"i": 1, "j": 2, "value": 2.0}
    DELETE /sessions/{id}/comparisons/{i}/{j}
    GET    /sessions/{id}/status
    GET    /thresholds?n=&m=&code=             (code omitted -> pooled record)

Errors come back as {"error": "..."} with a 4xx status.
"""

from __future__ import annotations

import json
import math
import threading
import time
import uuid
from dataclasses import asdict, dataclass, field

import numpy as np
from fastapi import FastAPI, Request
from fastapi.exceptions import RequestValidationError
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse
from pydantic import BaseModel

from . import catalog, randindex
from .completion import minimize_lambda_max
from .core import IncompletePCM, PcmError, is_connected, new_incomplete_pcm, representing_graph
from .spectral import CR_THRESHOLD, consistency_index

__all__ = ["ServiceConfig", "create_app", "run_server"]

MIN_SESSION_SIZE = 2
MAX_SESSION_SIZE = 9
MAX_SUSPECT_TRIADS = 10


@dataclass(frozen=True)
class ServiceConfig:
    """Tuning knobs for threshold computation and persistence."""

    samples: int = 20_000
    seed: int = randindex.DEFAULT_SEED
    journal_path: str | None = None


class ApiError(Exception):
    def __init__(self, status: int, message: str):
        super().__init__(message)
        self.status = status
        self.message = message


@dataclass
class Session:
    """One decision-maker's matrix plus its entry history."""

    session_id: str
    n: int
    pcm: IncompletePCM
    history: list = field(default_factory=list)
    lock: threading.Lock = field(default_factory=threading.Lock)


class ThresholdCache:
    """Read-mostly map canonical code -> RIRecord with single-flight fill."""

    def __init__(self, config: ServiceConfig):
        self._config = config
        self._records: dict[tuple, randindex.RIRecord] = {}
        self._locks: dict[tuple, threading.Lock] = {}
        self._guard = threading.Lock()

    def get(self, cls: catalog.GraphClass) -> randindex.RIRecord:
        key = (cls.n, cls.m, cls.canonical_code)
        with self._guard:
            rec = self._records.get(key)
            if rec is not None:
                return rec
            lock = self._locks.setdefault(key, threading.Lock())
        with lock:
            with self._guard:
                rec = self._records.get(key)
            if rec is None:
                rec = randindex.random_index_for(
                    cls, self._config.samples, self._config.seed
                )
                with self._guard:
                    self._records[key] = rec
            return rec


def _suspect_triads(pcm: IncompletePCM) -> list[list]:
    """Known-comparison triangles ranked by multiplicative cycle error.

    Heuristic pointer at likely misprints: a perfectly consistent triangle
    has a_ij * a_jk / a_ik == 1, so the magnitude of the log of that
    product ranks how badly each triangle violates transitivity.
    """
    a = pcm.entries
    n = pcm.n
    triads = []
    for i in range(n):
        for j in range(i + 1, n):
            if np.isnan(a[i, j]):
                continue
            for k in range(j + 1, n):
                if np.isnan(a[j, k]) or np.isnan(a[i, k]):
                    continue
                err = abs(math.log(a[i, j] * a[j, k] / a[i, k]))
                if err > 1e-12:
                    triads.append([i + 1, j + 1, k + 1, err])
    triads.sort(key=lambda t: -t[3])
    return triads[:MAX_SUSPECT_TRIADS]


def _status_report(session: Session, cache: ThresholdCache) -> dict:
    pcm = session.pcm
    graph = representing_graph(pcm)
    connected = is_connected(graph)
    code_hex = catalog.code_to_hex(catalog.canonical_form(graph))
    report = {
        "m": pcm.missing_count,
        "connected": connected,
        "graph_id": None,
        "canonical_code": code_hex,
        "spectral_radius": None,
        "lambda_star": None,
        "ci": None,
        "ri": None,
        "cr": None,
        "verdict": "NOT_EVALUABLE",
        "suspect_triads": _suspect_triads(pcm),
    }
    if not connected:
        return report
    cls = catalog.classify(graph)
    record = cache.get(cls)
    result = minimize_lambda_max(pcm)
    ci = consistency_index(result.lambda_star, pcm.n)
    report["graph_id"] = cls.graph_id
    report["spectral_radius"] = cls.spectral_radius
    report["lambda_star"] = result.lambda_star
    report["ci"] = ci
    report["ri"] = record.random_index
    if record.random_index > 0:
        cr = ci / record.random_index
        report["cr"] = cr
        report["verdict"] = "ACCEPTABLE" if cr <= CR_THRESHOLD else "UNACCEPTABLE"
    return report


def _record_json(rec: randindex.RIRecord) -> dict:
    data = asdict(rec)
    data["canonical_code"] = catalog.code_to_hex(rec.canonical_code)
    return data


class Journal:
    """Append-only JSONL history used for restart recovery."""

    def __init__(self, path: str | None):
        self._path = path
        self._lock = threading.Lock()

    def append(self, event: dict) -> None:
        if self._path is None:
            return
        with self._lock:
            with open(self._path, "a", encoding="utf-8") as fh:
                fh.write(json.dumps(event) + "\n")

    def replay(self) -> list[dict]:
        if self._path is None:
            return []
        try:
            with open(self._path, encoding="utf-8") as fh:
                return [json.loads(line) for line in fh if line.strip()]
        except FileNotFoundError:
            return []


class SessionStore:
    def __init__(self, journal: Journal):
        self._sessions: dict[str, Session] = {}
        self._guard = threading.Lock()
        self._journal = journal
        for event in journal.replay():
            self._apply(event)

    def _apply(self, event: dict) -> None:
        kind = event.get("event")
        if kind == "create":
            sid = event["session_id"]
            self._sessions[sid] = Session(sid, event["n"], _empty_pcm(event["n"]))
        elif kind in ("put", "delete"):
            session = self._sessions.get(event["session_id"])
            if session is None:
                return
            i, j = event["i"] - 1, event["j"] - 1
            if kind == "put":
                session.pcm = session.pcm.set_comparison(i, j, event["value"])
            else:
                session.pcm = session.pcm.clear_comparison(i, j)
            session.history.append(
                (event["timestamp"], event["i"], event["j"], event.get("value"))
            )

    def create(self, n: int) -> Session:
        session = Session(uuid.uuid4().hex, n, _empty_pcm(n))
        with self._guard:
            self._sessions[session.session_id] = session
        self._journal.append(
            {"event": "create", "session_id": session.session_id, "n": n,
             "timestamp": time.time()}
        )
        return session

    def get(self, session_id: str) -> Session:
        with self._guard:
            session = self._sessions.get(session_id)
        if session is None:
            raise ApiError(404, f"unknown session {session_id!r}")
        return session

    def log(self, event: dict) -> None:
        self._journal.append(event)


def _empty_pcm(n: int) -> IncompletePCM:
    return new_incomplete_pcm(n, [])


def _wire_indices(n: int, i: int, j: int) -> tuple[int, int]:
    if not (1 <= i <= n and 1 <= j <= n):
        raise ApiError(400, f"indices must be in 1..{n}, got ({i}, {j})")
    if i == j:
        raise ApiError(400, "diagonal comparisons are fixed and cannot be edited")
    return i - 1, j - 1


class CreateSessionBody(BaseModel):
    n: int


class PutComparisonBody(BaseModel):
    i: int
    j: int
    value: float


def create_app(config: ServiceConfig | None = None) -> FastAPI:
    config = config or ServiceConfig()
    app = FastAPI(title="pcmri monitor")
    app.add_middleware(
        CORSMiddleware, allow_origins=["*"], allow_methods=["*"], allow_headers=["*"]
    )
    cache = ThresholdCache(config)
    store = SessionStore(Journal(config.journal_path))

    @app.exception_handler(ApiError)
    async def _api_error(_req: Request, exc: ApiError):
        return JSONResponse({"error": exc.message}, status_code=exc.status)

    @app.exception_handler(PcmError)
    async def _pcm_error(_req: Request, exc: PcmError):
        return JSONResponse({"error": str(exc)}, status_code=400)

    @app.exception_handler(RequestValidationError)
    async def _validation_error(_req: Request, exc: RequestValidationError):
        first = exc.errors()[0] if exc.errors() else {}
        loc = ".".join(str(part) for part in first.get("loc", ()))
        message = first.get("msg", "invalid request")
        return JSONResponse({"error": f"{loc}: {message}"}, status_code=400)

    @app.post("/sessions", status_code=201)
    def create_session(body: CreateSessionBody):
        if not (MIN_SESSION_SIZE <= body.n <= MAX_SESSION_SIZE):
            raise ApiError(
                400, f"session size must be in {MIN_SESSION_SIZE}..{MAX_SESSION_SIZE}"
            )
        session = store.create(body.n)
        return {"session_id": session.session_id}

    @app.put("/sessions/{session_id}/comparisons")
    def put_comparison(session_id: str, body: PutComparisonBody):
        session = store.get(session_id)
        i, j = _wire_indices(session.n, body.i, body.j)
        if not (body.value > 0) or not math.isfinite(body.value):
            raise ApiError(400, f"comparison value must be positive, got {body.value}")
        with session.lock:
            session.pcm = session.pcm.set_comparison(i, j, body.value)
            ts = time.time()
            session.history.append((ts, body.i, body.j, body.value))
            store.log({"event": "put", "session_id": session_id, "i": body.i,
                       "j": body.j, "value": body.value, "timestamp": ts})
            return _status_report(session, cache)

    @app.delete("/sessions/{session_id}/comparisons/{i}/{j}")
    def delete_comparison(session_id: str, i: int, j: int):
        session = store.get(session_id)
        i0, j0 = _wire_indices(session.n, i, j)
        with session.lock:
            if not session.pcm.is_known(i0, j0):
                raise ApiError(404, f"comparison ({i}, {j}) is not set")
            session.pcm = session.pcm.clear_comparison(i0, j0)
            ts = time.time()
            session.history.append((ts, i, j, None))
            store.log({"event": "delete", "session_id": session_id, "i": i,
                       "j": j, "timestamp": ts})
            return _status_report(session, cache)

    @app.get("/sessions/{session_id}/status")
    def get_status(session_id: str):
        session = store.get(session_id)
        with session.lock:
            return _status_report(session, cache)

    @app.get("/thresholds")
    def get_threshold(n: int, m: int, code: str | None = None):
        if not (MIN_SESSION_SIZE <= n <= MAX_SESSION_SIZE):
            raise ApiError(400, f"n must be in {MIN_SESSION_SIZE}..{MAX_SESSION_SIZE}")
        try:
            classes = catalog.enumerate_missing_edge_graphs(n, m)
        except catalog.UnsupportedSizeError as exc:
            raise ApiError(400, str(exc))
        if not classes:
            raise ApiError(404, f"no connected graphs for n={n}, m={m}")
        if code is not None:
            for cls in classes:
                if cls.code_hex == code.lower():
                    return _record_json(cache.get(cls))
            raise ApiError(404, f"no class with code {code!r} for n={n}, m={m}")
        return _pooled_record(n, m, classes, cache, config)

    return app


def _pooled_record(n, m, classes, cache: ThresholdCache, config: ServiceConfig) -> dict:
    """Probability-weighted aggregate across the (n, m) family."""
    probs = catalog.class_probabilities(n, m, classes, seed=config.seed)
    records = [cache.get(cls) for cls in classes]
    ri = float(np.dot(probs, [r.random_index for r in records]))
    if ri > 0:
        samples = None if records[0].mode == "EXACT" else config.samples
        acc = float(np.dot(probs, [
            randindex.acceptance_ratio_for(cls, ri, samples, config.seed)
            for cls in classes
        ]))
    else:
        acc = 1.0
    return {
        "n": n,
        "m": m,
        "graph_id": None,
        "canonical_code": None,
        "random_index": ri,
        "acceptance_ratio": acc,
        "sample_count": records[0].sample_count,
        "mode": records[0].mode,
        "seed": records[0].seed,
        "spectral_radius": None,
        "ci_std": None,
    }


def run_server(listen_address: str, samples: int = 20_000,
               seed: int = randindex.DEFAULT_SEED, journal_path: str | None = None):
    import uvicorn

    host, _, port = listen_address.partition(":")
    app = create_app(ServiceConfig(samples=samples, seed=seed, journal_path=journal_path))
    uvicorn.run(app, host=host or "127.0.0.1", port=int(port or 8000))
