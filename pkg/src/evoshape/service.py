"""REST facade for the interactive evolution loop.

Sessions are in-memory and expire after an hour idle; only saved
transformations and uploaded models persist (through :mod:`evoshape.store`).
Candidate ids are minted deterministically per generation (``g<gen>r<n>c<pos>``)
and invalidated whenever the display changes, so a selection can never be
applied against a stale display, and a scripted selection-id sequence replays
identically on any server started with the same seed.

Endpoints (JSON over HTTP):

    POST /api/sessions                      start a session, get 9 candidates
    GET  /api/sessions/{id}/candidates      current display
    POST /api/sessions/{id}/step            select + breed the next generation
    POST /api/sessions/{id}/save            persist a candidate's expression
    POST /api/sessions/{id}/inject          seed the population from the store
    GET  /api/transformations[/{id}]        browse saved transformations
    POST /api/models, GET /api/models[/{id}]  upload / browse JSON meshes

Errors use {"error": {"code", "message"}} with 400 for validation, 404 for
unknown ids, and 409 for candidate ids from a superseded display.
"""

from __future__ import annotations

import dataclasses
import json
import random
import threading
import time
import uuid

from fastapi import FastAPI, Request
from fastapi.exceptions import RequestValidationError
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse
from pydantic import BaseModel, Field

from .evolution import (
    EvolutionConfig,
    Population,
    assign_fitness,
    build_sample_grid,
    display_subset,
    init_population,
    inject,
    next_generation,
)
from .expr import Expression, parse, serialize
from .genetics import GrowthParams
from .shader import emit_vertex_shader
from .store import ModelValidationError, Store, StoreNotFoundError

SESSION_TTL_SECONDS = 3600.0


class ApiError(Exception):
    def __init__(self, status: int, code: str, message: str):
        super().__init__(message)
        self.status = status
        self.code = code
        self.message = message


def _invalid(message: str) -> ApiError:
    return ApiError(400, "validation", message)


def _not_found(message: str) -> ApiError:
    return ApiError(404, "not_found", message)


def _stale(message: str) -> ApiError:
    return ApiError(409, "stale_candidate", message)


def config_from_overrides(overrides: dict | None) -> EvolutionConfig:
    """EvolutionConfig from a JSON override dict; unknown keys are rejected."""
    if not overrides:
        return EvolutionConfig()
    fields = {f.name for f in dataclasses.fields(EvolutionConfig)}
    unknown = set(overrides) - fields
    if unknown:
        raise ValueError(f"unknown config keys: {sorted(unknown)}")
    kwargs = dict(overrides)
    if "growth" in kwargs:
        growth = kwargs["growth"]
        if not isinstance(growth, dict):
            raise ValueError("growth must be an object")
        growth_fields = {f.name for f in dataclasses.fields(GrowthParams)}
        bad = set(growth) - growth_fields
        if bad:
            raise ValueError(f"unknown growth keys: {sorted(bad)}")
        kwargs["growth"] = GrowthParams(**growth)
    if "grid_interval" in kwargs:
        lo, hi = kwargs["grid_interval"]
        kwargs["grid_interval"] = (float(lo), float(hi))
    return EvolutionConfig(**kwargs)


@dataclasses.dataclass
class _Candidate:
    candidate_id: str
    member_index: int
    genome: Expression


class _Session:
    """Server-side state for one evolution run; callers hold ``lock``."""

    def __init__(self, config: EvolutionConfig, seed: int | None):
        self.session_id = uuid.uuid4().hex
        self.config = config
        self.rng = random.Random(seed)
        self.grid = build_sample_grid(config)
        self.population: Population = init_population(config, self.rng)
        self.refresh = 0
        self.candidates: list[_Candidate] = []
        self.lock = threading.Lock()
        self.last_access = time.monotonic()
        self._mint_candidates()

    @property
    def generation(self) -> int:
        return self.population.generation

    def _mint_candidates(self) -> None:
        subset = display_subset(self.population, self.config)
        self.candidates = [
            _Candidate(f"g{self.generation}r{self.refresh}c{pos}", idx, ind.genome)
            for pos, (idx, ind) in enumerate(subset)
        ]

    def candidate_views(self) -> list[dict]:
        views = []
        for cand in self.candidates:
            artifact = emit_vertex_shader(cand.genome)
            views.append({
                "candidate_id": cand.candidate_id,
                "expression": artifact.expression_text,
                "shader": artifact.glsl_source,
            })
        return views

    def resolve(self, candidate_id: str) -> _Candidate:
        for cand in self.candidates:
            if cand.candidate_id == candidate_id:
                return cand
        raise _stale(f"candidate {candidate_id!r} is not in the current display")

    def step(self, selected_ids: list[str]) -> None:
        selections = [self.resolve(cid).genome for cid in selected_ids]
        scored = assign_fitness(self.population, selections, self.grid)
        self.population = next_generation(scored, selections, self.config, self.rng)
        self.refresh = 0
        self._mint_candidates()

    def inject_expression(self, expr: Expression) -> None:
        self.population = inject(self.population, expr, self.rng)
        self.refresh += 1
        self._mint_candidates()


class _SessionRegistry:
    def __init__(self):
        self._sessions: dict[str, _Session] = {}
        self._lock = threading.Lock()

    def add(self, session: _Session) -> None:
        with self._lock:
            self._purge()
            self._sessions[session.session_id] = session

    def get(self, session_id: str) -> _Session:
        with self._lock:
            self._purge()
            session = self._sessions.get(session_id)
            if session is None:
                raise _not_found(f"no session {session_id!r}")
            session.last_access = time.monotonic()
            return session

    def _purge(self) -> None:
        cutoff = time.monotonic() - SESSION_TTL_SECONDS
        for sid in [s for s, sess in self._sessions.items()
                    if sess.last_access < cutoff]:
            del self._sessions[sid]


class CreateSessionRequest(BaseModel):
    config: dict | None = None
    seed: int | None = Field(default=None, ge=0)


class StepRequest(BaseModel):
    selected: list[str]


class SaveRequest(BaseModel):
    candidate_id: str
    name: str


class InjectRequest(BaseModel):
    transformation_id: str


def create_app(db_path: str = "evoshape.db") -> FastAPI:
    app = FastAPI(title="evoshape", docs_url=None, redoc_url=None)
    app.add_middleware(
        CORSMiddleware, allow_origins=["*"], allow_methods=["*"],
        allow_headers=["*"],
    )
    store = Store(db_path)
    sessions = _SessionRegistry()
    app.state.store = store
    app.state.sessions = sessions

    @app.exception_handler(ApiError)
    async def _api_error(request: Request, exc: ApiError):
        return JSONResponse(
            status_code=exc.status,
            content={"error": {"code": exc.code, "message": exc.message}},
        )

    @app.exception_handler(RequestValidationError)
    async def _request_error(request: Request, exc: RequestValidationError):
        return JSONResponse(
            status_code=400,
            content={"error": {"code": "validation", "message": str(exc.errors())}},
        )

    def _session_payload(session: _Session) -> dict:
        return {
            "generation": session.generation,
            "candidates": session.candidate_views(),
        }

    # -- sessions ---------------------------------------------------------

    @app.post("/api/sessions", status_code=201)
    def create_session(body: CreateSessionRequest):
        try:
            config = config_from_overrides(body.config)
        except (TypeError, ValueError) as exc:
            raise ApiError(400, "invalid_config", str(exc)) from exc
        session = _Session(config, body.seed)
        sessions.add(session)
        return {"session_id": session.session_id, **_session_payload(session)}

    @app.get("/api/sessions/{session_id}/candidates")
    def get_candidates(session_id: str):
        session = sessions.get(session_id)
        with session.lock:
            return _session_payload(session)

    @app.post("/api/sessions/{session_id}/step")
    def step_generation(session_id: str, body: StepRequest):
        session = sessions.get(session_id)
        if not body.selected:
            raise _invalid("at least one candidate must be selected")
        with session.lock:
            session.step(body.selected)
            return _session_payload(session)

    @app.post("/api/sessions/{session_id}/save", status_code=201)
    def save_candidate(session_id: str, body: SaveRequest):
        session = sessions.get(session_id)
        name = body.name.strip()
        if not name:
            raise _invalid("name must not be empty")
        with session.lock:
            candidate = session.resolve(body.candidate_id)
            record_id = store.put_transformation(name, serialize(candidate.genome))
        return {"transformation_id": record_id}

    @app.post("/api/sessions/{session_id}/inject")
    def inject_transformation(session_id: str, body: InjectRequest):
        session = sessions.get(session_id)
        try:
            record = store.get_transformation(body.transformation_id)
        except StoreNotFoundError as exc:
            raise _not_found(str(exc)) from exc
        with session.lock:
            session.inject_expression(parse(record.expression_text))
            return _session_payload(session)

    # -- transformations ----------------------------------------------------

    @app.get("/api/transformations")
    def list_transformations(offset: int = 0, limit: int = 50):
        records, total = store.list_transformations(offset, limit)
        return {"total": total, "items": [r.to_json_dict() for r in records]}

    @app.get("/api/transformations/{record_id}")
    def get_transformation(record_id: str):
        try:
            return store.get_transformation(record_id).to_json_dict()
        except StoreNotFoundError as exc:
            raise _not_found(str(exc)) from exc

    # -- models --------------------------------------------------------------

    @app.post("/api/models", status_code=201)
    async def upload_model(request: Request):
        raw = await request.body()
        try:
            model_id = store.put_model(raw)
        except ModelValidationError as exc:
            raise _invalid(str(exc)) from exc
        return {"model_id": model_id}

    @app.get("/api/models")
    def list_models(offset: int = 0, limit: int = 50):
        assets, total = store.list_models(offset, limit)
        return {
            "total": total,
            "items": [
                {"id": a.id, "name": a.name, "vertex_count": a.vertex_count,
                 "triangle_count": a.triangle_count}
                for a in assets
            ],
        }

    @app.get("/api/models/{model_id}")
    def get_model(model_id: str):
        try:
            asset = store.get_model(model_id)
        except StoreNotFoundError as exc:
            raise _not_found(str(exc)) from exc
        return {
            "id": asset.id,
            "name": asset.name,
            "vertex_count": asset.vertex_count,
            "triangle_count": asset.triangle_count,
            "payload": json.loads(asset.payload),
        }

    return app
