"""SQLite-backed persistence for saved transformations and uploaded models.

A transformation is a named expression in canonical text form; a model is a
JSON mesh kept byte-for-byte as uploaded.  Every operation opens its own
connection, so the store is safe to use from the server's worker threads and
records survive process restarts.
"""

from __future__ import annotations

import json
import math
import sqlite3
import uuid
from contextlib import closing
from dataclasses import dataclass
from datetime import datetime, timezone

from .expr import parse


class StoreNotFoundError(LookupError):
    pass


class ModelValidationError(ValueError):
    def __init__(self, violations: tuple[str, ...]):
        super().__init__("; ".join(violations))
        self.violations = violations


@dataclass(frozen=True)
class TransformationRecord:
    id: str
    name: str
    expression_text: str
    created_at: str
    source_model_id: str | None = None

    def to_json_dict(self) -> dict:
        """Export shape used on the wire and in transformation files."""
        return {
            "id": self.id,
            "name": self.name,
            "expression": self.expression_text,
            "created_at": self.created_at,
            "source_model_id": self.source_model_id,
        }


@dataclass(frozen=True)
class ModelAsset:
    id: str
    name: str
    payload: bytes
    vertex_count: int
    triangle_count: int


@dataclass(frozen=True)
class ModelCheck:
    violations: tuple[str, ...]
    name: str = ""
    vertex_count: int = 0
    triangle_count: int = 0

    @property
    def ok(self) -> bool:
        return not self.violations


def _is_number(v) -> bool:
    return isinstance(v, (int, float)) and not isinstance(v, bool)


def validate_model(raw: bytes | str) -> ModelCheck:
    """Check a mesh document against the model JSON format.

    Expected shape: ``{"name": str, "positions": [float x 3k],
    "indices": [uint x 3m]}`` with finite coordinates and in-range indices.
    Never raises; all problems come back as violations.
    """
    violations: list[str] = []
    try:
        doc = json.loads(raw)
    except (json.JSONDecodeError, UnicodeDecodeError) as exc:
        return ModelCheck((f"payload is not valid JSON: {exc}",))
    if not isinstance(doc, dict):
        return ModelCheck(("payload must be a JSON object",))

    name = doc.get("name")
    if not isinstance(name, str):
        violations.append('"name" must be a string')
        name = ""

    positions = doc.get("positions")
    vertex_count = 0
    if not isinstance(positions, list):
        violations.append('"positions" must be an array')
    else:
        if len(positions) % 3 != 0:
            violations.append(
                f'"positions" length {len(positions)} is not divisible by 3'
            )
        bad = [i for i, v in enumerate(positions)
               if not (_is_number(v) and math.isfinite(v))]
        if bad:
            violations.append(f'"positions" has non-finite or non-numeric entries '
                              f"(first at index {bad[0]})")
        vertex_count = len(positions) // 3

    indices = doc.get("indices")
    triangle_count = 0
    if not isinstance(indices, list):
        violations.append('"indices" must be an array')
    else:
        if len(indices) % 3 != 0:
            violations.append(
                f'"indices" length {len(indices)} is not divisible by 3'
            )
        for i, v in enumerate(indices):
            if not (_is_number(v) and isinstance(v, int)) or v < 0:
                violations.append(
                    f'"indices" must hold non-negative integers '
                    f"(bad value at index {i})"
                )
                break
            if v >= vertex_count:
                violations.append(
                    f"index {v} out of range for {vertex_count} vertices"
                )
                break
        triangle_count = len(indices) // 3

    if violations:
        return ModelCheck(tuple(violations))
    return ModelCheck((), name, vertex_count, triangle_count)


_SCHEMA = """
CREATE TABLE IF NOT EXISTS transformations (
    id TEXT PRIMARY KEY,
    name TEXT NOT NULL,
    expression TEXT NOT NULL,
    created_at TEXT NOT NULL,
    source_model_id TEXT
);
CREATE TABLE IF NOT EXISTS models (
    id TEXT PRIMARY KEY,
    name TEXT NOT NULL,
    payload BLOB NOT NULL,
    vertex_count INTEGER NOT NULL,
    triangle_count INTEGER NOT NULL,
    created_at TEXT NOT NULL
);
"""


def _now() -> str:
    return datetime.now(timezone.utc).isoformat()


class Store:
    """Embedded file-backed store; pass ``":memory:"`` only for throwaways
    (a memory store cannot outlive its single connection, so here every
    operation would see a fresh empty database)."""

    def __init__(self, path: str):
        self.path = str(path)
        with closing(self._connect()) as con, con:
            con.executescript(_SCHEMA)

    def _connect(self) -> sqlite3.Connection:
        return sqlite3.connect(self.path)

    # -- transformations ------------------------------------------------

    def put_transformation(self, name: str, expression_text: str,
                           source_model_id: str | None = None) -> str:
        parse(expression_text)  # ParseError doubles as the validation error
        record_id = uuid.uuid4().hex
        with closing(self._connect()) as con, con:
            con.execute(
                "INSERT INTO transformations VALUES (?, ?, ?, ?, ?)",
                (record_id, name, expression_text, _now(), source_model_id),
            )
        return record_id

    def get_transformation(self, record_id: str) -> TransformationRecord:
        with closing(self._connect()) as con:
            row = con.execute(
                "SELECT id, name, expression, created_at, source_model_id "
                "FROM transformations WHERE id = ?",
                (record_id,),
            ).fetchone()
        if row is None:
            raise StoreNotFoundError(f"no transformation {record_id!r}")
        return TransformationRecord(*row)

    def list_transformations(self, offset: int = 0,
                             limit: int = 50) -> tuple[list[TransformationRecord], int]:
        """Newest-first page of records plus the total count."""
        offset, limit = max(0, offset), max(0, limit)
        with closing(self._connect()) as con:
            total = con.execute("SELECT COUNT(*) FROM transformations").fetchone()[0]
            rows = con.execute(
                "SELECT id, name, expression, created_at, source_model_id "
                "FROM transformations "
                "ORDER BY created_at DESC, rowid DESC LIMIT ? OFFSET ?",
                (limit, offset),
            ).fetchall()
        return [TransformationRecord(*row) for row in rows], total

    # -- models ----------------------------------------------------------

    def put_model(self, raw: bytes, name: str | None = None) -> str:
        check = validate_model(raw)
        if not check.ok:
            raise ModelValidationError(check.violations)
        model_id = uuid.uuid4().hex
        with closing(self._connect()) as con, con:
            con.execute(
                "INSERT INTO models VALUES (?, ?, ?, ?, ?, ?)",
                (model_id, name or check.name, raw,
                 check.vertex_count, check.triangle_count, _now()),
            )
        return model_id

    def get_model(self, model_id: str) -> ModelAsset:
        with closing(self._connect()) as con:
            row = con.execute(
                "SELECT id, name, payload, vertex_count, triangle_count "
                "FROM models WHERE id = ?",
                (model_id,),
            ).fetchone()
        if row is None:
            raise StoreNotFoundError(f"no model {model_id!r}")
        return ModelAsset(row[0], row[1], bytes(row[2]), row[3], row[4])

    def list_models(self, offset: int = 0,
                    limit: int = 50) -> tuple[list[ModelAsset], int]:
        offset, limit = max(0, offset), max(0, limit)
        with closing(self._connect()) as con:
            total = con.execute("SELECT COUNT(*) FROM models").fetchone()[0]
            rows = con.execute(
                "SELECT id, name, payload, vertex_count, triangle_count "
                "FROM models ORDER BY created_at DESC, rowid DESC LIMIT ? OFFSET ?",
                (limit, offset),
            ).fetchall()
        return [ModelAsset(r[0], r[1], bytes(r[2]), r[3], r[4]) for r in rows], total
