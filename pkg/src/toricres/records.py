"""JSON records for cones and fans.

Cone record: ``{"rank": 3, "rays": [[1, 0, 0], [0, 1, 0], [1, 1, 3]]}``.
Fan record: ``{"rank": 4, "rays": [...], "maximal_cones": [[0, 1, 2, 4], ...]}``
with 0-based indices into ``rays``.
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import Any

from .cone import Cone, make_cone
from .fan import Fan, make_fan


class RecordError(ValueError):
    """A record does not have the expected shape."""


def _int_rows(value: Any, what: str) -> list[list[int]]:
    if not isinstance(value, list):
        raise RecordError(f"{what} must be a list")
    rows = []
    for row in value:
        if not isinstance(row, list) or not all(isinstance(x, int) and not isinstance(x, bool) for x in row):
            raise RecordError(f"{what} must be lists of integers, got {row!r}")
        rows.append(row)
    return rows


def _rank(record: dict) -> int:
    rank = record.get("rank")
    if not isinstance(rank, int) or isinstance(rank, bool) or rank < 1:
        raise RecordError("rank must be a positive integer")
    return rank


def cone_from_record(record: Any) -> Cone:
    if not isinstance(record, dict):
        raise RecordError("cone record must be an object")
    rank = _rank(record)
    rays = _int_rows(record.get("rays"), "rays")
    if any(len(r) != rank for r in rays):
        raise RecordError(f"every ray must have {rank} coordinates")
    return make_cone(rays, rank)


def cone_to_record(c: Cone) -> dict:
    return {"rank": c.rank, "rays": [list(r) for r in c.rays]}


def fan_from_record(record: Any) -> Fan:
    if not isinstance(record, dict):
        raise RecordError("fan record must be an object")
    rank = _rank(record)
    rays = _int_rows(record.get("rays"), "rays")
    if any(len(r) != rank for r in rays):
        raise RecordError(f"every ray must have {rank} coordinates")
    cones = _int_rows(record.get("maximal_cones"), "maximal_cones")
    return make_fan(rays, cones, rank)


def fan_to_record(f: Fan) -> dict:
    return {
        "rank": f.rank,
        "rays": [list(r) for r in f.rays],
        "maximal_cones": [list(c) for c in f.cones],
    }


def load_json(path: str | Path) -> Any:
    try:
        with open(path) as fh:
            return json.load(fh)
    except OSError as exc:
        raise RecordError(f"cannot read {path}: {exc.strerror}") from exc
    except json.JSONDecodeError as exc:
        raise RecordError(f"{path} is not valid JSON: {exc}") from exc


def load_cone(path: str | Path) -> Cone:
    return cone_from_record(load_json(path))


def load_fan(path: str | Path) -> Fan:
    return fan_from_record(load_json(path))
