"""JSON file formats: coefficient tuples and isomorphism witnesses."""

from __future__ import annotations

import json
from pathlib import Path

from .rank2 import N, CoeffTuple, TupleError
from .series import PowerSeries


class FormatError(ValueError):
    """A malformed input file."""


def tuple_to_json(tup: CoeffTuple) -> dict:
    return {"prec": tup.prec, "b": [s.to_strings() for s in tup.b]}


def tuple_from_json(data, prec: int | None = None) -> CoeffTuple:
    """Parse ``{"prec": N, "b": [[...] x 10]}``; ``prec`` overrides the stored one (pad or truncate)."""
    if not isinstance(data, dict) or "b" not in data:
        raise FormatError('expected an object with keys "prec" and "b"')
    stored = data.get("prec")
    if stored is not None and (not isinstance(stored, int) or isinstance(stored, bool)):
        raise FormatError(f"prec must be an integer, got {stored!r}")
    b = data["b"]
    if not isinstance(b, list) or len(b) != N:
        raise FormatError(f"b must be a list of {N} series")
    target = prec if prec is not None else stored
    if target is not None and target < 2:
        raise FormatError(f"precision must be at least 2, got {target}")
    series = []
    for i, entry in enumerate(b, start=1):
        if not isinstance(entry, list) or not entry:
            raise FormatError(f"b_{i}: expected a nonempty list of coefficients")
        if stored is not None and len(entry) > stored:
            raise FormatError(f"b_{i}: {len(entry)} coefficients exceed prec {stored}")
        try:
            s = PowerSeries.from_strings(entry, stored)
        except (TypeError, ValueError, ZeroDivisionError) as exc:
            raise FormatError(f"b_{i}: {exc}") from exc
        series.append(s)
    top = target or max(s.prec for s in series)
    try:
        return CoeffTuple(tuple(s.with_prec(top) for s in series))
    except TupleError as exc:
        raise FormatError(str(exc)) from exc


def load_tuple(path, prec: int | None = None) -> CoeffTuple:
    try:
        data = json.loads(Path(path).read_text())
    except json.JSONDecodeError as exc:
        raise FormatError(f"{path}: invalid JSON ({exc})") from exc
    try:
        return tuple_from_json(data, prec)
    except FormatError as exc:
        raise FormatError(f"{path}: {exc}") from exc


def dump_json(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True)
