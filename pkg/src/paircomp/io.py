"""JSON files for comparison arrays and run records.

Array files hold ``{"n", "m", "r_min", "r_max", "comparisons": [...]}`` with
1-based ``p, i, j`` and rationals written as integers or ``"p/q"`` strings.
"""

from __future__ import annotations

import hashlib
import json
import os
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any

from .core import ComparisonArray, as_fraction, format_fraction, parse_order, validate
from .errors import DataError, ParseError


def _rational_out(q: Fraction) -> int | str:
    return q.numerator if q.denominator == 1 else format_fraction(q)


def array_to_dict(array: ComparisonArray) -> dict:
    return {
        "n": array.n,
        "m": array.m,
        "r_min": _rational_out(array.r_min),
        "r_max": _rational_out(array.r_max),
        "comparisons": [
            {"p": o.p + 1, "i": o.i + 1, "j": o.j + 1,
             "rij": _rational_out(o.rij), "rji": _rational_out(o.rji)}
            for o in array.outcomes
        ],
    }


def dumps_array(array: ComparisonArray) -> str:
    return json.dumps(array_to_dict(array), indent=1) + "\n"


def _rational_in(value: Any, where: str) -> Fraction:
    if isinstance(value, float) or isinstance(value, bool) or not isinstance(value, (int, str)):
        raise ParseError(f"expected an integer or a 'p/q' string, got {value!r}", field=where)
    try:
        return as_fraction(value)
    except DataError as exc:
        raise ParseError(str(exc), field=where) from None


def _int_in(value: Any, where: str) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise ParseError(f"expected an integer, got {value!r}", field=where)
    return value


def array_from_dict(doc: Any) -> ComparisonArray:
    if not isinstance(doc, dict):
        raise ParseError("top level must be an object")
    for key in ("n", "r_min", "r_max", "comparisons"):
        if key not in doc:
            raise ParseError("missing key", field=key)
    raw = {
        "n": _int_in(doc["n"], "n"),
        "m": _int_in(doc.get("m", 1), "m"),
        "r_min": _rational_in(doc["r_min"], "r_min"),
        "r_max": _rational_in(doc["r_max"], "r_max"),
        "comparisons": [],
    }
    if not isinstance(doc["comparisons"], list):
        raise ParseError("expected a list", field="comparisons")
    for k, rec in enumerate(doc["comparisons"]):
        where = f"comparisons[{k}]"
        if not isinstance(rec, dict):
            raise ParseError("expected an object", field=where)
        out = {}
        for key in ("p", "i", "j"):
            if key not in rec:
                raise ParseError("missing key", field=f"{where}.{key}")
            out[key] = _int_in(rec[key], f"{where}.{key}")
        if "rij" not in rec:
            raise ParseError("missing key", field=f"{where}.rij")
        out["rij"] = _rational_in(rec["rij"], f"{where}.rij")
        if rec.get("rji") is not None:
            out["rji"] = _rational_in(rec["rji"], f"{where}.rji")
        raw["comparisons"].append(out)
    return validate(raw)


def loads_array(text: str) -> ComparisonArray:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(exc.msg, line=exc.lineno) from None
    return array_from_dict(doc)


def load_array(path: str | os.PathLike) -> ComparisonArray:
    with open(path, encoding="utf-8") as fh:
        return loads_array(fh.read())


def save_array(array: ComparisonArray, path: str | os.PathLike) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(dumps_array(array))


def digest(array: ComparisonArray) -> str:
    canon = json.dumps(array_to_dict(array), sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(canon.encode()).hexdigest()


@dataclass(frozen=True)
class RunRecord:
    method: dict
    input_digest: str
    value: str | None
    orders: tuple[str, ...]
    audits: tuple[dict, ...] = ()
    wall_time: float = 0.0
    extra: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {
            "method": self.method,
            "input_digest": self.input_digest,
            "value": self.value,
            "orders": list(self.orders),
            "audits": list(self.audits),
            "wall_time": self.wall_time,
            "extra": self.extra,
        }

    @classmethod
    def from_dict(cls, doc: dict) -> RunRecord:
        try:
            orders = tuple(doc["orders"])
            for o in orders:
                parse_order(o)
            return cls(doc["method"], doc["input_digest"], doc["value"], orders,
                       tuple(doc.get("audits", ())), float(doc.get("wall_time", 0.0)),
                       dict(doc.get("extra", {})))
        except KeyError as exc:
            raise ParseError("missing key", field=exc.args[0]) from None


def save_run(record: RunRecord, path: str | os.PathLike) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(record.to_dict(), fh, indent=1)
        fh.write("\n")


def load_run(path: str | os.PathLike) -> RunRecord:
    with open(path, encoding="utf-8") as fh:
        try:
            doc = json.load(fh)
        except json.JSONDecodeError as exc:
            raise ParseError(exc.msg, line=exc.lineno) from None
    return RunRecord.from_dict(doc)
