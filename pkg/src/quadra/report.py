"""Exact JSON serialization, input diagnostics and suite bookkeeping."""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Any


class InputError(ValueError):
    """Malformed input; ``where`` names the file position or field."""

    def __init__(self, message: str, where: str | None = None):
        super().__init__(f"{where}: {message}" if where else message)
        self.where = where


def exact(value: Any) -> Any:
    """JSON-ready copy with every integer and rational written as a decimal "p/q" string."""
    if isinstance(value, bool) or value is None or isinstance(value, str):
        return value
    if isinstance(value, int):
        return str(value)
    if isinstance(value, Fraction):
        return str(value.numerator) if value.denominator == 1 else f"{value.numerator}/{value.denominator}"
    if isinstance(value, float):
        return repr(value)
    if isinstance(value, dict):
        return {str(k): exact(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [exact(v) for v in value]
    if hasattr(value, "tolist"):
        return exact(value.tolist())
    return str(value)


def parse_rational(value: Any, where: str) -> Fraction:
    if isinstance(value, bool):
        raise InputError("expected a rational number, got a boolean", where)
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError):
            raise InputError(f"cannot parse {value!r} as a rational 'p/q'", where) from None
    raise InputError(f"expected an integer or a 'p/q' string, got {type(value).__name__}", where)


def parse_int(value: Any, where: str) -> int:
    if isinstance(value, bool):
        raise InputError("expected an integer, got a boolean", where)
    if isinstance(value, int):
        return value
    if isinstance(value, str):
        try:
            return int(value.strip())
        except ValueError:
            raise InputError(f"cannot parse {value!r} as an integer", where) from None
    raise InputError(f"expected an integer, got {type(value).__name__}", where)


def int_matrix(value: Any, where: str, rows: int | None = None, cols: int | None = None) -> list[list[int]]:
    if not isinstance(value, list) or any(not isinstance(r, list) for r in value):
        raise InputError("expected a list of rows", where)
    out = [[parse_int(x, f"{where}[{i}][{j}]") for j, x in enumerate(r)] for i, r in enumerate(value)]
    if rows is not None and len(out) != rows:
        raise InputError(f"expected {rows} rows, got {len(out)}", where)
    widths = {len(r) for r in out}
    if len(widths) > 1:
        raise InputError("rows have different lengths", where)
    if cols is not None and out and widths != {cols}:
        raise InputError(f"expected {cols} columns, got {widths.pop()}", where)
    return out


def require(data: Any, key: str, where: str = "$") -> Any:
    if not isinstance(data, dict):
        raise InputError("expected a JSON object", where)
    if key not in data:
        raise InputError(f"missing field {key!r}", where)
    return data[key]


def load_json(path: str | Path) -> tuple[Any, bytes]:
    """Parse a JSON file; syntax errors report line and column."""
    p = Path(path)
    try:
        raw = p.read_bytes()
    except OSError as exc:
        raise InputError(f"cannot read file: {exc.strerror}", str(p)) from None
    try:
        return json.loads(raw.decode("utf-8")), raw
    except UnicodeDecodeError:
        raise InputError("file is not UTF-8 text", str(p)) from None
    except json.JSONDecodeError as exc:
        raise InputError(exc.msg, f"{p}:{exc.lineno}:{exc.colno}") from None


def digest(raw: bytes) -> str:
    return hashlib.sha256(raw).hexdigest()


def dumps(report: dict) -> str:
    return json.dumps(exact(report), indent=2, sort_keys=False, ensure_ascii=False)


@dataclass
class SuiteResult:
    name: str
    trials: int = 0
    failures: list[str] = field(default_factory=list)
    details: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return not self.failures

    def to_json(self) -> dict:
        return {"name": self.name, "trials": self.trials, "passed": self.passed,
                "failures": self.failures[:20], **({"details": self.details} if self.details else {})}
