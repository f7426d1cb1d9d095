"""Output formatters for CLI and MCP tool responses.

Supports two output formats:
- json: indent 2, insertion-ordered, rationals as "p/q", symbolic entries as strings
- text: human-readable lines under a ``#`` header, one ``===`` block per section
"""

from __future__ import annotations

import json
from fractions import Fraction
from typing import Any

import sympy as sp

VALID_OUTPUT_FORMATS = ("text", "json")


# ---------------------------------------------------------------------------
# Public API
# ---------------------------------------------------------------------------

def validate_output_format(fmt: str) -> str:
    """Normalize the output_format parameter; unknown values fall back to text."""
    fmt = (fmt or "").strip().lower()
    if fmt not in VALID_OUTPUT_FORMATS:
        fmt = "text"
    return fmt


def to_jsonable(value: Any) -> Any:
    """Replace Fractions and sympy objects by strings, tuples by lists, recursively."""
    if isinstance(value, bool) or value is None or isinstance(value, (int, str)):
        return value
    if isinstance(value, Fraction):
        return f"{value.numerator}/{value.denominator}"
    if isinstance(value, sp.Basic):
        return str(value)
    if isinstance(value, dict):
        return {str(k): to_jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [to_jsonable(v) for v in value]
    raise TypeError(f"cannot serialize {type(value).__name__}: {value!r}")


def format_report(report: dict[str, Any], fmt: str = "text") -> str:
    data = to_jsonable(report)
    if validate_output_format(fmt) == "json":
        return _json(data)
    if data.get("command") == "verify":
        return _verify_text(data)
    return _report_text(data)


# ---------------------------------------------------------------------------
# Text rendering
# ---------------------------------------------------------------------------

def _scalar(value: Any) -> str:
    if value is None:
        return "-"
    if isinstance(value, bool):
        return "yes" if value else "no"
    return str(value)


def _is_flat(values: list[Any]) -> bool:
    return all(not isinstance(v, (dict, list)) for v in values)


def _header(data: dict[str, Any]) -> str:
    parts = [f"# {data.get('command', 'report')}"]
    for key in ("singularity", "plane", "max_entry"):
        value = data.get(key)
        if isinstance(value, str):
            parts.append(f"{key}={value}")
        elif isinstance(value, int) and not isinstance(value, bool):
            parts.append(f"{key}={value}")
    parts.append(f"schema={data.get('schema_version', '?')}")
    return " | ".join(parts)


def _render(key: str, value: Any, indent: str, lines: list[str]) -> None:
    if isinstance(value, dict):
        lines.append(f"{indent}=== {key}")
        for k, v in value.items():
            _render(k, v, indent + "  ", lines)
    elif isinstance(value, list) and value and not _is_flat(value):
        lines.append(f"{indent}=== {key} ({len(value)})")
        for item in value:
            if isinstance(item, dict):
                lines.append(f"{indent}  - " + " | ".join(f"{k}={_inline(v)}" for k, v in item.items()))
            else:
                lines.append(f"{indent}  - {_inline(item)}")
    elif isinstance(value, list):
        lines.append(f"{indent}{key}: " + ", ".join(_scalar(v) for v in value))
    else:
        lines.append(f"{indent}{key}: {_scalar(value)}")


def _inline(value: Any) -> str:
    if isinstance(value, list):
        return "[" + ", ".join(_inline(v) for v in value) + "]"
    if isinstance(value, dict):
        return "{" + ", ".join(f"{k}: {_inline(v)}" for k, v in value.items()) + "}"
    return _scalar(value)


def _report_text(data: dict[str, Any]) -> str:
    lines = [_header(data)]
    for key, value in data.items():
        if key in ("schema_version", "command"):
            continue
        _render(key, value, "", lines)
    lines.append("")
    return "\n".join(lines)


def _verify_text(data: dict[str, Any]) -> str:
    suites = data.get("suites", [])
    ok = sum(1 for s in suites if s.get("ok"))
    status = f"{ok}/{len(suites)} ok"
    if ok != len(suites):
        status += f" {len(suites) - ok} fail"
    lines = [f"# verify: {status} | seed={data.get('seed')}", ""]
    width = max((len(s["name"]) for s in suites), default=0)
    for s in suites:
        mark = "ok" if s["ok"] else "FAIL"
        lines.append(f"  {s['name']:<{width}}  {mark:<4}  {s['checked']} cases")
        for failure in s.get("failures", []):
            lines.append(f"      ! {failure}")
    lines.append("")
    return "\n".join(lines)


def _json(data: Any) -> str:
    return json.dumps(data, ensure_ascii=False, indent=2) + "\n"
