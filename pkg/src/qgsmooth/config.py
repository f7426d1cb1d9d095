"""Configuration loader for the qgsmooth MCP server.

Strict mode:
1) TOML configuration only (no environment variables)
2) the CLI never reads a file; its limits come from flags
"""

from __future__ import annotations

import hashlib
import sys
from dataclasses import dataclass, fields, replace
from pathlib import Path
from typing import Any

if sys.version_info >= (3, 11):
    import tomllib
else:
    try:
        import tomllib  # type: ignore[import]
    except ImportError:
        import tomli as tomllib  # type: ignore[import,no-redef]


@dataclass(frozen=True)
class VerifyConfig:
    """Sweep limits of the invariant suites."""

    cfrac_max_r: int = 1000
    singularity_max_r: int = 30
    singularity_max_s: int = 10
    kk_max_r: int = 200
    oracle_max_r: int = 40
    descent_max_r: int = 500
    smoothing_max_r: int = 20
    smoothing_max_s: int = 12
    conservation_max_r: int = 20
    conservation_max_s: int = 10
    markov_max_entry: int = 1000
    fuzz_words: int = 1000
    fuzz_max_length: int = 20
    wpp_samples: int = 200
    wpp_max_weight: int = 50
    seed: int = 0
    config_path: str = ""
    config_hash: str = ""

    def with_overrides(
        self,
        *,
        max_r: int | None = None,
        max_s: int | None = None,
        max_entry: int | None = None,
        seed: int | None = None,
    ) -> VerifyConfig:
        """Apply CLI flags: ``max_r`` and ``max_s`` clamp every r/s limit, the rest replace."""
        out = self
        if max_r is not None:
            out = replace(
                out,
                cfrac_max_r=max_r,
                singularity_max_r=min(out.singularity_max_r, max_r),
                kk_max_r=max_r,
                oracle_max_r=min(out.oracle_max_r, max_r),
                descent_max_r=max_r,
                smoothing_max_r=min(out.smoothing_max_r, max_r),
                conservation_max_r=min(out.conservation_max_r, max_r),
            )
        if max_s is not None:
            out = replace(
                out,
                singularity_max_s=min(out.singularity_max_s, max_s),
                smoothing_max_s=max_s,
                conservation_max_s=min(out.conservation_max_s, max_s),
            )
        if max_entry is not None:
            out = replace(out, markov_max_entry=max_entry)
        if seed is not None:
            out = replace(out, seed=seed)
        return out


_INT_KEYS = tuple(f.name for f in fields(VerifyConfig) if f.type in ("int", int))


def _candidate_toml_paths(explicit_path: str | Path | None = None) -> list[Path]:
    if explicit_path is not None:
        return [Path(explicit_path).expanduser()]
    return [
        Path("qgsmooth.toml"),
        Path.home() / ".config" / "qgsmooth" / "config.toml",
    ]


def _resolve_toml_path(explicit_path: str | Path | None = None) -> Path | None:
    for p in _candidate_toml_paths(explicit_path):
        if p.is_file():
            return p
    return None


def _parse_verify(info: Any) -> dict[str, int]:
    if not isinstance(info, dict):
        raise ValueError("[verify] must be a table")
    out: dict[str, int] = {}
    for key, value in info.items():
        if key not in _INT_KEYS:
            raise ValueError(f"Unknown key verify.{key}. Known: {', '.join(_INT_KEYS)}")
        if isinstance(value, bool) or not isinstance(value, int):
            raise ValueError(f"verify.{key} must be an integer, got {value!r}")
        if key != "seed" and value < 1:
            raise ValueError(f"verify.{key} must be >= 1, got {value}")
        out[key] = value
    return out


def _load_toml_config(config_path: Path) -> VerifyConfig:
    with config_path.open("rb") as f:
        content = f.read()
        raw: dict[str, Any] = tomllib.loads(content.decode("utf-8"))
        config_hash = hashlib.sha256(content).hexdigest()

    values = _parse_verify(raw.get("verify", {}))
    return VerifyConfig(
        **values,
        config_path=str(config_path.expanduser().resolve()),
        config_hash=config_hash,
    )


def load_config(config_path: str | Path | None = None) -> VerifyConfig:
    """Load sweep limits.

    Search order:
    1) explicit path (must exist)
    2) ./qgsmooth.toml
    3) ~/.config/qgsmooth/config.toml
    Without any file the defaults apply.
    """
    toml_path = _resolve_toml_path(config_path)
    if toml_path is None:
        if config_path is not None:
            raise FileNotFoundError(f"TOML config file not found: {Path(config_path).expanduser()}")
        return VerifyConfig()
    return _load_toml_config(toml_path)
