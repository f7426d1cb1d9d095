"""qgsmooth MCP server (FastMCP, stdio)."""

from __future__ import annotations

import argparse
import asyncio
import logging
import sys
from collections.abc import AsyncIterator, Callable
from contextlib import asynccontextmanager
from dataclasses import dataclass
from typing import Any

from mcp.server.fastmcp import Context, FastMCP
from mcp.server.session import ServerSession

from . import __version__
from .config import VerifyConfig, load_config
from .errors import QGSmoothError, error_text
from .formatters import format_report, validate_output_format
from .reports import (
    cone_report,
    envelope,
    hj_report,
    kk_report,
    markov_planes_report,
    markov_report,
    mutate_report,
    ncdef_report,
    smooth_report,
    verify_envelope,
    wpp_report,
)
from .suites import run_suite, select_suites

logger = logging.getLogger(__name__)


@dataclass
class AppContext:
    config: VerifyConfig


_RUNTIME_STATE: dict[str, str | None] = {"config_path": None}


def set_config_path(config_path: str | None) -> None:
    _RUNTIME_STATE["config_path"] = config_path


@asynccontextmanager
async def app_lifespan(_server: FastMCP) -> AsyncIterator[AppContext]:
    config = load_config(_RUNTIME_STATE["config_path"])
    print(
        f"qgsmooth MCP v{__version__} loaded config: {config.config_path or '(defaults)'}",
        file=sys.stderr,
    )
    yield AppContext(config=config)


mcp = FastMCP(
    "qgsmooth",
    instructions=(
        "Exact computations around Q-Gorenstein smoothings: continued fractions, "
        "Kalck-Karmazyn algebras, Markov triples, P^2 mutations, weighted planes "
        "and crepant chains. Every tool accepts output_format text|json."
    ),
    lifespan=app_lifespan,
)


def _config(ctx: Context[ServerSession, AppContext]) -> VerifyConfig:
    return ctx.request_context.lifespan_context.config


def _error_report(command: str, exc: QGSmoothError) -> dict[str, Any]:
    return envelope(command, {
        "error": {
            "type": type(exc).__name__,
            "message": error_text(exc),
            "details": exc.details,
            "exit_code": exc.exit_code,
        }
    })


async def _run(command: str, build: Callable[[], dict[str, Any]], output_format: str) -> str:
    fmt = validate_output_format(output_format)
    try:
        report = await asyncio.to_thread(build)
    except QGSmoothError as exc:
        report = _error_report(command, exc)
    return format_report(report, fmt)


@mcp.tool()
async def qgsmooth_hj_expand(n: int, q: int, output_format: str = "text") -> str:
    """Hirzebruch-Jung expansion n/q = [d_1, ..., d_m], continuants, and the class T type of 1/n(1,q)."""
    return await _run("hj", lambda: hj_report(n, q), output_format)


@mcp.tool()
async def qgsmooth_kk_algebra(r: int, a: int, include_basis: bool = True, output_format: str = "text") -> str:
    """Monomial relations, basis words, Hilbert series and dimension of the Kalck-Karmazyn algebra of 1/r(1,a)."""
    return await _run("kk", lambda: kk_report(r, a, words=include_basis), output_format)


@mcp.tool()
async def qgsmooth_extension_ladder(r: int, a: int, output_format: str = "text") -> str:
    """Ranks, Ext^1 dimensions, multiplicities and descent check of the universal extensions for 1/r(1,a)."""
    return await _run("ncdef", lambda: ncdef_report(r, a), output_format)


@mcp.tool()
async def qgsmooth_markov(
    ctx: Context[ServerSession, AppContext],
    triple: list[int] | None = None,
    max_entry: int = 0,
    block_sizes: list[int] | None = None,
    k_squared: int = 9,
    output_format: str = "text",
) -> str:
    """Markov triples up to max_entry (default from config), optional descent of a triple and a block-mutation orbit."""
    limit = max_entry or _config(ctx).markov_max_entry
    return await _run(
        "markov",
        lambda: markov_report(limit, triple=triple, block_sizes=block_sizes, k_squared=k_squared),
        output_format,
    )


@mcp.tool()
async def qgsmooth_p2_mutations(word: list[str], output_format: str = "text") -> str:
    """Apply a mutation word (L1 L2 R1 R2 C D T<m>) to (O(-2), O(-1), O) and check every step numerically."""
    return await _run("mutate", lambda: mutate_report(word), output_format)


@mcp.tool()
async def qgsmooth_weighted_plane(
    ctx: Context[ServerSession, AppContext],
    weights: list[int] | None = None,
    cone: int = 0,
    markov_planes: bool = False,
    span: int = 10,
    output_format: str = "text",
) -> str:
    """P(w1,w2,w3): Hilbert function, chi(O(n)), singular points, rank bookkeeping; or the P(1,1,d) case study."""
    if cone:
        return await _run("wpp", lambda: cone_report(cone), output_format)
    if markov_planes:
        limit = _config(ctx).markov_max_entry
        return await _run("wpp", lambda: markov_planes_report(limit), output_format)
    return await _run("wpp", lambda: wpp_report(weights or [], span=span), output_format)


@mcp.tool()
async def qgsmooth_crepant_chain(r: int, a: int, s: int, output_format: str = "text") -> str:
    """Crepant chain of 1/(r^2 s)(1, ars-1): intersection form in u, v, flops, closure and dimension conservation."""
    return await _run("smooth", lambda: smooth_report(r, a, s), output_format)


@mcp.tool()
async def qgsmooth_verify(
    ctx: Context[ServerSession, AppContext],
    suites: list[str] | None = None,
    seed: int | None = None,
    output_format: str = "text",
) -> str:
    """Run invariant suites concurrently with the configured sweep limits; results are ordered by suite name."""
    cfg = _config(ctx).with_overrides(seed=seed)
    fmt = validate_output_format(output_format)
    try:
        names = select_suites(suites or "all")
    except QGSmoothError as exc:
        return format_report(_error_report("verify", exc), fmt)
    logger.info("verify: running %s", ", ".join(names))
    results = await asyncio.gather(*(asyncio.to_thread(run_suite, name, cfg) for name in names))
    return format_report(verify_envelope(results, cfg), fmt)


def main() -> None:
    parser = argparse.ArgumentParser(description="qgsmooth MCP server")
    parser.add_argument(
        "--config",
        default="",
        help="Path to TOML config file (optional).",
    )
    args, _ = parser.parse_known_args()

    logging.basicConfig(level=logging.INFO, stream=sys.stderr, format="%(levelname)s %(name)s: %(message)s")
    requested_config = args.config.strip() or None
    set_config_path(requested_config)
    if requested_config:
        print(
            f"qgsmooth MCP v{__version__} requested config: {requested_config}",
            file=sys.stderr,
        )
    else:
        print(f"qgsmooth MCP v{__version__}", file=sys.stderr)
    mcp.run()


if __name__ == "__main__":
    main()
