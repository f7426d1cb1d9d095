"""Time the invariant suites against a TOML config.

Usage:
  python scripts/sweep_benchmark.py --config qgsmooth.toml --suite kkalg --suite oracle --repeat 3
"""

from __future__ import annotations

import argparse
import json
import logging
import statistics
import sys
from pathlib import Path

ROOT = Path(__file__).resolve().parents[1]
SRC = ROOT / "src"
if str(SRC) not in sys.path:
    sys.path.insert(0, str(SRC))

from qgsmooth.config import load_config
from qgsmooth.suites import SUITES, run_suite, select_suites


def parse_args() -> argparse.Namespace:
    p = argparse.ArgumentParser(description="Benchmark qgsmooth verify suites")
    p.add_argument("--config", default="", help="TOML file with a [verify] table; defaults otherwise.")
    p.add_argument("--suite", action="append", default=[], choices=["all", *sorted(SUITES)])
    p.add_argument("--repeat", type=int, default=1)
    p.add_argument("--seed", type=int)
    return p.parse_args()


def main() -> None:
    a = parse_args()
    logging.basicConfig(level=logging.WARNING, stream=sys.stderr)
    cfg = load_config(a.config or None).with_overrides(seed=a.seed)
    names = select_suites(a.suite or "all")

    rows = []
    for name in names:
        timings = []
        checked = 0
        ok = True
        for _ in range(max(a.repeat, 1)):
            result = run_suite(name, cfg)
            timings.append(result.seconds)
            checked = result.checked
            ok = ok and result.ok
        rows.append({
            "suite": name,
            "ok": ok,
            "checked": checked,
            "best_s": min(timings),
            "median_s": round(statistics.median(timings), 3),
        })

    print(json.dumps({
        "config": cfg.config_path or "(defaults)",
        "config_hash": cfg.config_hash,
        "seed": cfg.seed,
        "repeat": a.repeat,
        "suites": rows,
    }, indent=2))
    if not all(r["ok"] for r in rows):
        sys.exit(1)


if __name__ == "__main__":
    main()
