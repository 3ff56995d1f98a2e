"""Command line driver.

Exit status: 0 if every check passes, 1 on a verification failure, 2 on a
configuration or context error.
"""
from __future__ import annotations

import argparse
import logging
import sys

from .config import SUITES, ConfigError, load_config
from .runner import dumps, run_suites

log = logging.getLogger("relsteinberg")

EXIT_OK, EXIT_FAIL, EXIT_CONFIG = 0, 1, 2


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="relsteinberg",
                                description="Verify relative Steinberg relations over finite rings.")
    p.add_argument("--config", required=True, help="JSON context config")
    p.add_argument("--suite", default="all",
                   help=f"comma separated subset of {', '.join(SUITES)}; empty for none")
    p.add_argument("--relations", default=None, help="comma separated relation ids to keep")
    p.add_argument("--samples", type=int, default=100, help="random instances per check")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--jobs", type=int, default=1, help="worker processes")
    p.add_argument("--out", default=None, help="report path (default: stdout)")
    p.add_argument("-v", "--verbose", action="store_true")
    return p


def _split(value: str | None) -> list[str] | None:
    if value is None:
        return None
    return [v.strip() for v in value.split(",") if v.strip()]


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(message)s")
    suites = _split(args.suite) or []
    unknown = [s for s in suites if s not in SUITES]
    if unknown or args.samples < 0 or args.jobs < 1:
        msg = f"unknown suite(s) {unknown}" if unknown else "samples must be >= 0 and jobs >= 1"
        print(f"error: {msg}", file=sys.stderr)
        return EXIT_CONFIG
    try:
        cfg = load_config(args.config)
        report = run_suites(cfg, suites, _split(args.relations), args.samples, args.seed, args.jobs)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    text = dumps(report)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    log.info("suites %s: %s", ",".join(report["suites"]), "PASS" if report["pass"] else "FAIL")
    return EXIT_OK if report["pass"] else EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
