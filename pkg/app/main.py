"""
catflow command-line entry point

Runs one experiment per invocation and writes its CSV/JSON artifacts.

Exit codes:
    0  every row within tolerance
    1  configuration error
    2  at least one row flagged (artifacts are still written)
"""

import argparse
import logging
from pathlib import Path
from typing import List, Optional

from app.artifacts import write_artifacts
from app.commands import COMMANDS, build_context
from app.core.config import ExperimentConfig, ExperimentKind, load_experiment_config
from app.core.exceptions import EXIT_OK, EXIT_VIOLATION, handle_cli_exception
from config.settings import settings

logger = logging.getLogger(__name__)

DEFAULT_OUT_DIR = "results"
LOG_LEVELS = ["DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"]


def configure_logging(level: Optional[str] = None) -> None:
    logging.basicConfig(
        level=(level or settings.log_level).upper(),
        format=settings.log_format_string,
        force=True,
    )


def run_experiment(
    config: ExperimentConfig,
    seed: Optional[int] = None,
    out_dir: Optional[str] = None,
    workers: Optional[int] = None,
) -> int:
    """
    Build the experiment, run its command and write the artifacts.

    Returns:
        EXIT_OK or EXIT_VIOLATION; configuration problems raise
    """
    seed = config.effective_seed(seed, settings.default_seed)
    workers = workers or config.run.workers or settings.max_workers
    out = Path(out_dir or config.run.out or DEFAULT_OUT_DIR)

    ctx = build_context(config, seed, workers)
    tables = COMMANDS[config.kind](ctx)
    write_artifacts(tables, out, ctx.header())

    violations = sum(table.violations for table in tables)
    if violations:
        logger.warning(f"{config.kind.value}: {violations} row(s) outside tolerance")
        return EXIT_VIOLATION
    logger.info(f"{config.kind.value}: all rows within tolerance")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="catflow",
        description="Monotone vector fields and resolvent flows on CAT(0) model spaces",
    )
    subparsers = parser.add_subparsers(dest="command", required=True)
    for kind in ExperimentKind:
        sub = subparsers.add_parser(kind.value, help=f"run the {kind.value} experiment")
        sub.add_argument("--config", required=True, type=Path, help="experiment config file")
        sub.add_argument("--out", default=None, help=f"artifact directory (default: {DEFAULT_OUT_DIR})")
        sub.add_argument("--seed", type=int, default=None, help="64-bit seed overriding [run] seed")
        sub.add_argument("--log-level", default=None, type=str.upper, choices=LOG_LEVELS,
                         help="override CATFLOW_LOG_LEVEL")
        sub.add_argument("--workers", type=int, default=None, help="thread pool size for rows")
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    configure_logging(args.log_level)
    try:
        config = load_experiment_config(args.config, args.command)
        return run_experiment(config, seed=args.seed, out_dir=args.out, workers=args.workers)
    except Exception as exc:
        return handle_cli_exception(exc)


if __name__ == "__main__":
    raise SystemExit(main())
