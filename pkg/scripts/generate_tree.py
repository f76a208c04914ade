#!/usr/bin/env python3
"""
Write a seeded random metric tree in the tree file format.

    python scripts/generate_tree.py --vertices 20 --seed 7 --out config/trees/random20.tree
"""

import argparse
import logging
import os
import sys
from pathlib import Path

# Add project root to path
sys.path.insert(0, os.path.abspath(os.path.join(os.path.dirname(__file__), '..')))

from config.settings import settings
from core.exceptions import CatFlowError
from core.spaces.tree import random_tree_spec
from core.spaces.tree_file import dump_tree_spec

logging.basicConfig(level=settings.log_level, format=settings.log_format_string)
logger = logging.getLogger(__name__)


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(description="Generate a random metric tree file")
    parser.add_argument("--vertices", type=int, required=True)
    parser.add_argument("--seed", type=int, default=settings.default_seed)
    parser.add_argument("--out", type=Path, default=None, help="output file (default: stdout)")
    args = parser.parse_args(argv)

    try:
        spec = random_tree_spec(args.vertices, args.seed)
    except CatFlowError as exc:
        logger.error(f"{exc.error_code}: {exc.detail}")
        return 1

    text = dump_tree_spec(spec)
    if args.out is None:
        sys.stdout.write(text)
    else:
        args.out.parent.mkdir(parents=True, exist_ok=True)
        args.out.write_text(text, encoding="utf-8")
        logger.info(f"Wrote {args.vertices}-vertex tree (fingerprint {spec.fingerprint()}) to {args.out}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
