#!/usr/bin/env python3
"""
Regenerate the SVG golden files under tests/golden/.

Review the output by eye before committing: the tests compare byte-for-byte.
"""

import argparse
import logging
from pathlib import Path

from nilop.config import NilopConfig
from nilop.modules.homs import enumerate_indecomposables
from nilop.observability import setup_logging
from nilop.triangle.svg import pairs_overlay, phi_overlay, render_svg

logger = logging.getLogger(__name__)

GOLDEN_DIR = Path(__file__).resolve().parent.parent / "tests" / "golden"


def t3_classification() -> str:
    pairs = enumerate_indecomposables(3, 4, 2, NilopConfig(p=2))
    return render_svg(3, pairs_overlay(pairs))


def t6_lines() -> str:
    return render_svg(6, phi_overlay(6))


FIGURES = {
    "t3_classification.svg": t3_classification,
    "t6_lines.svg": t6_lines,
}


def main():
    parser = argparse.ArgumentParser(description="Regenerate SVG golden files")
    parser.add_argument("--output-dir", type=Path, default=GOLDEN_DIR)
    parser.add_argument("--only", nargs="*", choices=list(FIGURES), default=None)
    args = parser.parse_args()

    setup_logging("INFO")
    args.output_dir.mkdir(parents=True, exist_ok=True)
    for name in args.only or FIGURES:
        path = args.output_dir / name
        path.write_text(FIGURES[name]())
        logger.info(f"Wrote {path}")


if __name__ == "__main__":
    main()
