#!/usr/bin/env python3
"""Run verification suites straight from a checkout (no install needed).

    python scripts/verify.py --suite all --format text
"""

import pathlib
import sys

sys.path.insert(0, str(pathlib.Path(__file__).resolve().parents[1] / "src"))

from loopforms.cli import main

if __name__ == "__main__":
    sys.exit(main(sys.argv[1:]))
