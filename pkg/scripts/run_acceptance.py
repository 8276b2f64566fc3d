#!/usr/bin/env python3
"""Run the acceptance suite with one pass/fail line per criterion.

Thin wrapper over pytest so the criteria live in exactly one place
(tests/test_acceptance.py); extra arguments are passed through.
"""

import sys
from pathlib import Path

import pytest

if __name__ == "__main__":
    root = Path(__file__).resolve().parent.parent
    sys.path.insert(0, str(root / "src"))
    sys.exit(pytest.main(
        ["-s", "-v", str(root / "tests" / "test_acceptance.py"), *sys.argv[1:]],
    ))
