"""Run the acceptance suite and print one line per criterion."""

import sys
from pathlib import Path

import pytest

root = Path(__file__).resolve().parent.parent
sys.exit(pytest.main([str(root / "tests" / "test_acceptance.py"), "-q"]))
