#!/usr/bin/env python3
"""Reproduce the built-in examples and print a PASS/FAIL table.

    python3 scripts/run_examples.py              # everything, ~5 min on one core
    python3 scripts/run_examples.py --skip-slow  # leaves out 3.22
    python3 scripts/run_examples.py --only 3.11 --json
"""
import sys

from hilbred.cli import main

if __name__ == "__main__":
    sys.exit(main(["paper-examples", *sys.argv[1:]]))
