#!/usr/bin/env python3
"""Random population check of the claims, reproducers written to ./violations.

    python3 scripts/population_search.py --count 200 --max-deg 6
    python3 scripts/population_search.py --vars 3 --count 20 --claim THM-3.10
"""
import sys

from hilbred.cli import main

if __name__ == "__main__":
    sys.exit(main(["search", *sys.argv[1:]]))
