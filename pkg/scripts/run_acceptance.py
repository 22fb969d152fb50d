#!/usr/bin/env python3
"""Run the acceptance criteria and print the pass/fail table.

Usage: python scripts/run_acceptance.py [criterion numbers ...]
"""

import sys

from charform import acceptance


def main():
    numbers = [int(x) for x in sys.argv[1:]] or None
    results = acceptance.run_criteria(numbers, seed=2025)
    ok = acceptance.print_report(results)
    return 0 if ok else 1


if __name__ == "__main__":
    sys.exit(main())
