"""Recompute every closed form with the engine and print the comparison table.

    python3 scripts/run_verification.py --max-n 8
"""

import argparse
import sys
import time

from curvechow.verify import run_verification


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--max-n", type=int, default=8)
    args = parser.parse_args()
    start = time.perf_counter()
    report = run_verification(args.max_n)
    print(report.to_text())
    print(f"\n{len(report.rows)} rows in {time.perf_counter() - start:.1f}s")
    return 0 if report.passed else 1


if __name__ == "__main__":
    sys.exit(main())
