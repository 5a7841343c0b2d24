"""Run the relation checks for every supported level and summarise.

Run with ``python demos/verify_relations.py [n_max]`` (default 20).
"""

import sys
from collections import Counter

from hauptraces import SUPPORTED_LEVELS, run_suite


def main(n_max=20):
    reports = run_suite(SUPPORTED_LEVELS, range(1, n_max + 1))
    by_status = Counter(r.status for r in reports)
    print(f"{len(reports)} checks: {dict(by_status)}")
    for r in reports:
        if r.status == "fail":
            print(f"  FAIL N={r.level} n={r.n} {r.theorem_id}: {r.detail}")
    worst = max((r.max_err for r in reports if r.max_err is not None), default=0)
    print(f"largest certified pre-rounding error in trace sums: {float(worst):.2e}")
    return 1 if by_status["fail"] else 0


if __name__ == "__main__":
    sys.exit(main(int(sys.argv[1]) if len(sys.argv) > 1 else 20))
