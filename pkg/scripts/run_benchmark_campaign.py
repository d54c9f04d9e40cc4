#!/usr/bin/env python3
"""Run the full analytic benchmark campaign and write results.csv.

Thin wrapper over the CLI with campaign defaults (all ten analytic
problems, 50 repetitions, base seed 0). Any extra arguments are passed
through, e.g.:

    python3 scripts/run_benchmark_campaign.py --runs 10 --jobs 4
"""

import sys

from hillvallea.cli import main

DEFAULTS = ["run", "--problems", "1-10", "--runs", "50", "--seed", "0",
            "--out", "results.csv"]

if __name__ == "__main__":
    sys.exit(main(DEFAULTS + sys.argv[1:]))
