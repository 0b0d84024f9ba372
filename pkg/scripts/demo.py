#!/usr/bin/env python3
"""End-to-end walkthrough on synthetic data.

Generates a three-month hospital dataset into ./demo_data, installs the
sample goal book and alert rules, prints the finance view and a DRG ranking,
evaluates alerts, and (with --serve) starts the API for the dashboard UI.
"""

import argparse
import shutil
import sys
from importlib import resources
from pathlib import Path

from hospkpi.cli import main as cli

DATA_DIR = Path("demo_data")


def run(*argv) -> None:
    code = cli(["--data-dir", str(DATA_DIR), *argv])
    if code != 0:
        sys.exit(code)


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--serve", action="store_true", help="start the API after seeding")
    parser.add_argument("--bind", default="127.0.0.1:8000")
    parser.add_argument("--fresh", action="store_true", help="wipe demo_data first")
    args = parser.parse_args()

    if args.fresh and DATA_DIR.exists():
        shutil.rmtree(DATA_DIR)
    DATA_DIR.mkdir(parents=True, exist_ok=True)

    data = resources.files("hospkpi").joinpath("data")
    (DATA_DIR / "goals.txt").write_text(data.joinpath("sample.goals").read_text())
    (DATA_DIR / "rules.txt").write_text(data.joinpath("sample.rules").read_text())

    run("gen", "--seed", "42", "--months", "3", "--mean", "10", "--ingest")
    print()
    run("report", "--view", "finance", "--period", "2015-03")
    print()
    run("compute", "--period", "2015-03", "--kpi", "admissions", "--drilldown", "department")
    print()
    run("alerts", "--period", "2015-03")

    if args.serve:
        print(f"\nserving on http://{args.bind} (Ctrl-C to stop)")
        run("serve", "--bind", args.bind)
    else:
        print("\nrun with --serve to start the API for the dashboard UI")


if __name__ == "__main__":
    main()
