"""The n = 5 sufficiency experiment at reporting scale.

Samples 10^4 symmetric correlator sets (seed 42), compares the candidate
condition set (two-time, three-time, sign-vector families) against the
linear-feasibility oracle, and writes results/conjecture_report.json plus
counterexamples.jsonl if any disagreement survives exact re-adjudication.
"""

import os
from pathlib import Path

from lgfeas.cli import main as cli

OUT = Path(__file__).resolve().parent.parent / "results"


def main() -> None:
    OUT.mkdir(exist_ok=True)
    os.chdir(OUT)
    cli([
        "conjecture", "--n", "5", "--samples", "10000", "--seed", "42",
        "--mode", "symmetric", "--out", str(OUT / "conjecture_report.json"),
    ])
    print(f"wrote {OUT / 'conjecture_report.json'}")


if __name__ == "__main__":
    main()
