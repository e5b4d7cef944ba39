"""The violated-fraction curves nu(n) for both measurement regimes.

Adding measurements at later times (extend) makes the chain inequalities
easier to satisfy; packing them into a fixed window makes them harder.
Writes results/nu_extend.csv and results/nu_fixed.csv.
"""

from pathlib import Path

from lgfeas.cli import main as cli

OUT = Path(__file__).resolve().parent.parent / "results"


def main() -> None:
    OUT.mkdir(exist_ok=True)
    for regime, name in (("extend", "nu_extend.csv"), ("fixed", "nu_fixed.csv")):
        cli([
            "nu", "--n-min", "3", "--n-max", "20", "--regime", regime,
            "--steps", "2048", "--out", str(OUT / name),
        ])
        print(f"wrote {OUT / name}")


if __name__ == "__main__":
    main()
