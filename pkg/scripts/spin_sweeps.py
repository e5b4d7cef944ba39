"""Spacing sweeps of the distinct inequality slacks in the cosine model.

Reproduces the two standard panels via the CLI so the run manifests are
written alongside: the 10 distinct chain members for n = 10, and the 10
distinct sign-vector members for n = 5 (violated at almost every spacing).
"""

from pathlib import Path

from lgfeas.cli import main as cli

OUT = Path(__file__).resolve().parent.parent / "results"


def main() -> None:
    OUT.mkdir(exist_ok=True)
    cli([
        "spin", "--n", "10", "--family", "lg", "--regime", "extend",
        "--steps", "2048", "--out", str(OUT / "spin_lg10.csv"),
    ])
    cli([
        "spin", "--n", "5", "--family", "ngon", "--regime", "extend",
        "--steps", "2048", "--out", str(OUT / "spin_ngon5.csv"),
    ])
    print(f"wrote {OUT / 'spin_lg10.csv'} and {OUT / 'spin_ngon5.csv'}")


if __name__ == "__main__":
    main()
