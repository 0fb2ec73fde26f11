"""Deleted edges against the biex bounds on the lower-bound family.

Writes ``deletions.csv`` and ``deletions.svg`` next to this script.
"""
from pathlib import Path

from aesstab.cli import main

here = Path(__file__).resolve().parent
status = main(["experiment", "lower-bound", "--r", "2", "--target", "K222",
               "--n", "8..14", "--format", "svg", "--out", str(here / "deletions.svg")])
print("exit status", status)
print((here / "deletions.csv").read_text())
