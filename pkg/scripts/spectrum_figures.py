#!/usr/bin/env python3
"""Dump the eigenvalue-flow data for the size-4 and size-6 chains.

Writes one CSV per size covering the real window (-0.999, 0.999) plus a
short excursion past the boundary where the spectrum complexifies.
Plot eigenvalue columns against the coupling to reproduce the flows.
"""

import argparse
from pathlib import Path

from metric_forge.cli import main as cli_main


def run(outdir: Path) -> None:
    outdir.mkdir(parents=True, exist_ok=True)
    for n in (4, 6):
        inside = outdir / f"spectrum_n{n}_real_window.csv"
        cli_main(
            [
                "spectrum",
                "--n", str(n),
                "--grid", "-0.999:0.999:401",
                "--output", str(inside),
            ]
        )
        beyond = outdir / f"spectrum_n{n}_beyond_boundary.csv"
        cli_main(
            [
                "spectrum",
                "--n", str(n),
                "--grid", "1.001:1.4:41",
                "--output", str(beyond),
            ]
        )
        print(f"wrote {inside} and {beyond}")


if __name__ == "__main__":
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--outdir", type=Path, default=Path("out"))
    run(parser.parse_args().outdir)
