#!/usr/bin/env python3
"""Classify channels along the named two-qubit chamber lines.

Writes one CSV per line segment into the output directory.
"""

import argparse
import pathlib

from chanmix.cli import main as chanmix_main

LINES = ("local-cnot", "cnot-dcnot", "swap-dcnot", "local-dcnot", "local-swap")


def run() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--steps", type=int, default=25)
    parser.add_argument("--out-dir", default="data/two_qubit")
    args = parser.parse_args()
    out_dir = pathlib.Path(args.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    for line in LINES:
        out = out_dir / f"{line}.csv"
        code = chanmix_main(["weyl", "--line", line, "--steps", str(args.steps),
                             "--out", str(out)])
        if code != 0:
            raise SystemExit(code)
        print(f"wrote {out}")


if __name__ == "__main__":
    run()
