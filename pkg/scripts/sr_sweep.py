#!/usr/bin/env python3
"""Sweep the quasiperiodic short-range chain over the potential amplitude h.

Produces the spectrum/scalars/delta_n/sff tables consumed by the figure
scripts.
"""

import argparse
import pathlib

from chanmix.cli import main as chanmix_main


def run() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--L", type=int, default=8)
    parser.add_argument("--V", type=float, default=1.0)
    parser.add_argument("--h-from", type=float, default=1.0)
    parser.add_argument("--h-to", type=float, default=9.0)
    parser.add_argument("--steps", type=int, default=5)
    parser.add_argument("--n-max", type=int, default=100)
    parser.add_argument("--workers", type=int, default=None)
    parser.add_argument("--out", default="data/sr_sweep.csv")
    args = parser.parse_args()
    pathlib.Path(args.out).parent.mkdir(parents=True, exist_ok=True)
    argv = ["sweep", "--model", "sr", "--L", str(args.L), "--V", str(args.V),
            "--param", "h", "--from", str(args.h_from), "--to", str(args.h_to),
            "--steps", str(args.steps), "--n-max", str(args.n_max),
            "--analyses", "spectrum,gap,entanglement,delta_n,sff",
            "--out", args.out]
    if args.workers is not None:
        argv += ["--workers", str(args.workers)]
    code = chanmix_main(argv)
    if code != 0:
        raise SystemExit(code)
    print(f"wrote {args.out}")


if __name__ == "__main__":
    run()
