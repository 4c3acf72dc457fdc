"""Command-line front end.

Subcommands: classify, weyl, manybody, iterate, sff, sweep.  Output is CSV
(metadata as leading '#' comment lines) or JSON (metadata object + rows).
Exit codes: 0 success, 2 validation failure, 3 numerical failure.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

import numpy as np

from . import __version__
from .config import TOL
from .channel import Channel, DensityMatrix, channel_from_unitary
from .constructions import NAMED_POINTS, WeylPoint, weyl_channel_spectrum_analytic, weyl_line
from .entanglement import mixing_threshold, operator_entanglement, sufficiency_verdict
from .ergodicity import (
    DegenerateFixedPointError,
    classify,
    fixed_point,
    generalized_sff,
    iterate_convergence,
    scrambling_time,
    spectrum,
)
from .linalg import NumericalError, load_matrix
from .manybody import ANALYSES, ManyBodySpec, manybody_channel, neel_state, sweep

EXIT_VALIDATION = 2
EXIT_NUMERICAL = 3


def _metadata(args, extra=None) -> dict:
    md = {
        "version": __version__,
        "tolerances": {
            "classify_analytic": TOL.classify_analytic,
            "classify_manybody": TOL.classify_manybody,
            "unitarity": TOL.unitarity,
            "choi_psd": TOL.choi_psd,
        },
        "conventions": {
            "index": "subsystem 1 slow; composite index i*d2 + alpha",
            "vectorization": "row-major <ij|A> = <i|A|j>",
            "unitary_sign": "U = exp(+iH)",
            "syk": "all-tuple antisymmetrized sum plus explicit Hermitian conjugate; "
                   "per-coupling variance J^2/L^3",
        },
    }
    if getattr(args, "seed", None) is not None:
        md["seed"] = args.seed
    if extra:
        md.update(extra)
    return md


def _write_rows(args, rows, metadata) -> None:
    out = open(args.out, "w") if args.out else sys.stdout
    try:
        if args.format == "json":
            json.dump({"metadata": metadata, "rows": rows}, out, indent=2, default=_json_default)
            out.write("\n")
            return
        for key, val in sorted(metadata.items()):
            out.write(f"# {key}: {json.dumps(val, default=str)}\n")
        if not rows:
            return
        cols = list(dict.fromkeys(k for row in rows for k in row))
        out.write(",".join(cols) + "\n")
        for row in rows:
            out.write(",".join(_fmt(row.get(c)) for c in cols) + "\n")
    finally:
        if args.out:
            out.close()


def _json_default(v):
    if isinstance(v, (bool, np.bool_)):
        return bool(v)
    if isinstance(v, (float, np.floating)):
        return float(v)
    if isinstance(v, (int, np.integer)):
        return int(v)
    return str(v)


def _fmt(v) -> str:
    if v is None:
        return ""
    if isinstance(v, (bool, np.bool_)):
        return str(bool(v)).lower()
    if isinstance(v, (float, np.floating)):
        return repr(float(v))
    if isinstance(v, (int, np.integer)):
        return str(int(v))
    return str(v)


def _load_sigma(arg: str, d: int) -> DensityMatrix:
    if arg == "maximally-mixed":
        return DensityMatrix.maximally_mixed(d)
    return DensityMatrix(load_matrix(arg))


def cmd_classify(args) -> int:
    u = load_matrix(args.unitary)
    d = int(round(np.sqrt(u.shape[0])))
    sigma = _load_sigma(args.sigma, d)
    ch = channel_from_unitary(u, sigma)
    sp = spectrum(ch)
    verdict = classify(sp, args.epsilon, ch)
    suff = sufficiency_verdict(u, sigma)
    rows = [
        {"eig_index": i, "re": v.real, "im": v.imag, "abs": abs(v)}
        for i, v in enumerate(sp.values)
    ]
    extra = {
        "label": verdict.label,
        "gap": sp.gap,
        "op_ent": operator_entanglement(u),
        "e_star": mixing_threshold(d),
        "sufficient": suff["sufficient"],
        "sufficiency_witness": suff["witness"],
        "peripheral_count": verdict.peripheral_count,
        "unit_count": verdict.unit_count,
    }
    if verdict.unit_count == 1:
        try:
            rho = fixed_point(ch, args.epsilon)
            extra["fixed_point"] = [
                [f"{x.real:.12g}{x.imag:+.12g}j" for x in row] for row in rho.mat
            ]
        except DegenerateFixedPointError:
            pass
    _write_rows(args, rows, _metadata(args, extra))
    return 0


def cmd_weyl(args) -> int:
    if args.line:
        try:
            a, b = args.line.split("-")
            start, end = NAMED_POINTS[a], NAMED_POINTS[b]
        except (ValueError, KeyError):
            raise ValueError(
                f"--line must be '<start>-<end>' over {sorted(NAMED_POINTS)}, got {args.line!r}"
            )
        triples = weyl_line(start, end, args.steps, args.epsilon)
    else:
        p = WeylPoint(args.x, args.y, args.z)
        triples = weyl_line(p, p, 2, args.epsilon)[:1]
    rows = []
    for p, sp, verdict in triples:
        analytic = weyl_channel_spectrum_analytic(p)
        rows.append({
            "x": p.x, "y": p.y, "z": p.z,
            "lambda1_abs": sp.lambda1_abs, "gap": sp.gap,
            "analytic_1": analytic[1], "analytic_2": analytic[2], "analytic_3": analytic[3],
            "label": verdict.label,
        })
    _write_rows(args, rows, _metadata(args))
    return 0


def _spec_from_args(args) -> ManyBodySpec:
    return ManyBodySpec(
        model=args.model, n_sites=args.L, v=args.V, h=args.h,
        seed=args.seed, realizations=args.realizations,
    )


def cmd_manybody(args) -> int:
    spec = _spec_from_args(args)
    outputs = [a.strip() for a in args.analyses.split(",") if a.strip()]
    tables = sweep(spec, "h", [spec.h], outputs, n_max=args.n_max, workers=args.workers)
    rows = []
    for name in ("spectrum", "scalars", "delta_n", "sff", "failures"):
        for row in tables.get(name, []):
            rows.append({"table": name, **row})
    _write_rows(args, rows, _metadata(
        args, {"model": args.model, "L": args.L, "h": args.h, "d": spec.d_system}))
    return 0


def cmd_iterate(args) -> int:
    spec = _spec_from_args(args)
    ch = manybody_channel(spec, 0)
    rho0 = neel_state(spec.n_sites // 2)
    deltas = iterate_convergence(ch, rho0, args.n_max, TOL.classify_manybody)
    rows = [{"n": n, "delta_n": d} for n, d in enumerate(deltas)]
    _write_rows(args, rows, _metadata(args, {"model": args.model, "state": "neel"}))
    return 0


def cmd_sff(args) -> int:
    spec = _spec_from_args(args)
    ch = manybody_channel(spec, 0)
    ks = generalized_sff(ch, args.n_max)
    ns = scrambling_time(ks, spec.d_system)
    rows = [{"n": n + 1, "K_n": k, "n_s": ns} for n, k in enumerate(ks)]
    _write_rows(args, rows, _metadata(args, {"model": args.model, "d": spec.d_system}))
    return 0


def cmd_sweep(args) -> int:
    spec = _spec_from_args(args)
    if args.param == "h":
        values = list(np.linspace(args.start, args.stop, args.steps))
    else:
        values = [int(v) for v in np.linspace(args.start, args.stop, args.steps)]
    outputs = [a.strip() for a in args.analyses.split(",") if a.strip()]
    tables = sweep(spec, args.param, values, outputs, n_max=args.n_max, workers=args.workers)
    rows = []
    for name in ("spectrum", "scalars", "delta_n", "sff", "failures"):
        for row in tables.get(name, []):
            rows.append({"table": name, **row})
    extra = {"model": args.model, "param": args.param}
    if args.param == "h":
        extra["L"] = args.L
        extra["d"] = spec.d_system
    _write_rows(args, rows, _metadata(args, extra))
    return 0


def _add_output_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--out", default=None, help="output path (default stdout)")
    p.add_argument("--format", choices=("csv", "json"), default="csv")


def _add_manybody_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--model", choices=("sr", "syk"), required=True)
    p.add_argument("--L", type=int, required=True, help="chain length (even)")
    p.add_argument("--h", type=float, default=0.0, help="quasiperiodic amplitude (sr)")
    p.add_argument("--V", type=float, default=1.0, help="interaction strength (sr)")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--realizations", type=int, default=1)
    p.add_argument("--n-max", type=int, default=30, dest="n_max")
    p.add_argument("--workers", type=int,
                   default=int(os.environ.get("CHANMIX_WORKERS", os.cpu_count() or 1)))


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="chanmix",
                                     description="ergodic/mixing analysis of quantum channels")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("classify", help="classify a channel dilated from a unitary file")
    p.add_argument("--unitary", required=True, help="matrix JSON file")
    p.add_argument("--sigma", default="maximally-mixed",
                   help="environment state file or 'maximally-mixed'")
    p.add_argument("--epsilon", type=float, default=TOL.classify_analytic)
    _add_output_flags(p)
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("weyl", help="two-qubit canonical channels")
    p.add_argument("--x", type=float, default=0.0)
    p.add_argument("--y", type=float, default=0.0)
    p.add_argument("--z", type=float, default=0.0)
    p.add_argument("--line", default=None,
                   help="named segment, e.g. local-cnot, cnot-dcnot, swap-dcnot, local-swap")
    p.add_argument("--steps", type=int, default=9)
    p.add_argument("--epsilon", type=float, default=TOL.classify_analytic)
    _add_output_flags(p)
    p.set_defaults(func=cmd_weyl)

    p = sub.add_parser("manybody", help="single-parameter many-body analyses")
    _add_manybody_flags(p)
    p.add_argument("--analyses", default="gap,entanglement",
                   help=f"comma list from {','.join(ANALYSES)}")
    _add_output_flags(p)
    p.set_defaults(func=cmd_manybody)

    p = sub.add_parser("iterate", help="trace-norm convergence Delta_n")
    _add_manybody_flags(p)
    p.add_argument("--state", choices=("neel",), default="neel")
    _add_output_flags(p)
    p.set_defaults(func=cmd_iterate)

    p = sub.add_parser("sff", help="generalized spectral form factor K(n)")
    _add_manybody_flags(p)
    _add_output_flags(p)
    p.set_defaults(func=cmd_sff)

    p = sub.add_parser("sweep", help="sweep h or L")
    _add_manybody_flags(p)
    p.add_argument("--param", choices=("h", "L"), required=True)
    p.add_argument("--from", type=float, required=True, dest="start")
    p.add_argument("--to", type=float, required=True, dest="stop")
    p.add_argument("--steps", type=int, required=True)
    p.add_argument("--analyses", default="gap,entanglement")
    _add_output_flags(p)
    p.set_defaults(func=cmd_sweep)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, OSError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except (NumericalError, DegenerateFixedPointError) as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL


if __name__ == "__main__":
    sys.exit(main())
