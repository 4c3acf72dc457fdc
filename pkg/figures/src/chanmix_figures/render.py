"""render_figure <figure-id> <csv...> --out <path>

Five figure ids:

- spectrum-scatter    channel eigenvalues in the complex plane + unit circle
- gap-vs-h            |lambda1| and gap against the sweep parameter
- delta-decay         trace-norm distance Delta_n against step n
- entanglement-vs-h   operator entanglement against the sweep parameter + E*
- sff                 generalized spectral form factor K(n) + the 1/d line
"""

from __future__ import annotations

import argparse
import sys

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np
import pandas as pd

from .loading import (
    FigureInputError,
    data_rows,
    load_csv,
    mean_rows,
    require_columns,
    select_table,
)


def _concat(paths, table):
    metas, frames = [], []
    for path in paths:
        meta, frame = load_csv(path)
        frames.append(select_table(frame, table))
        metas.append(meta)
    return metas, pd.concat(frames, ignore_index=True)


def _series_label(meta, value=None):
    if value is not None and not pd.isna(value):
        param = meta.get("param", "h")
        return f"{param} = {value:g}"
    return None


def _grouped(frame):
    if "param_value" in frame.columns:
        for value, grp in frame.groupby("param_value"):
            yield value, grp
    else:
        yield None, frame


def render_spectrum_scatter(paths, out):
    metas, frame = _concat(paths, "spectrum")
    require_columns(frame, ("re", "im"), paths[0])
    frame = data_rows(frame)
    fig, ax = plt.subplots(figsize=(5, 5))
    theta = np.linspace(0, 2 * np.pi, 400)
    ax.plot(np.cos(theta), np.sin(theta), "k--", lw=0.8, label="unit circle")
    for value, grp in _grouped(frame):
        ax.scatter(grp["re"], grp["im"], s=8, alpha=0.6,
                   label=_series_label(metas[0], value))
    ax.set_xlabel("Re $\\lambda$")
    ax.set_ylabel("Im $\\lambda$")
    ax.set_aspect("equal")
    ax.legend(loc="upper right", fontsize=8)
    fig.savefig(out, bbox_inches="tight")
    plt.close(fig)


def render_gap_vs_h(paths, out):
    metas, frame = _concat(paths, "scalars")
    require_columns(frame, ("param_value", "lambda1_abs", "gap"), paths[0])
    frame = mean_rows(frame).sort_values("param_value")
    fig, ax = plt.subplots(figsize=(6, 4))
    ax.plot(frame["param_value"], frame["lambda1_abs"], "o-",
            label="$|\\lambda_1|$")
    ax.plot(frame["param_value"], frame["gap"], "s-",
            label="gap $1-|\\lambda_1|$")
    ax.set_xlabel(metas[0].get("param", "h"))
    ax.set_ylabel("value")
    ax.legend()
    fig.savefig(out, bbox_inches="tight")
    plt.close(fig)


def render_delta_decay(paths, out):
    metas, frame = _concat(paths, "delta_n")
    require_columns(frame, ("n", "delta_n"), paths[0])
    frame = data_rows(frame)
    fig, ax = plt.subplots(figsize=(6, 4))
    for value, grp in _grouped(frame):
        grp = grp.sort_values("n")
        ax.semilogy(grp["n"], grp["delta_n"], "o-", ms=3,
                    label=_series_label(metas[0], value))
    ax.set_xlabel("$n$")
    ax.set_ylabel("$\\Delta_n$")
    if ax.get_legend_handles_labels()[0]:
        ax.legend(fontsize=8)
    fig.savefig(out, bbox_inches="tight")
    plt.close(fig)


def render_entanglement_vs_h(paths, out):
    metas, frame = _concat(paths, "scalars")
    require_columns(frame, ("param_value", "op_ent", "e_star"), paths[0])
    frame = mean_rows(frame).sort_values("param_value")
    fig, ax = plt.subplots(figsize=(6, 4))
    ax.plot(frame["param_value"], frame["op_ent"], "o-", label="$E(U)$")
    for e_star in sorted(frame["e_star"].dropna().unique()):
        ax.axhline(e_star, ls=":", color="gray",
                   label=f"$E^* = {e_star:.4g}$")
    ax.set_xlabel(metas[0].get("param", "h"))
    ax.set_ylabel("operator entanglement")
    ax.legend()
    fig.savefig(out, bbox_inches="tight")
    plt.close(fig)


def _sff_guide_d(meta, value):
    if "d" in meta:
        return float(meta["d"])
    if meta.get("param") == "L" and value is not None:
        return float(2 ** (int(value) // 2))
    if "L" in meta:
        return float(2 ** (int(meta["L"]) // 2))
    return None


def render_sff(paths, out):
    metas, frame = _concat(paths, "sff")
    require_columns(frame, ("n", "K_n"), paths[0])
    frame = data_rows(frame)
    fig, ax = plt.subplots(figsize=(6, 4))
    guides = set()
    for value, grp in _grouped(frame):
        grp = grp.sort_values("n")
        ax.semilogy(grp["n"], grp["K_n"], "o-", ms=3,
                    label=_series_label(metas[0], value))
        d = _sff_guide_d(metas[0], value)
        if d is not None:
            guides.add(d)
    for d in sorted(guides):
        ax.axhline(1.0 / d, ls="--", color="gray", label=f"$1/d = 1/{d:g}$")
    ax.set_xlabel("$n$")
    ax.set_ylabel("$K(n)$")
    if ax.get_legend_handles_labels()[0]:
        ax.legend(fontsize=8)
    fig.savefig(out, bbox_inches="tight")
    plt.close(fig)


RENDERERS = {
    "spectrum-scatter": render_spectrum_scatter,
    "gap-vs-h": render_gap_vs_h,
    "delta-decay": render_delta_decay,
    "entanglement-vs-h": render_entanglement_vs_h,
    "sff": render_sff,
}


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="render_figure", description="render a figure from chanmix CSVs")
    parser.add_argument("figure_id", choices=sorted(RENDERERS))
    parser.add_argument("csv", nargs="+", help="input CSV file(s)")
    parser.add_argument("--out", required=True, help="output image path")
    args = parser.parse_args(argv)
    try:
        RENDERERS[args.figure_id](args.csv, args.out)
    except (FigureInputError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())
