"""CSV loading shared by the figure scripts.

The upstream CLI writes metadata as leading '#'-prefixed lines followed by a
plain CSV body.  Sweep files carry a 'table' column merging several row
schemas; single-analysis files omit it.
"""

from __future__ import annotations

import io
import json

import pandas as pd


class FigureInputError(ValueError):
    """Raised when a CSV is empty or lacks a required column."""


def load_csv(path: str) -> tuple[dict, pd.DataFrame]:
    """Return (metadata, dataframe) for one CLI-produced CSV file."""
    metadata: dict = {}
    body_lines: list[str] = []
    with open(path) as fh:
        for line in fh:
            if line.startswith("# "):
                key, _, raw = line[2:].rstrip("\n").partition(": ")
                try:
                    metadata[key] = json.loads(raw)
                except json.JSONDecodeError:
                    metadata[key] = raw
            elif line.strip():
                body_lines.append(line)
    if not body_lines:
        raise FigureInputError(f"{path}: no data rows")
    frame = pd.read_csv(io.StringIO("".join(body_lines)))
    if frame.empty:
        raise FigureInputError(f"{path}: no data rows")
    return metadata, frame


def select_table(frame: pd.DataFrame, name: str) -> pd.DataFrame:
    """Restrict a merged sweep frame to one logical table, if tagged."""
    if "table" in frame.columns:
        frame = frame[frame["table"] == name].drop(columns=["table"])
        frame = frame.dropna(axis=1, how="all")
    return frame


def require_columns(frame: pd.DataFrame, columns, path: str) -> None:
    missing = [c for c in columns if c not in frame.columns]
    if missing:
        raise FigureInputError(f"{path}: missing column(s) {', '.join(missing)}")
    if frame.empty:
        raise FigureInputError(f"{path}: no data rows")


def data_rows(frame: pd.DataFrame) -> pd.DataFrame:
    """Drop ensemble-mean rows (realization == 'mean') if present."""
    if "realization" in frame.columns:
        return frame[frame["realization"].astype(str) != "mean"]
    return frame


def mean_rows(frame: pd.DataFrame) -> pd.DataFrame:
    """Prefer ensemble-mean rows when present, else all rows."""
    if "realization" in frame.columns:
        means = frame[frame["realization"].astype(str) == "mean"]
        if not means.empty:
            return means
    return frame
