"""Figure-script tests.

The input CSVs are produced by the upstream `chanmix` CLI invoked as a
subprocess, so these tests exercise exactly the public file contract.
"""

from __future__ import annotations

import shutil
import subprocess
import sys

import pytest

from chanmix_figures.render import RENDERERS, main

CHANMIX = shutil.which("chanmix")

pytestmark = pytest.mark.skipif(CHANMIX is None,
                                reason="chanmix CLI not installed")


@pytest.fixture(scope="session")
def sr_sweep_csv(tmp_path_factory):
    out = tmp_path_factory.mktemp("data") / "sr_sweep.csv"
    subprocess.run(
        [CHANMIX, "sweep", "--model", "sr", "--L", "8", "--param", "h",
         "--from", "1", "--to", "9", "--steps", "3", "--n-max", "40",
         "--analyses", "spectrum,gap,entanglement,delta_n,sff",
         "--out", str(out)],
        check=True,
    )
    return str(out)


@pytest.mark.parametrize("figure_id", sorted(RENDERERS))
def test_renders_from_sweep_csv(figure_id, sr_sweep_csv, tmp_path):
    out = tmp_path / f"{figure_id}.png"
    code = main([figure_id, sr_sweep_csv, "--out", str(out)])
    assert code == 0
    assert out.stat().st_size > 0


def test_single_analysis_csv(tmp_path):
    csv = tmp_path / "sff.csv"
    subprocess.run(
        [CHANMIX, "sff", "--model", "sr", "--L", "4", "--h", "5",
         "--n-max", "20", "--out", str(csv)],
        check=True,
    )
    out = tmp_path / "sff.png"
    assert main(["sff", str(csv), "--out", str(out)]) == 0
    assert out.stat().st_size > 0


def test_missing_column_names_it(tmp_path, capsys):
    csv = tmp_path / "bad.csv"
    csv.write_text("param_value,realization,eig_index,re\n1.0,0,0,0.5\n")
    code = main(["spectrum-scatter", str(csv), "--out", str(tmp_path / "x.png")])
    assert code == 2
    assert "im" in capsys.readouterr().err


def test_empty_csv_errors(tmp_path, capsys):
    csv = tmp_path / "empty.csv"
    csv.write_text("# version: \"0.1.0\"\n")
    code = main(["delta-decay", str(csv), "--out", str(tmp_path / "x.png")])
    assert code == 2
    assert "no data rows" in capsys.readouterr().err


def test_header_only_csv_errors(tmp_path):
    csv = tmp_path / "hdr.csv"
    csv.write_text("n,K_n\n")
    assert main(["sff", str(csv), "--out", str(tmp_path / "x.png")]) == 2


def test_unknown_figure_id_rejected(tmp_path):
    with pytest.raises(SystemExit) as exc:
        main(["not-a-figure", "whatever.csv", "--out", str(tmp_path / "x.png")])
    assert exc.value.code == 2


def test_rendering_is_deterministic(sr_sweep_csv, tmp_path, monkeypatch):
    monkeypatch.setenv("SOURCE_DATE_EPOCH", "0")
    a, b = tmp_path / "a.png", tmp_path / "b.png"
    assert main(["gap-vs-h", sr_sweep_csv, "--out", str(a)]) == 0
    assert main(["gap-vs-h", sr_sweep_csv, "--out", str(b)]) == 0
    assert a.read_bytes() == b.read_bytes()


def test_rendering_is_read_only(sr_sweep_csv, tmp_path):
    before = open(sr_sweep_csv, "rb").read()
    assert main(["spectrum-scatter", sr_sweep_csv,
                 "--out", str(tmp_path / "x.png")]) == 0
    assert open(sr_sweep_csv, "rb").read() == before
