"""Full command-line runs are reproducible."""

import json
from pathlib import Path

import pytest

from clevrshift.cli import EXIT_OK, main
from clevrshift.evaluation import DISCREPANCY_NOTE, AccuracyGrid, relative_degrade


def run_pipeline(root: Path, monkeypatch: pytest.MonkeyPatch, *, jobs: int = 1) -> None:
    monkeypatch.chdir(root)
    steps = [
        ["generate", "--num-scenes", "6", "--seed", "3", "--jobs", str(jobs),
         "--questions-per-scene", "object=5,part=5", "--out", "data"],
        ["perturb", "--scenes", "data/scenes.json", "--epsilon", "0.2",
         "--seed", "3", "--out", "perceived"],
        ["execute", "--mode", "prob", "--questions", "data/questions.json",
         "--perceived", "perceived/perceived.json", "--out", "prob"],
        ["evaluate", "--pred", "prob/predictions.json",
         "--gold", "data/questions.json", "--out", "report"],
    ]  # fmt: skip
    for argv in steps:
        assert main([*argv, "-q"]) == EXIT_OK


def outputs(root: Path) -> dict[str, bytes]:
    return {str(p.relative_to(root)): p.read_bytes() for p in sorted(root.rglob("*.json"))}


def test_byte_identical(tmp_path: Path, monkeypatch: pytest.MonkeyPatch) -> None:
    a, b = tmp_path / "a", tmp_path / "b"
    a.mkdir()
    b.mkdir()
    run_pipeline(a, monkeypatch)
    run_pipeline(b, monkeypatch)
    first = outputs(a)
    assert "report/report.json" in first
    assert first == outputs(b)
    assert (a / "report" / "report.txt").read_bytes() == (b / "report" / "report.txt").read_bytes()


@pytest.mark.slow
def test_independent_of_jobs(tmp_path: Path, monkeypatch: pytest.MonkeyPatch) -> None:
    a, b = tmp_path / "a", tmp_path / "b"
    a.mkdir()
    b.mkdir()
    run_pipeline(a, monkeypatch, jobs=1)
    run_pipeline(b, monkeypatch, jobs=2)
    for name in ("data/scenes.json", "data/questions.json", "report/report.json"):
        assert (a / name).read_bytes() == (b / name).read_bytes()


def test_grid_report(
    tmp_path: Path, monkeypatch: pytest.MonkeyPatch, capsys: pytest.CaptureFixture[str]
) -> None:
    run_pipeline(tmp_path, monkeypatch)
    # every cell scored with the same prediction file: no degrade
    v = ("easy", "mid", "hard")
    cells = [
        {"train": i, "test": j, "predictions": "prob/predictions.json",
         "gold": "data/questions.json"}
        for i in v for j in v
    ]  # fmt: skip
    Path("grid.json").write_text(json.dumps({"factor": "visual", "cells": cells}))
    capsys.readouterr()
    assert main(["evaluate", "--grid", "grid.json", "--out", "rd"]) == EXIT_OK
    printed = capsys.readouterr().out
    assert "RD (visual): 0.000%" in printed
    assert DISCREPANCY_NOTE in printed
    record = json.loads(Path("rd/report.json").read_text())
    assert record["relative_degrade"]["rd"] == 0.0


def test_distribution_extreme() -> None:
    # perfect in-domain and on head/long, zero on tail/oppo
    cells = {}
    for k in ("bal", "slt", "long"):
        cells |= {(k, k): 1.0, (k, "long"): 1.0, (k, "head"): 1.0,
                  (k, "tail"): 0.0, (k, "oppo"): 0.0}  # fmt: skip
    rd = relative_degrade(AccuracyGrid.from_cells("distribution", cells))
    assert rd.percent == 100.0
