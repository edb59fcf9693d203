import json
from pathlib import Path

import numpy as np
import pytest

from attrcd import load_truth
from attrcd.cli import main
from attrcd.engine import dominates
from attrcd.objectives import ObjectiveVector


def _dir_bytes(root: Path) -> dict[str, bytes]:
    return {
        str(p.relative_to(root)): p.read_bytes()
        for p in sorted(root.rglob("*"))
        if p.is_file()
    }


@pytest.fixture(scope="module")
def planted_files(tmp_path_factory):
    out = tmp_path_factory.mktemp("net")
    rc = main([
        "gen-planted", "--nodes", "24", "--comms", "3", "--pin", "0.6",
        "--pout", "0.05", "--noise", "0.1", "--seed", "3", "--out", str(out),
    ])
    assert rc == 0
    return out


class TestGenPlantedCommand:
    def test_writes_files(self, planted_files):
        for name in ("planted.edges", "planted.attrs", "planted.truth"):
            assert (planted_files / name).exists()

    def test_reruns_byte_identical(self, planted_files, tmp_path):
        rc = main([
            "gen-planted", "--nodes", "24", "--comms", "3", "--pin", "0.6",
            "--pout", "0.05", "--noise", "0.1", "--seed", "3", "--out", str(tmp_path),
        ])
        assert rc == 0
        assert _dir_bytes(tmp_path) == _dir_bytes(planted_files)

    def test_invalid_parameters_exit_1(self, tmp_path, capsys):
        rc = main([
            "gen-planted", "--nodes", "10", "--comms", "3", "--pin", "0.6",
            "--pout", "0.05", "--out", str(tmp_path),
        ])
        assert rc == 1
        assert "error" in capsys.readouterr().err


def _detect(planted_files, out, extra=()):
    return main([
        "detect",
        "--edges", str(planted_files / "planted.edges"),
        "--attrs", str(planted_files / "planted.attrs"),
        "--kind", "single",
        "--truth", str(planted_files / "planted.truth"),
        "--seeds", "2", "--pop", "12", "--gens", "3",
        "--out", str(out),
        *extra,
    ])


class TestDetectCommand:
    def test_outputs(self, planted_files, tmp_path):
        out = tmp_path / "camp"
        assert _detect(planted_files, out) == 0
        record = json.loads((out / "seed_0000" / "record.json").read_text())
        assert record["seed"] == 0
        assert record["generations"] == 3
        assert record["selected"]["nmi"] is not None
        assert (out / "aggregate.json").exists()
        assert (out / "aggregate.csv").exists()

        # front CSV rows are mutually non-dominated
        rows = (out / "seed_0000" / "front.csv").read_text().strip().splitlines()[1:]
        objs = [ObjectiveVector(*map(float, r.split(","))) for r in rows]
        for i, a in enumerate(objs):
            for j, b in enumerate(objs):
                if i != j:
                    assert not dominates(a, b)

    def test_assignment_round_trips_as_truth(self, planted_files, tmp_path):
        out = tmp_path / "camp"
        assert _detect(planted_files, out) == 0
        assignment = out / "seed_0000" / "assignment.txt"
        truth = load_truth(assignment, 24)
        assert truth.community_of.size == 24

    def test_reruns_byte_identical(self, planted_files, tmp_path):
        out1, out2 = tmp_path / "a", tmp_path / "b"
        assert _detect(planted_files, out1) == 0
        assert _detect(planted_files, out2) == 0
        assert _dir_bytes(out1) == _dir_bytes(out2)

    def test_single_seed_aggregate_equals_record(self, planted_files, tmp_path):
        out = tmp_path / "one"
        rc = main([
            "detect",
            "--edges", str(planted_files / "planted.edges"),
            "--attrs", str(planted_files / "planted.attrs"),
            "--kind", "single", "--seeds", "1", "--pop", "12", "--gens", "3",
            "--out", str(out),
        ])
        assert rc == 0
        agg = json.loads((out / "aggregate.json").read_text())
        rec = json.loads((out / "seed_0000" / "record.json").read_text())
        assert agg["selected"]["d_avg"] == rec["selected"]["density"]
        assert agg["selected"]["d_std"] == 0.0

    def test_missing_attr_file_exit_1(self, planted_files, tmp_path, capsys):
        rc = main([
            "detect",
            "--edges", str(planted_files / "planted.edges"),
            "--attrs", str(planted_files / "missing.attrs"),
            "--kind", "single", "--seeds", "1", "--out", str(tmp_path / "x"),
        ])
        assert rc == 1
        assert "error" in capsys.readouterr().err

    def test_missing_required_inputs_exit_1(self, tmp_path):
        assert main(["detect", "--out", str(tmp_path)]) == 1

    def test_config_file_and_flag_override(self, planted_files, tmp_path):
        cfg = tmp_path / "run.cfg"
        cfg.write_text(
            f"edges = {planted_files / 'planted.edges'}\n"
            f"attrs = {planted_files / 'planted.attrs'}\n"
            "kind = single\n"
            "seeds = 1\n"
            "population_size = 12\n"
            "generations = 5\n"
            "# comment line\n"
        )
        out = tmp_path / "cfgrun"
        rc = main(["detect", "--config", str(cfg), "--gens", "2", "--out", str(out)])
        assert rc == 0
        rec = json.loads((out / "seed_0000" / "record.json").read_text())
        assert rec["generations"] == 2  # flag wins over config

    def test_parallel_jobs_match_sequential(self, planted_files, tmp_path):
        seq, par = tmp_path / "seq", tmp_path / "par"
        assert _detect(planted_files, seq) == 0
        assert _detect(planted_files, par, extra=("--jobs", "2")) == 0
        assert _dir_bytes(seq) == _dir_bytes(par)


class TestLandscapeCommand:
    def _run(self, planted_files, out, *extra):
        return main([
            "landscape",
            "--edges", str(planted_files / "planted.edges"),
            "--attrs", str(planted_files / "planted.attrs"),
            "--kind", "single",
            "--budget", "5", "--fdc-sample", "5",
            "--epsilon-sample", "30", "--epsilon-pairs", "100",
            "--ls-trials", "8", "--no-engine-front",
            "--out", str(out),
            *extra,
        ])

    def test_both_spaces_both_objectives(self, planted_files, tmp_path):
        out = tmp_path / "land"
        assert self._run(planted_files, out) == 0
        rows = (out / "landscape.csv").read_text().strip().splitlines()
        assert rows[0] == "space,objective,lod,er,fdc"
        assert len(rows) == 5
        comparison = (out / "comparison.csv").read_text().strip().splitlines()
        assert comparison[0] == "objective,lod_o,lod_t,er_o,er_t,fdc_o,fdc_t"
        assert len(comparison) == 3

    def test_discrete_only_leaves_transformed_columns_empty(self, planted_files, tmp_path):
        out = tmp_path / "disc"
        assert self._run(planted_files, out, "--space", "discrete", "--objective", "Q") == 0
        comparison = (out / "comparison.csv").read_text().strip().splitlines()
        cells = comparison[1].split(",")
        assert cells[0] == "q"
        assert cells[1] != "" and cells[2] == ""  # lod_o filled, lod_t empty
        assert cells[3] != "" and cells[4] == ""

    def test_fixed_seed_identical_csv_bytes(self, planted_files, tmp_path):
        out1, out2 = tmp_path / "l1", tmp_path / "l2"
        assert self._run(planted_files, out1) == 0
        assert self._run(planted_files, out2) == 0
        assert _dir_bytes(out1) == _dir_bytes(out2)

    def test_engine_front_path(self, planted_files, tmp_path):
        out = tmp_path / "withfront"
        rc = main([
            "landscape",
            "--edges", str(planted_files / "planted.edges"),
            "--attrs", str(planted_files / "planted.attrs"),
            "--kind", "single", "--space", "discrete", "--objective", "Q",
            "--budget", "4", "--fdc-sample", "4",
            "--engine-pop", "10", "--engine-gens", "5",
            "--out", str(out),
        ])
        assert rc == 0
        assert (out / "landscape.csv").exists()


class TestUsageErrors:
    def test_unknown_flag_exit_1(self, capsys):
        assert main(["detect", "--frobnicate"]) == 1

    def test_missing_subcommand_exit_1(self):
        assert main([]) == 1
