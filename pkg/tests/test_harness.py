import hashlib
import json
import math

import numpy as np
import pytest

import gaussent as g
from gaussent import cli, harness
from gaussent.errors import ConfigError, MemoryCapExceeded


def small_doc():
    return {
        "id": "small",
        "model": {"kind": "lattice", "nx": 4, "ny": 4, "boundary": "open",
                  "delta_plus": 0.3, "delta_minus": 0.2},
        "sweep": [4.0, 8.0],
        "methods": ["exact", "weak", "closed_form"],
        "partitions": [
            {"id": "site", "kind": "single_site", "x": 1, "y": 1},
            {"id": "blk", "kind": "rect_block", "x0": 0, "y0": 0, "w": 2, "h": 2},
            {"id": "pair", "kind": "block_pair", "x0": 2, "y0": 0, "n": 2,
             "separation": 0, "depth": 1, "orientation": "parallel"},
        ],
    }


def lmg_doc():
    return {
        "id": "tiny-lmg",
        "model": {"kind": "fully_connected", "n": 8, "delta_x": 1.0, "delta_y": 1.0},
        "sweep": [6.0],
        "methods": ["exact", "weak", "closed_form"],
        "partitions": [
            {"id": "half", "kind": "mode_block", "n_a": 4},
            {"id": "pp", "kind": "mode_pair", "n_b": 3, "n_c": 2},
        ],
    }


class TestParseScenario:
    def test_minimal_document(self):
        sc = harness.parse_scenario(small_doc())
        assert sc.id == "small"
        assert sc.n == 16
        assert sc.sweep == (4.0, 8.0)
        assert sc.methods == ("exact", "weak", "closed_form")
        assert [p.id for p in sc.partitions] == ["site", "blk", "pair"]
        assert sc.partitions[2].is_pair

    def test_missing_keys_name_the_json_path(self):
        doc = small_doc()
        del doc["model"]["nx"]
        with pytest.raises(ConfigError, match="model: missing required key 'nx'"):
            harness.parse_scenario(doc)
        doc = small_doc()
        del doc["partitions"][1]["w"]
        with pytest.raises(ConfigError, match=r"partitions\[1\]"):
            harness.parse_scenario(doc)

    def test_sweep_must_stay_gapped(self):
        doc = small_doc()
        doc["sweep"] = [4.0, 1.0]
        with pytest.raises(ConfigError, match="exceed 1"):
            harness.parse_scenario(doc)
        doc["sweep"] = []
        with pytest.raises(ConfigError, match="at least one"):
            harness.parse_scenario(doc)

    def test_unknown_method_and_model(self):
        doc = small_doc()
        doc["methods"] = ["exact", "montecarlo"]
        with pytest.raises(ConfigError, match="montecarlo"):
            harness.parse_scenario(doc)
        doc = small_doc()
        doc["model"]["kind"] = "honeycomb"
        with pytest.raises(ConfigError, match="honeycomb"):
            harness.parse_scenario(doc)

    def test_duplicate_partition_id(self):
        doc = small_doc()
        doc["partitions"][1]["id"] = "site"
        with pytest.raises(ConfigError, match="duplicate partition id"):
            harness.parse_scenario(doc)

    def test_unknown_partition_kind(self):
        doc = small_doc()
        doc["partitions"][0]["kind"] = "hexagon"
        with pytest.raises(ConfigError, match=r"partitions\[0\].*hexagon"):
            harness.parse_scenario(doc)

    def test_partition_errors_carry_their_index(self):
        doc = small_doc()
        doc["partitions"][1].update({"w": 9, "h": 9})
        with pytest.raises(ConfigError, match=r"partitions\[1\]"):
            harness.parse_scenario(doc)

    def test_mode_partitions_need_the_fully_connected_model(self):
        doc = small_doc()
        doc["partitions"].append({"id": "mb", "kind": "mode_block", "n_a": 2})
        with pytest.raises(ConfigError, match="fully connected"):
            harness.parse_scenario(doc)
        doc = lmg_doc()
        doc["partitions"].append(
            {"id": "rb", "kind": "rect_block", "x0": 0, "y0": 0, "w": 2, "h": 2})
        with pytest.raises(ConfigError, match="lattice"):
            harness.parse_scenario(doc)

    def test_mode_sizes_validated(self):
        doc = lmg_doc()
        doc["partitions"][0]["n_a"] = 8
        with pytest.raises(ConfigError, match="n_a"):
            harness.parse_scenario(doc)
        doc = lmg_doc()
        doc["partitions"][1]["n_c"] = 6
        with pytest.raises(ConfigError, match="pair sizes"):
            harness.parse_scenario(doc)

    def test_load_scenario_error_paths(self, tmp_path):
        bad = tmp_path / "bad.json"
        bad.write_text('{"id": "x",}')
        with pytest.raises(ConfigError, match=r"bad\.json:1:"):
            harness.load_scenario(str(bad))
        with pytest.raises(ConfigError):
            harness.load_scenario(str(tmp_path / "missing.json"))


class TestPresets:
    def test_all_presets_parse(self):
        for name in ("fig2", "fig4", "fig5", "fig6", "lmg"):
            sc = harness.load_preset(name)
            assert sc.partitions
            assert all(r > 1 for r in sc.sweep)

    def test_unknown_preset_lists_available(self):
        with pytest.raises(ConfigError, match="fig2"):
            harness.load_preset("fig99")

    def test_fig2_shape(self):
        sc = harness.load_preset("fig2")
        assert sc.lattice.nx == 30 and sc.lattice.ny == 30
        kinds = {p.kind for p in sc.partitions}
        assert kinds == {"single_site", "rect_block", "tilted_block", "checkerboard"}


@pytest.fixture(scope="module")
def run():
    sc = harness.parse_scenario(small_doc())
    rows, timings = harness.run_scenario(sc)
    return sc, rows, timings


class TestRunScenario:
    def test_row_grid(self, run):
        sc, rows, _ = run
        assert len(rows) == 3 * 3 * 2
        order = [(r.partition, r.method, r.lambda_ratio) for r in rows]
        expect = [(p.id, m, ratio) for p in sc.partitions
                  for m in sc.methods for ratio in sc.sweep]
        assert order == expect

    def test_lambda_and_sigma_columns(self, run):
        sc, rows, timings = run
        lam_c = timings["lambda_c"]
        for r in rows:
            assert r.lam == pytest.approx(r.lambda_ratio * lam_c, rel=1e-15)
            assert r.sigma == pytest.approx(0.2 / (4 * r.lam), rel=1e-15)

    def test_scaled_columns_are_raw_over_measure(self, run):
        _, rows, _ = run
        for r in rows:
            rec = r.as_record()
            if rec["entropy"] is not None:
                assert rec["entropy_over_b2"] == rec["entropy"] / rec["boundary_2"]
            if rec["log_negativity"] is not None:
                assert rec["negativity_over_b1"] == \
                    rec["log_negativity"] / rec["boundary_1"]

    def test_pairs_report_no_entropy(self, run):
        _, rows, _ = run
        for r in rows:
            if r.partition == "pair" and r.method in ("exact", "weak"):
                assert r.entropy is None
                assert r.log_negativity is not None

    def test_exact_and_weak_agree_at_weak_coupling(self, run):
        _, rows, _ = run
        vals = {(r.partition, r.method): r for r in rows if r.lambda_ratio == 8.0}
        for pid in ("site", "blk"):
            ex, wk = vals[(pid, "exact")], vals[(pid, "weak")]
            assert wk.entropy == pytest.approx(ex.entropy, rel=5e-2)
        assert vals[("pair", "weak")].log_negativity == pytest.approx(
            vals[("pair", "exact")].log_negativity, rel=5e-2)

    def test_csv_layout(self, run):
        _, rows, _ = run
        text = harness.rows_to_csv(rows)
        lines = text.splitlines()
        assert lines[0] == ",".join(harness.CSV_COLUMNS)
        assert len(lines) == len(rows) + 1
        first = lines[1].split(",")
        assert first[0] == "small" and first[1] == "site" and first[2] == "exact"
        assert first[3] == "4.0"
        # floats print as shortest round-trip decimals
        assert float(first[4]) == rows[0].lam
        # pair rows leave the entropy fields empty
        pair_line = next(l for l in lines[1:] if l.split(",")[1] == "pair")
        cells = pair_line.split(",")
        assert cells[6] == "" and cells[7] == ""

    def test_byte_determinism(self, run):
        sc, rows, _ = run
        again, _ = harness.run_scenario(sc)
        assert harness.rows_to_csv(again) == harness.rows_to_csv(rows)

    def test_threads_do_not_change_the_table(self, run):
        sc, rows, _ = run
        threaded, _ = harness.run_scenario(sc, threads=2)
        assert harness.rows_to_csv(threaded) == harness.rows_to_csv(rows)

    def test_log_base_rescales(self, run):
        sc, rows, _ = run
        nats, _ = harness.run_scenario(sc, log_base="e")
        for r2, re_ in zip(rows, nats):
            if r2.entropy is not None:
                assert re_.entropy == pytest.approx(r2.entropy * math.log(2), rel=1e-12)
            assert re_.log_negativity == pytest.approx(
                r2.log_negativity * math.log(2), rel=1e-12)


class TestMemoryCap:
    def test_estimate_formula(self):
        sc = harness.parse_scenario(small_doc())
        assert harness.estimate_bytes(sc, 1) == 64 * (2 * 16) ** 2
        assert harness.estimate_bytes(sc, 8) == 64 * (2 * 16) ** 2 * 2

    def test_no_exact_no_memory(self):
        doc = small_doc()
        doc["methods"] = ["closed_form"]
        sc = harness.parse_scenario(doc)
        assert harness.estimate_bytes(sc, 4) == 0

    def test_cap_enforced(self):
        sc = harness.parse_scenario(small_doc())
        with pytest.raises(MemoryCapExceeded, match="cap"):
            harness.run_scenario(sc, memory_cap_gib=1e-7)


class TestFullyConnectedScenario:
    def test_methods_cross_check(self):
        sc = harness.parse_scenario(lmg_doc())
        rows, _ = harness.run_scenario(sc)
        vals = {(r.partition, r.method): r for r in rows}
        # the closed form is the same exact solution evaluated analytically
        assert vals[("half", "closed_form")].entropy == pytest.approx(
            vals[("half", "exact")].entropy, abs=1e-10)
        assert vals[("pp", "closed_form")].log_negativity == pytest.approx(
            vals[("pp", "exact")].log_negativity, abs=1e-10)
        # the weak estimate tracks both at this coupling
        assert vals[("half", "weak")].entropy == pytest.approx(
            vals[("half", "exact")].entropy, rel=5e-2)

    def test_boundary_measures_count_pairs(self):
        sc = harness.parse_scenario(lmg_doc())
        rows, _ = harness.run_scenario(sc)
        half = next(r for r in rows if r.partition == "half")
        assert half.boundary_2 == 16.0 and half.boundary_1 == 4.0
        pp = next(r for r in rows if r.partition == "pp")
        assert pp.boundary_2 == 6.0
        assert pp.boundary_1 == pytest.approx(math.sqrt(6))


class TestWriteOutputs:
    def test_files_and_manifest(self, tmp_path):
        sc = harness.parse_scenario(small_doc())
        rows, timings = harness.run_scenario(sc)
        manifest = harness.write_outputs(sc, rows, timings, tmp_path)
        csv_text = (tmp_path / "results.csv").read_text()
        assert csv_text == harness.rows_to_csv(rows)
        assert manifest["csv_sha256"] == hashlib.sha256(csv_text.encode()).hexdigest()
        config_bytes = json.dumps(sc.raw, sort_keys=True).encode()
        assert manifest["config_sha256"] == hashlib.sha256(config_bytes).hexdigest()
        assert manifest["rows"] == len(rows)
        assert "numpy" in manifest["versions"]
        doc = json.loads((tmp_path / "results.json").read_text())
        assert doc["scenario"]["id"] == "small"
        assert len(doc["rows"]) == len(rows)
        on_disk = json.loads((tmp_path / "manifest.json").read_text())
        assert on_disk["csv_sha256"] == manifest["csv_sha256"]


class TestVerifyScenario:
    def test_small_lattice_passes_every_check(self):
        doc = small_doc()
        doc["model"].update({"nx": 8, "ny": 8})
        doc["sweep"] = [2.0]
        checks = harness.verify_scenario(harness.parse_scenario(doc))
        names = [c.name for c in checks]
        assert names == ["bogoliubov_orthonormality", "purity_closure",
                         "entropy_symmetry", "negativity_route_identity",
                         "pt_floor"]
        for c in checks:
            assert c.passed, f"{c.name}: {c.residual} >= {c.tolerance}"
            assert c.residual < 1e-9

    def test_vacuum_state_invariants_are_exact(self):
        # the uncoupled limit cannot be phrased as a sweep scenario (the
        # critical coupling is zero), but the same invariants hold exactly
        # on the vacuum contractions
        n = 9
        d = g.ContractionMatrix(np.zeros((n, n)), np.zeros((n, n)))
        assert d.purity_residual() == 0.0
        a, rest = [0, 1, 2], list(range(3, n))
        spec = g.symplectic_eigenvalues(g.restricted(d, a))
        assert float(g.entropy(spec)) == 0.0
        pt = g.symplectic_eigenvalues(g.partial_transpose(d, a, rest))
        assert float(g.log_negativity(pt)) == 0.0
        assert float(np.min(pt.values)) >= -0.0


class TestCli:
    def test_run_writes_outputs(self, tmp_path, capsys):
        cfg = tmp_path / "sc.json"
        cfg.write_text(json.dumps(small_doc()))
        code = cli.main(["run", str(cfg), "--out", str(tmp_path / "out")])
        assert code == 0
        assert (tmp_path / "out" / "results.csv").exists()
        assert (tmp_path / "out" / "results.json").exists()
        assert (tmp_path / "out" / "manifest.json").exists()
        out = capsys.readouterr().out
        assert "18 rows" in out

    def test_verify_prints_one_line_per_check(self, tmp_path, capsys):
        doc = small_doc()
        doc["sweep"] = [4.0]
        cfg = tmp_path / "sc.json"
        cfg.write_text(json.dumps(doc))
        code = cli.main(["verify", str(cfg)])
        out = capsys.readouterr().out
        assert code == 0
        lines = [l for l in out.splitlines() if l]
        assert len(lines) == 5
        for line in lines:
            assert line.startswith("PASS ")
            assert "residual" in line and "tol" in line

    def test_verify_failure_exits_2(self, tmp_path, capsys, monkeypatch):
        def fake_verify(sc):
            return [harness.VerifyCheck("purity_closure", 1.0, 1e-9)]
        monkeypatch.setattr(cli, "verify_scenario", fake_verify)
        cfg = tmp_path / "sc.json"
        cfg.write_text(json.dumps(small_doc()))
        assert cli.main(["verify", str(cfg)]) == 2
        assert "FAIL purity_closure" in capsys.readouterr().out

    def test_config_and_preset_are_exclusive(self, tmp_path, capsys):
        cfg = tmp_path / "sc.json"
        cfg.write_text(json.dumps(small_doc()))
        assert cli.main(["run", str(cfg), "--preset", "fig2"]) == 1
        assert "not both" in capsys.readouterr().err
        assert cli.main(["run"]) == 1
        assert "need a config" in capsys.readouterr().err

    def test_unknown_preset_exits_1(self, capsys):
        assert cli.main(["verify", "--preset", "fig99"]) == 1
        assert "no preset" in capsys.readouterr().err

    def test_parse_error_exits_1(self, tmp_path, capsys):
        cfg = tmp_path / "trunc.json"
        cfg.write_text('{"id": ')
        assert cli.main(["run", str(cfg)]) == 1
        assert "error:" in capsys.readouterr().err

    def test_memory_cap_exits_1(self, tmp_path, capsys):
        cfg = tmp_path / "sc.json"
        cfg.write_text(json.dumps(small_doc()))
        assert cli.main(["run", str(cfg), "--memory-cap", "1e-7",
                         "--out", str(tmp_path)]) == 1
        assert "cap" in capsys.readouterr().err
