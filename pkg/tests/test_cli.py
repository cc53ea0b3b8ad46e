"""End-to-end tests of the command-line interface.

Everything drives muniform.cli.main(argv) in-process and asserts on
exit codes, stdout text, and emitted files.
"""

import json

import numpy as np
import pytest

from muniform.cli import main
from muniform.noisesim import fit_error_rates
from muniform.serialize import read_bench_csv


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestUniformity:
    def test_ring5_pass_line(self, capsys):
        code, out, _ = run(capsys, "uniformity", "--D", "1", "--L", "5",
                           "--pbc", "--m", "2")
        assert code == 0
        assert out.strip() == "pass, d=3"

    def test_ring12_m3_fails_with_witness(self, capsys):
        code, out, _ = run(capsys, "uniformity", "--D", "1", "--L", "12",
                           "--pbc", "--m", "3")
        assert code == 1
        assert out.startswith("fail, d=3 <= m=3")
        assert "+XZ" in out

    def test_json_document_shape(self, capsys):
        code, out, _ = run(capsys, "uniformity", "--L", "8", "--pbc",
                           "--m", "2", "--json")
        assert code == 0
        doc = json.loads(out)
        assert doc["schema"] == {"name": "muniform-result", "version": 1}
        assert doc["command"] == "uniformity"
        assert doc["config"]["lattice"]["lengths"] == [8]
        assert doc["result"]["m_uniform"] is True
        assert doc["result"]["report"]["min_support"] == 3
        # timing stays out of documents unless requested
        assert "wall_time_s" not in doc["result"]["report"]

    def test_timing_flag_adds_wall_time(self, capsys):
        code, out, _ = run(capsys, "uniformity", "--L", "8", "--pbc",
                           "--m", "2", "--json", "--timing")
        assert code == 0
        doc = json.loads(out)
        assert "wall_time_s" in doc["result"]["report"]

    def test_sweep_method_verdicts(self, capsys):
        code, out, _ = run(capsys, "uniformity", "--L", "5", "--pbc",
                           "--m", "2", "--method", "sweep")
        assert code == 0
        assert out.startswith("pass")
        code, out, _ = run(capsys, "uniformity", "--L", "5", "--pbc",
                           "--m", "3", "--method", "sweep")
        assert code == 1
        assert "not maximally mixed" in out

    def test_ghz_family(self, capsys):
        code, out, _ = run(capsys, "uniformity", "--family", "ghz",
                           "--n", "6", "--m", "1")
        assert code == 0
        assert out.strip() == "pass, d=2"

    def test_extended_family_reach2(self, capsys):
        code, out, _ = run(capsys, "uniformity", "--family", "extended",
                           "--n", "12", "--reach", "2", "--pbc", "--m", "3")
        assert code == 0
        assert out.strip() == "pass, d=4"

    def test_missing_state_flags(self, capsys):
        code, _, err = run(capsys, "uniformity", "--m", "2")
        assert code == 2
        assert "specify a state" in err


class TestSyndromes:
    def test_identify_x3(self, capsys):
        code, out, _ = run(capsys, "syndromes", "--D", "1", "--L", "5",
                           "--pbc", "--t", "1", "--identify", "01010")
        assert code == 0
        assert out.strip() == "X on qubit 3"

    def test_identify_y3(self, capsys):
        code, out, _ = run(capsys, "syndromes", "--L", "5", "--pbc",
                           "--identify", "01110")
        assert code == 0
        assert out.strip() == "Y on qubit 3"

    def test_open_chain_collision_reads_ambiguous(self, capsys):
        code, out, _ = run(capsys, "syndromes", "--L", "5", "--obc",
                           "--identify", "01000")
        assert code == 0
        assert out.strip() == "ambiguous: X1, Z2"

    def test_identify_json_includes_errors(self, capsys):
        code, out, _ = run(capsys, "syndromes", "--L", "5", "--pbc",
                           "--identify", "01110", "--json")
        doc = json.loads(out)
        assert doc["result"]["kind"] == "identified"
        assert doc["result"]["errors"] == ["+IIYII"]
        assert doc["result"]["description"] == "Y on qubit 3"

    def test_table_summary_line(self, capsys):
        code, out, _ = run(capsys, "syndromes", "--L", "5", "--pbc")
        assert code == 0
        assert out.startswith("15 syndromes at support <= 1; pure")

    def test_assume_qubit_restricts_table(self, capsys):
        code, out, _ = run(capsys, "syndromes", "--L", "11", "--pbc",
                           "--assume-qubit", "6", "--identify", "00000100000")
        assert code == 0
        assert out.strip() == "Z on qubit 6"

    def test_bad_syndrome_string(self, capsys):
        code, _, err = run(capsys, "syndromes", "--L", "5", "--pbc",
                           "--identify", "01a10")
        assert code == 2


class TestLatticeAndGraph:
    def test_ring3_generators(self, capsys):
        code, out, _ = run(capsys, "lattice", "--L", "3", "--pbc", "--json")
        doc = json.loads(out)
        assert doc["result"] == {"n": 3,
                                 "generators": ["+XZZ", "+ZXZ", "+ZZX"]}

    def test_inline_lattice_json(self, capsys):
        spec = '{"D":2,"lengths":[3,3],"boundary":"pbc"}'
        code, out, _ = run(capsys, "lattice", "--lattice", spec)
        assert code == 0
        assert out.strip() == "9 qubits, 9 generators"

    def test_lattice_spec_from_file(self, tmp_path, capsys):
        spec = tmp_path / "lat.json"
        spec.write_text('{"D":1,"lengths":[6],"boundary":"obc"}')
        code, out, _ = run(capsys, "lattice", "--lattice", str(spec))
        assert code == 0
        assert out.strip() == "6 qubits, 6 generators"

    def test_graph_edge_list(self, tmp_path, capsys):
        path = tmp_path / "triangle.txt"
        path.write_text("0 1\n1 2\n2 0  # closing edge\n")
        code, out, _ = run(capsys, "lattice", "--graph", str(path), "--json")
        doc = json.loads(out)
        assert doc["result"]["n"] == 3
        assert doc["result"]["generators"] == ["+XZZ", "+ZXZ", "+ZZX"]

    def test_graph_file_errors(self, tmp_path, capsys):
        code, _, err = run(capsys, "lattice", "--graph",
                           str(tmp_path / "missing.txt"))
        assert code == 2
        bad = tmp_path / "bad.txt"
        bad.write_text("0 1 2\n")
        code, _, err = run(capsys, "lattice", "--graph", str(bad))
        assert code == 2
        assert "expected one 'u v' pair" in err

    def test_dim_mismatch_rejected(self, capsys):
        code, _, err = run(capsys, "lattice", "--D", "2", "--L", "5")
        assert code == 2
        assert "--D disagrees" in err


class TestMinweight:
    def test_brute_report(self, capsys):
        code, out, _ = run(capsys, "minweight", "--L", "10", "--pbc", "--json")
        doc = json.loads(out)
        assert doc["result"]["min_support"] == 3
        assert doc["result"]["method"] == "brute"
        assert doc["result"]["heuristic"] is False

    def test_windowed_flags_heuristic_scan(self, capsys):
        code, out, _ = run(capsys, "minweight", "--L", "5,5", "--pbc",
                           "--method", "windowed")
        assert code == 0
        assert out.startswith("min support 5 via windowed")
        assert "heuristic" in out

    def test_windowed_needs_lattice(self, capsys):
        code, _, err = run(capsys, "minweight", "--family", "ghz", "--n", "6",
                           "--method", "windowed")
        assert code == 2
        assert "needs a lattice" in err

    def test_q_cap_exit_code(self, capsys):
        code, _, err = run(capsys, "minweight", "--L", "6,6", "--pbc")
        assert code == 3
        assert "2^36" in err


class TestBenchAndFit:
    BASE = ["bench", "--n", "5", "--obc", "--t1", "100", "--t2", "30",
            "--readout", "0.02", "--delays", "0:200:40", "--shots", "400",
            "--seed", "3"]

    def test_csv_written_and_reread(self, tmp_path, capsys):
        out_file = tmp_path / "series.csv"
        code, out, _ = run(capsys, *self.BASE, "--out", str(out_file))
        assert code == 0
        assert "6 delay points" in out
        config, series = read_bench_csv(out_file.read_text())
        assert config["n"] == 5 and config["seed"] == 3
        assert config["probe"] == 3  # middle qubit, 1-based
        assert list(series["t"]) == [0.0, 40.0, 80.0, 120.0, 160.0, 200.0]
        assert series["sigma"] is not None

    def test_rerun_is_byte_identical(self, tmp_path, capsys):
        a, b = tmp_path / "a.csv", tmp_path / "b.csv"
        run(capsys, *self.BASE, "--out", str(a))
        run(capsys, *self.BASE, "--out", str(b))
        assert a.read_bytes() == b.read_bytes()

    def test_seed_changes_bytes(self, tmp_path, capsys):
        a, b = tmp_path / "a.csv", tmp_path / "b.csv"
        run(capsys, *self.BASE, "--out", str(a))
        run(capsys, *self.BASE[:-1], "4", "--out", str(b))
        assert a.read_bytes() != b.read_bytes()

    def test_stdout_csv_and_fit_roundtrip(self, tmp_path, capsys):
        code, out, _ = run(capsys, "bench", "--n", "5", "--obc",
                           "--t1", "100", "--t2", "30",
                           "--delays", "0:4:0.2", "--exact", "--twirl")
        assert code == 0
        assert out.splitlines()[0].startswith("# {")
        csv_path = tmp_path / "exact.csv"
        csv_path.write_text(out)

        code, fit_out, _ = run(capsys, "fit", str(csv_path), "--json")
        assert code == 0
        doc = json.loads(fit_out)
        _, series = read_bench_csv(out)
        expected = fit_error_rates(series)
        assert doc["result"]["t2_est"] == pytest.approx(expected.t2_est)
        # instantaneous dephasing scale is 1/(1/(2 T2) - 1/(4 T1)); the
        # 0..4 window fit flattens the curved series, so allow factor 2
        ref = 1.0 / (1 / 60 - 1 / 400)
        assert 1.0 <= expected.t2_est / ref <= 2.0

    def test_fit_summary_line(self, tmp_path, capsys):
        csv_path = tmp_path / "series.csv"
        run(capsys, *self.BASE, "--out", str(csv_path))
        code, out, _ = run(capsys, "fit", str(csv_path))
        assert code == 0
        assert out.startswith("T1_est=")

    def test_unphysical_noise_exit_2(self, capsys):
        code, _, err = run(capsys, "bench", "--n", "5", "--obc", "--t1", "30",
                           "--t2", "100", "--delays", "0,1")
        assert code == 2
        assert "exceeds 2*T1" in err

    def test_boundary_probe_needs_allow_edge(self, capsys):
        argv = ["bench", "--n", "5", "--obc", "--t1", "100", "--t2", "30",
                "--delays", "0,1", "--probe", "1"]
        code, _, err = run(capsys, *argv)
        assert code == 2
        assert "open boundary" in err
        code, out, _ = run(capsys, *argv, "--allow-edge")
        assert code == 0

    def test_exact_cap_exit_3(self, capsys):
        code, _, err = run(capsys, "bench", "--n", "9", "--obc", "--t1", "100",
                           "--t2", "30", "--delays", "0,1", "--exact")
        assert code == 3

    def test_twirl_without_exact_rejected(self, capsys):
        code, _, err = run(capsys, "bench", "--n", "5", "--obc", "--t1", "100",
                           "--t2", "30", "--delays", "0,1", "--twirl")
        assert code == 2

    def test_bad_delay_specs(self, capsys):
        for delays in ("1:0:5", "0:10:0", "0:10", "a,b"):
            code, _, _ = run(capsys, "bench", "--n", "5", "--obc", "--t1",
                             "100", "--t2", "30", "--delays", delays)
            assert code == 2, delays

    def test_fit_missing_file(self, capsys):
        code, _, err = run(capsys, "fit", "/definitely/not/there.csv")
        assert code == 2


class TestEncode:
    def test_region_verdict_pass(self, capsys):
        code, out, _ = run(capsys, "encode", "--L", "12", "--pbc",
                           "--A", "3,4,5,6,7,8,9", "--m", "2", "--json")
        assert code == 0
        doc = json.loads(out)
        assert doc["result"]["m_uniform"] is True
        assert doc["result"]["group_report"]["min_support"] == 3
        assert doc["result"]["coset_report"]["min_support"] == 3
        assert doc["config"]["A"] == [3, 4, 5, 6, 7, 8, 9]

    def test_tiny_region_fails(self, capsys):
        code, out, _ = run(capsys, "encode", "--L", "12", "--pbc",
                           "--A", "3", "--m", "2")
        assert code == 1
        assert out.startswith("fail")

    def test_minimal_search_line(self, capsys):
        code, out, _ = run(capsys, "encode", "--L", "12", "--pbc",
                           "--m", "2", "--minimal")
        assert code == 0
        assert out.strip() == ("minimal region: 5 sites (1,2,3,4,5), "
                               "5 candidates checked")

    def test_unnormalized_amplitudes_rejected(self, capsys):
        code, _, err = run(capsys, "encode", "--L", "12", "--pbc",
                           "--A", "3,4,5,6,7", "--m", "2",
                           "--alpha", "1", "--beta", "1")
        assert code == 2
        assert "expected 1" in err

    def test_site_list_validation(self, capsys):
        code, _, err = run(capsys, "encode", "--L", "12", "--pbc",
                           "--A", "0,1", "--m", "2")
        assert code == 2
        code, _, err = run(capsys, "encode", "--L", "12", "--pbc",
                           "--A", "3,3", "--m", "2")
        assert code == 2

    def test_requires_region_or_minimal(self, capsys):
        code, _, err = run(capsys, "encode", "--L", "12", "--pbc", "--m", "2")
        assert code == 2
        assert "--A" in err


class TestVerifySubcommand:
    def test_subset_passes_with_table(self, tmp_path, capsys):
        art = tmp_path / "artifacts.json"
        code, out, _ = run(capsys, "verify", "--criteria", "1,3",
                           "--artifacts", str(art))
        assert code == 0
        lines = out.strip().splitlines()
        assert lines[0] == "[PASS] criterion 1: 3-qubit ring worked example"
        assert lines[-1] == "2/2 criteria passed"
        doc = json.loads(art.read_text())
        assert [r["number"] for r in doc["result"]] == [1, 3]
        assert all(r["passed"] for r in doc["result"])

    def test_unknown_criterion(self, capsys):
        code, _, err = run(capsys, "verify", "--criteria", "99")
        assert code == 2

    def test_bad_criteria_string(self, capsys):
        code, _, err = run(capsys, "verify", "--criteria", "one")
        assert code == 2


class TestArgparseBehaviour:
    def test_unknown_subcommand(self, capsys):
        assert main(["nonsense"]) == 2

    def test_help_exits_zero(self, capsys):
        assert main(["--help"]) == 0

    def test_missing_required_flag(self, capsys):
        assert main(["uniformity", "--L", "5"]) == 2
