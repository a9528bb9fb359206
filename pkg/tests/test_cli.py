"""Tests for the command-line interface: reports, exit codes, determinism."""

import csv
import json

import numpy as np
import pytest

from pointflow.cli import (EXIT_CONFIG, EXIT_FAIL, EXIT_OUT_OF_REGIME,
                           EXIT_PASS, main)

BETA_A2 = 34.766840318785736


def run(tmp_path, *argv, name="report.json"):
    out = tmp_path / name
    code = main(list(argv) + ["--output", str(out)])
    report = json.loads(out.read_text()) if out.exists() else None
    return code, report


class TestLandauCommand:
    def test_point_evaluation(self, tmp_path):
        code, report = run(tmp_path, "landau", "--A", "2", "--point", "0,0,1")
        assert code == EXIT_PASS
        entry = report["payload"]["points"][0]
        assert entry["u"] == pytest.approx([0.0, 0.0, 4.0], abs=1e-13)
        assert entry["p"] == pytest.approx(4.0, rel=1e-13)
        assert report["payload"]["beta"] == pytest.approx(BETA_A2, rel=1e-12)

    def test_beta_spec_matches_shape_spec(self, tmp_path):
        code, report = run(tmp_path, "landau", "--beta", repr(BETA_A2),
                           "--point", "0,0,1")
        assert code == EXIT_PASS
        entry = report["payload"]["points"][0]
        assert entry["u"] == pytest.approx([0.0, 0.0, 4.0], rel=1e-6)

    def test_overspecified_parameters(self, tmp_path):
        code, _ = run(tmp_path, "landau", "--A", "2", "--beta", "5",
                      "--point", "0,0,1")
        assert code == EXIT_CONFIG

    def test_missing_points(self, tmp_path):
        code, _ = run(tmp_path, "landau", "--A", "2")
        assert code == EXIT_CONFIG

    def test_csv_output_format(self, tmp_path):
        csv_path = tmp_path / "points.csv"
        code, _ = run(tmp_path, "landau", "--A", "2", "--point", "0,0,1",
                      "--point", "0,0,-1", "--csv", str(csv_path))
        assert code == EXIT_PASS
        rows = list(csv.reader(csv_path.open()))
        assert rows[0] == ["x", "y", "z", "ux", "uy", "uz", "p"]
        assert len(rows) == 3
        assert float(rows[1][5]) == pytest.approx(4.0)

    def test_points_file_input(self, tmp_path):
        pts = tmp_path / "pts.csv"
        pts.write_text("x,y,z\n0,0,1\n0,0,2\n")
        code, report = run(tmp_path, "landau", "--A", "2",
                           "--points-file", str(pts))
        assert code == EXIT_PASS
        assert len(report["payload"]["points"]) == 2

    def test_domain_error_maps_to_config(self, tmp_path):
        code, _ = run(tmp_path, "landau", "--A", "0.5", "--point", "0,0,1")
        assert code == EXIT_CONFIG


class TestFluxCommand:
    def test_landau_three_radii(self, tmp_path):
        code, report = run(tmp_path, "flux", "--field", "landau:A=2",
                           "--radii", "0.5,1,1.5")
        assert code == EXIT_PASS
        payload = report["payload"]
        assert payload["max_pairwise_relative_deviation"] < 1e-8
        assert payload["max_relative_force_error"] < 1e-6
        for b in payload["force_per_radius"]:
            assert b[2] == pytest.approx(BETA_A2, rel=1e-6)
        assert report["passed"] is True

    def test_zero_field(self, tmp_path):
        code, report = run(tmp_path, "flux", "--field", "landau:beta=0",
                           "--radii", "1")
        assert code == EXIT_PASS
        assert report["payload"]["force_per_radius"][0] == [0.0, 0.0, 0.0]

    def test_negative_radius(self, tmp_path):
        code, _ = run(tmp_path, "flux", "--field", "landau:A=2",
                      "--radii", "-1")
        assert code == EXIT_CONFIG

    def test_unachievable_tolerance_fails(self, tmp_path):
        code, report = run(tmp_path, "flux", "--field", "landau:A=2",
                           "--radii", "0.7,1.3", "--tol", "1e-30")
        assert code == EXIT_FAIL
        assert report["passed"] is False

    def test_grid_field_round_trip(self, tmp_path):
        # sample a Landau field on a grid, reload it, extract the force
        from pointflow import LandauParams, landau_eval

        params = LandauParams.from_shape(2.0)
        axis_pts = np.linspace(-1.4, 1.4, 28)   # even count keeps 0 off-grid
        grid_path = tmp_path / "field.csv"
        with grid_path.open("w", newline="") as fh:
            writer = csv.writer(fh)
            writer.writerow(["x", "y", "z", "ux", "uy", "uz", "p"])
            for x in axis_pts:
                for y in axis_pts:
                    for z in axis_pts:
                        st = landau_eval(params, [x, y, z])
                        writer.writerow([x, y, z, *st.u, st.p])
        code, report = run(tmp_path, "flux", "--field", f"grid:{grid_path}",
                           "--radii", "1.0", "--n-theta", "16", "--tol", "1")
        assert code == EXIT_PASS
        b = report["payload"]["force_per_radius"][0]
        # trilinear interpolation of a 1/r field is crude; just check the
        # direction and the rough magnitude survive the round trip
        assert b[2] == pytest.approx(BETA_A2, rel=0.2)
        assert abs(b[0]) < 0.1 * BETA_A2 and abs(b[1]) < 0.1 * BETA_A2


class TestVerifyCommand:
    def test_weak(self, tmp_path):
        code, report = run(tmp_path, "verify", "weak", "--field", "landau:A=2",
                           "--center", "0,0,0", "--a", "0.5", "--b", "1")
        assert code == EXIT_PASS
        assert report["payload"]["relative_error"] < 0.02
        assert report["payload"]["extracted_force"][2] == pytest.approx(
            BETA_A2, rel=0.02)

    def test_weak_support_avoiding_origin(self, tmp_path):
        code, report = run(tmp_path, "verify", "weak", "--field", "landau:A=2",
                           "--center", "0,0,1.2", "--a", "0.075", "--b", "0.15",
                           "--tol", "1e-6")
        assert code == EXIT_PASS
        assert report["payload"]["origin_in_plateau"] is False

    def test_ns(self, tmp_path):
        code, report = run(tmp_path, "verify", "ns", "--field", "landau:A=2",
                           "--samples", "100", "--seed", "7")
        assert code == EXIT_PASS
        assert report["payload"]["max_weighted_residual"] < 1e-4

    def test_selfsim(self, tmp_path):
        code, report = run(tmp_path, "verify", "selfsim", "--field",
                           "landau:A=2", "--lambda", "0.5")
        assert code == EXIT_PASS
        assert report["payload"]["max_deviation"] <= 1e-12

    def test_ns_requires_landau_field(self, tmp_path):
        code, _ = run(tmp_path, "verify", "ns", "--field", "r^-1")
        assert code == EXIT_CONFIG


class TestPicardCommand:
    def test_small_amplitude_passes(self, tmp_path):
        csv_path = tmp_path / "trace.csv"
        code, report = run(tmp_path, "picard", "--amp", "1e-3", "--grid", "32",
                           "--r", "2", "--csv", str(csv_path))
        assert code == EXIT_PASS
        payload = report["payload"]
        assert payload["converged"] is True
        assert payload["max_ratio_after_first"] < 0.5
        rows = list(csv.reader(csv_path.open()))
        assert rows[0] == ["iter", "increment", "ratio"]
        assert rows[1][2] == ""            # no ratio for the first increment
        assert len(rows) == payload["iterations"] + 1

    def test_zero_amplitude_converges_immediately(self, tmp_path):
        code, report = run(tmp_path, "picard", "--amp", "0", "--grid", "16")
        assert code == EXIT_PASS
        assert report["payload"]["iterations"] == 1

    def test_large_amplitude_out_of_regime(self, tmp_path):
        code, report = run(tmp_path, "picard", "--amp", "50", "--grid", "16",
                           "--iters", "60")
        assert code == EXIT_OUT_OF_REGIME
        assert report["payload"]["diverged"] is True
        assert report["passed"] is False

    def test_grid_validation(self, tmp_path):
        code, _ = run(tmp_path, "picard", "--amp", "1e-3", "--grid", "20")
        assert code == EXIT_CONFIG
        code, _ = run(tmp_path, "picard", "--amp", "1e-3", "--grid", "8")
        assert code == EXIT_CONFIG


class TestNormsCommand:
    def test_weak_l3_of_inverse_radius(self, tmp_path):
        code, report = run(tmp_path, "norms", "--field", "r^-1", "--weak-l3",
                           "--domain", "ball:2")
        assert code == EXIT_PASS
        exact = (4 * np.pi / 3.0)**(1.0 / 3.0)
        assert report["payload"]["value"] == pytest.approx(exact, rel=0.02)
        assert report["passed"] is True

    def test_beta_sweep_monotone(self, tmp_path):
        code, report = run(tmp_path, "norms", "--sweep-beta", "1:100:50",
                           "--sup-sphere")
        assert code == EXIT_PASS
        sups = report["payload"]["sup_speed_on_unit_sphere"]
        assert len(sups) == 50
        assert all(b >= a for a, b in zip(sups, sups[1:]))

    def test_decay_zero_for_matching_reference(self, tmp_path):
        code, report = run(tmp_path, "norms", "--field", "landau:A=2",
                           "--decay", "--ref", "A=2", "--q", "2")
        assert code == EXIT_PASS
        assert report["payload"]["value"] == 0.0
        assert report["passed"] is True

    def test_norm_without_mode_is_config_error(self, tmp_path):
        code, _ = run(tmp_path, "norms", "--field", "r^-1")
        assert code == EXIT_CONFIG


class TestReportContract:
    def test_payload_determinism(self, tmp_path):
        _, first = run(tmp_path, "verify", "ns", "--field", "landau:A=2",
                       "--samples", "50", "--seed", "11", name="a.json")
        _, second = run(tmp_path, "verify", "ns", "--field", "landau:A=2",
                        "--samples", "50", "--seed", "11", name="b.json")
        dump = lambda r: json.dumps(r["payload"], sort_keys=True)
        assert dump(first) == dump(second)
        assert first["passed"] == second["passed"]
        config = lambda r: {k: v for k, v in r["config"].items()
                            if k != "output"}
        assert config(first) == config(second)

    def test_seed_recorded_and_schema_versioned(self, tmp_path):
        _, report = run(tmp_path, "flux", "--field", "landau:A=2",
                        "--radii", "1")
        assert report["schema_version"] == 1
        assert "seed" in report["config"]
        assert report["config"]["subcommand"] == "flux"

    def test_pass_flag_recomputable_from_payload(self, tmp_path):
        _, report = run(tmp_path, "flux", "--field", "landau:A=2",
                        "--radii", "0.5,1.5")
        payload = report["payload"]
        recomputed = (payload["max_pairwise_relative_deviation"]
                      <= payload["tolerance"])
        assert recomputed == report["passed"]

    def test_json_round_trip_lossless(self, tmp_path):
        _, report = run(tmp_path, "verify", "selfsim", "--field", "landau:A=2",
                        "--lambda", "0.5")
        text = json.dumps(report, sort_keys=True)
        assert json.dumps(json.loads(text), sort_keys=True) == text

    def test_stdout_emission(self, capsys):
        code = main(["flux", "--field", "landau:beta=0", "--radii", "1"])
        assert code == EXIT_PASS
        report = json.loads(capsys.readouterr().out)
        assert report["payload"]["force_per_radius"] == [[0.0, 0.0, 0.0]]

    def test_unknown_subcommand_is_config_error(self):
        assert main(["frobnicate"]) == EXIT_CONFIG


class TestFailureModes:
    def test_nonpositive_tolerance_is_config_error(self, tmp_path):
        code, _ = run(tmp_path, "flux", "--field", "landau:A=2",
                      "--radii", "1", "--tol", "-1")
        assert code == EXIT_CONFIG

    def test_numerical_failure_exit_code(self, tmp_path):
        # grid field evaluated outside its own bounding box
        grid_path = tmp_path / "tiny.csv"
        with grid_path.open("w") as fh:
            fh.write("x,y,z,ux,uy,uz,p\n")
            for x in (-0.2, 0.2):
                for y in (-0.2, 0.2):
                    for z in (-0.2, 0.2):
                        fh.write(f"{x},{y},{z},1,0,0,0\n")
        code, _ = run(tmp_path, "flux", "--field", f"grid:{grid_path}",
                      "--radii", "1.5")
        assert code == 3


class TestAdditionalSurfaces:
    def test_landau_axis_flag(self, tmp_path):
        code, report = run(tmp_path, "landau", "--A", "2", "--axis", "1,0,0",
                           "--point", "1,0,0")
        assert code == EXIT_PASS
        entry = report["payload"]["points"][0]
        assert entry["u"] == pytest.approx([4.0, 0.0, 0.0], abs=1e-13)

    def test_lorentz_flag_with_expect(self, tmp_path):
        exact = (4 * np.pi / 3.0)**(1.0 / 3.0)
        code, report = run(tmp_path, "norms", "--field", "r^-1", "--lorentz",
                           "3,inf", "--domain", "ball:2",
                           "--expect", repr(exact), "--tol", "0.02")
        assert code == EXIT_PASS
        assert report["payload"]["norm"] == "weak-L3"

    def test_weak_with_origin_in_transition_region(self, tmp_path):
        # phi(0) is neither the plateau value nor zero; the pairing must
        # still match b . phi(0), within a looser resolution-limited bound
        code, report = run(tmp_path, "verify", "weak", "--field",
                           "landau:A=2", "--center", "0,0,0.3", "--a", "0.1",
                           "--b", "0.6", "--n-r", "64", "--n-theta", "64",
                           "--tol", "0.05")
        assert code == EXIT_PASS
        expected = report["payload"]["expected_force"]
        assert expected[2] not in (0.0, pytest.approx(BETA_A2, rel=1e-6))
        assert report["payload"]["relative_error"] < 0.05
