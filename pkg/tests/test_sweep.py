"""Sweep-engine tests: grids, error rows, serialization, temperature search."""

import json

import numpy as np
import pytest

from magnomech import (Axis, BracketError, ConfigError, SweepSpec,
                       default_config, default_params, find_critical_temperature,
                       resolve, run_point, run_sweep, spec_from_config,
                       write_csv, write_json)
from magnomech import params_from_config
from test_steadystate import (GOLDEN_E_CAVITY, GOLDEN_E_MAGNON, GOLDEN_E_PHONON,
                              GOLDEN_NU_PHONON)


def make_spec(with_validity=False, **extra):
    cfg = resolve(extra)
    cfg["output.validity"] = with_validity
    return spec_from_config(cfg)


class TestAxis:
    def test_linear_values(self):
        axis = Axis("squeeze_r", 0.0, 1.0, 5)
        assert np.allclose(axis.values(), [0.0, 0.25, 0.5, 0.75, 1.0])

    def test_log_values(self):
        axis = Axis("bath_temp_mk", 1.0, 100.0, 3, scale="log")
        assert np.allclose(axis.values(), [1.0, 10.0, 100.0])

    def test_single_point(self):
        assert Axis("squeeze_r", 0.3, 0.9, 1).values().tolist() == [0.3]

    def test_sited_path_allowed(self):
        axis = Axis("site2.coupling_G_hz", 1e5, 1e6, 4)
        assert axis.values().shape == (4,)

    def test_rejects_unknown_path(self):
        with pytest.raises(ConfigError):
            Axis("output.validity", 0.0, 1.0, 3)

    def test_rejects_bad_log_range(self):
        with pytest.raises(ConfigError):
            Axis("squeeze_r", 0.0, 1.0, 3, scale="log")

    def test_rejects_bad_points_and_scale(self):
        with pytest.raises(ConfigError):
            Axis("squeeze_r", 0.0, 1.0, 0)
        with pytest.raises(ConfigError):
            Axis("squeeze_r", 0.0, 1.0, 3, scale="geometric")


class TestSpecFromConfig:
    def test_no_axes(self):
        spec = spec_from_config(resolve())
        assert spec.axes == ()
        assert spec.pairs == ("cavity", "magnon", "phonon")
        assert spec.with_validity is True

    def test_one_axis(self):
        spec = make_spec(**{"axis1.path": "squeeze_r", "axis1.start": 0.0,
                            "axis1.stop": 1.2, "axis1.points": 61})
        assert len(spec.axes) == 1
        assert spec.axes[0].points == 61

    def test_missing_axis_field(self):
        with pytest.raises(ConfigError, match="missing"):
            make_spec(**{"axis1.path": "squeeze_r", "axis1.start": 0.0,
                         "axis1.points": 5})

    def test_axis_keys_without_path(self):
        with pytest.raises(ConfigError, match="path is required"):
            make_spec(**{"axis1.start": 0.0, "axis1.stop": 1.0, "axis1.points": 5})

    def test_axis2_requires_axis1(self):
        with pytest.raises(ConfigError, match="axis2"):
            make_spec(**{"axis2.path": "squeeze_r", "axis2.start": 0.0,
                         "axis2.stop": 1.0, "axis2.points": 5})

    def test_pair_selection(self):
        spec = make_spec(**{"output.pairs": "phonon"})
        assert spec.pairs == ("phonon",)

    def test_bad_pair_rejected(self):
        with pytest.raises(ConfigError, match="unknown output pair"):
            make_spec(**{"output.pairs": "phonon,optical"})

    def test_three_axes_rejected(self):
        base = resolve()
        with pytest.raises(ConfigError, match="two sweep axes"):
            SweepSpec(base=base, axes=(Axis("squeeze_r", 0, 1, 2),
                                       Axis("bath_temp_mk", 1, 2, 2),
                                       Axis("squeeze_phase_rad", 0, 1, 2)))


class TestRunPoint:
    def test_default_point(self, defaults):
        row = run_point(defaults, spec_from_config(resolve()))
        assert row.e_cavity == pytest.approx(GOLDEN_E_CAVITY, rel=1e-9)
        assert row.e_magnon == pytest.approx(GOLDEN_E_MAGNON, rel=1e-9)
        assert row.e_phonon == pytest.approx(GOLDEN_E_PHONON, rel=1e-9)
        assert row.nu_minus_phonon == pytest.approx(GOLDEN_NU_PHONON, rel=1e-9)
        assert row.stable is True
        assert row.validity_pass is False  # sideband margin fails at this point
        assert row.error_code == ""

    def test_pair_selection_leaves_gaps(self, defaults):
        row = run_point(defaults, make_spec(**{"output.pairs": "phonon"}))
        assert row.e_cavity is None and row.e_magnon is None
        assert row.e_phonon == pytest.approx(GOLDEN_E_PHONON, rel=1e-9)

    def test_validity_failure_keeps_entanglement(self, defaults):
        from dataclasses import replace
        p = replace(defaults, single_magnon_coupling=(0.0, 0.0))
        row = run_point(p, spec_from_config(resolve()))
        assert row.error_code == "search"
        assert row.e_phonon == pytest.approx(GOLDEN_E_PHONON, rel=1e-9)
        assert row.stable is True
        assert row.validity_pass is None


class TestRunSweep:
    def test_single_axis_rows(self):
        spec = make_spec(**{"axis1.path": "squeeze_r", "axis1.start": 0.0,
                            "axis1.stop": 0.8, "axis1.points": 5})
        rows = run_sweep(spec)
        assert [r.index for r in rows] == [(0,), (1,), (2,), (3,), (4,)]
        assert rows[0].values == (0.0,)
        assert rows[0].e_phonon == 0.0  # no squeezing, no entanglement
        assert rows[2].values == (0.4,)
        assert rows[2].e_phonon == pytest.approx(GOLDEN_E_PHONON, rel=1e-9)

    def test_two_axis_order_first_axis_outer(self):
        spec = make_spec(**{"axis1.path": "squeeze_r", "axis1.start": 0.2,
                            "axis1.stop": 0.4, "axis1.points": 2,
                            "axis2.path": "bath_temp_mk", "axis2.start": 10.0,
                            "axis2.stop": 30.0, "axis2.points": 3})
        rows = run_sweep(spec)
        assert [r.index for r in rows] == [(0, 0), (0, 1), (0, 2),
                                           (1, 0), (1, 1), (1, 2)]
        assert rows[1].values == (0.2, 20.0)
        assert rows[3].values == (0.4, 10.0)

    def test_failed_point_becomes_error_row(self):
        # decay rates must stay positive; the zero endpoint cannot build
        spec = make_spec(**{"axis1.path": "site1.cavity_decay_hz",
                            "axis1.start": 0.0, "axis1.stop": 3e6,
                            "axis1.points": 2})
        rows = run_sweep(spec)
        assert rows[0].error_code == "config"
        assert rows[0].e_phonon is None and rows[0].stable is None
        assert rows[1].error_code == ""
        assert rows[1].e_phonon is not None

    def test_thread_count_does_not_change_rows(self):
        spec = make_spec(**{"axis1.path": "squeeze_r", "axis1.start": 0.0,
                            "axis1.stop": 1.0, "axis1.points": 7})
        assert run_sweep(spec, threads=1) == run_sweep(spec, threads=4)

    def test_bad_thread_count(self):
        with pytest.raises(ConfigError):
            run_sweep(spec_from_config(resolve()), threads=0)


@pytest.fixture(scope="module")
def sweep():
    spec = make_spec(with_validity=True,
                     **{"axis1.path": "squeeze_r", "axis1.start": 0.0,
                        "axis1.stop": 0.4, "axis1.points": 3})
    return spec, run_sweep(spec)


class TestSerialization:
    def test_csv_layout(self, sweep, tmp_path):
        spec, rows = sweep
        path = tmp_path / "out.csv"
        write_csv(path, spec, rows)
        lines = path.read_text().splitlines()
        assert lines[0].startswith("# magnomech ")
        header = [ln for ln in lines if ln.startswith("#")]
        assert any("site2.phonon_freq_hz = 12000000" in ln for ln in header)
        keys = [ln.split("=")[0] for ln in header[1:]]
        assert keys == sorted(keys)  # deterministic header order
        cols = lines[len(header)].split(",")
        assert cols == ["i", "squeeze_r", "E_cavity", "E_magnon", "E_phonon",
                        "nu_minus_phonon", "stable", "validity_pass", "error_code"]
        assert len(lines) == len(header) + 1 + 3

    def test_csv_values_round_trip(self, sweep, tmp_path):
        spec, rows = sweep
        path = tmp_path / "out.csv"
        write_csv(path, spec, rows)
        data_lines = [ln for ln in path.read_text().splitlines()
                      if not ln.startswith("#")][1:]
        for line, row in zip(data_lines, rows):
            cells = line.split(",")
            assert int(cells[0]) == row.index[0]
            assert float(cells[1]) == pytest.approx(row.values[0], rel=1e-11)
            assert float(cells[4]) == pytest.approx(row.e_phonon, rel=1e-11)
            assert cells[6] == "true"   # stable
            assert cells[7] == "false"  # validity_pass at these points

    def test_csv_bytes_reproducible(self, sweep, tmp_path):
        spec, rows = sweep
        a, b = tmp_path / "a.csv", tmp_path / "b.csv"
        write_csv(a, spec, rows)
        write_csv(b, spec, rows)
        assert a.read_bytes() == b.read_bytes()

    def test_csv_identical_across_thread_counts(self, tmp_path):
        spec = make_spec(**{"axis1.path": "squeeze_r", "axis1.start": 0.0,
                            "axis1.stop": 1.0, "axis1.points": 6})
        a, b = tmp_path / "t1.csv", tmp_path / "t4.csv"
        write_csv(a, spec, run_sweep(spec, threads=1))
        write_csv(b, spec, run_sweep(spec, threads=4))
        assert a.read_bytes() == b.read_bytes()

    def test_empty_cells_for_failures(self, tmp_path):
        spec = make_spec(**{"axis1.path": "site1.cavity_decay_hz",
                            "axis1.start": 0.0, "axis1.stop": 3e6,
                            "axis1.points": 2})
        path = tmp_path / "out.csv"
        write_csv(path, spec, run_sweep(spec))
        first_data = [ln for ln in path.read_text().splitlines()
                      if not ln.startswith("#")][1]
        cells = first_data.split(",")
        assert cells[2:8] == ["", "", "", "", "", ""]
        assert cells[8] == "config"
        assert "nan" not in path.read_text().lower()

    def test_json_mirror(self, sweep, tmp_path):
        spec, rows = sweep
        path = tmp_path / "out.json"
        write_json(path, spec, rows)
        doc = json.loads(path.read_text())
        assert doc["meta"]["params"]["site1.cavity_decay_hz"] == 3e6
        assert len(doc["rows"]) == 3
        assert doc["rows"][2]["squeeze_r"] == pytest.approx(0.4)
        assert doc["rows"][2]["E_phonon"] == pytest.approx(GOLDEN_E_PHONON, rel=1e-9)
        assert doc["rows"][0]["E_phonon"] == 0.0

    def test_json_nulls_for_failures(self, tmp_path):
        spec = make_spec(**{"axis1.path": "site1.cavity_decay_hz",
                            "axis1.start": 0.0, "axis1.stop": 3e6,
                            "axis1.points": 2})
        path = tmp_path / "out.json"
        write_json(path, spec, run_sweep(spec))
        doc = json.loads(path.read_text())
        assert doc["rows"][0]["E_phonon"] is None
        assert doc["rows"][0]["error_code"] == "config"


class TestCriticalTemperature:
    def test_default_point(self, defaults):
        t_crit = find_critical_temperature(defaults, 0.01, 0.2)
        assert t_crit == pytest.approx(0.1182, abs=0.001)

    def test_bracket_must_straddle(self, defaults):
        with pytest.raises(BracketError, match="entangled at both ends"):
            find_critical_temperature(defaults, 0.01, 0.05)
        with pytest.raises(BracketError, match="no entanglement"):
            find_critical_temperature(defaults, 0.15, 0.2)

    def test_bad_bracket_order(self, defaults):
        with pytest.raises(ValueError):
            find_critical_temperature(defaults, 0.2, 0.1)

    def test_tolerance_controls_width(self, defaults):
        coarse = find_critical_temperature(defaults, 0.01, 0.2, tol=5e-3)
        fine = find_critical_temperature(defaults, 0.01, 0.2, tol=2e-4)
        assert abs(coarse - fine) < 5e-3
