import numpy as np
import pytest

from fibresense import CurveFormatError, NoiseModel, ResponseCurve, angle_grid, simulate_response
from fibresense.curve_io import (read_curve_csv, write_curve_csv, write_points_csv,
                                 write_sweep_csv)
from fibresense.design import ReflectorDesign


class TestCurveRoundTrip:
    def test_simulated_curve_round_trips_exactly(self, tmp_path, scaled_fiber,
                                                 linear_profile, default_mount):
        curve = simulate_response(scaled_fiber, linear_profile, default_mount,
                                  angle_grid(0, 120), NoiseModel(seed=4))
        path = tmp_path / "curve.csv"
        write_curve_csv(curve, path)
        assert read_curve_csv(path) == curve

    def test_metadata_preserved(self, tmp_path):
        curve = ResponseCurve(((0.0, 1.0), (1.0, 2.0)), {"label": "bench run 3",
                                                         "source": "measured"})
        path = tmp_path / "c.csv"
        write_curve_csv(curve, path)
        back = read_curve_csv(path)
        assert back.metadata == curve.metadata

    def test_awkward_floats_survive(self, tmp_path):
        curve = ResponseCurve(((0.1, 1.0 / 3.0), (0.2, np.nextafter(2.0, 3.0))))
        path = tmp_path / "c.csv"
        write_curve_csv(curve, path)
        assert read_curve_csv(path).samples == curve.samples


class TestCurveParsing:
    def write(self, tmp_path, text):
        path = tmp_path / "in.csv"
        path.write_text(text, encoding="utf-8")
        return path

    def test_header_only_is_an_error(self, tmp_path):
        path = self.write(tmp_path, "angle_deg,voltage_v\n")
        with pytest.raises(CurveFormatError, match="no samples"):
            read_curve_csv(path)

    def test_malformed_row_reports_line_number(self, tmp_path):
        path = self.write(tmp_path, "angle_deg,voltage_v\n0,1.0\n60,abc\n")
        with pytest.raises(CurveFormatError, match="row 3"):
            read_curve_csv(path)

    def test_wrong_field_count_reports_line_number(self, tmp_path):
        path = self.write(tmp_path, "angle_deg,voltage_v\n0,1.0,9\n")
        with pytest.raises(CurveFormatError, match="row 2"):
            read_curve_csv(path)

    def test_non_monotone_angles_rejected(self, tmp_path):
        path = self.write(tmp_path, "angle_deg,voltage_v\n0,1.0\n10,1.1\n10,1.2\n")
        with pytest.raises(CurveFormatError, match="strictly increasing"):
            read_curve_csv(path)

    def test_wrong_header_rejected(self, tmp_path):
        path = self.write(tmp_path, "deg,volts\n0,1.0\n")
        with pytest.raises(CurveFormatError, match="header"):
            read_curve_csv(path)

    def test_measured_log_with_comments(self, tmp_path):
        path = self.write(tmp_path,
                          "# rig: bench A\n# date: winter\nangle_deg,voltage_v\n"
                          "0,0.5\n10,0.9\n")
        curve = read_curve_csv(path)
        assert curve.metadata == {"rig": "bench A", "date": "winter"}
        assert len(curve) == 2


class TestTableWriters:
    def test_points_csv(self, tmp_path):
        path = tmp_path / "pts.csv"
        write_points_csv([(1.0, 2.0), (3.5, -0.25)], path)
        text = path.read_text(encoding="utf-8")
        assert text.splitlines()[0] == "x_mm,y_mm"
        assert text.splitlines()[1] == "1,2"

    def test_sweep_csv_header(self, tmp_path):
        path = tmp_path / "sweep.csv"
        write_sweep_csv([(ReflectorDesign(1.0, 5.0, 120.0, 0.95), 4.25)], path)
        lines = path.read_text(encoding="utf-8").splitlines()
        assert lines[0] == "t_min,t_max,alpha_deg,reflectance,score"
        assert lines[1] == "1,5,120,0.95,4.25"
