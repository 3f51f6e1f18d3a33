import json
from pathlib import Path

import pytest

from permlin_figures import label_colors, read_regions_csv
from permlin_figures.common import FigureSpec, SchemaError
from permlin_figures.render_ellipsoid import main as ellipsoid_main
from permlin_figures.render_regions import main as regions_main

GOLDEN = Path(__file__).parent / "golden" / "label_colors.json"


class TestRenderRegions:
    @pytest.mark.parametrize("key", ["regions_linear", "regions_diag",
                                     "regions_identity"])
    def test_renders_without_error(self, artifacts, tmp_path, key):
        out = tmp_path / f"{key}.png"
        assert regions_main([str(artifacts[key]), "--out", str(out)]) == 0
        assert out.stat().st_size > 0

    def test_view_flags(self, artifacts, tmp_path):
        out = tmp_path / "view.png"
        rc = regions_main([str(artifacts["regions_linear"]), "--out", str(out),
                           "--elev", "35", "--azim", "120"])
        assert rc == 0 and out.exists()

    def test_input_untouched(self, artifacts, tmp_path):
        path = artifacts["regions_linear"]
        before = path.read_bytes()
        regions_main([str(path), "--out", str(tmp_path / "x.png")])
        assert path.read_bytes() == before

    def test_empty_csv_errors(self, tmp_path, capsys):
        empty = tmp_path / "empty.csv"
        empty.write_text("")
        assert regions_main([str(empty), "--out", str(tmp_path / "x.png")]) == 2
        assert "error:" in capsys.readouterr().err

    def test_wrong_schema_errors(self, artifacts, tmp_path):
        # an ellipsoid CSV is not a regions CSV
        assert regions_main([str(artifacts["ellipsoid"]),
                             "--out", str(tmp_path / "x.png")]) == 2


class TestRenderEllipsoid:
    def test_renders_without_error(self, artifacts, tmp_path):
        out = tmp_path / "ellipsoid.png"
        assert ellipsoid_main([str(artifacts["ellipsoid"]), "--out", str(out)]) == 0
        assert out.stat().st_size > 0

    def test_missing_set_column_errors(self, tmp_path, capsys):
        bad = tmp_path / "bad.csv"
        bad.write_text("x1,x2,x3\n0.0,0.0,0.0\n")
        assert ellipsoid_main([str(bad), "--out", str(tmp_path / "x.png")]) == 2
        assert "error:" in capsys.readouterr().err

    def test_regions_csv_rejected(self, artifacts, tmp_path):
        assert ellipsoid_main([str(artifacts["regions_linear"]),
                               "--out", str(tmp_path / "x.png")]) == 2


class TestColorDeterminism:
    def test_matches_golden_mapping(self, artifacts):
        _, labels = read_regions_csv(artifacts["regions_identity"])
        mapping = label_colors(labels)
        golden = json.loads(GOLDEN.read_text())
        assert mapping == golden

    def test_stable_across_runs_and_order(self):
        labels = ["2,3,1", "1,2,3", "3,2,1", "1,2,3"]
        first = label_colors(labels)
        assert label_colors(list(reversed(labels))) == first


class TestFigureSpec:
    def test_rejects_unknown_kind(self):
        with pytest.raises(SchemaError):
            FigureSpec(input_csv="x.csv", kind="pie", out="y.png")
