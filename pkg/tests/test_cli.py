import json

import numpy as np
import pytest

from infodyn.cli import load_model, main
from infodyn.models import ArModel, MaModel


@pytest.fixture
def ar1_file(tmp_path):
    path = tmp_path / "ar1.json"
    path.write_text(json.dumps({"type": "ar", "coeffs": [0.5], "sigma2": 0.75}))
    return path


@pytest.fixture
def ma1_file(tmp_path):
    path = tmp_path / "ma1.json"
    path.write_text(json.dumps({"type": "ma", "coeffs": [1.0, 0.5], "sigma2": 1.0}))
    return path


def read_meta(path):
    meta = {}
    for line in path.read_text().splitlines():
        if not line.startswith("# "):
            break
        key, _, value = line[2:].partition(": ")
        meta[key] = value
    return meta


def read_header(path):
    for line in path.read_text().splitlines():
        if not line.startswith("#"):
            return line.split(",")
    raise AssertionError("no header row")


class TestLoadModel:
    def test_ar(self, ar1_file):
        m = load_model(ar1_file)
        assert isinstance(m, ArModel)
        assert m.psi.tolist() == [0.5]

    def test_ma(self, ma1_file):
        m = load_model(ma1_file)
        assert isinstance(m, MaModel)
        assert m.b.tolist() == [1.0, 0.5]

    def test_bad_type(self, tmp_path):
        path = tmp_path / "bad.json"
        path.write_text(json.dumps({"type": "arma", "coeffs": [0.5], "sigma2": 1.0}))
        with pytest.raises(ValueError, match="'ar' or 'ma'"):
            load_model(path)


class TestMeasuresCommand:
    def test_json_output(self, ar1_file, tmp_path, capsys):
        out = tmp_path / "m.json"
        rc = main(
            ["measures", "--model", str(ar1_file), "--grid-n", "2048",
             "--ell-max", "64", "--out", str(out)]
        )
        assert rc == 0
        doc = json.loads(out.read_text())
        assert doc["command"] == "measures"
        assert doc["units"] == "nats"
        for key in ("h", "rho", "b", "r"):
            assert key in doc
            assert f"{key}_spectral_gap" in doc
            assert f"{key}_oracle_gap" in doc
        assert doc["b"] == pytest.approx(0.5 * np.log(1.25), rel=1e-12)
        assert doc["b_spectral_gap"] <= 1e-8

    def test_stdout_default(self, ar1_file, capsys):
        main(["measures", "--model", str(ar1_file), "--grid-n", "2048", "--ell-max", "32"])
        doc = json.loads(capsys.readouterr().out)
        assert doc["model"] == str(ar1_file)


class TestSweepAr1Command:
    def test_csv_shape_and_values(self, tmp_path):
        out = tmp_path / "sweep.csv"
        main(["sweep-ar1", "--count", "21", "--units", "bits", "--out", str(out)])
        meta = read_meta(out)
        assert meta["command"] == "sweep-ar1"
        assert meta["units"] == "bits"
        assert meta["asymptote_b_bits"] == "0.5"
        assert read_header(out) == ["psi1", "rho", "b"]
        rows = [
            line.split(",")
            for line in out.read_text().splitlines()
            if line and not line.startswith("#") and "psi1" not in line
        ]
        assert len(rows) == 21
        mid = rows[10]
        assert float(mid[0]) == 0.0 and float(mid[1]) == 0.0 and float(mid[2]) == 0.0

    def test_byte_identical_rerun(self, tmp_path):
        a = tmp_path / "a.csv"
        b = tmp_path / "b.csv"
        main(["sweep-ar1", "--count", "51", "--out", str(a)])
        main(["sweep-ar1", "--count", "51", "--out", str(b)])
        assert a.read_bytes() == b.read_bytes()


class TestSweepAr2Command:
    def test_writes_cloud_and_envelope(self, tmp_path):
        out = tmp_path / "ar2.csv"
        main(["sweep-ar2", "--grid-density", "60", "--units", "bits", "--out", str(out)])
        env = tmp_path / "ar2_region.csv"
        assert out.exists() and env.exists()
        assert read_header(out) == ["psi1", "psi2", "rho", "b"]
        assert read_header(env) == ["rho_lo", "rho_hi", "b_min", "b_max", "count"]
        meta = read_meta(out)
        assert meta["table"] == "cloud"
        assert float(meta["asymptote_b_upper_bits"]) == pytest.approx(1.2924812503605781)
        assert read_meta(env)["table"] == "envelope"


class TestScatterPolesCommand:
    def test_probe_and_determinism(self, tmp_path):
        a = tmp_path / "a.csv"
        b = tmp_path / "b.csv"
        args = ["scatter-poles", "--order", "8", "--count", "40", "--seed", "9",
                "--units", "bits"]
        main(args + ["--out", str(a)])
        main(args + ["--out", str(b)])
        assert a.read_bytes() == b.read_bytes()
        assert read_header(a) == ["rho", "b", "probe"]
        rows = [
            line.split(",")
            for line in a.read_text().splitlines()
            if line and not line.startswith("#") and "rho" not in line
        ]
        assert len(rows) == 41
        probe = rows[-1]
        assert probe[2] == "1"
        assert float(probe[1]) == pytest.approx(6.825862216554032, abs=1e-3)
        meta = read_meta(a)
        assert float(meta["asymptote_b_bits"]) == pytest.approx(6.825862216554032)

    def test_empty_scatter(self, tmp_path):
        out = tmp_path / "e.csv"
        main(["scatter-poles", "--count", "0", "--no-probe", "--out", str(out)])
        rows = [
            line
            for line in out.read_text().splitlines()
            if line and not line.startswith("#")
        ]
        assert rows == ["rho,b,probe"]


class TestOracleCommand:
    def test_three_reports(self, ma1_file, tmp_path):
        out = tmp_path / "conv.csv"
        main(["oracle", "--model", str(ma1_file), "--ell-max", "64",
              "--grid-n", "2048", "--out", str(out)])
        for name in ("next", "center", "szego"):
            path = tmp_path / f"conv_{name}.csv"
            assert path.exists()
            assert read_header(path) == ["ell", "value", "target", "gap"]
            meta = read_meta(path)
            assert meta["statistic"] == name
            rows = [
                line.split(",")
                for line in path.read_text().splitlines()
                if line and not line.startswith("#") and "ell" not in line
            ]
            ells = [int(r[0]) for r in rows]
            assert ells == sorted(ells) and ells[-1] == 64
            for r in rows:
                assert float(r[3]) == pytest.approx(
                    abs(float(r[1]) - float(r[2])), rel=1e-12, abs=1e-300
                )


class TestDualityCommand:
    def test_gaps(self, ar1_file, capsys):
        main(["duality", "--model", str(ar1_file), "--grid-n", "2048"])
        doc = json.loads(capsys.readouterr().out)
        assert doc["pir_duality_gap"] <= 1e-10
        assert doc["mir_duality_gap"] <= 1e-10
        assert doc["pir"] == pytest.approx(0.5 * np.log(1.25), abs=1e-8)
