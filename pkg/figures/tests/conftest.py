import subprocess
import sys

import pytest


def run_cli(*args):
    proc = subprocess.run(
        [sys.executable, "-m", "infodyn.cli", *args],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0, proc.stderr
    return proc


@pytest.fixture(scope="session")
def csv_dir(tmp_path_factory):
    """Fresh CSVs produced by the primary CLI, shared across tests."""
    d = tmp_path_factory.mktemp("csv")
    run_cli("sweep-ar1", "--count", "201", "--units", "bits",
            "--out", str(d / "ar1.csv"))
    run_cli("sweep-ar1", "--count", "201", "--units", "nats",
            "--out", str(d / "ar1_nats.csv"))
    run_cli("sweep-ar2", "--grid-density", "120", "--units", "bits",
            "--out", str(d / "ar2.csv"))
    run_cli("scatter-poles", "--order", "8", "--count", "300", "--seed", "7",
            "--units", "bits", "--out", str(d / "poles.csv"))
    return d
