import json
import subprocess
import sys

import pytest

PRIMARY_CLI = [sys.executable, "-m", "permlin.cli"]


def run_primary(args):
    proc = subprocess.run(PRIMARY_CLI + [str(a) for a in args],
                          capture_output=True, text=True)
    assert proc.returncode == 0, proc.stderr
    return proc.stdout


@pytest.fixture(scope="session")
def artifacts(tmp_path_factory):
    """CSV artifacts produced through the primary CLI: region clouds for
    the linear-regime example matrix and for diag(1,1,2), plus ellipsoid
    surface/projection data."""
    root = tmp_path_factory.mktemp("cli_artifacts")
    params = root / "params.json"
    params.write_text(json.dumps(
        {"n": 3, "gamma": 0.5, "a": 0.5, "v": 0.2, "q": "helmert"}))
    linear_k = root / "linear_k.json"
    run_primary(["construct", params, "--out", linear_k])
    diag_k = root / "diag112.json"
    diag_k.write_text(json.dumps(
        {"n": 3, "entries": [[1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 2.0]]}))
    identity_k = root / "eye3.json"
    identity_k.write_text(json.dumps(
        {"n": 3, "entries": [[1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]]}))

    paths = {
        "regions_linear": root / "regions_linear.csv",
        "regions_diag": root / "regions_diag.csv",
        "regions_identity": root / "regions_identity.csv",
        "ellipsoid": root / "ellipsoid.csv",
    }
    run_primary(["regions", linear_k, "--count", "400", "--seed", "1",
                 "--out", paths["regions_linear"]])
    run_primary(["regions", diag_k, "--count", "400", "--seed", "1",
                 "--out", paths["regions_diag"]])
    run_primary(["regions", identity_k, "--count", "400", "--seed", "1",
                 "--out", paths["regions_identity"]])
    run_primary(["ellipsoid", params, "--count", "600", "--seed", "2",
                 "--out", paths["ellipsoid"]])
    return paths
