import os
import subprocess

import pytest

import odo

ODO_CLI = os.environ.get("ODO_CLI")


def test_hierarchy_p2():
    p, h = odo.almost_commuting(3, 2)
    assert p == {0: "2/3*u2", 2: "1"}
    assert h == ["2/3*u2*u2' + 2/3*u2''' - u3''", "u2'' - 2*u3'"]


def test_centralizer_job_hyperbolic():
    code, report = odo.run("centralizer", field="hyperbolic", op="D^3 + 6/eta^2*D", level=4)
    assert code == 0
    result = report["canonical"]["result"]
    assert result["orders"] == [4, 5]
    assert result["rank"] == 1
    assert all(g["commutes"] for g in result["generators"])


def test_level_ideal_job():
    code, report = odo.run(
        "level-ideal", field="hyperbolic", ansatz="D^3 + (a2/eta^2)*D + (a3*nu/eta^3)", m=4, groebner=True
    )
    assert code == 0
    result = report["canonical"]["result"]
    assert result["nonzero_minors"] == 39
    assert len(result["groebner"]["basis"]) == 4


def test_relations_job():
    code, report = odo.run("relations", op="D^5 - 175/x^2*D^3 + 525/x^3*D^2 + 3955/x^4*D - 8960/x^5", level=6)
    assert code == 0
    assert report["canonical"]["result"]["relations"] == ["G2* = G1*^2", "G3* = G1*^3", "G4* = G1*^4"]


def test_error_codes():
    assert odo.run("centralizer", op="D^2 + x*D", level=1)[0] == 3
    assert odo.run("centralizer", op="D^3 + (", level=1)[0] == 2
    with pytest.raises(odo.ParseError):
        odo.run_json("{not json")


def test_deterministic_canonical_section():
    a = odo.run("classify", field="hyperbolic", ansatz="D^3 + (a2/eta^2)*D + (a3*nu/eta^3)", m=4, point=["6", "0"])
    b = odo.run("classify", field="hyperbolic", ansatz="D^3 + (a2/eta^2)*D + (a3*nu/eta^3)", m=4, point=["6", "0"])
    assert a[1]["canonical"] == b[1]["canonical"]
    assert a[1]["canonical"]["result"]["verdict"] == "exactly"


@pytest.mark.skipif(not ODO_CLI, reason="command line tool path not provided")
def test_cli_flags_override_config(tmp_path):
    config = tmp_path / "job.json"
    config.write_text('{"field": "rational", "op": "D^3 - 6/x^2*D + 12/x^3", "bound": 3}')
    low = subprocess.run([ODO_CLI, "level", "--config", str(config)], capture_output=True, text=True)
    high = subprocess.run([ODO_CLI, "level", "--config", str(config), "--bound", "10"], capture_output=True, text=True)
    assert low.returncode == 0 and high.returncode == 0
    assert '"level": null' in low.stdout
    assert '"level": 4' in high.stdout


@pytest.mark.skipif(not ODO_CLI, reason="command line tool path not provided")
def test_cli_cache_round_trip(tmp_path):
    cache = str(tmp_path / "cache")
    first = subprocess.run([ODO_CLI, "gd", "--n", "3", "--m", "4", "--cache-dir", cache], capture_output=True, text=True)
    second = subprocess.run([ODO_CLI, "gd", "--n", "3", "--m", "4", "--cache-dir", cache], capture_output=True, text=True)
    assert first.returncode == 0
    assert odo_canonical(first.stdout) == odo_canonical(second.stdout)
    assert '"disk_hits": 1' in second.stdout
    listing = subprocess.run([ODO_CLI, "cache", "--dir", cache], capture_output=True, text=True)
    assert listing.stdout.split()[0] != "0"
    cleared = subprocess.run([ODO_CLI, "cache", "--dir", cache, "--clear"], capture_output=True, text=True)
    assert cleared.returncode == 0 and cleared.stdout.startswith("removed")


def odo_canonical(text):
    import json

    return json.loads(text)["canonical"]
