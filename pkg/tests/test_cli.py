import json


from hellybox.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_bounds(capsys):
    code, out, _ = run(capsys, "bounds", "mixedInteger", "a=1", "b=2")
    assert code == 0 and "<= 8" in out
    code, out, _ = run(capsys, "--json", "bounds", "boxPeriodic", "d=2", "rho=3")
    assert json.loads(out)["value"] == "144/1"
    code, out, _ = run(capsys, "bounds", "P218", "d=2", "m=1", "t=0", "--json")
    assert json.loads(out) == {"theorem": "P218", "params": {"d": 2, "m": 1, "t": 0}, "helly_number": 8, "loss": "2/1"}
    code, out, _ = run(capsys, "bounds", "thinBoxLosses", "d=3")
    assert "stated loss 9, derived loss 27" in out


def test_bounds_errors(capsys):
    code, _, err = run(capsys, "bounds", "doignon", "d=0")
    assert code == 2 and "error" in err
    code, _, _ = run(capsys, "bounds", "doignon", "d")
    assert code == 2


def test_unknown_command(capsys):
    assert run(capsys, "frobnicate")[0] == 2
    assert run(capsys)[0] == 2


def test_box_search(capsys):
    code, out, _ = run(capsys, "box-search", "figure1", "--min-points", "4")
    assert code == 1 and out.startswith("3 lattice points")
    code, out, _ = run(capsys, "box-search", "hypercube:2:3", "--thickness", "3", "--json")
    assert code == 0 and json.loads(out)["count"] == 16


def test_check_family(capsys):
    code, out, _ = run(capsys, "check-family", "figure1", "--subfamily-size", "5", "--min-points", "4")
    assert code == 0 and "all 6 subfamilies" in out and "full family: 3 lattice points" in out
    code, out, _ = run(capsys, "check-family", "cross:2", "--theorem", "thm1.4", "--param", "n=4", "--json")
    assert code == 0 and json.loads(out)["outcome"] == "PREMISE_UNMET"
    code, _, err = run(capsys, "check-family", "figure1")
    assert code == 2 and "subfamily-size" in err
    code, _, err = run(capsys, "check-family", "nosuchfamily", "--subfamily-size", "2")
    assert code == 2


def test_check_family_from_file(capsys, tmp_path):
    path = tmp_path / "fam.json"
    code, out, _ = run(capsys, "random-family", "--seed", "3", "--output", str(path))
    assert code == 0 and path.exists()
    code, out, _ = run(capsys, "check-family", str(path), "--theorem", "thm1.3", "--param", "n=1")
    assert code == 0


def test_scan_ratios_and_certificate(capsys, tmp_path):
    out_path = tmp_path / "cubes.json"
    code, out, _ = run(capsys, "scan-ratios", "--generator", "polynomial", "--coefficients", "0,0,0,1",
                       "--lo", "0", "--hi", "125000", "--output", str(out_path))
    assert code == 0 and "k=48" in out and "hull size 52; emptiness: valid" in out
    data = json.loads(out_path.read_text())
    cert_path = tmp_path / "poly.json"
    cert_path.write_text(json.dumps(data["polygon"]))
    svg = tmp_path / "poly.svg"
    code, out, _ = run(capsys, "verify-certificate", str(cert_path), "--svg", str(svg))
    assert code == 0 and out.startswith("VALID") and svg.read_text().startswith("<svg")
    run_path = tmp_path / "run.json"
    run_path.write_text(json.dumps(data["run"]))
    assert run(capsys, "verify-certificate", str(run_path))[0] == 0

    data["polygon"]["vertices"][0] = ["2/1", "2/1"]
    cert_path.write_text(json.dumps(data["polygon"]))
    code, out, _ = run(capsys, "verify-certificate", str(cert_path))
    assert code == 1 and out.startswith("REFUTED")


def test_scan_powers_of_two(capsys):
    code, out, _ = run(capsys, "scan-ratios", "--generator", "power", "--base", "2", "--lo", "1", "--hi", str(2**30))
    assert code == 0 and "k=0 -> H >= 4" in out


def test_sieve_scan(capsys):
    code, out, _ = run(capsys, "sieve-scan", "--lo", "100", "--hi", "200", "--stream")
    lines = out.strip().splitlines()
    assert lines[0].startswith("101\t-")
    assert code == 0 and "21 primes" in lines[-1]
    code, out, _ = run(capsys, "--json", "sieve-scan", "--lo", "0", "--hi", "1000", "--certificate")
    data = json.loads(out)
    assert data["primes_scanned"] == 168 and data["emptiness"]["valid"]
    assert run(capsys, "sieve-scan", "--lo", "0", "--hi", "4")[0] == 2


def test_empty_polygon(capsys, tmp_path):
    pts = tmp_path / "pts.json"
    pts.write_text(json.dumps([[x, y] for x in range(3) for y in range(3)]))
    code, out, _ = run(capsys, "empty-polygon", "--points", str(pts), "--json")
    assert code == 0 and json.loads(out)["size"] == 4
    code, out, _ = run(capsys, "empty-polygon", "--generator", "primes", "--lo", "0", "--hi", "60", "--band", "1")
    assert code == 0 and "in the full product window: valid" in out
    assert run(capsys, "empty-polygon")[0] == 2


def test_syndetic(capsys, tmp_path):
    path = tmp_path / "syn.json"
    code, out, _ = run(capsys, "syndetic", "build", "--n-max", "3", "--window-bound", "3000", "--output", str(path))
    assert code == 0 and "[2, 3, 4]" in out
    code, out, _ = run(capsys, "syndetic", "verify", str(path))
    assert code == 0 and out.strip() == "VALID"
    data = json.loads(path.read_text())
    data["set_a"] = [a for a in data["set_a"] if a not in (2000, 2001)]
    path.write_text(json.dumps(data))
    code, out, _ = run(capsys, "syndetic", "verify", str(path))
    assert code == 1 and "[gaps]" in out
    assert run(capsys, "syndetic", "build", "--window-bound", "50")[0] == 2


def test_census(capsys):
    code, out, _ = run(capsys, "census", "figure1", "--min-points", "4")
    assert code == 0 and "beta = 5/6" in out


def test_random_family_is_deterministic(capsys):
    a = run(capsys, "random-family", "--seed", "7", "--dim", "3")[1]
    b = run(capsys, "random-family", "--seed", "7", "--dim", "3")[1]
    assert a == b
    assert run(capsys, "random-family", "--bound", "0")[0] == 2


def test_scale_guard_is_usage_error(capsys, monkeypatch):
    monkeypatch.setenv("HELLY_SCALE_GUARD", "2")
    code, _, err = run(capsys, "check-family", "figure1", "--subfamily-size", "5")
    assert code == 2 and "guard" in err
