from __future__ import annotations

import json
import math

import numpy as np
import pytest

from smallgaps import cli
from smallgaps import gaps as gs
from smallgaps import io as sio
from smallgaps.sampler import init_state


def run(capsys, *argv):
    code = cli.main([str(a) for a in argv])
    out = capsys.readouterr()
    return code, out.out, out.err


def test_constants(capsys):
    code, out, _ = run(capsys, "constants", "--beta", 1)
    doc = json.loads(out)
    assert code == 0
    assert doc["format_version"] == sio.FORMAT_VERSION
    assert doc["A_beta"] == pytest.approx(1 / 24, rel=1e-12)
    code, out, _ = run(capsys, "constants", "--beta", 2, "--k-max", 1)
    doc = json.loads(out)
    assert doc["A_beta_k"] == [pytest.approx(1.0, rel=1e-14)]
    assert f"{doc['A_beta']:.12f}" == "0.013262911924"


def test_constants_bad_beta(capsys):
    with pytest.raises(SystemExit) as exc:
        cli.main(["constants", "--beta", "0"])
    assert exc.value.code == 2
    with pytest.raises(SystemExit) as exc:
        cli.main(["constants", "--beta", "1.5"])
    assert exc.value.code == 2


def test_sample_chains_and_empty(tmp_path, capsys):
    out = tmp_path / "s"
    code, _, _ = run(capsys, "sample", "--beta", 2, "--n", 6, "--num-samples", 5,
                     "--chains", 4, "--burnin", 20, "--out", out)
    assert code == 0
    files = sorted(out.glob("*.f64"))
    assert [sio.read_sidecar(f)["chain_index"] for f in files] == [0, 1, 2, 3]
    out0 = tmp_path / "empty"
    code, _, _ = run(capsys, "sample", "--beta", 1, "--n", 3, "--num-samples", 0, "--out", out0)
    assert code == 0
    f = out0 / "chain_000.f64"
    assert f.stat().st_size == 0
    assert sio.read_sidecar(f)["num_samples"] == 0


def test_sample_byte_identical(tmp_path, capsys):
    for name in ("a", "b"):
        run(capsys, "sample", "--beta", 2, "--n", 8, "--num-samples", 20, "--chains", 2,
            "--seed", 99, "--burnin", 30, "--out", tmp_path / name)
    for f in ("chain_000.f64", "chain_001.f64", "chain_000.json", "chain_001.json"):
        assert (tmp_path / "a" / f).read_bytes() == (tmp_path / "b" / f).read_bytes()


def synthetic(tmp_path, n=8, rows=3, beta=2):
    x = np.tile(init_state(n), (rows, 1))
    meta = dict(beta=beta, n=n, seed=0, chain_index=0, sigma_final=0.1,
                burnin_sweeps=0, thin_sweeps=1, num_samples=rows)
    return sio.write_samples(tmp_path / "syn" / "chain_000.f64", x, meta)


def test_gaps_equally_spaced(tmp_path, capsys):
    f = synthetic(tmp_path)
    csv_path = tmp_path / "g.csv"
    code, _, _ = run(capsys, "gaps", f, "--k", 3, "--out", csv_path)
    assert code == 0
    lines = csv_path.read_text().splitlines()
    assert lines[0] == "sample_index,m1,m2,m3,tau1,tau2,tau3,chi,chi_tilde"
    assert len(lines) - 1 == 3
    for line in lines[1:]:
        vals = [float(v) for v in line.split(",")]
        np.testing.assert_allclose(vals[1:4], 2 * math.pi / 8, rtol=1e-12)


def test_gaps_errors(tmp_path, capsys):
    f = synthetic(tmp_path)
    code, _, err = run(capsys, "gaps", f, "--k", 9)
    assert code == 2 and "exceeds" in err
    code, _, _ = run(capsys, "gaps", f, "--n", 7)
    assert code == 3
    code, _, _ = run(capsys, "gaps", tmp_path / "missing.f64")
    assert code == 3


def write_tau_csv(path, values, k=1):
    with open(path, "w") as fh:
        rows = ((i, [0.0] * k, [v] * k, 0, 0) for i, v in enumerate(values))
        sio.write_gap_csv(fh, k, rows)


def test_kstest_synthetic(tmp_path, capsys):
    N, beta = 500, 2
    p = (np.arange(1, N + 1) - 0.5) / N
    tau = (-np.log1p(-p)) ** (1 / (beta + 1))
    path = tmp_path / "t.csv"
    write_tau_csv(path, tau)
    code, out, _ = run(capsys, "kstest", "--beta", beta, "--csv", path)
    doc = json.loads(out)
    assert code == 0 and doc["pass"] and doc["ks"] <= 2 / N and doc["n_samples"] == N
    code, out, _ = run(capsys, "kstest", "--beta", 1, "--csv", path, "--threshold", 0.001)
    assert code == 1 and json.loads(out)["pass"] is False


def test_kstest_errors(tmp_path, capsys):
    empty = tmp_path / "e.csv"
    write_tau_csv(empty, [])
    code, _, _ = run(capsys, "kstest", "--beta", 2, "--csv", empty)
    assert code == 3
    code, _, _ = run(capsys, "kstest", "--beta", 2, "--csv", empty, "--k", 2)
    assert code == 3


def test_verify(capsys, tmp_path):
    code, out, _ = run(capsys, "verify", "--suite", "identities", "--format", "text")
    assert code == 0 and out.strip().endswith("overall: pass")
    code, out, _ = run(capsys, "verify", "--suite", "identities")
    assert json.loads(out)["format_version"] == sio.FORMAT_VERSION
    with pytest.raises(SystemExit) as exc:
        cli.main(["verify", "--suite", "bogus"])
    assert exc.value.code == 2


def test_intensity(tmp_path, capsys):
    f = synthetic(tmp_path)
    code, out, _ = run(capsys, "intensity", f, "--beta", 2, "--A", 0, 0)
    doc = json.loads(out)
    assert code == 0
    assert doc["predicted"] == 0.0 and doc["empirical_mean"] == 0.0 and doc["z_score"] == 0.0
    g = synthetic(tmp_path / "other", n=16, rows=2)
    _, out2, _ = run(capsys, "intensity", g, "--beta", 2)
    _, out3, _ = run(capsys, "intensity", f, "--beta", 2)
    assert json.loads(out2)["predicted"] == json.loads(out3)["predicted"] == pytest.approx(1 / (9 * math.pi))


def test_config_file_and_override(tmp_path, capsys):
    cfg = tmp_path / "c.json"
    cfg.write_text(json.dumps({"beta": 4, "k_max": 2}))
    _, out, _ = run(capsys, "constants", "--config", cfg)
    doc = json.loads(out)
    assert doc["beta"] == 4 and len(doc["A_beta_k"]) == 2
    _, out, _ = run(capsys, "constants", "--config", cfg, "--beta", 1)
    assert json.loads(out)["beta"] == 1
    cfg.write_text(json.dumps({"nonsense": 1}))
    with pytest.raises(SystemExit) as exc:
        cli.main(["constants", "--config", str(cfg), "--beta", "1"])
    assert exc.value.code == 2


def test_output_formats(capsys):
    _, out, _ = run(capsys, "constants", "--beta", 1, "--format", "csv", "--k-max", 2)
    lines = out.splitlines()
    assert lines[0] == "key,value"
    assert any(l.startswith("A_beta_k[1],") for l in lines)
    _, out, _ = run(capsys, "constants", "--beta", 1, "--format", "text")
    assert out.startswith("format_version: 1")


def test_module_entry_point():
    import subprocess
    import sys
    res = subprocess.run([sys.executable, "-m", "smallgaps", "constants", "--beta", "2"],
                         capture_output=True, text=True, check=True)
    assert json.loads(res.stdout)["beta"] == 2
