import json

from sl2qes.cli import main


def run(args):
    return main(args)


def test_list_families_output(capsys):
    assert run(["list-families"]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert len(doc) == 13


def test_build_harmonic_spectrum(tmp_path):
    out = tmp_path / "run"
    code = run(["build", "--family", "harmonic", "--omega", "2", "--n", "3",
                "--j-max", "3", "--out-dir", str(out)])
    assert code == 0
    doc = json.loads((out / "spectrum.json").read_text())
    assert [lv["E"] for lv in doc["levels"]] == [1.0, 3.0, 5.0, 7.0]
    pot = (out / "potential.csv").read_text().splitlines()
    assert pot[0] == "x,V"
    assert len(pot) == 402
    waves = (out / "wavefunctions.csv").read_text().splitlines()
    assert waves[0] == "x,psi_0,psi_1,psi_2,psi_3"


def test_verify_periodic_v1(tmp_path):
    out = tmp_path / "run"
    code = run(["verify", "--family", "periodic-v1", "--alpha", "1",
                "--beta", "1", "--a", "0", "--n", "1", "--sign", "+",
                "--out-dir", str(out)])
    assert code == 0
    report = json.loads((out / "verification.json").read_text())
    assert report["all_pass"] is True
    assert len(report["levels"]) == 2
    for row in report["levels"]:
        assert row["pass"] is True
        assert row["abs_diff"] <= row["tolerance"]


def test_verify_failure_exit_code(tmp_path):
    out = tmp_path / "run"
    code = run(["verify", "--family", "harmonic", "--omega", "2", "--n", "0",
                "--j-max", "1", "--tolerance", "1e-12",
                "--out-dir", str(out)])
    assert code == 1
    report = json.loads((out / "verification.json").read_text())
    assert report["all_pass"] is False


def test_bad_parameters_exit_code(tmp_path):
    assert run(["build", "--family", "morse", "--alpha", "1", "--A", "3",
                "--B", "-1", "--out-dir", str(tmp_path)]) == 2
    assert run(["build", "--family", "nosuch",
                "--out-dir", str(tmp_path)]) == 2
    assert run(["build", "--family", "periodic-v1", "--alpha", "1",
                "--beta", "1", "--a", "0", "--out-dir", str(tmp_path)]) == 2


def test_general_mode(tmp_path):
    alg = tmp_path / "alg.json"
    alg.write_text(json.dumps({
        "C++": "0", "C+0": "0", "C00": "0", "C0-": "0", "C--": "1",
        "C+": "0", "C0": "-2", "C-": "0", "d": "free", "n": 2,
    }))
    out = tmp_path / "run"
    code = run(["general", "--algebra", str(alg), "--x-min", "-2",
                "--x-max", "2", "--out-dir", str(out)])
    assert code == 0
    doc = json.loads((out / "spectrum.json").read_text())
    assert doc["mode"] == "general"
    assert len(doc["levels"]) == 3
    assert any("normalizability" in w for w in doc["warnings"])
    assert (out / "potential.csv").exists()
    assert (out / "wavefunctions.csv").exists()


def test_general_mode_fixed_shift(tmp_path):
    alg = tmp_path / "alg.json"
    alg.write_text(json.dumps({
        "C++": "0", "C+0": "0", "C00": "0", "C0-": "0", "C--": "1",
        "C+": "0", "C0": "-2", "C-": "0", "d": "3/2", "n": 1,
    }))
    out = tmp_path / "run"
    assert run(["general", "--algebra", str(alg), "--x-min", "-2",
                "--x-max", "2", "--out-dir", str(out)]) == 0
    doc = json.loads((out / "spectrum.json").read_text())
    assert doc["d_used"] == 1.5


def test_general_mode_sqrt_transform(tmp_path):
    # linear weight with the half-line stretch, as in the radial family
    alg = tmp_path / "alg.json"
    alg.write_text(json.dumps({
        "C++": "0", "C+0": "0", "C00": "0", "C0-": "2", "C--": "0",
        "C+": "0", "C0": "1", "C-": "8", "d": "free", "n": 1,
    }))
    out = tmp_path / "run"
    code = run(["general", "--algebra", str(alg), "--u-transform",
                "two-sqrt", "--x-min", "0.05", "--x-max", "5",
                "--xi0", "0", "--xi-min", "0", "--xi-max", "1e9",
                "--out-dir", str(out)])
    assert code == 0
    doc = json.loads((out / "spectrum.json").read_text())
    assert len(doc["levels"]) == 2


def test_general_without_positive_weight(tmp_path):
    alg = tmp_path / "bad.json"
    alg.write_text(json.dumps({
        "C++": "0", "C+0": "0", "C00": "-1", "C0-": "0", "C--": "-1",
        "C+": "0", "C0": "0", "C-": "0", "d": "free", "n": 1,
    }))
    assert run(["general", "--algebra", str(alg),
                "--out-dir", str(tmp_path / "run")]) == 2


def test_byte_identical_reruns(tmp_path):
    args = ["build", "--family", "periodic-v1", "--alpha", "1", "--beta", "1",
            "--a", "0", "--n", "1", "--sign", "+"]
    out1, out2 = tmp_path / "a", tmp_path / "b"
    assert run(args + ["--out-dir", str(out1)]) == 0
    assert run(args + ["--out-dir", str(out2)]) == 0
    for name in ("spectrum.json", "potential.csv", "wavefunctions.csv"):
        assert (out1 / name).read_bytes() == (out2 / name).read_bytes()


def test_json_sample_export(tmp_path):
    out = tmp_path / "run"
    code = run(["build", "--family", "harmonic", "--omega", "2", "--n", "0",
                "--j-max", "1", "--samples", "51", "--json-samples",
                "--out-dir", str(out)])
    assert code == 0
    pot = json.loads((out / "potential.json").read_text())
    assert len(pot["x"]) == 51 and len(pot["V"]) == 51
    waves = json.loads((out / "wavefunctions.json").read_text())
    assert set(waves["psi"]) == {"0", "1"}


def test_config_file_precedence(tmp_path):
    cfg = tmp_path / "run.cfg"
    cfg.write_text("family = harmonic\nomega = 1\nn = 0\nj-max = 0\n")
    out1 = tmp_path / "c1"
    assert run(["build", "--config", str(cfg), "--out-dir", str(out1)]) == 0
    doc = json.loads((out1 / "spectrum.json").read_text())
    assert doc["levels"][0]["E"] == 0.5          # omega from the config

    out2 = tmp_path / "c2"
    assert run(["build", "--config", str(cfg), "--omega", "2",
                "--out-dir", str(out2)]) == 0
    doc2 = json.loads((out2 / "spectrum.json").read_text())
    assert doc2["levels"][0]["E"] == 1.0         # flag wins over the config
