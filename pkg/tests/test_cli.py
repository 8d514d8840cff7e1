import json

import pytest

from rhalylab.cli import EXIT_NUMERICAL, EXIT_OK, EXIT_VALIDATION, main


def write_json(path, doc):
    path.write_text(json.dumps(doc))
    return str(path)


BASE_CONFIG = {
    "eta_source": {"kind": "classical"},
    "alpha": 1.0,
    "beta": 1.0,
    "n_grid": {"min_exp": 4, "max_exp": 9, "n_max_exp": 14},
    "tasks": ["criterion", "sections"],
    "seed": 42,
}


def test_run_basic(tmp_path, capsys):
    cfg = write_json(tmp_path / "cfg.json", BASE_CONFIG)
    out = tmp_path / "out"
    assert main(["run", "--config", cfg, "--out-dir", str(out)]) == EXIT_OK
    summary = json.loads((out / "summary.json").read_text())
    assert summary["tasks"]["criterion"]["verdict_bounded"] == "holds"
    assert summary["tasks"]["criterion"]["verdict_compact"] == "fails"
    crit = (out / "criterion.csv").read_text().splitlines()
    assert crit[0] == "N,A_N,S_N"
    sect = (out / "sections.csv").read_text().splitlines()
    assert sect[0] == "N,sigma_max,iterations,converged"
    assert all(line.endswith("true") for line in sect[1:])
    # stdout mirrors the summary JSON
    printed = json.loads(capsys.readouterr().out)
    assert printed == summary


def test_run_deterministic(tmp_path):
    cfg = write_json(tmp_path / "cfg.json", BASE_CONFIG)
    out1, out2 = tmp_path / "a", tmp_path / "b"
    assert main(["run", "--config", cfg, "--out-dir", str(out1)]) == EXIT_OK
    assert main(["run", "--config", cfg, "--out-dir", str(out2)]) == EXIT_OK
    for name in ("summary.json", "criterion.csv", "sections.csv"):
        assert (out1 / name).read_bytes() == (out2 / name).read_bytes()


def test_run_residuals_and_lower_bounds(tmp_path):
    doc = dict(BASE_CONFIG)
    doc["eta_source"] = {"kind": "measure", "atoms": [{"t": 0.9, "mass": 1.0}]}
    doc["alpha"], doc["beta"] = 1.0, 0.0
    doc["n_grid"] = {"min_exp": 4, "max_exp": 8, "n_max_exp": 12}
    doc["tasks"] = ["criterion", "residuals", "lower_bounds", "carleson"]
    cfg = write_json(tmp_path / "cfg.json", doc)
    out = tmp_path / "out"
    assert main(["run", "--config", cfg, "--out-dir", str(out)]) == EXIT_OK
    res = (out / "residuals.csv").read_text().splitlines()
    assert res[0] == "N_cut,residual"
    vals = [float(line.split(",")[1]) for line in res[1:]]
    assert vals[-1] < vals[0]  # compact case: residuals decay
    lb = (out / "lower_bounds.csv").read_text().splitlines()
    assert lb[0] == "param,value"
    car = (out / "carleson.csv").read_text().splitlines()
    assert car[0] == "t,ratio"
    summary = json.loads((out / "summary.json").read_text())
    assert summary["tasks"]["carleson"]["s"] == 1.5
    # an atom strictly inside [0,1) has no mass near 1: trivially Carleson
    assert summary["tasks"]["carleson"]["verdict"] == "holds"


def test_run_validation_errors(tmp_path, capsys):
    assert main(["run", "--config", str(tmp_path / "missing.json")]) == EXIT_VALIDATION
    bad = write_json(tmp_path / "bad.json", {"tasks": []})
    assert main(["run", "--config", bad]) == EXIT_VALIDATION
    bad2 = write_json(tmp_path / "bad2.json", {"tasks": ["nope"]})
    assert main(["run", "--config", bad2]) == EXIT_VALIDATION
    bad3 = write_json(
        tmp_path / "bad3.json",
        dict(BASE_CONFIG, eta_source={"kind": "weird"}),
    )
    assert main(["run", "--config", bad3]) == EXIT_VALIDATION
    capsys.readouterr()


def test_run_numerical_failure(tmp_path, capsys):
    # carleson task with a non-measure source is a validation error
    doc = dict(BASE_CONFIG, tasks=["carleson"])
    cfg = write_json(tmp_path / "c.json", doc)
    assert main(["run", "--config", cfg]) == EXIT_VALIDATION
    capsys.readouterr()


def test_sweep(tmp_path, capsys):
    docs = [
        dict(BASE_CONFIG, alpha=a, beta=a, tasks=["criterion"])
        for a in (-1.0, 0.0, 1.0)
    ]
    cfgs = write_json(tmp_path / "cfgs.json", docs)
    out = tmp_path / "sweep"
    assert main(["sweep", "--configs", cfgs, "--out-dir", str(out)]) == EXIT_OK
    lines = (out / "sweep.csv").read_text().splitlines()
    assert (
        lines[0]
        == "eta_source,alpha,beta,verdict_bounded,verdict_compact,sup_S,slope,sigma_max"
    )
    rows = [line.split(",") for line in lines[1:]]
    assert len(rows) == 3
    # classical weights: bounded exactly in the alpha = beta > 0 regime
    verdicts = {float(r[1]): r[3] for r in rows}
    assert verdicts[-1.0] == "fails"
    assert verdicts[0.0] == "fails"
    assert verdicts[1.0] == "holds"
    for i in range(3):
        assert (out / f"config_{i:03d}" / "summary.json").exists()
    capsys.readouterr()


def test_sweep_rejects_non_array(tmp_path, capsys):
    cfgs = write_json(tmp_path / "cfgs.json", BASE_CONFIG)
    assert main(["sweep", "--configs", cfgs, "--out-dir", str(tmp_path)]) == EXIT_VALIDATION
    capsys.readouterr()


def test_moments(tmp_path, capsys):
    measure = write_json(
        tmp_path / "mu.json", {"atoms": [{"t": 0.5, "mass": 1.0}]}
    )
    assert main(["moments", "--measure", measure, "--n-max", "4"]) == EXIT_OK
    lines = capsys.readouterr().out.strip().splitlines()
    assert lines[0] == "n,eta"
    assert [float(line.split(",")[1]) for line in lines[1:]] == [
        1.0,
        0.5,
        0.25,
        0.125,
        0.0625,
    ]
    out_file = tmp_path / "m.csv"
    assert (
        main(
            [
                "moments",
                "--measure",
                measure,
                "--n-max",
                "2",
                "--output",
                str(out_file),
            ]
        )
        == EXIT_OK
    )
    assert out_file.read_text().splitlines()[0] == "n,eta"


def test_section_norm_subcommand(capsys):
    rc = main(
        [
            "section-norm",
            "--eta",
            "classical",
            "--alpha",
            "1",
            "--beta",
            "1",
            "--n",
            "64",
            "--n-max",
            "64",
        ]
    )
    assert rc == EXIT_OK
    lines = capsys.readouterr().out.strip().splitlines()
    assert lines[0] == "N,sigma_max,iterations,converged"
    n, sigma, iters, conv = lines[1].split(",")
    assert n == "64" and conv == "true"
    assert 1.0 < float(sigma) < 3.0


def test_section_norm_nonconvergence_exit_code(capsys):
    rc = main(
        [
            "section-norm",
            "--alpha",
            "1",
            "--beta",
            "1",
            "--n",
            "256",
            "--n-max",
            "256",
            "--tol",
            "1e-15",
            "--max-iter",
            "2",
        ]
    )
    assert rc == EXIT_NUMERICAL
    capsys.readouterr()


def test_criterion_subcommand(tmp_path, capsys):
    out_csv = tmp_path / "crit.csv"
    rc = main(
        [
            "criterion",
            "--eta",
            "power_log",
            "--s",
            "1",
            "--r",
            "1",
            "--alpha",
            "0",
            "--beta",
            "0",
            "--min-exp",
            "4",
            "--max-exp",
            "14",
            "--n-max",
            str(2**18),
            "--output",
            str(out_csv),
        ]
    )
    assert rc == EXIT_OK
    doc = json.loads(capsys.readouterr().out)
    assert doc["verdict_bounded"] == "holds"
    assert out_csv.read_text().splitlines()[0] == "N,A_N,S_N"


def test_criterion_shortcut_form(capsys):
    rc = main(
        [
            "criterion",
            "--alpha",
            "1",
            "--beta",
            "1",
            "--form",
            "shortcut",
            "--min-exp",
            "4",
            "--max-exp",
            "12",
            "--n-max",
            str(2**14),
        ]
    )
    assert rc == EXIT_OK
    doc = json.loads(capsys.readouterr().out)
    assert doc["statistic"] == "decreasing_shortcut"
    assert doc["verdict_bounded"] == "holds"


def test_certify_lower_bound(capsys):
    rc = main(
        [
            "certify",
            "--kind",
            "lower-bound",
            "--alpha",
            "0",
            "--beta",
            "0",
            "--test-fn",
            "one",
            "--n-max",
            str(2**10),
        ]
    )
    assert rc == EXIT_OK
    doc = json.loads(capsys.readouterr().out)
    assert doc["kind"] == "lower_bound"
    assert doc["value"] > 2.0  # sqrt(H_1024) ~ 2.6


def test_certify_schur_log(capsys):
    rc = main(["certify", "--kind", "schur-log", "--n", "512"])
    assert rc == EXIT_OK
    doc = json.loads(capsys.readouterr().out)
    assert doc["kind"] == "schur_upper"
    assert doc["parameters"]["c1"] > 0
    assert doc["value"] == pytest.approx(
        (doc["parameters"]["c1"] * doc["parameters"]["c2"]) ** 0.5
    )


def test_certify_bennett(capsys):
    rc = main(
        [
            "certify",
            "--kind",
            "bennett-uvw",
            "--alpha",
            "1",
            "--beta",
            "1",
            "--min-exp",
            "4",
            "--max-exp",
            "12",
            "--n-max",
            str(2**14),
        ]
    )
    assert rc == EXIT_OK
    doc = json.loads(capsys.readouterr().out)
    assert doc["kind"] == "bennett"
    assert doc["parameters"]["passed"] == 1.0


def test_certify_validation(capsys):
    rc = main(["certify", "--kind", "lower-bound", "--eta", "measure"])
    assert rc == EXIT_VALIDATION
    capsys.readouterr()


def test_console_script_installed():
    import shutil

    assert shutil.which("rhalylab") is not None
