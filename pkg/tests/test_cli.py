import json
from pathlib import Path

import pytest

from univsub.cli import main

CONFIGS = Path(__file__).resolve().parent.parent / "configs"
SMALL = ["--samples", "4", "--restarts", "8"]


def _run(args, tmp_path, name="out.json"):
    out = tmp_path / name
    code = main([*args, *SMALL, "--out", str(out)])
    return code, json.loads(out.read_text()) if out.exists() else None


def test_su2_classify_n4(tmp_path):
    code, report = _run(["su2-classify", "--n", "4"], tmp_path)
    assert code == 0
    rows = report["tables"]["classification"]
    assert [r["quotient_weight"] for r in rows] == [-4, -2, 0, 2, 4]
    assert [r["vanishes"] for r in rows] == [False, False, True, False, False]
    assert all(r["verdict"] == "Universal" for r in rows)
    assert report["schema_version"] == "1.0"
    assert (tmp_path / "out.classification.csv").read_text().startswith("i,quotient_weight")


def test_su2_classify_bounds(tmp_path, capsys):
    assert main(["su2-classify", "--n", "21"]) == 1
    assert main(["su2-classify", "--n", "0"]) == 1
    assert "configuration error" in capsys.readouterr().err


@pytest.mark.parametrize("variant,vanishes", [("default", True), ("odd", False), ("factor2", False)])
def test_counterexample_variants(tmp_path, variant, vanishes):
    code, report = _run(["counterexample", "--variant", variant], tmp_path)
    assert code == 0
    assert report["obstructions"][0]["vanishes"] is vanishes
    assert report["verdicts"][0]["kind"] == "Universal"


def test_schur_and_euler(tmp_path):
    code, report = _run(["schur", "--group", "su3"], tmp_path)
    assert code == 0
    assert report["obstructions"][0]["class_value"]["coordinates"] == [-6]
    code, report = _run(["euler", "--group", "su3"], tmp_path, "euler.json")
    rows = {r["subgroup"]: r for r in report["tables"]["euler"]}
    assert code == 0
    assert rows["T"]["euler_characteristic"] == 6 and abs(rows["T"]["localization"]) == 6
    assert rows["SU(2)"]["euler_characteristic"] == 0


def test_euler_unknown_subgroup(capsys):
    assert main(["euler", "--group", "su3", "--subgroup", "Sp(1)"]) == 1
    assert main(["euler", "--group", "g2"]) == 1


def test_solvable_command(tmp_path):
    code, report = _run(["solvable", "--size", "3", "--trials", "3"], tmp_path)
    assert code == 0
    rows = report["tables"]["witnesses"]
    assert len(rows) == 4 and rows[-1]["level"] == 2
    assert all(r["spread"] < 1e-10 for r in rows)


def test_levi_demo(tmp_path):
    code, report = _run(["levi-demo"], tmp_path)
    assert code == 0
    wit = report["levi_witness"]
    assert abs(wit["levi_min_distance"] - 2 ** -0.5) < 1e-4
    assert wit["levi_restarts"] == 64
    assert wit["full_group_min_distance"] < 1e-6


@pytest.mark.parametrize("name", sorted(p.name for p in CONFIGS.glob("*.yaml")))
def test_example_configs(tmp_path, name):
    code, report = _run(["run", "--config", str(CONFIGS / name)], tmp_path)
    assert code == 0
    assert report["consistent"]


def test_reports_are_byte_identical(tmp_path):
    args = ["counterexample", *SMALL, "--seed", "5"]
    assert main([*args, "--out", str(tmp_path / "a.json")]) == 0
    assert main([*args, "--out", str(tmp_path / "b.json")]) == 0
    assert (tmp_path / "a.json").read_bytes() == (tmp_path / "b.json").read_bytes()


def test_seed_changes_report(tmp_path):
    main(["su2-classify", "--n", "2", *SMALL, "--seed", "1", "--out", str(tmp_path / "a.json")])
    main(["su2-classify", "--n", "2", *SMALL, "--seed", "2", "--out", str(tmp_path / "b.json")])
    assert (tmp_path / "a.json").read_bytes() != (tmp_path / "b.json").read_bytes()


def test_stdout_and_env_dir(tmp_path, capsys, monkeypatch):
    assert main(["euler", "--group", "su2"]) == 0
    assert json.loads(capsys.readouterr().out)["command"] == "euler"
    assert main(["euler", "--group", "su2", "--format", "csv"]) == 0
    assert capsys.readouterr().out.startswith("subgroup,")
    monkeypatch.setenv("UNIVSUB_OUT_DIR", str(tmp_path / "reports"))
    assert main(["euler", "--group", "su2"]) == 0
    assert (tmp_path / "reports" / "euler.json").exists()


def test_timing_is_opt_in(tmp_path):
    _, plain = _run(["euler", "--group", "su2"], tmp_path)
    _, timed = _run(["euler", "--group", "su2", "--timing"], tmp_path, "t.json")
    assert "wall_seconds" not in plain["timing"]
    assert "wall_seconds" in timed["timing"]


def _write(tmp_path, text):
    p = tmp_path / "c.yaml"
    p.write_text(text)
    return str(p)


def test_exit_code_inconsistent(tmp_path):
    # block su(2) labelled as U(2): chi > 0 contradicts its rank
    cfg = _write(tmp_path, """
group: su3
subalgebra:
  ambient: su3
  subgroup: U(2)
  basis:
    - [[[0, 1], 0, 0], [0, [0, -1], 0], [0, 0, 0]]
    - [[0, 1, 0], [-1, 0, 0], [0, 0, 0]]
    - [[0, [0, 1], 0], [[0, 1], 0, 0], [0, 0, 0]]
analyses: [subalgebra]
""")
    code, report = _run(["run", "--config", cfg], tmp_path)
    assert code == 2
    assert not report["consistent"]


def test_exit_code_budget(tmp_path):
    cfg = _write(tmp_path, """
group: su2
representation: {kind: irrep, n: 3}
subspace: {kind: weight_complement, indices: [0]}
search: {restarts: 2, samples: 3, max_iter: 1}
analyses: [verdict, obstruction]
""")
    assert main(["run", "--config", cfg, "--out", str(tmp_path / "o.json")]) == 3


@pytest.mark.parametrize(
    "text",
    [
        "group: su2\nrepresentation: {kind: irrep, n: 2}\nanalyses: [verdict]\n",
        "group: su2\nrepresentation: {kind: matrices, generators: [[[0, 1], [0, 0]], [[0, 0], [1, 0]]]}\n"
        "analyses: [flag]\n",
        "group: [",
    ],
)
def test_exit_code_config(tmp_path, text):
    assert main(["run", "--config", _write(tmp_path, text)]) == 1


def test_usage_errors_exit_1():
    with pytest.raises(SystemExit) as err:
        main(["bogus"])
    assert err.value.code == 1
    with pytest.raises(SystemExit) as err:
        main(["su2-classify"])
    assert err.value.code == 1
