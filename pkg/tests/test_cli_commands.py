"""
tests.test_cli_commands
Exit codes and outputs of the hermlab command line.
"""

import json
import shutil

import pytest

from hermlab import __version__
from hermlab.core import catalog
from hermlab.core.search import MetricParameterization
from hermlab.core.specfile import from_algebra, save_spec
from hermlab.interfaces.cli import CLI, main


def test_cli_instantiation():
    cli = CLI()
    cli.customize({"banner_name": "custom", "show_banner": False})
    assert cli.name == "custom"
    assert cli.config["show_banner"] is False


def test_version(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["--version"])
    assert exc.value.code == 0
    assert __version__ in capsys.readouterr().out


def test_inspect_json(fixtures_dir, capsys):
    assert main(["inspect", str(fixtures_dir / "kodaira.json"), "--format", "json"]) == 0
    report = json.loads(capsys.readouterr().out)
    assert report["input"]["name"] == "kodaira"
    assert report["predicates"]["skl"]["value"] is True
    assert report["predicates"]["kahler"]["value"] is False


def test_inspect_text(fixtures_dir, capsys):
    assert main(["inspect", str(fixtures_dir / "iwasawa.json")]) == 0
    out = capsys.readouterr().out
    assert "Predicates" in out
    assert "torsion_norm_sq" in out


def test_inspect_nonintegrable(fixtures_dir, capsys):
    assert main(["inspect", str(fixtures_dir / "noninteg.json")]) == 2
    assert "non-integrable" in capsys.readouterr().err


@pytest.mark.parametrize("name", ["kodaira.json", "iwasawa.json"])
def test_verify_valid_files(fixtures_dir, name):
    assert main(["verify", str(fixtures_dir / name), "--suite", "all"]) == 0


def test_verify_corrupt_file(fixtures_dir, capsys):
    assert main(["verify", str(fixtures_dir / "corrupt.json")]) == 2
    assert "d²" in capsys.readouterr().err


def test_verify_reports_failures(tmp_path, capsys):
    path = tmp_path / "random.json"
    assert main(["random", "--dim", "3", "--split", "2", "--seed", "4", "--with-metric", "--out", str(path)]) == 0
    capsys.readouterr()
    assert main(["--tol", "1e-30", "verify", str(path), "--suite", "structure"]) == 1
    assert "failed" in capsys.readouterr().err
    assert main(["verify", str(path), "--suite", "structure", "--tol", "1e-30"]) == 1


def test_tolerance_after_subcommand(fixtures_dir, capsys):
    kodaira = str(fixtures_dir / "kodaira.json")
    assert main(["verify", kodaira, "--tol", "1e-9"]) == 0
    capsys.readouterr()
    assert main(["inspect", kodaira, "--tol", "1e-6", "--format", "json"]) == 0
    assert json.loads(capsys.readouterr().out)["tolerance"] == 1e-6
    assert main(["--tol", "1e-6", "inspect", kodaira, "--format", "json"]) == 0
    assert json.loads(capsys.readouterr().out)["tolerance"] == 1e-6


def test_verify_lemma2_suite(fixtures_dir, capsys):
    assert main(["verify", str(fixtures_dir / "kodaira.json"), "--suite", "lemma2", "--format", "json"]) == 0
    report = json.loads(capsys.readouterr().out)
    assert {r["suite"] for r in report["identities"].values()} == {"curvature"}


def test_verify_directory(fixtures_dir, tmp_path, capsys):
    for name in ("kodaira.json", "iwasawa.json"):
        shutil.copy(fixtures_dir / name, tmp_path / name)
    out_dir = tmp_path / "reports"
    assert main(["verify", str(tmp_path), "--jobs", "2", "--format", "json", "--out-dir", str(out_dir)]) == 0
    summary = json.loads(capsys.readouterr().out)
    assert {v["status"] for v in summary.values()} == {"pass"}
    assert sorted(p.name for p in out_dir.iterdir()) == ["iwasawa.report.json", "kodaira.report.json"]
    shutil.copy(fixtures_dir / "corrupt.json", tmp_path / "corrupt.json")
    assert main(["verify", str(tmp_path)]) == 2
    assert main(["verify", str(tmp_path), "--jobs", "0"]) == 2


def test_catalog_commands(capsys, tmp_path):
    assert main(["catalog", "list"]) == 0
    assert "kodaira" in capsys.readouterr().out
    assert main(["catalog", "show", "hopf"]) == 0
    assert main(["catalog", "show", "nowhere"]) == 2
    capsys.readouterr()
    assert main(["catalog", "export", "kodaira"]) == 0
    exported = json.loads(capsys.readouterr().out)
    assert exported["dim"] == 2
    path = tmp_path / "iwasawa.json"
    assert main(["catalog", "export", "iwasawa", "--out", str(path)]) == 0
    assert main(["verify", str(path)]) == 0


def test_random_command(tmp_path, capsys):
    assert main(["random", "--dim", "3", "--split", "2", "--seed", "7"]) == 0
    first = capsys.readouterr().out
    assert main(["random", "--dim", "3", "--split", "2", "--seed", "7"]) == 0
    assert capsys.readouterr().out == first
    path = tmp_path / "r.json"
    assert main(["random", "--dim", "3", "--split", "2", "--seed", "7", "--out", str(path)]) == 0
    assert main(["verify", str(path), "--suite", "structure"]) == 0
    assert main(["random", "--dim", "2", "--split", "2"]) == 2


def test_search_command(tmp_path, capsys):
    entry = catalog.get("kodaira")
    p = MetricParameterization(2)
    start = tmp_path / "perturbed.json"
    save_spec(from_algebra(entry.algebra, p.metric(p.perturbed(3, 0.1)), name="perturbed"), start)
    out = tmp_path / "found.json"
    assert main(["search", str(start), "--seed", "3", "--out", str(out)]) == 0
    capsys.readouterr()
    assert main(["inspect", str(out), "--format", "json"]) == 0
    assert json.loads(capsys.readouterr().out)["predicates"]["skl"]["value"] is True


def test_search_without_convergence(fixtures_dir):
    path = str(fixtures_dir / "iwasawa.json")
    assert main(["search", path, "--max-iter", "30", "--format", "json"]) == 1
    assert main(["search", path, "--method", "powell", "--max-iter", "5"]) == 1
    assert main(["search", path, "--residual-tol", "-1"]) == 2
