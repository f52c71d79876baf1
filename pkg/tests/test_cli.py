import json
import math
import subprocess
import sys

import pytest

from ribbonknots.cli import main
from ribbonknots.diagram import dumps_diagram
from ribbonknots.samples import load_sample


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_report_fig5_right_json(capsys):
    code, out, _ = run(capsys, "report", "--sample", "fig5-right", "--json")
    data = json.loads(out)
    assert code == 0
    assert data["linking_number"] == -4 and data["topo_type"] == "annulus"


def test_ribbonlength_fig8_left(capsys):
    code, out, _ = run(capsys, "ribbonlength", "--sample", "fig8-left", "--tol", "1e-9")
    assert code == 0
    assert out.startswith("5.196152")
    assert float(out) == pytest.approx(3 * math.sqrt(3), abs=1e-6)


def test_compare_t52_link(capsys):
    code, out, _ = run(capsys, "compare", "--sample", "t52-standard", "--sample", "t52-short",
                       "--mode", "link")
    assert code == 0 and out.strip() == "NotEquivalent"


def test_compare_modes(capsys):
    _, out, _ = run(capsys, "compare", "--sample", "fig1-3stick", "--sample", "fig1-4stick",
                    "--mode", "topo")
    assert out.strip() == "NotEquivalent"
    _, out, _ = run(capsys, "compare", "--sample", "fig1-3stick", "--sample", "fig1-4stick",
                    "--mode", "diagram", "--json")
    assert json.loads(out)["result"] == "Equivalent"


def test_compare_file_and_sample(capsys, tmp_path):
    p = tmp_path / "d.json"
    p.write_text(dumps_diagram(load_sample("fig5-left")))
    _, out, _ = run(capsys, "compare", "--input", str(p), "--sample", "fig5-center")
    assert out.strip() == "Equivalent"


def test_validate_ok_and_invalid(capsys, tmp_path):
    code, out, _ = run(capsys, "validate", "--sample", "t52-standard")
    assert code == 0 and "valid" in out
    bad = tmp_path / "bow.json"
    bad.write_text(json.dumps({"vertices": [[0, 0], [1, 1], [1, 0], [0, 1]],
                               "folds": ["over"] * 4, "crossings": []}))
    code, out, _ = run(capsys, "validate", "--input", str(bad), "--json")
    assert code == 1
    assert "missing-crossing" in [i["code"] for i in json.loads(out)["issues"]]
    code, _, err = run(capsys, "report", "--input", str(bad))
    assert code == 1 and "invalid" in err


def test_maxwidth_and_linking(capsys):
    code, out, _ = run(capsys, "maxwidth", "--sample", "ngon-4")
    assert code == 0 and float(out) == pytest.approx(1.0, abs=1e-8)
    code, out, _ = run(capsys, "linking", "--sample", "fig1-4stick", "--json")
    data = json.loads(out)
    assert data["linking_number"] == data["geometric"] == -2


def test_bounds(capsys):
    _, out, _ = run(capsys, "bounds", "--n", "6")
    assert float(out) == pytest.approx(6 * math.sqrt(3))
    _, out, _ = run(capsys, "bounds", "--sample", "fig8-left")
    assert float(out) == pytest.approx(1 / math.sqrt(3))


def test_samples_listing(capsys):
    code, out, _ = run(capsys, "samples", "--json")
    assert code == 0 and "t52-short" in json.loads(out)["samples"]


def test_bad_arguments_exit_two(capsys):
    assert run(capsys, "report", "--sample", "nope")[0] == 2
    assert run(capsys, "report")[0] == 2
    assert run(capsys, "report", "--input", "/no/such/file.json")[0] == 2
    assert run(capsys, "compare", "--sample", "fig5-left")[0] == 2
    with pytest.raises(SystemExit) as exc:
        main(["ribbonlength", "--sample", "fig8-left", "--width", "-1"])
    assert exc.value.code == 2
    with pytest.raises(SystemExit) as exc:
        main(["frobnicate"])
    assert exc.value.code == 2


def test_render_exit_codes(capsys, tmp_path):
    out = tmp_path / "sq.svg"
    code, _, _ = run(capsys, "render", "--sample", "ngon-4", "--width", "0.2",
                     "--output", str(out))
    assert code == 0 and out.read_text().count('class="strip"') == 4
    code, _, err = run(capsys, "render", "--sample", "fig8-left", "--width", "0.7",
                       "--output", str(tmp_path / "bad.svg"))
    assert code == 1 and "not allowed" in err
    code, svg, _ = run(capsys, "render", "--sample", "fig8-left")
    assert code == 0 and svg.startswith("<?xml")


def test_optimize_writes_result(capsys, tmp_path):
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps({"n": 3, "restarts": 1, "simplex_tol": 1e-4}))
    res, svg = tmp_path / "res.json", tmp_path / "best.svg"
    code, out, _ = run(capsys, "optimize", "--config", str(cfg), "--seed", "3",
                       "--output", str(res), "--svg", str(svg))
    assert code == 0
    data = json.loads(res.read_text())
    assert data["config"]["rng_seed"] == 3
    assert data["best_value"] == pytest.approx(3 * math.sqrt(3), abs=1e-2)
    assert svg.read_text().startswith("<?xml")


def test_optimize_infeasible_exit_three(capsys, monkeypatch):
    import ribbonknots.cli as cli
    from ribbonknots.errors import InfeasibleError

    def fail(cfg):
        raise InfeasibleError("no feasible configuration found")

    monkeypatch.setattr(cli, "minimize_ribbonlength", fail)
    code, _, err = run(capsys, "optimize", "--n", "3")
    assert code == 3 and "no feasible" in err


def test_optimize_bad_config(capsys, tmp_path):
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps({"n": 3, "restarts": 0}))
    assert run(capsys, "optimize", "--config", str(cfg))[0] == 2


def test_console_script_entry_point():
    proc = subprocess.run([sys.executable, "-m", "ribbonknots.cli", "samples"],
                          capture_output=True, text=True, check=True)
    assert "fig1-3stick" in proc.stdout
