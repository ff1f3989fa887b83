import json
import os

import pytest

from main import main

CFGS = os.path.join(os.path.dirname(os.path.dirname(os.path.abspath(__file__))), "cfgs")


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, out


def test_generate_is_deterministic(capsys):
    code, first = run(capsys, "generate", "--seed", "3", "--d", "3", "--n", "7")
    assert code == 0
    _, second = run(capsys, "generate", "--seed", "3", "--d", "3", "--n", "7")
    assert first == second
    doc = json.loads(first)
    assert (doc["d"], doc["n"], doc["seed"]) == (3, 7, 3)
    assert len(doc["coeffs"]) == 7


def test_generate_corrugated(capsys):
    code, out = run(capsys, "generate", "--seed", "1", "--corrugated")
    assert code == 0
    assert all(row[1] == "0" for row in json.loads(out)["coeffs"])


def test_generate_from_config(capsys):
    config = os.path.join(CFGS, "generate", "v1.0.0.yaml")
    _, from_config = run(capsys, "generate", "--config", config)
    _, from_flags = run(capsys, "generate", "--seed", "1", "--d", "3", "--n", "7")
    assert from_config == from_flags
    _, overridden = run(capsys, "generate", "--config", config, "--seed", "2")
    assert json.loads(overridden)["seed"] == 2


def test_bad_arguments(capsys):
    code, out = run(capsys, "generate", "--d", "3", "--n", "7")
    assert code == 2
    assert json.loads(out)["error"] == "BadArguments"
    code, out = run(capsys, "verify", "nosuch", "--seed", "0")
    assert code == 2
    code, _ = run(capsys, "generate", "--seed", "1", "--d", "3", "--n", "4")
    assert code == 2


def test_apply_with_trace(capsys, tmp_path):
    source = tmp_path / "polygon.json"
    assert main(["generate", "--seed", "1", "--output", str(source)]) == 0
    code, out = run(
        capsys, "apply", "--input", str(source), "--variant", "dented", "--m", "1",
        "--iterations", "2", "--trace",
    )
    assert code == 0
    doc = json.loads(out)
    assert doc["map"] == {"variant": "dented", "m": 1}
    assert len(doc["steps"]) == 3
    assert doc["steps"][0]["coeffs"] == json.loads(source.read_text())["coeffs"]


def test_apply_corrugated_map_on_generic_polygon(capsys):
    code, out = run(capsys, "apply", "--seed", "1", "--variant", "corrugated")
    assert code == 4
    doc = json.loads(out)
    assert doc["error"] == "NotCorrugated"
    assert doc["detail"] == {"step": 0}


def test_coeffs(capsys):
    code, out = run(capsys, "coeffs", "--seed", "1")
    assert code == 0
    doc = json.loads(out)
    assert len(doc["tilde"]) == 7
    assert len(doc["monodromy"]) == 4
    assert doc["is_closed"] is False


def test_verify_skips_maps_without_lax_variant(capsys):
    code, out = run(
        capsys, "verify", "conservation", "--seed", "0", "--trials", "1",
        "--variant", "generalized", "--I", "2,3", "--J", "1,1",
    )
    assert code == 0
    report = json.loads(out)
    assert report["passed"]
    assert report["checks"] == []
    assert report["skipped"][0]["reason"] == "no Lax variant registered"


def test_verify_duality(capsys):
    code, out = run(capsys, "verify", "duality", "--seed", "0", "--trials", "1")
    assert code == 0
    report = json.loads(out)
    assert report["suite"] == "duality"
    assert report["checks"] and all(check["passed"] for check in report["checks"])


def test_spectrum_with_genus(capsys):
    code, out = run(capsys, "spectrum", "--seed", "1", "--n", "5", "--genus")
    assert code == 0
    report = json.loads(out)
    assert report["genus"] == 6
    assert report["variant"]["name"] == "dented"
    assert report["invariants"]["tabulated"]


def test_plot_is_byte_stable(capsys, tmp_path):
    paths = [tmp_path / "a.svg", tmp_path / "b.svg"]
    for path in paths:
        code, out = run(
            capsys, "plot", "--d", "2", "--n", "6", "--seed", "1", "--variant", "generalized",
            "--I", "2", "--J", "1", "--iterations", "2", "--output", str(path),
        )
        assert code == 0
        assert json.loads(out)["points"] == [6, 6, 6]
    assert paths[0].read_bytes() == paths[1].read_bytes()
    assert paths[0].read_bytes().lstrip().startswith(b"<?xml")


def test_plot_chart_outside_dimension(capsys):
    code, _ = run(capsys, "plot", "--d", "2", "--n", "6", "--seed", "1", "--chart", "3,0,1")
    assert code == 2


@pytest.mark.parametrize("name", sorted(os.listdir(os.path.join(CFGS, "verify"))))
def test_verify_configs_parse(name):
    from pentagram_argparser import get_args

    args = get_args(["verify", "--config", os.path.join(CFGS, "verify", name)])
    assert args.version == name.split(".yaml")[0]
    assert args.suite is not None
    assert args.todict()["suite"] == args.suite
