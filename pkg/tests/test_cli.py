import json
import subprocess
import sys

import numpy as np
import pytest

from rov import cli, region
from rov import io as rio
from rov.presets import get_preset


def run(capsys, *argv):
    code = cli.main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


# -- boundary ----------------------------------------------------------------


def test_boundary_class_p_figure1(capsys):
    code, out, _ = run(capsys, "boundary", "--class", "p", "--figure", "1")
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "theta,re,im" and len(lines) == 513
    assert out.endswith("\n") and "\r" not in out


def test_boundary_singleton_row(capsys):
    code, out, _ = run(capsys, "boundary", "--class", "b", "--z0", "0,0")
    assert code == 0
    _, vals = rio.read_curve_csv(out)
    assert vals.tolist() == [get_preset(1, "B").params.alpha]


@pytest.mark.parametrize(
    "argv, name",
    [
        (["boundary", "--class", "p", "--m", "0.9"], "InvalidM"),
        (["boundary", "--class", "b", "--beta", "1.2,0"], "InvalidBeta"),
        (["boundary", "--class", "p", "--z0", "0.6,0.8"], "InvalidZ0"),
        (["boundary", "--class", "p", "--alpha", "0,0"], "InvalidAlpha"),
        (["boundary", "--class", "p", "--lambda", "1.5,0"], "InvalidLambda"),
        (["boundary", "--class", "p", "--beta", "0.1,0"], "UsageError"),
        (["figure", "6"], "UnknownPreset"),
        (["sample", "--a", "2,0"], "InvalidA"),
        (["disk", "--path", "0.99,0.5"], "InvalidPath"),
    ],
)
def test_invalid_input_exit_code(capsys, argv, name):
    code, _, err = run(capsys, *argv)
    assert code == 2
    assert err.startswith(name)


def test_relax_flag(capsys):
    code, out, err = run(capsys, "boundary", "--class", "p", "--m", "0.73", "--relax-univalence",
                         "--samples", "32")
    assert code == 0 and "RelaxedClassWarning" in err
    assert len(out.splitlines()) == 33


def test_no_convergence_exit_code(capsys, monkeypatch):
    from rov.errors import NoConvergence

    def boom(*a, **k):
        raise NoConvergence("forced")

    monkeypatch.setattr(region, "boundary_curve", boom)
    code, _, err = run(capsys, "boundary")
    assert code == 3 and err.startswith("NoConvergence")


def test_csv_round_trip(tmp_path, capsys):
    out = tmp_path / "c.csv"
    assert run(capsys, "boundary", "--figure", "3", "--out", str(out))[0] == 0
    th, vals = rio.read_curve_csv(out.read_text())
    curve = region.boundary_curve(get_preset(3, "B").params, 512)
    np.testing.assert_array_equal(th, curve.thetas)
    np.testing.assert_array_equal(vals, curve.values)


def test_determinism(tmp_path, capsys):
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    for path in (a, b):
        run(capsys, "boundary", "--class", "p", "--figure", "4", "--out", str(path))
    assert a.read_bytes() == b.read_bytes()
    j1 = run(capsys, "check", "--figure", "1", "--suite", "geometry")[1]
    j2 = run(capsys, "check", "--figure", "1", "--suite", "geometry")[1]
    assert j1 == j2


def test_tolerance_from_environment(capsys, monkeypatch):
    seen = []
    real = region.boundary_curve

    def spy(p, n, tol):
        seen.append(tol)
        return real(p, n, tol)

    monkeypatch.setattr(region, "boundary_curve", spy)
    monkeypatch.setenv("ROV_TOL", "1e-6")
    run(capsys, "boundary", "--samples", "16")
    run(capsys, "boundary", "--samples", "16", "--tol", "1e-8")
    monkeypatch.delenv("ROV_TOL")
    run(capsys, "boundary", "--samples", "16")
    assert seen == [1e-6, 1e-8, 1e-10]


def test_boundary_svg(tmp_path, capsys):
    svg = tmp_path / "c.svg"
    assert run(capsys, "boundary", "--svg", str(svg), "--samples", "64")[0] == 0
    text = svg.read_text()
    assert text.startswith("<svg") and 'width="800"' in text and 'height="800"' in text
    assert text.count(" Z\"") == 1 and 'stroke="red"' in text


# -- figure ------------------------------------------------------------------


def test_figure_writes_both_panels(tmp_path, capsys, monkeypatch):
    monkeypatch.chdir(tmp_path)
    code, out, _ = run(capsys, "figure", "1", "--out", "f_")
    assert code == 0
    assert "figure1-B" in out and "convex=pass" in out and "figure1-P" in out
    text = (tmp_path / "figure1.svg").read_text()
    assert text.count("<g>") == 2 and 'width="1600"' in text
    assert (tmp_path / "f_figure1_b.csv").exists() and (tmp_path / "f_figure1_p.csv").exists()


def test_figure_refinement_consistency(tmp_path, capsys):
    coarse, fine = tmp_path / "c_", tmp_path / "f_"
    run(capsys, "figure", "3", "--out", str(coarse), "--svg", str(tmp_path / "c.svg"))
    run(capsys, "figure", "3", "--samples", "2048", "--out", str(fine),
        "--svg", str(tmp_path / "f.svg"))
    for side in ("b", "p"):
        th_c, w_c = rio.read_curve_csv((tmp_path / f"c_figure3_{side}.csv").read_text())
        th_f, w_f = rio.read_curve_csv((tmp_path / f"f_figure3_{side}.csv").read_text())
        np.testing.assert_allclose(th_f[3::4], th_c, rtol=0, atol=1e-15)
        scale = max(1.0, region.diameter(w_c))
        assert np.max(np.abs(w_f[3::4] - w_c)) <= 1e-9 * scale


# -- check -------------------------------------------------------------------


def test_check_identities_figure2(capsys):
    code, out, _ = run(capsys, "check", "--suite", "identities", "--figure", "2", "--class", "p")
    doc = json.loads(out)
    assert code == 0 and doc["pass"]
    assert doc["preset"]["name"] == "figure2-P"
    for c in doc["checks"]:
        assert set(c) >= {"name", "pass", "margin", "witness"}


def test_check_all_presets_only_the_out_of_class_caption_fails(capsys):
    code, out, err = run(capsys, "check", "--suite", "all")
    doc = json.loads(out)
    assert len(doc["preset"]) == 10
    failed = {(c["preset"], c["name"]) for c in doc["checks"] if not c["pass"]}
    assert code == 1 and failed
    assert {name for name, _ in failed} == {"figure2-B"}
    assert "RelaxedClassWarning: figure2-B" in err
    assert {"covering", "extremal_identity", "class_membership"} <= {c for _, c in failed}


def test_check_corrupted_m(capsys):
    code, out, err = run(capsys, "check", "--figure", "1", "--class", "b", "--suite",
                         "membership", "--inflate-m", "10")
    doc = json.loads(out)
    assert code == 1 and not doc["pass"]
    bad = [c for c in doc["checks"] if c["name"] == "class_membership"][0]
    assert bad["witness"] is not None and bad["margin"] > get_preset(1, "B").params.m
    assert "CheckFailed: figure1-B class_membership" in err


def test_check_custom_params_run_once(capsys):
    code, out, _ = run(capsys, "check", "--class", "p", "--lambda", "0", "--m", "0.5",
                       "--alpha", "1", "--z0", "0.5")
    doc = json.loads(out)
    assert code == 0 and doc["preset"]["name"] == "custom-P"
    assert "sup_bound_p" in {c["name"] for c in doc["checks"]}


def test_check_singleton_params(capsys):
    code, out, _ = run(capsys, "check", "--class", "p", "--lambda", "1", "--m", "0.5",
                       "--alpha", "1", "--z0", "0.5", "--suite", "geometry")
    doc = json.loads(out)
    assert code == 0
    assert [c["name"] for c in doc["checks"]] == ["bounded", "singleton"]


def test_check_json_file(tmp_path, capsys):
    path = tmp_path / "r.json"
    code, out, _ = run(capsys, "check", "--figure", "5", "--class", "b", "--suite", "geometry",
                       "--json", str(path))
    assert code == 0 and out == ""
    assert json.loads(path.read_text())["pass"] is True


# -- sample and disk ---------------------------------------------------------


def test_sample_verdicts(capsys):
    p = get_preset(1, "B").params
    code, out, _ = run(capsys, "sample", "--a", "0,0")
    value, verdict = out.splitlines()
    assert code == 0 and verdict == "inside"
    assert complex(*map(float, value.split(","))) == pytest.approx(region.interior_point(p),
                                                                   rel=1e-12)
    code, out, _ = run(capsys, "sample", "--a", "1,0")
    assert out.splitlines()[1] == "on-boundary"
    code, out, _ = run(capsys, "sample", "--class", "p", "--lambda", "1", "--a", "0.2,0.1")
    assert out.splitlines()[1] == "singleton"


def test_disk_json(capsys):
    code, out, _ = run(capsys, "disk", "--class", "p", "--lambda", "0", "--m", "0.5",
                       "--alpha", "1", "--z0", "0.5")
    doc = json.loads(out)
    assert code == 0
    assert doc["radius"] == pytest.approx(0.25 * np.log(1.25 / 0.75), rel=1e-12)
    assert doc["path"] == [[0.0, 0.0], [0.5, 0.0]]


def test_disk_polyline(capsys):
    code, out, _ = run(capsys, "disk", "--figure", "1", "--path", "0.2,-0.1;0.1,-0.4")
    doc = json.loads(out)
    assert code == 0 and len(doc["path"]) == 4
    z0 = get_preset(1, "B").params.z0
    assert doc["path"][-1] == [z0.real, z0.imag]


def test_console_entry_point():
    r = subprocess.run([sys.executable, "-m", "rov", "figure", "9"], capture_output=True,
                       text=True)
    assert r.returncode == 2 and r.stderr.startswith("UnknownPreset")


# -- presets -----------------------------------------------------------------


def test_presets_catalogue():
    from rov.errors import UnknownPreset
    from rov.presets import all_presets

    presets = all_presets()
    assert [pr.name for pr in presets][:2] == ["figure1-B", "figure1-P"] and len(presets) == 10
    assert [pr.name for pr in presets if not pr.in_class] == ["figure2-B"]
    p = get_preset(1, "b").params
    assert (p.z0, p.alpha, p.lam, p.m, p.beta) == (
        0.00882581 - 0.514124j, -230.939 + 799.526j, 0.427174 + 0.0755107j, 509.317,
        0.94485 + 0.0416585j,
    )
    assert get_preset(5, "P").params.lam == 0.63945
    for bad in ((0, "B"), (6, "P"), (1, "Q")):
        with pytest.raises(UnknownPreset):
            get_preset(*bad)
