import json

import pytest

import mlspectra


def test_type_c_report():
    r = mlspectra.report("type-c-net")
    assert r["ml_degree"] == 2
    assert r["reciprocal_degree"] == 3
    assert r["is_ml_maximal"] is False


def test_report_from_dict_matches_builtin():
    as_dict = mlspectra.report(mlspectra.builtin("diagonal-net"))
    assert as_dict == mlspectra.report("diagonal-net")
    assert as_dict["is_ml_maximal"] is True


def test_degrees():
    assert mlspectra.ml_degree("diagonal-net-polar")["count"] == 1
    assert mlspectra.reciprocal_degree("diagonal-net-polar")["count"] == 4


def test_badness():
    assert mlspectra.bad("nonclosed-2x2")["verdict"] == "bad"
    assert mlspectra.bad(mlspectra.sample(3, 3, seed=7), seed=7)["verdict"] == "not_bad"


def test_adjugate_and_annihilator():
    assert mlspectra.adjugate([[1, 0, 0], [0, 1, 0], [0, 0, 0]]) == [
        ["0", "0", "0"],
        ["0", "0", "0"],
        ["0", "0", "1"],
    ]
    assert len(mlspectra.annihilator("diagonal-net")["basis"]) == 3


def test_blowup():
    t = mlspectra.blowup("example53", params=["b01", "b02", "b1", "b2"])
    assert t["d"] == 1


def test_repro_subset(tmp_path):
    rows = mlspectra.repro(["eps-blowup", "n2-sanity"])
    assert [r["passed"] for r in rows] == [True, True]
    path = tmp_path / "s.json"
    path.write_text(json.dumps(mlspectra.sample(2, 2, seed=1)))
    assert mlspectra.report(str(path))["ml_degree"] == 1


def test_errors():
    with pytest.raises(ValueError):
        mlspectra.report({"n": 2, "basis": [[1, 0, 0, 1], [2, 0, 0, 2]]})
    with pytest.raises(mlspectra.LoadError):
        mlspectra.report("no-such-builtin")
