import copy
import json

import pytest

from widthlab.geometry import DimensionError
from widthlab.scenarios import (BASES, SceneError, corpus_paths, cross_check, load_scene,
                                run_scene, scene_from_dict)

MINIMAL = {
    "name": "mini",
    "norm": {"kind": "l1", "dim": 2},
    "bodies": {"K": {"points": [["-1", "0"], ["1", "0"]]}},
    "query": {"op": "diameter"},
    "expected": {"diam": {"value": "2", "basis": "reference"}},
}


@pytest.mark.parametrize("path", corpus_paths(), ids=lambda p: p.stem)
def test_corpus_scene(path):
    report = run_scene(load_scene(path))
    assert report.passed, report.mismatches


def test_corpus_is_well_formed():
    paths = corpus_paths()
    assert len(paths) >= 40
    for p in paths:
        data = json.loads(p.read_text())
        assert data["name"] == p.stem
        for exp in data["expected"].values():
            assert exp["basis"] in BASES
            if exp["basis"] == "derived":
                assert exp["oracle"].startswith("oracle_")


def test_minimal_scene():
    rep = run_scene(scene_from_dict(MINIMAL))
    assert rep.passed and rep.computed["diam"] == "2/1"


def test_wrong_expectation_is_reported():
    data = copy.deepcopy(MINIMAL)
    data["expected"]["diam"]["value"] = "3"
    rep = run_scene(scene_from_dict(data))
    assert not rep.passed
    assert rep.mismatches == [{"key": "diam", "expected": "3", "got": "2/1",
                               "basis": "reference"}]


@pytest.mark.parametrize("mutate", [
    lambda d: d.pop("query"),
    lambda d: d["norm"].update(kind="l3"),
    lambda d: d["expected"]["diam"].update(basis="paper"),
    lambda d: d["expected"]["diam"].update(basis="derived"),
    lambda d: d["bodies"]["K"].update(ball={"center": [0, 0], "radius": 1}),
])
def test_schema_violations(mutate):
    data = copy.deepcopy(MINIMAL)
    mutate(data)
    with pytest.raises(SceneError):
        scene_from_dict(data)


def test_dimension_mismatch():
    data = copy.deepcopy(MINIMAL)
    data["bodies"]["K"]["points"] = [["0", "0", "0"], ["1", "0", "0"]]
    with pytest.raises(DimensionError):
        scene_from_dict(data)


def test_unknown_op_and_body():
    data = copy.deepcopy(MINIMAL)
    data["query"]["op"] = "volume"
    with pytest.raises(SceneError):
        run_scene(scene_from_dict(data))
    with pytest.raises(SceneError):
        scene_from_dict(MINIMAL).body("L")


def test_load_by_name_falls_back_to_corpus():
    assert load_scene("l1_tetrahedron.json").name == "l1_tetrahedron"


def test_cross_check_agrees():
    res = cross_check(load_scene("linf_segment.json"), n_points=400)
    (body,) = res.values()
    assert body["diameter"] and body["eta_membership"] and body["constant_width"]
    assert body["eta_disagreements"] == 0 and body["eta_points"] >= 300
