import json
import math
import os
import subprocess

import pytest

import cnrrt


def free_map(width=32, height=32):
    m = cnrrt.GridMap(width, height)
    m.start = (2.5, 2.5)
    m.goal = (width - 2.5, height - 2.5)
    return m


def test_module_metadata():
    assert cnrrt.__version__
    assert cnrrt.PlannerKind.convex_neural != cnrrt.PlannerKind.rrt_star


def test_gridmap_basics():
    m = cnrrt.GridMap(5, 4)
    assert (m.width, m.height) == (5, 4)
    m.set_occupied(1, 2, True)
    assert m.occupied(1, 2)
    assert not m.occupied(0, 0)
    assert m.occupied_fraction() == pytest.approx(1 / 20)


def test_inflate_single_cell():
    m = cnrrt.GridMap(11, 11)
    m.set_occupied(5, 5, True)
    out = cnrrt.inflate(m, 1.0)
    occupied = {(r, c) for r in range(11) for c in range(11) if out.occupied(r, c)}
    assert occupied == {(5, 5), (4, 5), (6, 5), (5, 4), (5, 6)}


def test_corners_of_block():
    m = cnrrt.GridMap(10, 10)
    for r in range(3, 6):
        for c in range(3, 6):
            m.set_occupied(r, c, True)
    assert sorted(cnrrt.convex_corners(m)) == [(2, 2), (2, 6), (6, 2), (6, 6)]


def test_geometry_helpers():
    assert cnrrt.path_length([(0.0, 0.0), (3.0, 4.0)]) == pytest.approx(5.0)
    assert cnrrt.path_smoothness([(0.0, 0.0), (1.0, 0.0), (1.0, 1.0)]) == pytest.approx(math.pi / 2)
    m = cnrrt.GridMap(6, 6)
    m.set_occupied(2, 2, True)
    assert not cnrrt.segment_collision_free(m, (0.5, 0.5), (5.5, 5.5))
    assert cnrrt.segment_collision_free(m, (0.5, 0.5), (5.5, 0.5))


def test_visibility_on_free_map_is_straight():
    m = free_map()
    r = cnrrt.plan_visibility(m)
    assert r.success
    assert r.length == pytest.approx(math.dist(m.start, m.goal))


def test_plan_is_deterministic_and_valid():
    raw = cnrrt.generate_map(3, cnrrt.Difficulty.medium, 64, 64)
    cfg = cnrrt.PlannerConfig()
    cfg.seed = 11
    a = cnrrt.plan(raw, cnrrt.PlannerKind.convex_neural, cfg)
    b = cnrrt.plan(raw, cnrrt.PlannerKind.convex_neural, cfg)
    assert a.same_outcome(b)
    assert len(a.cost_trace) == a.iterations_used
    if a.success:
        assert a.path[0] == raw.start
        assert a.length == pytest.approx(cnrrt.path_length(a.path))
    record = json.loads(a.to_json())
    assert record["iterations_used"] == a.iterations_used


def test_every_planner_runs():
    inflated = cnrrt.inflate(cnrrt.generate_map(5, cnrrt.Difficulty.sparse, 64, 64), 2.0)
    region = cnrrt.oracle_guidance(inflated)
    corridor = cnrrt.oracle_corridor(inflated)
    cfg = cnrrt.PlannerConfig()
    cfg.max_iterations = 400
    for r in (
        cnrrt.plan_rrt_star(inflated, cfg),
        cnrrt.plan_neural(inflated, corridor, cfg),
        cnrrt.plan_neural_informed(inflated, corridor, cfg),
        cnrrt.plan_convex_neural(inflated, region, cfg),
    ):
        assert len(r.cost_trace) == r.iterations_used
        assert (r.path is None) != r.success


def test_config_validation():
    cfg = cnrrt.PlannerConfig()
    cfg.alpha = 1.5
    with pytest.raises(ValueError):
        cfg.validate()


def test_file_round_trip_and_errors(tmp_path):
    m = cnrrt.generate_map(1, cnrrt.Difficulty.hard, 64, 64)
    cnrrt.save_map(m, tmp_path / "m.ppm")
    assert cnrrt.load_map(tmp_path / "m.ppm") == m
    mask = cnrrt.GuidanceMask(64, 64)
    mask.set(3, 4, True)
    cnrrt.save_mask(mask, tmp_path / "k.pgm")
    back = cnrrt.load_mask(tmp_path / "k.pgm")
    assert back.test(3, 4) and back.count() == 1
    with pytest.raises(cnrrt.IoError):
        cnrrt.load_map(tmp_path / "missing.ppm")
    (tmp_path / "bad.ppm").write_bytes(b"P5\n1 1\n255\n\x00")
    with pytest.raises(cnrrt.FormatError):
        cnrrt.load_map(tmp_path / "bad.ppm")


def test_enclosed_goal_has_no_oracle_path():
    m = free_map(16, 16)
    for c in range(8, 16):
        m.set_occupied(8, c, True)
    for r in range(8, 16):
        m.set_occupied(r, 8, True)
    m.goal = (13.5, 13.5)
    with pytest.raises(cnrrt.NoPathError):
        cnrrt.oracle_guidance(m)


@pytest.mark.skipif(not os.environ.get("CNRRT_CLI"), reason="CLI not built")
def test_cli_plan_matches_module(tmp_path):
    raw = cnrrt.generate_map(4, cnrrt.Difficulty.sparse, 64, 64)
    cnrrt.save_map(raw, tmp_path / "m.ppm")
    out = subprocess.run(
        [os.environ["CNRRT_CLI"], "plan", "--map", str(tmp_path / "m.ppm"), "--planner", "convex_neural",
         "--oracle", "--seed", "9"],
        capture_output=True, text=True, check=False)
    assert out.returncode in (0, 1)
    cfg = cnrrt.PlannerConfig()
    cfg.seed = 9
    ours = json.loads(cnrrt.plan(raw, cnrrt.PlannerKind.convex_neural, cfg).to_json())
    theirs = json.loads(out.stdout)
    ours.pop("time_s")
    theirs.pop("time_s")
    assert ours == theirs
