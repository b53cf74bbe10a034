import math

import numpy as np
import pytest

from servokit.conf import shipped_config
from servokit.conf.loader import load_scan_config
from servokit.exceptions import GridTooLarge, ValidationError
from servokit.geometry import RigidPose
from servokit.scanner import (
    CSV_COLUMNS, DetectOracle, ScanGrid, evaluate_viewpoint, generate_grid, run_scan,
    viewpoint_pose,
)
from servokit.scanner.grid import Viewpoint


def grid(d=(0.3, 1.2, 0.3), l=(0.0, 0.45, 0.15), theta=(-10, 10, 10), phi=(-10, 10, 10)):
    theta = [math.radians(v) for v in theta]
    phi = [math.radians(v) for v in phi]
    return ScanGrid(*d, *l, *theta, *phi)


def viewpoint(l, d, theta=0.0, phi=0.0):
    return Viewpoint(l, d, theta, phi, viewpoint_pose(l, d, theta, phi))


@pytest.fixture(scope='module')
def shipped_scan():
    config = load_scan_config(shipped_config('paper_scan.cfg'))
    return run_scan(config.grid, config.oracle, config.hole_in_world)


def test_grid_counts():
    g = grid()
    assert [g.count(axis) for axis in ('l', 'd', 'theta', 'phi')] == [4, 4, 3, 3]
    assert g.size() == 144
    assert g.values('d') == pytest.approx([0.3, 0.6, 0.9, 1.2])


def test_grid_order():
    viewpoints = generate_grid(grid())
    assert len(viewpoints) == 144
    first, second, last = viewpoints[0], viewpoints[1], viewpoints[-1]
    assert (first.l, first.d) == (0.0, pytest.approx(0.3))
    assert first.theta == first.phi == pytest.approx(math.radians(-10))
    assert second.phi == pytest.approx(0.0) and second.theta == first.theta
    assert last.l == pytest.approx(0.45) and last.d == pytest.approx(1.2)


def test_grid_validation():
    with pytest.raises(ValidationError):
        grid(d=(0.3, 1.2, 0.0))
    with pytest.raises(ValidationError):
        grid(l=(0.5, 0.0, 0.1))


def test_grid_limit():
    huge = grid(d=(0.0, 1.0, 1e-3), l=(0.0, 1.0, 1e-3))
    with pytest.raises(GridTooLarge) as excinfo:
        generate_grid(huge)
    assert excinfo.value.count == huge.size()


def test_camera_looks_down_the_hole():
    pose = viewpoint_pose(0.0, 0.5, 0.0, 0.0)
    assert np.allclose(pose.translation, [0, 0, 0.5])
    assert np.allclose(pose.axis_z, [0, 0, -1], atol=1e-12)


def test_camera_pose_follows_hole():
    hole = RigidPose((1.0, 2.0, 0.0), math.pi / 2, 0.0, 0.0)
    pose = viewpoint_pose(0.1, 0.5, 0.0, 0.0, hole)
    assert np.allclose(pose.translation, [1.0, 2.1, 0.5], atol=1e-12)


def test_on_axis_viewpoint_found():
    assert evaluate_viewpoint(viewpoint(0.0, 0.5), DetectOracle()).found


@pytest.mark.parametrize('l, d, theta, phi', [
    (0.0, 0.2, 0.0, 0.0),     # too close
    (0.0, 3.5, 0.0, 0.0),     # too far
    (0.0, 0.5, 40.0, 0.0),    # hole axis too oblique
    (0.6, 0.5, 0.0, 0.0),     # outside the horizontal field of view
])
def test_viewpoint_not_found(l, d, theta, phi):
    vp = viewpoint(l, d, math.radians(theta), math.radians(phi))
    assert not evaluate_viewpoint(vp, DetectOracle()).found


def test_tilt_within_limits_found():
    vp = viewpoint(0.0, 0.5, math.radians(20.0), 0.0)
    assert evaluate_viewpoint(vp, DetectOracle()).found


def test_oracle_validation():
    with pytest.raises(ValidationError):
        DetectOracle(range_min=-0.1)
    with pytest.raises(ValidationError):
        DetectOracle(fov_half_h=math.radians(90))


def test_zero_range_finds_nothing():
    report = run_scan(grid(), DetectOracle(range_min=0.0, range_max=0.0))
    assert len(report) == 144
    assert report.found() == []
    assert all(bounds is None for bounds in report.summary().values())


def widened(rng, angle):
    """An angle between ``angle`` and just under 90 degrees."""
    return angle + rng.uniform() * (math.radians(89.9) - angle)


def test_relaxed_oracle_keeps_every_detection():
    rng = np.random.default_rng(21)
    detections = 0
    for _ in range(25):
        d_min, l_min = rng.uniform(0.05, 0.8), rng.uniform(-0.4, 0.0)
        g = grid(d=(d_min, d_min + rng.uniform(0.0, 1.0), rng.uniform(0.2, 0.4)),
                 l=(l_min, l_min + rng.uniform(0.0, 0.6), rng.uniform(0.1, 0.2)),
                 theta=(-30, 30, rng.uniform(10, 30)), phi=(-30, 30, rng.uniform(10, 30)))
        hole = RigidPose(tuple(rng.uniform(-0.5, 0.5, size=3)), *rng.uniform(-0.3, 0.3, size=3))
        strict = DetectOracle(
            range_min=rng.uniform(0.1, 0.5), range_max=rng.uniform(0.5, 1.5),
            fov_half_h=math.radians(rng.uniform(5, 45)),
            fov_half_v=math.radians(rng.uniform(5, 45)),
            incidence_max=math.radians(rng.uniform(5, 45)))
        relaxed = DetectOracle(
            range_min=strict.range_min * rng.uniform(),
            range_max=strict.range_max + rng.uniform(0.0, 1.0),
            fov_half_h=widened(rng, strict.fov_half_h),
            fov_half_v=widened(rng, strict.fov_half_v),
            incidence_max=widened(rng, strict.incidence_max))
        before = run_scan(g, strict, hole).results
        after = run_scan(g, relaxed, hole).results
        assert len(before) == len(after) == g.size()
        assert all(b.found <= a.found for b, a in zip(before, after))
        detections += sum(b.found for b in before)
    assert detections > 0


def test_shipped_scan(shipped_scan):
    assert len(shipped_scan) == 144
    assert shipped_scan.column(0.0) == pytest.approx([0.3, 0.6, 0.9, 1.2])
    summary = shipped_scan.summary()
    assert summary['d'] == (pytest.approx(0.3), pytest.approx(1.2))
    assert summary['theta'] == (pytest.approx(math.radians(-10)), pytest.approx(math.radians(10)))


def test_locations(shipped_scan):
    locations = shipped_scan.locations()
    assert len(locations) == 16
    assert all(tested == 9 for _, tested in locations.values())
    assert locations[(0.0, 0.3)][0] == 9
    assert sum(found for found, _ in locations.values()) == len(shipped_scan.found())


def test_parallel_scan_keeps_order(shipped_scan):
    report = run_scan(grid(), workers=4)
    assert report.to_csv_string() == shipped_scan.to_csv_string()


def test_scan_files(shipped_scan, tmp_path):
    csv_path, summary_path = shipped_scan.to_files(tmp_path / 'scan.csv')
    lines = csv_path.read_text(encoding='ascii').splitlines()
    assert lines[0] == ','.join(CSV_COLUMNS)
    assert len(lines) == 145
    assert [float(v) for v in lines[1].split(',')[2:4]] == pytest.approx([-10.0, -10.0])
    assert summary_path.name == 'scan.summary.txt'
    assert 'found: %d' % len(shipped_scan.found()) in summary_path.read_text(encoding='ascii')


def test_single_location_has_nine_viewpoints():
    assert len(generate_grid(grid(d=(0.6, 0.6, 0.3), l=(0.0, 0.0, 0.15)))) == 9


def test_degenerate_grid():
    single = grid(d=(0.6, 0.6, 0.1), l=(0.0, 0.0, 0.1), theta=(0, 0, 1), phi=(0, 0, 1))
    report = run_scan(single)
    assert len(report) == 1
    summary = report.summary()
    assert summary['d'] == (0.6, 0.6)
    assert summary['l'] == summary['theta'] == summary['phi'] == (0.0, 0.0)


@pytest.mark.parametrize('d, theta, found', [(0.6, 0.0, True), (0.1, 0.0, False), (0.6, 80.0, False)])
def test_on_axis_examples(d, theta, found):
    vp = viewpoint(0.0, d, math.radians(theta))
    assert evaluate_viewpoint(vp, DetectOracle()).found is found
