import math

import numpy as np
import pytest

from servokit.exceptions import InvalidObservation, ValidationError
from servokit.features import (
    FeatureError, GoalSpec, HoleObservation, feature_error, hole_points_in_goal_frame,
)
from servokit.geometry import RigidPose, compose, relative_pose


def observation_for(goal, hole_in_goal):
    """Observation seeing the hole at ``hole_in_goal`` with an identity hand-eye."""
    hole_in_flange = compose(goal.desired_pose, hole_in_goal)
    return HoleObservation(hole_in_flange)


def test_aligned_points(goal):
    obs = observation_for(goal, RigidPose.identity())
    p1, p2 = hole_points_in_goal_frame(obs, RigidPose.identity(), goal)
    assert np.allclose(p1, [0, 0, 0], atol=1e-12)
    assert np.allclose(p2, [0, 0, 0.1], atol=1e-12)
    assert feature_error(p1, p2).max_abs() < 1e-12


def test_translated_hole(goal):
    obs = observation_for(goal, RigidPose((0.01, 0.02, 0.03)))
    error = feature_error(*hole_points_in_goal_frame(obs, RigidPose.identity(), goal))
    assert error.as_array() == pytest.approx([0.01, 0.02, 0.01, 0.02, 0.03], abs=1e-12)


def test_tilted_hole_moves_second_point_only(goal):
    # hole axis tilted about y: p2 leaves the YZ plane of the goal frame
    angle = math.radians(5)
    obs = observation_for(goal, RigidPose((0, 0, 0), 0.0, angle, 0.0))
    error = feature_error(*hole_points_in_goal_frame(obs, RigidPose.identity(), goal))
    assert error.e11 == pytest.approx(0.0, abs=1e-12)
    assert error.e21 == pytest.approx(0.1 * math.sin(angle), abs=1e-12)
    assert error.e22 == pytest.approx(0.0, abs=1e-12)
    assert error.e12 == pytest.approx(0.0, abs=1e-12)
    assert error.e13 == pytest.approx(0.0, abs=1e-12)


def test_rotation_about_first_point_keeps_its_components(goal):
    rng = np.random.default_rng(11)
    p1 = rng.uniform(-0.05, 0.05, size=3)
    for _ in range(100):
        angles = rng.uniform(-math.pi, math.pi, size=3)
        obs = observation_for(goal, RigidPose(tuple(p1), *angles))
        error = feature_error(*hole_points_in_goal_frame(obs, RigidPose.identity(), goal))
        assert (error.e11, error.e12, error.e13) == pytest.approx(tuple(p1), abs=1e-12)


def test_hand_eye_is_applied():
    goal = GoalSpec(RigidPose((0.0, 0.0, 0.5)))
    hand_eye = RigidPose((0.05, 0.0, 0.0))
    # camera sees the hole 0.05 m further along -x than the flange does
    obs = HoleObservation(RigidPose((-0.05, 0.0, 0.5)))
    p1, _ = hole_points_in_goal_frame(obs, hand_eye, goal)
    assert np.allclose(p1, 0.0, atol=1e-12)


def test_error_does_not_depend_on_the_hand_eye(goal):
    rng = np.random.default_rng(12)
    for _ in range(100):
        hole_in_goal = RigidPose(tuple(rng.uniform(-0.1, 0.1, size=3)),
                                 *rng.uniform(-0.5, 0.5, size=3))
        hand_eye = RigidPose(tuple(rng.uniform(-0.2, 0.2, size=3)),
                             *rng.uniform(-math.pi, math.pi, size=3))
        seen = relative_pose(hand_eye, compose(goal.desired_pose, hole_in_goal))
        through_camera = feature_error(
            *hole_points_in_goal_frame(HoleObservation(seen), hand_eye, goal))
        direct = feature_error(*hole_points_in_goal_frame(
            observation_for(goal, hole_in_goal), RigidPose.identity(), goal))
        assert np.allclose(through_camera.as_array(), direct.as_array(), atol=1e-9)


def test_error_vanishes_exactly_when_aligned(goal):
    rng = np.random.default_rng(13)
    for trial in range(200):
        offsets = np.zeros(5)
        if trial % 2:
            # one of x, y, z, b, c off by at least a millimeter or milliradian
            offsets[rng.integers(5)] = rng.choice([-1, 1]) * rng.uniform(1e-3, 0.5)
        x, y, z, b, c = offsets
        hole_in_goal = RigidPose((x, y, z), rng.uniform(-math.pi, math.pi), b, c)
        error = feature_error(*hole_points_in_goal_frame(
            observation_for(goal, hole_in_goal), RigidPose.identity(), goal))
        if trial % 2:
            assert error.max_abs() > 1e-5
        else:
            assert error.max_abs() < 1e-12


def test_error_ordering():
    error = feature_error((1.0, 2.0, 3.0), (4.0, 5.0, 6.0))
    assert error == FeatureError(1.0, 2.0, 4.0, 5.0, 3.0)
    assert FeatureError.from_array(error.as_array()) == error


def test_invalid_observation_raises(goal):
    obs = HoleObservation(RigidPose.identity(), timestamp=1.5, valid=False)
    with pytest.raises(InvalidObservation) as excinfo:
        hole_points_in_goal_frame(obs, RigidPose.identity(), goal)
    assert excinfo.value.timestamp == 1.5


@pytest.mark.parametrize('offset', [0.0, -0.1, float('nan')])
def test_axis_offset_must_be_positive(offset):
    with pytest.raises(ValidationError):
        GoalSpec(RigidPose.identity(), offset)


def test_goal_from_flange_in_hole():
    flange_in_hole = RigidPose((0.0, 0.15, 0.6), 0.1, 0.2, 0.3)
    goal = GoalSpec.from_flange_in_hole(flange_in_hole)
    assert np.allclose(goal.flange_in_hole.matrix(), flange_in_hole.matrix(), atol=1e-12)
    assert goal.axis_offset == 0.1
