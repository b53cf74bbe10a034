"""
Point-to-plane features.

Two points sit on the hole's principal axis: ``p1`` at the hole origin and
``p2 = p1 + λ·n_hole``. Three planes are the coordinate planes of the goal
frame D, which is rigidly attached to the flange and coincides with the hole
frame once the flange reaches its desired pose. The error vector collects the
signed distances ``n_j · p_i`` in the fixed order ``(e11, e12, e21, e22, e13)``.
"""
import math
from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from servokit.conf import DEFAULT_AXIS_OFFSET
from servokit.exceptions import InvalidObservation, ValidationError
from servokit.geometry import RigidPose, compose, invert, vec3


__all__ = (
    'GoalSpec', 'HoleObservation', 'FeatureError', 'PLANE_NORMALS',
    'hole_in_goal_frame', 'hole_points_in_goal_frame', 'feature_error',
)

# normals of the YZ, XZ and XY planes of the goal frame
PLANE_NORMALS = np.eye(3)


@dataclass(frozen=True)
class GoalSpec:
    """
    .. attribute:: desired_pose

        desired pose of the hole frame relative to the flange frame

    .. attribute:: axis_offset

        distance λ from ``p1`` to ``p2`` along the hole axis, meters
    """
    desired_pose: RigidPose = field(default_factory=RigidPose.identity)
    axis_offset: float = DEFAULT_AXIS_OFFSET

    def __post_init__(self):
        if not (math.isfinite(self.axis_offset) and self.axis_offset > 0):
            raise ValidationError("axis_offset must be > 0, got %r" % (self.axis_offset,))

    @classmethod
    def from_flange_in_hole(cls, flange_in_hole, axis_offset=DEFAULT_AXIS_OFFSET):
        """Goal from the desired flange pose as seen from the hole."""
        return cls(invert(flange_in_hole), axis_offset)

    @cached_property
    def goal_from_flange(self):
        """Maps flange coordinates into goal-frame coordinates."""
        return invert(self.desired_pose)

    @property
    def flange_in_hole(self):
        """Desired flange pose as seen from the hole (same transform)."""
        return self.goal_from_flange


@dataclass(frozen=True)
class HoleObservation:
    hole_in_camera: RigidPose
    timestamp: float = 0.0
    valid: bool = True


@dataclass(frozen=True)
class FeatureError:
    e11: float
    e12: float
    e21: float
    e22: float
    e13: float

    NAMES = ('e11', 'e12', 'e21', 'e22', 'e13')

    @classmethod
    def zero(cls):
        return cls(0.0, 0.0, 0.0, 0.0, 0.0)

    @classmethod
    def from_array(cls, values):
        return cls(*(float(v) for v in values))

    def as_array(self):
        return np.array([self.e11, self.e12, self.e21, self.e22, self.e13])

    def max_abs(self):
        return float(np.max(np.abs(self.as_array())))

    def norm(self):
        return float(np.linalg.norm(self.as_array()))


def hole_in_goal_frame(obs, hand_eye, goal):
    """Pose of the hole frame expressed in the goal frame D."""
    if not obs.valid:
        raise InvalidObservation(obs.timestamp)
    return compose(goal.goal_from_flange, hand_eye, obs.hole_in_camera)


def hole_points_in_goal_frame(obs, hand_eye, goal):
    """
    The two axis points ``p1``, ``p2`` of the observed hole in the goal frame.

    When the flange sits exactly at the desired pose ``p1 = (0, 0, 0)`` and
    ``p2 = (0, 0, λ)``.

    :param obs: a valid :class:`HoleObservation`.
    :param hand_eye: pose of the camera frame in the flange frame.
    :param goal: the :class:`GoalSpec`.
    :rtype: tuple ``(p1, p2)`` of 3-vectors.
    """
    hole = hole_in_goal_frame(obs, hand_eye, goal)
    p1 = hole.translation.copy()
    p2 = p1 + goal.axis_offset * hole.rotation[:, 2]
    return p1, p2


def feature_error(p1, p2):
    """
    Distances of both points to the goal-frame coordinate planes.

    >>> feature_error((1.0, 2.0, 3.0), (1.0, 2.0, 4.0)).as_array().tolist()
    [1.0, 2.0, 1.0, 2.0, 3.0]
    """
    d1 = (PLANE_NORMALS @ vec3(p1)).tolist()
    d2 = (PLANE_NORMALS @ vec3(p2)).tolist()
    return FeatureError(e11=d1[0], e12=d1[1], e21=d2[0], e22=d2[1], e13=d1[2])
