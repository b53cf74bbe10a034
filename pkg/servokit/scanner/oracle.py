"""
Analytic stand-in for the hole detector.

A viewpoint finds the hole when the hole centre is within the camera's depth
range and field of view and the camera looks into the hole steeply enough.
"""
import math
from dataclasses import dataclass

import numpy as np

from servokit.conf import DEFAULT_ORACLE
from servokit.exceptions import ValidationError
from servokit.geometry import RigidPose, relative_pose


__all__ = ('DetectOracle', 'ViewpointResult', 'evaluate_viewpoint', 'SLACK')

SLACK = 1e-9


@dataclass(frozen=True)
class DetectOracle:
    """Range in meters, half-angles and incidence limit in radians."""
    range_min: float = DEFAULT_ORACLE['range_min']
    range_max: float = DEFAULT_ORACLE['range_max']
    fov_half_h: float = math.radians(DEFAULT_ORACLE['fov_half_h'])
    fov_half_v: float = math.radians(DEFAULT_ORACLE['fov_half_v'])
    incidence_max: float = math.radians(DEFAULT_ORACLE['incidence_max'])

    def __post_init__(self):
        for name in ('range_min', 'range_max'):
            value = getattr(self, name)
            if not (math.isfinite(value) and value >= 0):
                raise ValidationError("%s must be >= 0, got %r" % (name, value))
        for name in ('fov_half_h', 'fov_half_v', 'incidence_max'):
            value = getattr(self, name)
            if not 0 < value < math.pi / 2:
                raise ValidationError("%s must be in (0, 90) degrees, got %r"
                                      % (name, math.degrees(value)))


@dataclass(frozen=True)
class ViewpointResult:
    l: float
    d: float
    theta: float
    phi: float
    camera_pose: RigidPose
    found: bool


def evaluate_viewpoint(vp, oracle, hole_in_world=None):
    hole_in_world = hole_in_world or RigidPose.identity()
    hole_in_camera = relative_pose(vp.camera_pose, hole_in_world)
    x, y, z = hole_in_camera.t

    distance = math.sqrt(x * x + y * y + z * z)
    in_range = oracle.range_min - SLACK <= distance <= oracle.range_max + SLACK
    in_view = (z > 0
               and math.atan2(abs(x), z) <= oracle.fov_half_h + SLACK
               and math.atan2(abs(y), z) <= oracle.fov_half_v + SLACK)
    # the hole axis has to point back at the camera
    facing = float(np.clip(-hole_in_camera.axis_z[2], -1.0, 1.0))
    steep_enough = math.acos(facing) <= oracle.incidence_max + SLACK

    return ViewpointResult(vp.l, vp.d, vp.theta, vp.phi, vp.camera_pose,
                           bool(in_range and in_view and steep_enough))
