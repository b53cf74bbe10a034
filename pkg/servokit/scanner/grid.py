"""
The (d, l, θ, φ) viewpoint lattice around a hole.

``d`` is the camera distance along the hole's z-axis, ``l`` the offset along
its x-axis; the camera first looks straight down the hole axis, then tilts by
θ about its own y-axis and by φ about its own x-axis.
"""
import itertools
import math
from dataclasses import dataclass

import numpy as np

from servokit.conf import MAX_GRID_POINTS
from servokit.exceptions import GridTooLarge, ValidationError
from servokit.geometry import RigidPose, compose, rot_x, rot_y
from servokit.utils import frange_count


__all__ = ('ScanGrid', 'Viewpoint', 'generate_grid', 'viewpoint_pose', 'LOOK_DOWN_AXIS')

# camera optical axis (z) along the hole's -z, camera x along the hole's x
LOOK_DOWN_AXIS = rot_x(math.pi)

AXES = ('l', 'd', 'theta', 'phi')


@dataclass(frozen=True)
class ScanGrid:
    """Lattice bounds; lengths in meters, angles in radians."""
    d_min: float
    d_max: float
    d_step: float
    l_min: float
    l_max: float
    l_step: float
    theta_min: float
    theta_max: float
    theta_step: float
    phi_min: float
    phi_max: float
    phi_step: float

    def __post_init__(self):
        for axis in AXES:
            low, high, step = self.bounds(axis)
            if not all(math.isfinite(v) for v in (low, high, step)):
                raise ValidationError("%s bounds must be finite" % axis)
            if high < low:
                raise ValidationError("%s_max must be >= %s_min" % (axis, axis))
            if step <= 0:
                raise ValidationError("%s_step must be > 0" % axis)

    def bounds(self, axis):
        return (getattr(self, axis + '_min'), getattr(self, axis + '_max'),
                getattr(self, axis + '_step'))

    def count(self, axis):
        low, high, step = self.bounds(axis)
        return frange_count(low, high, step)

    def values(self, axis):
        low, _, step = self.bounds(axis)
        return low + step * np.arange(self.count(axis))

    def size(self):
        return math.prod(self.count(axis) for axis in AXES)


@dataclass(frozen=True)
class Viewpoint:
    l: float
    d: float
    theta: float
    phi: float
    camera_pose: RigidPose


def viewpoint_pose(l, d, theta, phi, hole_in_world=None):
    """Camera pose in the world for one lattice point."""
    rotation = LOOK_DOWN_AXIS @ rot_y(theta) @ rot_x(phi)
    in_hole = RigidPose.from_matrix(rotation, (l, 0.0, d))
    if hole_in_world is None:
        return in_hole
    return compose(hole_in_world, in_hole)


def generate_grid(grid, hole_in_world=None):
    """
    Every viewpoint of ``grid``, ``l`` varying slowest and ``φ`` fastest.

    :raises GridTooLarge: above ``MAX_GRID_POINTS`` viewpoints.
    """
    size = grid.size()
    if size > MAX_GRID_POINTS:
        raise GridTooLarge(size, MAX_GRID_POINTS)
    hole_in_world = hole_in_world or RigidPose.identity()
    return [
        Viewpoint(float(l), float(d), float(theta), float(phi),
                  viewpoint_pose(l, d, theta, phi, hole_in_world))
        for l, d, theta, phi in itertools.product(*(grid.values(axis) for axis in AXES))
    ]
