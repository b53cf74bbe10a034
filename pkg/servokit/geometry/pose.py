"""
Rigid poses: where one frame sits in another.

``RigidPose`` maps points from the child frame to the parent frame:
``v_parent = R @ v_child + t``.
"""
import math
from dataclasses import dataclass
from functools import cached_property
from typing import Tuple

import numpy as np

from servokit.exceptions import ValidationError
from servokit.geometry.rotation import (
    euler_to_rotation, is_rotation, rotation_to_euler, wrap_angle,
)


__all__ = (
    'RigidPose', 'compose', 'invert', 'relative_pose', 'transform_point',
    'vec3', 'unit_vector',
)

# accepted deviation of a given matrix from a rotation
ROTATION_TOL = 1e-6


def vec3(x, y=None, z=None):
    """A finite 3-vector as a float array, from three numbers or one sequence."""
    if y is None and z is None:
        values = np.asarray(x, dtype=float).reshape(-1)
    else:
        values = np.array([x, y, z], dtype=float)
    if values.shape != (3,) or not np.all(np.isfinite(values)):
        raise ValidationError("a Vec3 needs three finite components, got %r" % (values,))
    return values


def unit_vector(x, y=None, z=None, tol=1e-9):
    """Like :func:`vec3` but the norm must be 1 within ``tol``."""
    values = vec3(x, y, z)
    if abs(np.linalg.norm(values) - 1.0) > tol:
        raise ValidationError("a UnitVec3 needs norm 1, got %r" % np.linalg.norm(values))
    return values


@dataclass(frozen=True)
class RigidPose:
    """
    Position ``t`` (meters) and Euler angles ``a, b, c`` (radians) of a frame.

    Angles are wrapped to (-pi, pi] on construction. The rotation matrix is
    cached: derived from the angles, or kept as given when the pose comes
    from a matrix.
    """
    t: Tuple[float, float, float] = (0.0, 0.0, 0.0)
    a: float = 0.0
    b: float = 0.0
    c: float = 0.0

    def __post_init__(self):
        t = tuple(float(v) for v in vec3(self.t))
        angles = (float(self.a), float(self.b), float(self.c))
        if not all(math.isfinite(v) for v in angles):
            raise ValidationError("pose angles must be finite, got %r" % (angles,))
        object.__setattr__(self, 't', t)
        for name, value in zip('abc', angles):
            object.__setattr__(self, name, wrap_angle(value))

    @classmethod
    def identity(cls):
        return cls()

    @classmethod
    def from_matrix(cls, rotation, translation, check=True):
        """
        Pose from a 3x3 rotation matrix and a translation.

        With ``check=False`` the caller vouches that ``rotation`` is
        orthonormal and ``translation`` finite, as for products of
        elementary rotations.

        >>> RigidPose.from_matrix(np.eye(3), (0.0, 0.0, 1.0)).t
        (0.0, 0.0, 1.0)
        """
        rotation = np.array(rotation, dtype=float)
        if not check:
            return cls._from_frame(rotation, np.array(translation, dtype=float))
        if not is_rotation(rotation, ROTATION_TOL):
            raise ValidationError("not a rotation matrix: %s" % (rotation.tolist(),))
        return cls._from_frame(rotation, vec3(translation).copy())

    @classmethod
    def _from_frame(cls, rotation, translation):
        # rotation and translation are finite, owned by the new pose and
        # rotation is orthonormal, so __post_init__ has nothing to check
        a, b, c, _ = rotation_to_euler(rotation)
        pose = object.__new__(cls)
        object.__setattr__(pose, 't', tuple(translation.tolist()))
        object.__setattr__(pose, 'a', wrap_angle(a))
        object.__setattr__(pose, 'b', b)
        object.__setattr__(pose, 'c', wrap_angle(c))
        rotation.setflags(write=False)
        translation.setflags(write=False)
        pose.__dict__['rotation'] = rotation
        pose.__dict__['translation'] = translation
        return pose

    @cached_property
    def rotation(self):
        rotation = euler_to_rotation(self.a, self.b, self.c)
        rotation.setflags(write=False)
        return rotation

    @cached_property
    def translation(self):
        translation = np.array(self.t)
        translation.setflags(write=False)
        return translation

    @property
    def axis_z(self):
        """Direction of the child frame's z-axis in the parent frame."""
        return self.rotation[:, 2].copy()

    def degrees(self):
        """``(x, y, z, a, b, c)`` with the angles in degrees."""
        return self.t + tuple(math.degrees(v) for v in (self.a, self.b, self.c))

    def matrix(self):
        """Homogeneous 4x4 transform."""
        m = np.eye(4)
        m[:3, :3] = self.rotation
        m[:3, 3] = self.t
        return m


def compose(p, q, *more):
    """
    Pose of frame ``q`` expressed through ``p``: ``(p ∘ q)(v) = p(q(v))``.

    Further poses extend the chain, ``compose(p, q, r) == p ∘ q ∘ r``.

    >>> shifted = RigidPose((1.0, 2.0, 3.0))
    >>> compose(RigidPose.identity(), shifted) == shifted
    True
    >>> compose(shifted, shifted, shifted).t
    (3.0, 6.0, 9.0)
    """
    rotation, translation = p.rotation, p.translation
    for pose in (q,) + more:
        translation = rotation @ pose.translation + translation
        rotation = rotation @ pose.rotation
    return RigidPose._from_frame(rotation, translation)


def invert(p):
    rotation = p.rotation.T.copy()
    return RigidPose._from_frame(rotation, -(rotation @ p.translation))


def relative_pose(base, other):
    """``invert(base) ∘ other``: where ``other`` sits as seen from ``base``."""
    back = base.rotation.T
    return RigidPose._from_frame(back @ other.rotation,
                                 back @ (other.translation - base.translation))


def transform_point(p, v):
    """
    Map the point ``v`` from the child frame of ``p`` to its parent.

    >>> transform_point(RigidPose((1.0, 2.0, 3.0)), (0.0, 0.0, 0.0)).tolist()
    [1.0, 2.0, 3.0]
    """
    return p.rotation @ vec3(v) + p.translation
