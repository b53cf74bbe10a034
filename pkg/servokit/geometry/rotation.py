"""
Rotation matrices and the intrinsic Z-Y-X Euler convention of the robot
controller: ``R = Rz(a) @ Ry(b) @ Rx(c)``.
"""
import math
from typing import NamedTuple

import numpy as np


__all__ = (
    'EulerAngles', 'GIMBAL_LOCK_COS', 'rot_x', 'rot_y', 'rot_z',
    'euler_to_rotation', 'rotation_to_euler', 'wrap_angle', 'is_rotation',
)

# below this |cos(b)| the a and c axes coincide
GIMBAL_LOCK_COS = 1e-8


class EulerAngles(NamedTuple):
    a: float
    b: float
    c: float
    gimbal_lock: bool = False


def wrap_angle(angle):
    """
    Wrap an angle in radians to (-pi, pi].

    >>> wrap_angle(-math.pi) == math.pi
    True
    >>> wrap_angle(0.5)
    0.5
    """
    wrapped = math.remainder(angle, 2.0 * math.pi)
    if wrapped <= -math.pi:
        wrapped += 2.0 * math.pi
    return wrapped


def rot_x(angle):
    c, s = math.cos(angle), math.sin(angle)
    return np.array([[1.0, 0.0, 0.0],
                     [0.0, c, -s],
                     [0.0, s, c]])


def rot_y(angle):
    c, s = math.cos(angle), math.sin(angle)
    return np.array([[c, 0.0, s],
                     [0.0, 1.0, 0.0],
                     [-s, 0.0, c]])


def rot_z(angle):
    c, s = math.cos(angle), math.sin(angle)
    return np.array([[c, -s, 0.0],
                     [s, c, 0.0],
                     [0.0, 0.0, 1.0]])


def euler_to_rotation(a, b, c):
    """
    Rotation matrix of the Euler angles ``(a, b, c)`` in radians.

    :param a: rotation about z, applied first in the intrinsic chain.
    :param b: rotation about the new y.
    :param c: rotation about the newest x.
    :rtype: 3x3 orthonormal :class:`numpy.ndarray`.
    """
    return rot_z(a) @ rot_y(b) @ rot_x(c)


def rotation_to_euler(rotation):
    """
    Extract ``(a, b, c)`` from a rotation matrix.

    When ``cos(b)`` falls below :data:`GIMBAL_LOCK_COS` only ``c - a`` (or
    ``c + a``) is observable; ``a`` is then set to zero, the remaining
    rotation goes into ``c`` and the ``gimbal_lock`` flag is raised.
    ``a`` is never corrected by the servo, so losing it is harmless.

    >>> angles = rotation_to_euler(np.eye(3))
    >>> angles == (0.0, 0.0, 0.0, False)
    True
    """
    r = np.asarray(rotation, dtype=float)
    cos_b = math.hypot(r[0, 0], r[1, 0])
    b = math.atan2(-r[2, 0], cos_b)
    if cos_b >= GIMBAL_LOCK_COS:
        a = math.atan2(r[1, 0], r[0, 0])
        c = math.atan2(r[2, 1], r[2, 2])
        return EulerAngles(a, b, c, False)
    c = math.atan2(-r[1, 2], r[1, 1])
    return EulerAngles(0.0, b, c, True)


def is_rotation(rotation, tol=1e-9):
    """True when ``rotation`` is orthonormal with determinant +1 within ``tol``."""
    r = np.asarray(rotation, dtype=float)
    if r.shape != (3, 3) or not np.all(np.isfinite(r)):
        return False
    orthonormal = np.allclose(r.T @ r, np.eye(3), rtol=0.0, atol=tol)
    return bool(orthonormal and abs(np.linalg.det(r) - 1.0) <= tol)
