"""
Rigid-body geometry shared by every other part of servokit.
"""
from servokit.geometry.rotation import (
    EulerAngles, euler_to_rotation, rotation_to_euler, rot_x, rot_y, rot_z,
    wrap_angle, is_rotation,
)
from servokit.geometry.pose import (
    RigidPose, compose, invert, relative_pose, transform_point, vec3, unit_vector,
)


__all__ = (
    'EulerAngles', 'euler_to_rotation', 'rotation_to_euler', 'rot_x', 'rot_y',
    'rot_z', 'wrap_angle', 'is_rotation',
    'RigidPose', 'compose', 'invert', 'relative_pose', 'transform_point', 'vec3',
    'unit_vector',
)
