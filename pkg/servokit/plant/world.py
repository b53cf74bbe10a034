"""
Kinematic world: a fixed hole and a flange that moves by whole increments.
"""
from dataclasses import dataclass, field

from servokit.geometry import RigidPose, compose, relative_pose, rot_x, rot_y, rot_z
from servokit.servo.jacobian import JacobianVariant


__all__ = ('WorldState', 'apply_correction', 'correction_motion')


@dataclass(frozen=True)
class WorldState:
    flange_in_world: RigidPose
    hole_in_world: RigidPose = field(default_factory=RigidPose.identity)
    t: float = 0.0

    @classmethod
    def from_relative(cls, flange_in_hole, hole_in_world=None, t=0.0):
        """Place the flange at ``flange_in_hole`` relative to the hole."""
        hole_in_world = hole_in_world or RigidPose.identity()
        return cls(compose(hole_in_world, flange_in_hole), hole_in_world, t)

    def flange_in_hole(self):
        return relative_pose(self.hole_in_world, self.flange_in_world)

    def at(self, t):
        return WorldState(self.flange_in_world, self.hole_in_world, t)


def correction_motion(corr, variant=JacobianVariant.CORRECTED):
    """
    Motion of the goal frame for one correction, as a pose of the new goal
    frame in the old one. A hole point then moves as ``p <- p - G·Δx̄`` to
    first order, ``G`` being the point's generator matrix.
    """
    if JacobianVariant(variant) is JacobianVariant.CORRECTED:
        c_rotation = rot_x(corr.dc)
    else:
        c_rotation = rot_z(corr.dc)
    return RigidPose.from_matrix(rot_y(corr.db) @ c_rotation, corr.translation, check=False)


def apply_correction(state, corr, goal, variant=JacobianVariant.CORRECTED):
    """
    Move the flange so that its goal frame performs ``corr``.

    The robot is taken to reach the commanded increment within the period.
    The flange moves by ``desired ∘ motion ∘ desired⁻¹``; both ends of that
    conjugation are cached on ``goal``.
    """
    if corr.is_zero():
        return state
    flange = compose(state.flange_in_world, goal.desired_pose,
                     correction_motion(corr, variant), goal.goal_from_flange)
    return WorldState(flange, state.hole_in_world, state.t)
