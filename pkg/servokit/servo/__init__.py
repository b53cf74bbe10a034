"""
One period of the feature-based servo: observation in, limited correction out.
"""
import logging

from servokit.features import feature_error, hole_points_in_goal_frame
from servokit.servo.jacobian import (
    JacobianVariant, build_jacobian, check_jacobian, finite_difference_jacobian,
    point_generators, condition_number,
)
from servokit.servo.limits import Limits, limit_corrections, scale_block
from servokit.servo.solve import lu_with_condition, newton_step, solve_with_condition
from servokit.servo.value import Correction, ServoDiagnostics


__all__ = (
    'servo_step', 'JacobianVariant', 'build_jacobian', 'check_jacobian',
    'finite_difference_jacobian', 'point_generators', 'condition_number',
    'Limits', 'limit_corrections', 'scale_block', 'newton_step', 'lu_with_condition',
    'Correction', 'ServoDiagnostics',
)

logger = logging.getLogger(__name__)


def servo_step(obs, goal, hand_eye, limits, variant=JacobianVariant.CORRECTED):
    """
    observation -> feature points -> error -> Jacobian -> Newton step -> limiter

    :raises InvalidObservation: if ``obs`` is flagged invalid.
    :raises IllConditioned: if the Jacobian cannot be trusted.
    :rtype: ``(Correction, FeatureError, ServoDiagnostics)``
    """
    p1, p2 = hole_points_in_goal_frame(obs, hand_eye, goal)
    error = feature_error(p1, p2)
    jacobian = build_jacobian(p1, p2, variant)
    raw, condition = solve_with_condition(error, jacobian, limits.cond_max)
    correction = limit_corrections(raw, limits)

    diagnostics = ServoDiagnostics(
        condition=condition,
        raw_step=tuple(raw.tolist()),
        saturated_t=correction.saturated_t,
        saturated_r=correction.saturated_r,
    )
    if logger.isEnabledFor(logging.DEBUG):
        logger.debug("t=%.3f |e|=%.6g cond=%.3g sat_t=%d sat_r=%d",
                     obs.timestamp, error.norm(), condition,
                     correction.saturated_t, correction.saturated_r)
    return correction, error, diagnostics
