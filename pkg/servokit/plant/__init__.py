"""
Closed-loop kinematic simulation of the servo.
"""
import logging
import math

from servokit.conf import ABORT_AFTER_ILL_CONDITIONED, MAX_DURATION
from servokit.exceptions import IllConditioned, ValidationError
from servokit.features import feature_error, hole_points_in_goal_frame
from servokit.plant.log import COLUMNS, TrajectoryLog, TrajectoryRecord
from servokit.plant.sensor import Sensor, SensorModel, observe, true_hole_in_camera
from servokit.plant.world import WorldState, apply_correction, correction_motion
from servokit.servo import Correction, JacobianVariant, servo_step


__all__ = (
    'run_closed_loop', 'WorldState', 'apply_correction', 'correction_motion',
    'Sensor', 'SensorModel', 'observe', 'true_hole_in_camera',
    'TrajectoryLog', 'TrajectoryRecord', 'COLUMNS',
)

logger = logging.getLogger(__name__)

_NAN_ERROR = (float('nan'),) * 5


def _record(state, error, corr, valid):
    pose = state.flange_in_hole()
    errors = _NAN_ERROR if error is None else tuple(error.as_array().tolist())
    return TrajectoryRecord(
        state.t, pose.t[0], pose.t[1], pose.t[2], pose.a, pose.b, pose.c,
        *errors,
        corr.dx, corr.dy, corr.dz, corr.db, corr.dc,
        corr.saturated_t, corr.saturated_r, valid,
    )


def run_closed_loop(initial, goal, limits, sensor, duration, servo_start,
                    variant=JacobianVariant.CORRECTED):
    """
    Run the servo at the sampling time ``limits.tau`` for ``duration`` seconds.

    Every period observes the hole and logs the errors; from ``servo_start``
    on, the servo step's correction is applied. A dropped observation holds
    the robot for that period. More than ``ABORT_AFTER_ILL_CONDITIONED``
    consecutive ill-conditioned periods abort the run; the raised
    :class:`IllConditioned` carries the partial log as ``log``.

    :param initial: :class:`WorldState` at ``t = initial.t``.
    :param sensor: :class:`SensorModel`; a fresh :class:`Sensor` is built from it.
    :rtype: :class:`TrajectoryLog`
    """
    if not (0 <= servo_start < duration):
        raise ValidationError("need 0 <= servo_start < duration, got %r and %r"
                              % (servo_start, duration))
    if duration > MAX_DURATION:
        raise ValidationError("duration must be <= %g s, got %r" % (MAX_DURATION, duration))

    variant = JacobianVariant(variant)
    camera = Sensor(sensor)
    n_steps = int(round(duration / limits.tau))
    start_step = int(math.ceil(servo_start / limits.tau - 1e-9))
    hand_eye = sensor.hand_eye
    t0 = initial.t

    log = TrajectoryLog()
    state = initial
    ill_conditioned = 0
    logger.info("closed loop: %d periods of %g s, servo from period %d (%s Jacobian)",
                n_steps, limits.tau, start_step, variant.value)

    for k in range(n_steps):
        state = state.at(t0 + k * limits.tau)
        obs = observe(state, camera)
        corr = Correction.zero()
        error = None

        if obs.valid and k < start_step:
            error = feature_error(*hole_points_in_goal_frame(obs, hand_eye, goal))
        elif obs.valid:
            try:
                corr, error, _ = servo_step(obs, goal, hand_eye, limits, variant)
                ill_conditioned = 0
            except IllConditioned as exc:
                ill_conditioned += 1
                error = feature_error(*hole_points_in_goal_frame(obs, hand_eye, goal))
                logger.warning("t=%.3f: %s, holding", state.t, exc)
                if ill_conditioned > ABORT_AFTER_ILL_CONDITIONED:
                    log.append(_record(state, error, corr, obs.valid))
                    abort = IllConditioned(exc.condition, exc.cond_max,
                                           t=state.t, consecutive=ill_conditioned)
                    abort.log = log
                    logger.error("closed loop aborted: %s", abort)
                    raise abort

        log.append(_record(state, error, corr, obs.valid))
        state = apply_correction(state, corr, goal, variant)

    converged = log.convergence_time()
    if converged is not None:
        logger.info("errors below 1 mm from t=%.3f s", converged)
    else:
        logger.info("errors did not settle below 1 mm within %g s", duration)
    return log
