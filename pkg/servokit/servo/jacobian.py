"""
The 5x5 feature Jacobian and its finite-difference check.

Columns follow the controlled parameters ``(x, y, z, b, c)``; rows follow the
error vector ``(e11, e12, e21, e22, e13)``. Each column is the generator of one
motion of the goal frame acting on a point: unit translations along x, y, z,
a rotation about y for ``b`` and, for ``c``, a rotation about x (``corrected``)
or about z (``as_printed``, kept to show that this column makes the Jacobian
singular once the hole is aligned).
"""
import logging
from dataclasses import dataclass, field
from enum import Enum
from typing import List, Tuple

import numpy as np

from servokit.conf import DEFAULT_AXIS_OFFSET, DEFAULT_COND_MAX
from servokit.exceptions import ValidationError
from servokit.features import feature_error
from servokit.geometry import rot_x, rot_y, rot_z, vec3


__all__ = (
    'JacobianVariant', 'point_generators', 'build_jacobian', 'move_point',
    'finite_difference_jacobian', 'JacobianCheck', 'check_jacobian',
    'condition_number',
)

logger = logging.getLogger(__name__)

_AXES = np.eye(3)


class JacobianVariant(str, Enum):
    CORRECTED = 'corrected'
    AS_PRINTED = 'as_printed'

    @classmethod
    def parse(cls, value):
        try:
            return cls(value)
        except ValueError:
            raise ValidationError(
                "jacobian_variant must be one of %s, got %r"
                % (', '.join(v.value for v in cls), value))


def point_generators(p, variant=JacobianVariant.CORRECTED):
    """
    ``∂p/∂x̄`` for one point: a 3x5 matrix whose columns are the generator
    velocities of the point.
    """
    return np.array(_generator_rows(vec3(p).tolist(), JacobianVariant(variant)))


def _generator_rows(p, variant):
    x, y, z = p
    if variant is JacobianVariant.CORRECTED:
        c_column = (0.0, -z, y)    # e_x × p
    else:
        c_column = (-y, x, 0.0)    # e_z × p
    # columns: e_x, e_y, e_z, e_y × p, c_column
    return ([1.0, 0.0, 0.0, z, c_column[0]],
            [0.0, 1.0, 0.0, 0.0, c_column[1]],
            [0.0, 0.0, 1.0, -x, c_column[2]])


def build_jacobian(p1, p2, variant=JacobianVariant.CORRECTED):
    """
    Stack the plane-normal projections of both points' generators.

    >>> build_jacobian((0, 0, 0), (0, 0, 1))[3].tolist()
    [0.0, 1.0, 0.0, 0.0, -1.0]
    """
    p1 = vec3(p1).tolist()
    p2 = vec3(p2).tolist()
    if p1 == p2:
        raise ValidationError("p1 and p2 must differ")
    variant = JacobianVariant(variant)
    g1 = _generator_rows(p1, variant)
    g2 = _generator_rows(p2, variant)
    return np.array([g1[0], g1[1], g2[0], g2[1], g1[2]])


def condition_number(jacobian):
    """Exact 1-norm condition number; ``inf`` for a singular matrix."""
    return float(np.linalg.cond(np.asarray(jacobian, dtype=float), 1))


def move_point(p, column, amount, variant=JacobianVariant.CORRECTED):
    """Apply the finite motion of generator ``column`` by ``amount`` to ``p``."""
    p = vec3(p)
    if column < 3:
        return p + amount * _AXES[column]
    if column == 3:
        return rot_y(amount) @ p
    if JacobianVariant(variant) is JacobianVariant.CORRECTED:
        return rot_x(amount) @ p
    return rot_z(amount) @ p


def finite_difference_jacobian(p1, p2, variant=JacobianVariant.CORRECTED, step=1e-6):
    """Central differences of :func:`feature_error` under the generator motions."""
    jacobian = np.zeros((5, 5))
    for column in range(5):
        forward = feature_error(move_point(p1, column, step, variant),
                                move_point(p2, column, step, variant))
        backward = feature_error(move_point(p1, column, -step, variant),
                                 move_point(p2, column, -step, variant))
        jacobian[:, column] = (forward.as_array() - backward.as_array()) / (2.0 * step)
    return jacobian


@dataclass
class JacobianCheck:
    """
    Outcome of :func:`check_jacobian`.

    .. attribute:: max_deviation

        largest ``|J_fd - J| / max(1, |J|)`` over all entries and trials

    .. attribute:: near_singular

        ``(p1, p2, condition)`` of every trial above ``cond_max``
    """
    variant: JacobianVariant
    trials: int
    tolerance: float
    max_deviation: float = 0.0
    near_singular: List[Tuple[tuple, tuple, float]] = field(default_factory=list)

    @property
    def passed(self):
        return self.max_deviation <= self.tolerance


def _random_unit(rng):
    v = rng.normal(size=3)
    return v / np.linalg.norm(v)


def _random_in_ball(rng, radius):
    return _random_unit(rng) * radius * rng.uniform() ** (1.0 / 3.0)


def _sample_points(rng, trial):
    if trial % 10 == 9:
        # close to the converged configuration
        p1 = rng.normal(scale=1e-10, size=3)
        tilt = np.array([rng.normal(scale=1e-10), rng.normal(scale=1e-10), 1.0])
        return p1, p1 + DEFAULT_AXIS_OFFSET * tilt / np.linalg.norm(tilt)
    while True:
        p1 = _random_in_ball(rng, 2.0)
        p2 = _random_in_ball(rng, 2.0)
        if np.linalg.norm(p2 - p1) > 1e-3:
            return p1, p2


def check_jacobian(trials=1000, seed=0, variant=JacobianVariant.CORRECTED,
                   step=1e-6, tolerance=1e-6, cond_max=DEFAULT_COND_MAX):
    """
    Compare the analytic Jacobian against central finite differences on
    ``trials`` random point pairs with ``|p| <= 2 m``.
    """
    variant = JacobianVariant(variant)
    rng = np.random.default_rng(seed)
    report = JacobianCheck(variant=variant, trials=trials, tolerance=tolerance)
    if trials == 0:
        logger.warning("check-jacobian with zero trials passes vacuously")
        return report

    for trial in range(trials):
        p1, p2 = _sample_points(rng, trial)
        analytic = build_jacobian(p1, p2, variant)
        numeric = finite_difference_jacobian(p1, p2, variant, step)
        deviation = np.abs(numeric - analytic) / np.maximum(1.0, np.abs(analytic))
        report.max_deviation = max(report.max_deviation, float(deviation.max()))

        condition = condition_number(analytic)
        if not condition <= cond_max:
            report.near_singular.append((tuple(p1), tuple(p2), condition))
            logger.warning("near-singular %s Jacobian at p1=%s p2=%s (cond %.3g)",
                           variant.value, np.round(p1, 6), np.round(p2, 6), condition)

    logger.info("checked %d %s Jacobians, max deviation %.3g",
                trials, variant.value, report.max_deviation)
    return report
