"""
Velocity-limited scaling of the Newton step.

The translational block is scaled to ``min(β'_p·|Δt|, v_max·τ)`` keeping its
direction, the rotational pair ``(Δb, Δc)`` to ``min(β'_r·|Δr|, w_max·τ)``.
Below the deadband a block is dropped entirely.
"""
import math
from dataclasses import dataclass

import numpy as np

from servokit.conf import DEFAULT_COND_MAX, DEFAULT_DEADBAND
from servokit.exceptions import ValidationError
from servokit.servo.value import Correction


__all__ = ('Limits', 'limit_corrections', 'scale_block')


@dataclass(frozen=True)
class Limits:
    """
    .. attribute:: v_max

        translational velocity limit, m/s

    .. attribute:: w_max

        rotational velocity limit, rad/s

    .. attribute:: tau

        sampling time, s
    """
    v_max: float
    w_max: float
    tau: float
    beta_p: float
    beta_r: float
    deadband: float = DEFAULT_DEADBAND
    cond_max: float = DEFAULT_COND_MAX

    def __post_init__(self):
        for name in ('v_max', 'w_max', 'tau', 'beta_p', 'beta_r', 'deadband', 'cond_max'):
            value = getattr(self, name)
            if not (isinstance(value, (int, float)) and math.isfinite(value) and value > 0):
                raise ValidationError("%s must be strictly positive, got %r" % (name, value))
        if self.deadband > 1e-3 * min(self.max_translation, self.max_rotation):
            raise ValidationError(
                "deadband %g must be much smaller than the per-period increments"
                % self.deadband)

    @property
    def max_translation(self):
        """Largest translational increment per period, meters."""
        return self.v_max * self.tau

    @property
    def max_rotation(self):
        """Largest rotational increment per period, radians."""
        return self.w_max * self.tau


def scale_block(block, gain, cap, deadband):
    """
    Scale ``block`` to length ``min(gain·|block|, cap)``.

    :rtype: ``(scaled_block, saturated)``
    """
    block = np.asarray(block, dtype=float)
    length = math.sqrt(float(block @ block))
    if length < deadband:
        return np.zeros_like(block), False
    candidate = gain * length
    if candidate >= cap:
        return block * (cap / length), True
    return block * gain, False


def limit_corrections(raw, limits):
    """
    Turn a raw Newton step into a :class:`Correction` that respects the
    velocity limits.

    >>> limits = Limits(v_max=0.05, w_max=0.7, tau=0.004, beta_p=0.001, beta_r=0.001)
    >>> corr = limit_corrections([0.0, 0.0, 0.3, 0.0, 0.0], limits)
    >>> round(corr.dz, 12), corr.saturated_t
    (0.0002, True)
    """
    raw = np.asarray(raw, dtype=float)
    translation, saturated_t = scale_block(
        raw[:3], limits.beta_p, limits.max_translation, limits.deadband)
    rotation, saturated_r = scale_block(
        raw[3:], limits.beta_r, limits.max_rotation, limits.deadband)
    return Correction(*translation.tolist(), *rotation.tolist(),
                      saturated_t=saturated_t, saturated_r=saturated_r)
