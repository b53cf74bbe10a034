"""
Value objects produced by the servo step.
"""
from dataclasses import dataclass
from typing import Tuple

import numpy as np


__all__ = ('Correction', 'ServoDiagnostics')


@dataclass(frozen=True)
class Correction:
    """
    A 5-DOF increment for one control period, expressed in the goal frame.

    .. attribute:: dx, dy, dz

        translation, meters

    .. attribute:: db, dc

        rotation about the goal frame's y-axis and about its x-axis (z-axis
        for the printed Jacobian), radians

    .. attribute:: saturated_t, saturated_r

        True when the velocity cap decided the size of the block
    """
    dx: float = 0.0
    dy: float = 0.0
    dz: float = 0.0
    db: float = 0.0
    dc: float = 0.0
    saturated_t: bool = False
    saturated_r: bool = False

    @classmethod
    def zero(cls):
        return cls()

    @property
    def translation(self):
        return np.array([self.dx, self.dy, self.dz])

    @property
    def rotation(self):
        return np.array([self.db, self.dc])

    def as_array(self):
        return np.array([self.dx, self.dy, self.dz, self.db, self.dc])

    def is_zero(self):
        return not self.as_array().any()


@dataclass(frozen=True)
class ServoDiagnostics:
    """
    What happened inside one servo step.

    .. attribute:: condition

        1-norm condition estimate of the Jacobian

    .. attribute:: raw_step

        the unscaled Newton step ``J⁻¹ē``

    .. attribute:: saturated_t, saturated_r

        copies of the flags of the issued :class:`Correction`
    """
    condition: float
    raw_step: Tuple[float, float, float, float, float]
    saturated_t: bool = False
    saturated_r: bool = False
