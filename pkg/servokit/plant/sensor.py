"""
Synthetic eye-in-hand camera.

Stands in for the depth camera and the hole localisation software: it reports
the exact hole pose in the camera frame, perturbed by Gaussian noise, delayed
by a number of periods and occasionally dropped.
"""
import logging
import math
from collections import deque
from dataclasses import dataclass, field

import numpy as np
from scipy.spatial.transform import Rotation

from servokit.exceptions import ValidationError
from servokit.features import HoleObservation
from servokit.geometry import RigidPose, compose, relative_pose, unit_vector


__all__ = ('SensorModel', 'Sensor', 'observe', 'true_hole_in_camera')

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class SensorModel:
    """
    .. attribute:: hand_eye

        pose of the camera frame in the flange frame

    .. attribute:: sigma_t, sigma_r

        standard deviation of the translation noise per axis (meters) and
        of the rotation noise angle (radians)
    """
    hand_eye: RigidPose = field(default_factory=RigidPose.identity)
    sigma_t: float = 0.0
    sigma_r: float = 0.0
    latency_steps: int = 0
    dropout_prob: float = 0.0
    rng_seed: int = 0

    def __post_init__(self):
        for name in ('sigma_t', 'sigma_r'):
            value = getattr(self, name)
            if not (math.isfinite(value) and value >= 0):
                raise ValidationError("%s must be >= 0, got %r" % (name, value))
        if int(self.latency_steps) != self.latency_steps or self.latency_steps < 0:
            raise ValidationError(
                "latency_steps must be an integer >= 0, got %r" % (self.latency_steps,))
        if not 0.0 <= self.dropout_prob < 1.0:
            raise ValidationError("dropout_prob must be in [0, 1), got %r" % (self.dropout_prob,))
        if int(self.rng_seed) != self.rng_seed:
            raise ValidationError("rng_seed must be an integer, got %r" % (self.rng_seed,))

    @property
    def noiseless(self):
        return self.sigma_t == 0 and self.sigma_r == 0


def true_hole_in_camera(state, hand_eye):
    camera_in_world = compose(state.flange_in_world, hand_eye)
    return relative_pose(camera_in_world, state.hole_in_world)


class Sensor(object):
    """
    A running camera built from a :class:`SensorModel`.

    Holds the seeded noise generator and the latency queue, so one instance
    serves exactly one run.
    """

    def __init__(self, model):
        self.model = model
        self._rng = np.random.default_rng(int(model.rng_seed))
        self._queue = deque(maxlen=int(model.latency_steps) + 1)
        self._dropouts = 0

    def observe(self, state):
        self._queue.append((state.t, true_hole_in_camera(state, self.model.hand_eye)))
        timestamp, pose = self._queue[0]

        # the draw order is fixed so the sequence depends on the seed alone
        translation_noise = self._rng.standard_normal(3) * self.model.sigma_t
        axis = self._rng.standard_normal(3)
        angle = self._rng.standard_normal() * self.model.sigma_r
        valid = self._rng.uniform() >= self.model.dropout_prob

        if not self.model.noiseless:
            axis = unit_vector(axis / np.linalg.norm(axis))
            rotation = Rotation.from_rotvec(axis * angle).as_matrix() @ pose.rotation
            pose = RigidPose.from_matrix(rotation, pose.translation + translation_noise)

        if valid:
            if self._dropouts:
                logger.debug("detection back after %d dropped periods", self._dropouts)
            self._dropouts = 0
        else:
            self._dropouts += 1
            if self._dropouts % 25 == 0:
                logger.warning("no hole detection for %d periods", self._dropouts)
        return HoleObservation(pose, timestamp=timestamp, valid=valid)


def observe(state, sensor):
    """Hole observation of ``state`` through ``sensor``."""
    return sensor.observe(state)
