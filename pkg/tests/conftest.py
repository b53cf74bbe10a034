import math
import textwrap

import pytest

from servokit.conf import shipped_config
from servokit.conf.loader import load_config
from servokit.features import GoalSpec
from servokit.geometry import RigidPose
from servokit.plant import SensorModel, run_closed_loop
from servokit.servo import Limits


SMALL_RUN = """
[goal]
desired_x = 0.0
desired_y = 0.15
desired_z = 0.6
desired_a = 0.0
desired_b = 0.0
desired_c = 0.0

[limits]
v_max = 0.05
w_max = 40.0
tau = 0.004
beta_p = 0.001
beta_r = 0.001

[initial]
x = 0.11
y = 0.005
z = 0.9
a = 0.0
b = 8.0
c = 27.0

[sensor]
sigma_t = {sigma_t}
seed = 7

[run]
duration = {duration}
servo_start = {servo_start}
jacobian_variant = {variant}
"""


@pytest.fixture
def goal():
    return GoalSpec.from_flange_in_hole(RigidPose((0.0, 0.15, 0.6)), axis_offset=0.1)


@pytest.fixture
def limits():
    return Limits(v_max=0.05, w_max=math.radians(40.0), tau=0.004,
                  beta_p=0.001, beta_r=0.001)


@pytest.fixture
def noiseless():
    return SensorModel()


@pytest.fixture
def write_config(tmp_path):
    """Write config text to a file in ``tmp_path`` and return its path."""
    def write(text, name='run.cfg'):
        path = tmp_path / name
        path.write_text(textwrap.dedent(text), encoding='utf-8')
        return path
    return write


@pytest.fixture
def small_run(write_config):
    """A short run from the shipped approach setup, optionally with noise or another variant."""
    def build(duration=0.2, servo_start=0.0, sigma_t=0.0, variant='corrected',
              name='run.cfg'):
        return write_config(SMALL_RUN.format(duration=duration, servo_start=servo_start,
                                             sigma_t=sigma_t, variant=variant), name)
    return build


@pytest.fixture(scope='session')
def approach_config():
    return load_config(shipped_config('paper_sec4.cfg'))


@pytest.fixture(scope='session')
def approach_log(approach_config):
    config = approach_config
    return run_closed_loop(config.initial_state(), config.goal, config.limits,
                           config.sensor, config.duration, config.servo_start,
                           config.jacobian_variant)
