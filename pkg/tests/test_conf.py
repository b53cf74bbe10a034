import logging
import math

import numpy as np
import pytest

from servokit.conf import DEFAULT_ORACLE, log_level, shipped_config
from servokit.conf.loader import (
    dump_config, load_config, load_scan_config, parse_config, parse_scan_config,
)
from servokit.exceptions import ConfigError, ParseError, ValidationError
from servokit.servo import JacobianVariant


def test_approach_config(approach_config):
    limits = approach_config.limits
    assert limits.tau == 0.004
    assert limits.v_max == 0.05
    assert limits.w_max == pytest.approx(math.radians(40.0))
    assert limits.beta_p == limits.beta_r == 0.001
    assert limits.max_translation == pytest.approx(2e-4)
    assert math.degrees(limits.max_rotation) == pytest.approx(0.16)

    initial = approach_config.initial
    assert initial.t == (0.11, 0.005, 0.9)
    assert initial.degrees()[3:] == pytest.approx((0.0, 8.0, 27.0))
    assert approach_config.goal.flange_in_hole.t == pytest.approx((0.0, 0.15, 0.6))
    assert approach_config.goal.axis_offset == 0.1
    assert (approach_config.duration, approach_config.servo_start) == (30.0, 4.0)
    assert approach_config.jacobian_variant is JacobianVariant.CORRECTED
    assert approach_config.sensor.noiseless


def test_defaults(small_run):
    config = load_config(small_run())
    assert config.goal.axis_offset == 0.1
    assert config.limits.cond_max == 1e8
    assert config.sensor.latency_steps == 0
    assert config.output == 'trajectory.csv'
    assert np.allclose(config.hole_in_world.matrix(), np.eye(4))


def test_empty_file(write_config):
    with pytest.raises(ValidationError, match='missing required'):
        load_config(write_config(''))


def test_missing_key(small_run):
    path = small_run()
    path.write_text(path.read_text().replace('tau = 0.004\n', ''))
    with pytest.raises(ValidationError, match='tau'):
        load_config(path)


def test_negative_velocity(small_run):
    path = small_run()
    path.write_text(path.read_text().replace('v_max = 0.05', 'v_max = -1'))
    with pytest.raises(ValidationError, match='v_max'):
        load_config(path)


@pytest.mark.parametrize('old, new, message', [
    ('tau = 0.004', 'tau = 0.004\ngain = 2', 'unknown key'),
    ('[run]', '[plotting]\ncolor = red\n\n[run]', 'unknown section'),
    ('beta_p = 0.001', 'beta_p = fast', 'beta_p'),
    ('seed = 7', 'seed = 7.5', 'seed'),
    ('jacobian_variant = corrected', 'jacobian_variant = transposed', 'jacobian_variant'),
    ('duration = 0.2', 'duration = 20000', 'duration'),
    ('servo_start = 0.0', 'servo_start = 0.2', 'servo_start'),
])
def test_invalid_values(small_run, old, new, message):
    path = small_run()
    text = path.read_text()
    assert old in text
    path.write_text(text.replace(old, new))
    with pytest.raises(ValidationError, match=message):
        load_config(path)


def test_syntax_error_reports_line(write_config):
    path = write_config('[limits]\nv_max = 0.05\nw_max 40\n')
    with pytest.raises(ParseError) as excinfo:
        load_config(path)
    assert excinfo.value.lineno == 3
    assert str(path) in str(excinfo.value)


def test_duplicate_key_reports_line(write_config):
    with pytest.raises(ParseError) as excinfo:
        load_config(write_config('[limits]\ntau = 0.004\ntau = 0.002\n'))
    assert excinfo.value.lineno == 3


def test_key_outside_section(write_config):
    with pytest.raises(ParseError) as excinfo:
        load_config(write_config('tau = 0.004\n'))
    assert excinfo.value.lineno == 1


def test_missing_file(tmp_path):
    with pytest.raises(ConfigError):
        load_config(tmp_path / 'nowhere.cfg')


def test_inline_comments(small_run):
    path = small_run()
    path.write_text(path.read_text().replace('v_max = 0.05', 'v_max = 0.05  # m/s'))
    assert load_config(path).limits.v_max == 0.05


def test_dump_round_trip(small_run):
    path = small_run(sigma_t=0.001, variant='as_printed')
    path.write_text(path.read_text().replace('desired_b = 0.0', 'desired_b = 3.0'))
    config = load_config(path)
    again = parse_config(dump_config(config))

    assert again.jacobian_variant is JacobianVariant.AS_PRINTED
    assert again.sensor.sigma_t == config.sensor.sigma_t
    assert again.sensor.rng_seed == 7
    assert (again.duration, again.servo_start, again.output) == \
        (config.duration, config.servo_start, config.output)
    assert again.goal.axis_offset == config.goal.axis_offset
    for name in ('v_max', 'w_max', 'tau', 'beta_p', 'beta_r', 'deadband', 'cond_max'):
        assert getattr(again.limits, name) == pytest.approx(getattr(config.limits, name), rel=1e-12)
    for pose, original in ((again.initial, config.initial),
                           (again.goal.desired_pose, config.goal.desired_pose),
                           (again.hole_in_world, config.hole_in_world)):
        assert np.allclose(pose.matrix(), original.matrix(), atol=1e-12)


def test_shipped_scan_config():
    config = load_scan_config(shipped_config('paper_scan.cfg'))
    assert config.grid.size() == 144
    assert config.grid.theta_step == pytest.approx(math.radians(10))
    assert config.oracle.range_max == DEFAULT_ORACLE['range_max']
    assert config.output == 'scan.csv'


def test_scan_config_requires_scan_section():
    with pytest.raises(ValidationError, match='scan'):
        parse_scan_config('[oracle]\nrange_min = 0.3\n')


def test_shipped_config_missing():
    with pytest.raises(FileNotFoundError):
        shipped_config('nothing.cfg')


def test_log_level(caplog):
    assert log_level('info') == logging.INFO
    with caplog.at_level(logging.WARNING):
        assert log_level('loud') == logging.WARNING
    assert 'LOUD' in caplog.text
