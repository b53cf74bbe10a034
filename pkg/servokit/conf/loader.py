"""
Reading and writing run configurations.

Files are ``key = value`` lines grouped in ``[section]`` headers. Lengths are
meters, times seconds, angles degrees (``w_max`` in degrees per second); all
angles are radians once loaded.
"""
import configparser
import logging
import math
from dataclasses import dataclass, field
from pathlib import Path

from servokit.conf import DEFAULT_AXIS_OFFSET, DEFAULT_COND_MAX, DEFAULT_DEADBAND, \
    DEFAULT_ORACLE, MAX_DURATION
from servokit.exceptions import ConfigError, ParseError, ValidationError
from servokit.features import GoalSpec
from servokit.geometry import RigidPose
from servokit.plant import SensorModel, WorldState
from servokit.scanner import DetectOracle, ScanGrid
from servokit.servo import JacobianVariant, Limits


__all__ = (
    'RunConfig', 'ScanConfig', 'load_config', 'load_scan_config',
    'parse_config', 'parse_scan_config', 'dump_config',
)

logger = logging.getLogger(__name__)

_POSE_KEYS = ('x', 'y', 'z', 'a', 'b', 'c')

# section -> key -> (kind, default); kind "deg" is converted to radians,
# a default of None makes the key required
SERVO_SCHEMA = {
    'goal': {
        'desired_x': ('m', None), 'desired_y': ('m', None), 'desired_z': ('m', None),
        'desired_a': ('deg', 0.0), 'desired_b': ('deg', None), 'desired_c': ('deg', None),
        'axis_offset': ('m', DEFAULT_AXIS_OFFSET),
    },
    'limits': {
        'v_max': ('m', None), 'w_max': ('deg', None), 'tau': ('s', None),
        'beta_p': ('1', None), 'beta_r': ('1', None),
        'deadband': ('1', DEFAULT_DEADBAND), 'cond_max': ('1', DEFAULT_COND_MAX),
    },
    'initial': {
        'x': ('m', None), 'y': ('m', None), 'z': ('m', None),
        'a': ('deg', 0.0), 'b': ('deg', None), 'c': ('deg', None),
    },
    'sensor': {
        'hand_eye_x': ('m', 0.0), 'hand_eye_y': ('m', 0.0), 'hand_eye_z': ('m', 0.0),
        'hand_eye_a': ('deg', 0.0), 'hand_eye_b': ('deg', 0.0), 'hand_eye_c': ('deg', 0.0),
        'sigma_t': ('m', 0.0), 'sigma_r': ('deg', 0.0),
        'latency_steps': ('int', 0), 'dropout_prob': ('1', 0.0), 'seed': ('int', 0),
    },
    'hole': {key: ('deg' if key in 'abc' else 'm', 0.0) for key in _POSE_KEYS},
    'run': {
        'duration': ('s', None), 'servo_start': ('s', None),
        'jacobian_variant': ('str', JacobianVariant.CORRECTED.value),
        'output': ('str', 'trajectory.csv'),
    },
}
SERVO_REQUIRED = ('goal', 'limits', 'initial', 'run')

SCAN_SCHEMA = {
    'scan': dict(
        [(axis + part, ('m', None)) for axis in ('d', 'l') for part in ('_min', '_max', '_step')]
        + [(axis + part, ('deg', None)) for axis in ('theta', 'phi')
           for part in ('_min', '_max', '_step')]),
    'oracle': {
        'range_min': ('m', DEFAULT_ORACLE['range_min']),
        'range_max': ('m', DEFAULT_ORACLE['range_max']),
        'fov_half_h': ('deg', DEFAULT_ORACLE['fov_half_h']),
        'fov_half_v': ('deg', DEFAULT_ORACLE['fov_half_v']),
        'incidence_max': ('deg', DEFAULT_ORACLE['incidence_max']),
    },
    'hole': SERVO_SCHEMA['hole'],
    'run': {'output': ('str', 'scan.csv')},
}
SCAN_REQUIRED = ('scan',)


@dataclass(frozen=True)
class RunConfig:
    """
    Everything a closed-loop run needs.

    ``initial`` and ``hole_in_world`` are poses relative to the hole and the
    world respectively; ``goal.desired_pose`` is the hole relative to the
    flange (the file states the inverse, the flange relative to the hole).
    """
    goal: GoalSpec
    limits: Limits
    sensor: SensorModel
    initial: RigidPose
    duration: float
    servo_start: float
    jacobian_variant: JacobianVariant = JacobianVariant.CORRECTED
    output: str = 'trajectory.csv'
    hole_in_world: RigidPose = field(default_factory=RigidPose.identity)

    def __post_init__(self):
        if not (0 <= self.servo_start < self.duration):
            raise ValidationError("need 0 <= servo_start < duration")
        if self.duration > MAX_DURATION:
            raise ValidationError("duration must be <= %g s" % MAX_DURATION)

    def initial_state(self):
        return WorldState.from_relative(self.initial, self.hole_in_world)


@dataclass(frozen=True)
class ScanConfig:
    grid: ScanGrid
    oracle: DetectOracle = field(default_factory=DetectOracle)
    hole_in_world: RigidPose = field(default_factory=RigidPose.identity)
    output: str = 'scan.csv'


def _read(text, path):
    parser = configparser.ConfigParser(
        interpolation=None, inline_comment_prefixes=('#', ';'),
        delimiters=('=',), strict=True)
    parser.optionxform = str
    try:
        parser.read_string(text, source=str(path or '<string>'))
    except configparser.MissingSectionHeaderError as exc:
        raise ParseError("key outside of a [section]", path, exc.lineno)
    except configparser.ParsingError as exc:
        lineno, line = (getattr(exc, 'errors', None) or [(None, '')])[0]
        raise ParseError("cannot parse line %r" % (line,), path, lineno)
    except configparser.DuplicateSectionError as exc:
        raise ParseError("duplicate section [%s]" % exc.section, path, exc.lineno)
    except configparser.DuplicateOptionError as exc:
        raise ParseError("duplicate key %r in [%s]" % (exc.option, exc.section),
                         path, exc.lineno)
    except configparser.Error as exc:
        raise ParseError(str(exc), path)
    return parser


def _convert(section, key, kind, raw):
    where = "[%s] %s" % (section, key)
    if kind == 'str':
        return raw.strip()
    if kind == 'int':
        try:
            return int(raw)
        except ValueError:
            raise ValidationError("%s must be an integer, got %r" % (where, raw))
    try:
        value = float(raw)
    except ValueError:
        raise ValidationError("%s must be a number, got %r" % (where, raw))
    if not math.isfinite(value):
        raise ValidationError("%s must be finite, got %r" % (where, raw))
    return math.radians(value) if kind == 'deg' else value


def _values(parser, schema, required):
    """Validate sections and keys against ``schema`` and convert the values."""
    unknown = [name for name in parser.sections() if name not in schema]
    if unknown:
        raise ValidationError("unknown section(s): %s" % ', '.join(unknown))
    missing = [name for name in required if not parser.has_section(name)]
    if missing:
        raise ValidationError("missing required section(s): %s" % ', '.join(missing))

    values = {}
    for section, keys in schema.items():
        present = dict(parser.items(section)) if parser.has_section(section) else {}
        extra = sorted(set(present) - set(keys))
        if extra:
            raise ValidationError("unknown key(s) in [%s]: %s" % (section, ', '.join(extra)))
        for key, (kind, default) in keys.items():
            if key in present:
                values[section, key] = _convert(section, key, kind, present[key])
            elif default is None:
                raise ValidationError("missing required key [%s] %s" % (section, key))
            elif kind == 'deg':
                values[section, key] = math.radians(default)
            else:
                values[section, key] = default
    return values


def _pose(values, section, prefix=''):
    x, y, z, a, b, c = (values[section, prefix + key] for key in _POSE_KEYS)
    return RigidPose((x, y, z), a, b, c)


def parse_config(text, path=None):
    """:func:`load_config` on a string."""
    v = _values(_read(text, path), SERVO_SCHEMA, SERVO_REQUIRED)
    goal = GoalSpec.from_flange_in_hole(_pose(v, 'goal', 'desired_'), v['goal', 'axis_offset'])
    limits = Limits(
        v_max=v['limits', 'v_max'], w_max=v['limits', 'w_max'], tau=v['limits', 'tau'],
        beta_p=v['limits', 'beta_p'], beta_r=v['limits', 'beta_r'],
        deadband=v['limits', 'deadband'], cond_max=v['limits', 'cond_max'],
    )
    sensor = SensorModel(
        hand_eye=_pose(v, 'sensor', 'hand_eye_'),
        sigma_t=v['sensor', 'sigma_t'], sigma_r=v['sensor', 'sigma_r'],
        latency_steps=v['sensor', 'latency_steps'],
        dropout_prob=v['sensor', 'dropout_prob'], rng_seed=v['sensor', 'seed'],
    )
    return RunConfig(
        goal=goal, limits=limits, sensor=sensor,
        initial=_pose(v, 'initial'),
        duration=v['run', 'duration'], servo_start=v['run', 'servo_start'],
        jacobian_variant=JacobianVariant.parse(v['run', 'jacobian_variant']),
        output=v['run', 'output'],
        hole_in_world=_pose(v, 'hole'),
    )


def parse_scan_config(text, path=None):
    """:func:`load_scan_config` on a string."""
    v = _values(_read(text, path), SCAN_SCHEMA, SCAN_REQUIRED)
    grid = ScanGrid(**{key: v['scan', key] for key in SCAN_SCHEMA['scan']})
    oracle = DetectOracle(**{key: v['oracle', key] for key in SCAN_SCHEMA['oracle']})
    return ScanConfig(grid=grid, oracle=oracle, hole_in_world=_pose(v, 'hole'),
                      output=v['run', 'output'])


def _load(path, parse):
    path = Path(path)
    try:
        text = path.read_text(encoding='utf-8')
    except OSError as exc:
        raise ConfigError("cannot read %s: %s" % (path, exc.strerror or exc))
    config = parse(text, path)
    logger.info("loaded %s", path)
    return config


def load_config(path):
    """
    Load a closed-loop run configuration.

    :raises ParseError: on malformed lines, with the line number.
    :raises ValidationError: on unknown or missing keys and invalid values.
    :rtype: :class:`RunConfig`
    """
    return _load(path, parse_config)


def load_scan_config(path):
    """Load a viewpoint scan configuration; see :func:`load_config`."""
    return _load(path, parse_scan_config)


def _pose_lines(prefix, pose):
    x, y, z, a, b, c = pose.degrees()
    return ["%s%s = %r" % (prefix, key, value)
            for key, value in zip(_POSE_KEYS, (x, y, z, a, b, c))]


def dump_config(config):
    """Serialise a :class:`RunConfig` in the format :func:`load_config` reads."""
    limits = config.limits
    sensor = config.sensor
    lines = ['[goal]']
    lines += _pose_lines('desired_', config.goal.flange_in_hole)
    lines.append('axis_offset = %r' % config.goal.axis_offset)
    lines += ['', '[limits]',
              'v_max = %r' % limits.v_max,
              'w_max = %r' % math.degrees(limits.w_max),
              'tau = %r' % limits.tau,
              'beta_p = %r' % limits.beta_p,
              'beta_r = %r' % limits.beta_r,
              'deadband = %r' % limits.deadband,
              'cond_max = %r' % limits.cond_max,
              '', '[initial]']
    lines += _pose_lines('', config.initial)
    lines += ['', '[sensor]']
    lines += _pose_lines('hand_eye_', sensor.hand_eye)
    lines += ['sigma_t = %r' % sensor.sigma_t,
              'sigma_r = %r' % math.degrees(sensor.sigma_r),
              'latency_steps = %d' % sensor.latency_steps,
              'dropout_prob = %r' % sensor.dropout_prob,
              'seed = %d' % sensor.rng_seed,
              '', '[hole]']
    lines += _pose_lines('', config.hole_in_world)
    lines += ['', '[run]',
              'duration = %r' % config.duration,
              'servo_start = %r' % config.servo_start,
              'jacobian_variant = %s' % config.jacobian_variant.value,
              'output = %s' % config.output]
    return '\n'.join(lines) + '\n'
