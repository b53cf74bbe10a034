"""
Command line entry point: ``servokit servo|scan|check-jacobian``.

Exit codes are 0 on success, 1 on configuration errors and 2 when a run is
aborted for numerical reasons.
"""
import argparse
import dataclasses
import logging
import math
import sys
from pathlib import Path

from servokit import __version__
from servokit.conf import log_level, shipped_config
from servokit.conf.loader import load_config, load_scan_config
from servokit.exceptions import ConfigError, IllConditioned
from servokit.plant import run_closed_loop
from servokit.scanner import run_scan
from servokit.servo import JacobianVariant, check_jacobian


__all__ = ('main', 'build_parser', 'cmd_servo', 'cmd_scan', 'cmd_check_jacobian')

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_CONFIG = 1
EXIT_ABORT = 2


def cmd_servo(config, out=None, seed=None):
    """Run the closed loop described by ``config`` and write its trajectory CSV."""
    if seed is not None:
        config = dataclasses.replace(
            config, sensor=dataclasses.replace(config.sensor, rng_seed=seed))
    out = Path(out or config.output)
    try:
        log = run_closed_loop(config.initial_state(), config.goal, config.limits,
                              config.sensor, config.duration, config.servo_start,
                              config.jacobian_variant)
    except IllConditioned as exc:
        partial = getattr(exc, 'log', None)
        if partial is not None:
            partial.to_csv(out)
            logger.info("partial trajectory written to %s", out)
        print("aborted: %s" % exc, file=sys.stderr)
        return EXIT_ABORT

    log.to_csv(out)
    logger.info("trajectory written to %s", out)
    converged = log.convergence_time()
    max_t, max_r = log.max_increments()
    print("periods: %d, errors below 1 mm from t=%s s, max increments %.4g mm / %.4g deg"
          % (len(log), 'never' if converged is None else '%.3f' % converged,
             max_t * 1e3, math.degrees(max_r)))
    return EXIT_OK


def cmd_scan(config, out=None, workers=None):
    """Scan the viewpoint lattice; write the CSV and its ``.summary.txt``."""
    report = run_scan(config.grid, config.oracle, config.hole_in_world, workers=workers)
    csv_path, summary_path = report.to_files(out or config.output)
    logger.info("scan written to %s and %s", csv_path, summary_path)
    print("viewpoints: %d, found: %d" % (len(report), len(report.found())))
    return EXIT_OK


def cmd_check_jacobian(seed=0, trials=1000, variant=JacobianVariant.CORRECTED):
    """Compare the analytic Jacobian with finite differences; 0 if it matches."""
    result = check_jacobian(trials=trials, seed=seed, variant=variant)
    print("variant: %s, trials: %d, max relative deviation: %.3g"
          % (result.variant.value, result.trials, result.max_deviation))
    print("near-singular configurations: %d" % len(result.near_singular))
    for p1, p2, condition in result.near_singular:
        print("  p1=(%.3g, %.3g, %.3g) p2=(%.3g, %.3g, %.3g) cond=%.3g"
              % (p1 + p2 + (condition,)))
    return EXIT_OK if result.passed else EXIT_ABORT


def _config_path(value):
    """A config path; a bare name that is not a file names a shipped config."""
    path = Path(value)
    if path.exists() or path.name != value:
        return path
    try:
        return shipped_config(value)
    except FileNotFoundError:
        return path


def _trials(value):
    trials = int(value)
    if trials < 0:
        raise argparse.ArgumentTypeError("trials must be >= 0")
    return trials


def build_parser():
    parser = argparse.ArgumentParser(
        prog='servokit', description='Feature-based visual servoing toolkit.')
    parser.add_argument('--version', action='version', version='%(prog)s ' + __version__)
    commands = parser.add_subparsers(dest='command', metavar='command')
    commands.required = True

    servo = commands.add_parser('servo', help='run the closed-loop simulation')
    servo.add_argument('--config', required=True, type=_config_path)
    servo.add_argument('--out', type=Path, help='trajectory CSV (default: [run] output)')
    servo.add_argument('--seed', type=int, help='override the sensor noise seed')

    scan = commands.add_parser('scan', help='scan viewpoints around the hole')
    scan.add_argument('--config', required=True, type=_config_path)
    scan.add_argument('--out', type=Path, help='scan CSV (default: [run] output)')
    scan.add_argument('--workers', type=int, default=None)

    check = commands.add_parser('check-jacobian',
                                help='verify the feature Jacobian by finite differences')
    check.add_argument('--variant', default=JacobianVariant.CORRECTED.value,
                       choices=[v.value for v in JacobianVariant])
    check.add_argument('--trials', type=_trials, default=1000)
    check.add_argument('--seed', type=int, default=0)
    return parser


def main(argv=None):
    logging.basicConfig(level=log_level(),
                        format='%(asctime)s %(levelname)s %(name)s: %(message)s')
    args = build_parser().parse_args(argv)
    try:
        if args.command == 'servo':
            return cmd_servo(load_config(args.config), args.out, args.seed)
        if args.command == 'scan':
            return cmd_scan(load_scan_config(args.config), args.out, args.workers)
        return cmd_check_jacobian(args.seed, args.trials, JacobianVariant(args.variant))
    except ConfigError as exc:
        logger.error("%s", exc)
        print("configuration error: %s" % exc, file=sys.stderr)
        return EXIT_CONFIG


if __name__ == '__main__':
    sys.exit(main())
