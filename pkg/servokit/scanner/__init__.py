"""
Viewpoint scanning: which camera placements around a hole detect it.
"""
import csv
import io
import logging
import math
from collections import OrderedDict
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path


from servokit.scanner.grid import AXES, ScanGrid, Viewpoint, generate_grid, viewpoint_pose
from servokit.scanner.oracle import DetectOracle, ViewpointResult, evaluate_viewpoint


__all__ = (
    'ScanGrid', 'Viewpoint', 'generate_grid', 'viewpoint_pose',
    'DetectOracle', 'ViewpointResult', 'evaluate_viewpoint',
    'ScanReport', 'run_scan', 'CSV_COLUMNS',
)

logger = logging.getLogger(__name__)

CSV_COLUMNS = ('l', 'd', 'theta', 'phi', 'found')
_ANGULAR = ('theta', 'phi')


class ScanReport(object):
    """All viewpoint results of a scan, in lattice order."""

    def __init__(self, results, grid=None):
        self.results = tuple(results)
        self.grid = grid

    def __len__(self):
        return len(self.results)

    def found(self):
        return [r for r in self.results if r.found]

    def summary(self):
        """
        Per-axis ``(min, max)`` over the viewpoints that found the hole;
        ``None`` for every axis when nothing was found.
        """
        found = self.found()
        ranges = OrderedDict()
        for axis in AXES:
            values = [getattr(r, axis) for r in found]
            ranges[axis] = (min(values), max(values)) if values else None
        return ranges

    def locations(self):
        """``(l, d) -> (found, tested)`` for every camera location."""
        counts = OrderedDict()
        for r in self.results:
            found, tested = counts.get((r.l, r.d), (0, 0))
            counts[(r.l, r.d)] = (found + int(r.found), tested + 1)
        return counts

    def column(self, l, theta=0.0, phi=0.0):
        """Distances ``d`` that found the hole at offset ``l`` and angles θ, φ."""
        return [r.d for r in self.found()
                if math.isclose(r.l, l, abs_tol=1e-9)
                and math.isclose(r.theta, theta, abs_tol=1e-9)
                and math.isclose(r.phi, phi, abs_tol=1e-9)]

    def write_csv(self, stream):
        writer = csv.writer(stream, lineterminator='\n')
        writer.writerow(CSV_COLUMNS)
        for r in self.results:
            writer.writerow([repr(float(r.l)), repr(float(r.d)),
                             repr(math.degrees(r.theta)), repr(math.degrees(r.phi)),
                             '1' if r.found else '0'])

    def summary_text(self):
        lines = ["viewpoints: %d" % len(self.results),
                 "found: %d" % len(self.found())]
        for axis, bounds in self.summary().items():
            if bounds is None:
                lines.append("%s: none" % axis)
                continue
            low, high = bounds
            if axis in _ANGULAR:
                lines.append("%s: %.6g .. %.6g deg" % (axis, math.degrees(low), math.degrees(high)))
            else:
                lines.append("%s: %.6g .. %.6g m" % (axis, low, high))
        lines.append("locations (l, d): found/tested")
        for (l, d), (found, tested) in self.locations().items():
            lines.append("  %.6g, %.6g: %d/%d" % (l, d, found, tested))
        return '\n'.join(lines) + '\n'

    def to_files(self, path):
        """Write the CSV to ``path`` and the summary next to it; return both paths."""
        path = Path(path)
        with path.open('w', newline='', encoding='ascii') as stream:
            self.write_csv(stream)
        summary_path = path.with_suffix('.summary.txt')
        summary_path.write_text(self.summary_text(), encoding='ascii')
        return path, summary_path

    def to_csv_string(self):
        stream = io.StringIO()
        self.write_csv(stream)
        return stream.getvalue()


def run_scan(grid, oracle=None, hole_in_world=None, workers=None):
    """
    Evaluate every viewpoint of ``grid``.

    With ``workers`` > 1 the evaluations run on a thread pool; the report
    keeps lattice order either way.
    """
    oracle = oracle or DetectOracle()
    viewpoints = generate_grid(grid, hole_in_world)

    def evaluate(vp):
        return evaluate_viewpoint(vp, oracle, hole_in_world)

    if workers and workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(evaluate, viewpoints))
    else:
        results = [evaluate(vp) for vp in viewpoints]

    for r in results:
        logger.debug("l=%.3f d=%.3f theta=%.1f phi=%.1f found=%d", r.l, r.d,
                     math.degrees(r.theta), math.degrees(r.phi), r.found)
    report = ScanReport(results, grid)
    logger.info("scanned %d viewpoints, hole found from %d", len(report), len(report.found()))
    return report
