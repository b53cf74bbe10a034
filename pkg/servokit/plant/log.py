"""
Per-period trajectory records, their CSV form and a few analyses.
"""
import csv
import io
import math
from pathlib import Path
from typing import NamedTuple

import numpy as np


__all__ = ('TrajectoryRecord', 'TrajectoryLog', 'COLUMNS', 'format_value')

COLUMNS = (
    't', 'x', 'y', 'z', 'a', 'b', 'c',
    'e11', 'e12', 'e21', 'e22', 'e13',
    'dx', 'dy', 'dz', 'db', 'dc',
    'sat_t', 'sat_r', 'obs_valid',
)
# written in degrees, kept in radians
ANGLE_COLUMNS = frozenset(('a', 'b', 'c', 'db', 'dc'))
ERROR_COLUMNS = ('e11', 'e12', 'e21', 'e22', 'e13')


class TrajectoryRecord(NamedTuple):
    t: float
    x: float
    y: float
    z: float
    a: float
    b: float
    c: float
    e11: float
    e12: float
    e21: float
    e22: float
    e13: float
    dx: float
    dy: float
    dz: float
    db: float
    dc: float
    sat_t: bool
    sat_r: bool
    obs_valid: bool


def format_value(name, value):
    """
    CSV text of one cell: ``repr`` of the float (locale independent),
    degrees for angles, 0/1 for flags.

    >>> format_value('sat_t', True)
    '1'
    >>> format_value('x', 0.25)
    '0.25'
    """
    if isinstance(value, (bool, np.bool_)):
        return '1' if value else '0'
    value = float(value)
    if name in ANGLE_COLUMNS:
        value = math.degrees(value)
    return repr(value)


class TrajectoryLog(object):
    """
    Ordered records of one closed-loop run, one per control period.

    Pose columns hold the flange relative to the hole; error and correction
    columns are in the goal frame.
    """

    def __init__(self, records=None):
        self.records = list(records or [])

    def append(self, record):
        self.records.append(record)

    def __len__(self):
        return len(self.records)

    def __iter__(self):
        return iter(self.records)

    def __getitem__(self, index):
        return self.records[index]

    def column(self, name):
        if name not in COLUMNS:
            raise KeyError(name)
        index = COLUMNS.index(name)
        return np.array([record[index] for record in self.records], dtype=float)

    def errors(self):
        """n x 5 array of the error components."""
        return np.column_stack([self.column(name) for name in ERROR_COLUMNS])

    def convergence_time(self, threshold=1e-3):
        """
        First time from which every error component stays below
        ``threshold`` until the end of the log, or None.
        """
        if not self.records:
            return None
        with np.errstate(invalid='ignore'):
            below = np.all(np.abs(self.errors()) < threshold, axis=1)
        above = np.flatnonzero(~below)
        if not len(above):
            return self.records[0].t
        if above[-1] == len(below) - 1:
            return None
        return self.records[above[-1] + 1].t

    def saturated_slope(self, name='z'):
        """Least-squares slope of column ``name`` over periods with ``sat_t``."""
        mask = self.column('sat_t') > 0
        if mask.sum() < 2:
            return float('nan')
        slope, _ = np.polyfit(self.column('t')[mask], self.column(name)[mask], 1)
        return float(slope)

    def increments(self):
        """Per-period translational (m) and rotational (rad) increment norms."""
        translation = np.column_stack([self.column(n) for n in ('dx', 'dy', 'dz')])
        rotation = np.column_stack([self.column(n) for n in ('db', 'dc')])
        return np.linalg.norm(translation, axis=1), np.linalg.norm(rotation, axis=1)

    def max_increments(self):
        translation, rotation = self.increments()
        if not len(translation):
            return 0.0, 0.0
        return float(translation.max()), float(rotation.max())

    def write_csv(self, stream):
        writer = csv.writer(stream, lineterminator='\n')
        writer.writerow(COLUMNS)
        for record in self.records:
            writer.writerow([format_value(name, value)
                             for name, value in zip(COLUMNS, record)])

    def to_csv(self, path):
        path = Path(path)
        with path.open('w', newline='', encoding='ascii') as stream:
            self.write_csv(stream)
        return path

    def to_csv_string(self):
        stream = io.StringIO()
        self.write_csv(stream)
        return stream.getvalue()
