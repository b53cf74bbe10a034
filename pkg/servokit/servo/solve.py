"""
The Newton step ``Δx̄ = J⁻¹ē``.

The Jacobian is LU-factorised once per step; the LAPACK condition estimate
reuses that factorisation.
"""
import math

import numpy as np
from scipy.linalg import get_lapack_funcs

from servokit.conf import DEFAULT_COND_MAX
from servokit.exceptions import IllConditioned
from servokit.features import FeatureError


__all__ = ('newton_step', 'solve_with_condition', 'lu_with_condition')

_getrf, _gecon, _getrs = get_lapack_funcs(('getrf', 'gecon', 'getrs'), dtype=np.float64)


def lu_with_condition(jacobian):
    """
    LU factors of ``jacobian`` with partial pivoting, and the estimate of its
    1-norm condition number; ``inf`` when a pivot is exactly zero.

    >>> _, _, condition = lu_with_condition(np.diag([1.0, 2.0, 4.0, 1.0, 1.0]))
    >>> round(condition, 9)
    4.0
    """
    lu, piv, info = _getrf(jacobian)
    if info > 0:
        return lu, piv, math.inf
    rcond, _ = _gecon(lu, np.abs(jacobian).sum(axis=0).max(), norm='1')
    return lu, piv, (1.0 / float(rcond) if rcond > 0 else math.inf)


def solve_with_condition(error, jacobian, cond_max=DEFAULT_COND_MAX):
    """:func:`newton_step` that also returns the condition estimate."""
    if isinstance(error, FeatureError):
        error = error.as_array()
    error = np.asarray(error, dtype=float)
    jacobian = np.asarray(jacobian, dtype=float)
    if not np.isfinite(jacobian).all():
        raise IllConditioned(float('nan'), cond_max)

    lu, piv, condition = lu_with_condition(jacobian)
    if not condition <= cond_max:
        raise IllConditioned(condition, cond_max)
    step, _ = _getrs(lu, piv, error)
    return step, condition


def newton_step(error, jacobian, cond_max=DEFAULT_COND_MAX):
    """
    Solve ``J·Δx̄ = ē`` with an LU factorisation (partial pivoting).

    :param error: :class:`FeatureError` or 5-vector.
    :param jacobian: 5x5 feature Jacobian.
    :param cond_max: largest accepted 1-norm condition estimate.
    :rtype: the raw step as a 5-vector ``(Δx, Δy, Δz, Δb, Δc)``.
    :raises IllConditioned: when the estimate exceeds ``cond_max``.
    """
    step, _ = solve_with_condition(error, jacobian, cond_max)
    return step
