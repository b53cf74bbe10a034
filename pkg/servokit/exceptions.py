"""
Exceptions raised by servokit.
"""

__all__ = (
    'ServokitError', 'InvalidObservation', 'IllConditioned', 'GridTooLarge',
    'ConfigError', 'ParseError', 'ValidationError',
)


class ServokitError(Exception):
    """Base class of every servokit error."""


class InvalidObservation(ServokitError):
    """A hole observation flagged invalid (detection dropout) was used."""

    def __init__(self, timestamp=None):
        self.timestamp = timestamp
        super(InvalidObservation, self).__init__(
            "observation at t=%s is not valid" % timestamp)


class IllConditioned(ServokitError):
    """
    The feature Jacobian is too badly conditioned to be inverted.

    .. attribute:: condition

        1-norm condition estimate of the Jacobian (``inf`` when singular)

    .. attribute:: t

        simulation time of the failing period, when raised from a run

    .. attribute:: consecutive

        number of consecutive failing periods, when raised from a run
    """

    def __init__(self, condition, cond_max, t=None, consecutive=None):
        self.condition = condition
        self.cond_max = cond_max
        self.t = t
        self.consecutive = consecutive
        message = "Jacobian condition %.3g exceeds %.3g" % (condition, cond_max)
        if t is not None:
            message += " at t=%.3f s" % t
        if consecutive is not None:
            message += " (%d consecutive periods)" % consecutive
        super(IllConditioned, self).__init__(message)


class GridTooLarge(ServokitError):
    def __init__(self, count, limit):
        self.count = count
        self.limit = limit
        super(GridTooLarge, self).__init__(
            "scan grid has %d viewpoints, the limit is %d" % (count, limit))


class ConfigError(ServokitError):
    """Base class of configuration problems."""


class ParseError(ConfigError):
    def __init__(self, message, path=None, lineno=None):
        self.path = path
        self.lineno = lineno
        location = path or '<string>'
        if lineno is not None:
            location = "%s:%d" % (location, lineno)
        super(ParseError, self).__init__("%s: %s" % (location, message))


class ValidationError(ConfigError, ValueError):
    """A value violates one of its invariants; the message names it."""
