__all__ = ('frange_count',)


def frange_count(start, stop, step, slack=1e-9):
    """
    Number of lattice values ``start + i*step`` that do not pass ``stop``.

    Decimal steps are not exact in binary, so a small slack keeps
    ``(1.2 - 0.3) / 0.3`` from counting as 2.

    >>> frange_count(0.3, 1.2, 0.3)
    4
    >>> frange_count(0.5, 0.5, 0.1)
    1
    """
    return int((stop - start) / step + slack) + 1
