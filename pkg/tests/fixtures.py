"""Frozen objects shared by several test modules."""

from __future__ import annotations

from convlab.gf import field_make
from convlab.lsys import Realization
from convlab.matrix import Mat

GF4 = field_make(2, 2)


def mdp_311() -> Realization:
    """(3,1,1) realization over GF(4) found by `convlab search -n 3 -k 1 -d 1`
    with seed 0; its code has profile (3, 5, 6) and free distance 6."""
    m = lambda rows: Mat.from_rows(GF4, rows)  # noqa: E731
    return Realization.make(m([[2]]), m([[1]]), m([[2], [3]]), m([[3], [3]]))
