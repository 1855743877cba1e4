# -*- coding: utf-8 -*-
# @Time    : 2026-10-19 15:50
# @Author  : robricks
# @Desc    : projection pursuit
import dataclasses

from robricks.core.errors import InputError
from robricks.state import const


@dataclasses.dataclass
class GridConfig:
    """
    n_angles: grid size of every plane search, the first grid spans 180 degrees
    shrink: factor applied to the refinement window each round (first window +-45)
    max_sweeps: full passes over the variables
    tol: stop once the grid step (radians) / the direction change falls below it
    penalty: L1 penalty on the direction subtracted from the index
    """

    n_angles: int = const.GRID_ANGLES
    shrink: float = 0.5
    max_sweeps: int = const.GRID_MAX_SWEEPS
    tol: float = const.GRID_TOL
    penalty: float = 0.0

    def __post_init__(self):
        if self.n_angles < 2 or not self.tol > 0 or not 0 < self.shrink < 1:
            raise InputError(
                "need n_angles >= 2, tol > 0 and 0 < shrink < 1",
                n_angles=self.n_angles,
                tol=self.tol,
            )


from robricks.pursuit.grid import (  # noqa E402
    deflate,
    grid_search,
    plane_optimize,
    resolve_index,
)
