# -*- coding: utf-8 -*-
# @Time    : 2026-10-19 10:12
# @Author  : robricks
# @Desc    : seeded random streams, one per task index
from typing import List, Optional

import numpy as np

from robricks.state import G


def resolve_seed(seed: Optional[int] = None) -> int:
    return G.seed if seed is None else int(seed)


def stream(seed: Optional[int] = None, index: Optional[int] = None) -> np.random.Generator:
    """
    generator for task ``index`` under ``seed``

    the same (seed, index) pair yields the same draws in any thread
    """
    seed = resolve_seed(seed)
    entropy = [seed] if index is None else [seed, int(index)]
    return np.random.default_rng(np.random.SeedSequence(entropy))


def streams(seed: Optional[int], count: int, offset: int = 0) -> List[np.random.Generator]:
    return [stream(seed, offset + i) for i in range(count)]
