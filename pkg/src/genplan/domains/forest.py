"""Forest: reach the far corner of a grid along a marked trail.

Cells are named ``r{row}_c{col}``. Water cells cannot be entered, hills
must be climbed. The trail runs down the left edge and along the bottom,
with one upward detour bump, so cutting across the dirt interior is
strictly shorter than following the whole trail.
"""

from __future__ import annotations

import random

from ..pddl import GroundAtom, Task
from .base import GenerationError

DOMAIN_ID = "forest"


def _grid_shapes(count_range: tuple[int, int]) -> list[tuple[int, int]]:
    lo, hi = count_range
    shapes = []
    for rows in range(2, hi // 2 + 1):
        for cols in range(2, hi // rows + 1):
            if lo <= rows * cols <= hi:
                shapes.append((rows, cols))
    return shapes


def build_task(rng: random.Random, count_range: tuple[int, int], name: str) -> Task:
    shapes = _grid_shapes(count_range)
    if not shapes:
        raise GenerationError(f"no grid with 2x2 or more cells fits in {count_range}")
    rows, cols = rng.choice(shapes)

    def cell(r, c):
        return f"r{r}_c{c}"

    start, target = (0, 0), (rows - 1, cols - 1)
    trail = [(r, 0) for r in range(rows)]
    trail += [(rows - 1, c) for c in range(1, cols)]
    if cols >= 4 and rows >= 3:
        # Detour bump: leave the bottom row, go up and over one column.
        bump_col = rng.randint(1, cols - 3)
        height = rng.randint(1, rows - 2)
        up = [(rows - 1 - i, bump_col) for i in range(1, height + 1)]
        over = [(rows - 1 - height, bump_col + 1)]
        down = [(rows - 1 - i, bump_col + 1) for i in range(height - 1, 0, -1)]
        at = trail.index((rows - 1, bump_col))
        trail = trail[: at + 1] + up + over + down + trail[at + 1 :]
    trail_set = set(trail)

    water, hills = set(), set()
    for r in range(rows):
        for c in range(cols):
            if (r, c) in trail_set or (r, c) in (start, target):
                if rng.random() < 0.15 and (r, c) != start:
                    hills.add((r, c))
                continue
            roll = rng.random()
            if roll < 0.25:
                water.add((r, c))
            elif roll < 0.40:
                hills.add((r, c))

    init = {GroundAtom("at", (cell(*start),))}
    for r in range(rows):
        for c in range(cols):
            for dr, dc in ((0, 1), (1, 0), (0, -1), (-1, 0)):
                r2, c2 = r + dr, c + dc
                if 0 <= r2 < rows and 0 <= c2 < cols:
                    init.add(GroundAtom("adjacent", (cell(r, c), cell(r2, c2))))
    init.update(GroundAtom("iswater", (cell(*w),)) for w in water)
    init.update(GroundAtom("ishill", (cell(*h),)) for h in hills)
    init.update(GroundAtom("ontrail", (cell(*t),)) for t in trail_set)
    goal = frozenset({GroundAtom("at", (cell(*target),))})
    objects = tuple((cell(r, c), "loc") for r in range(rows) for c in range(cols))
    return Task(name, DOMAIN_ID, objects, frozenset(init), goal)
