"""Heavy: stack every item into a box, heavier items always below lighter.

Weights are a strict total order given only through pairwise ``heavier``
atoms. By default init carries the full transitive order; with
``covering_pairs`` only consecutive pairs are emitted.
"""

from __future__ import annotations

import random

from ..pddl import GroundAtom, Task
from .base import GenerationError

DOMAIN_ID = "heavy"
MIN_OBJECTS = 1


def build_task(
    rng: random.Random,
    count_range: tuple[int, int],
    name: str,
    covering_pairs: bool = False,
) -> Task:
    lo, hi = count_range
    if hi < MIN_OBJECTS:
        raise GenerationError("heavy needs at least one item")
    n = rng.randint(max(lo, MIN_OBJECTS), hi)
    items = [f"item-{i}" for i in range(n)]
    order = items[:]
    rng.shuffle(order)  # order[0] is the heaviest

    init = {GroundAtom("box-empty")}
    if covering_pairs:
        init.update(GroundAtom("heavier", (a, b)) for a, b in zip(order, order[1:]))
    else:
        for i, heavy in enumerate(order):
            init.update(GroundAtom("heavier", (heavy, light)) for light in order[i + 1 :])
    goal = frozenset(GroundAtom("in-box", (item,)) for item in items)
    objects = tuple((item, "item") for item in items)
    return Task(name, DOMAIN_ID, objects, frozenset(init), goal)
