"""Ferry: sail cars between islands, one car aboard at a time."""

from __future__ import annotations

import random

from ..pddl import GroundAtom, Task
from .base import GenerationError

DOMAIN_ID = "ferry"
MIN_OBJECTS = 3  # two locations and one car


def build_task(rng: random.Random, count_range: tuple[int, int], name: str) -> Task:
    lo, hi = count_range
    if hi < MIN_OBJECTS:
        raise GenerationError(f"ferry needs at least {MIN_OBJECTS} objects")
    n = rng.randint(max(lo, MIN_OBJECTS), hi)
    n_locs = max(2, round(n * rng.uniform(0.3, 0.5)))
    n_cars = n - n_locs
    if n_cars < 1:
        n_locs, n_cars = n - 1, 1
    locs = [f"loc-{i}" for i in range(n_locs)]
    cars = [f"car-{i}" for i in range(n_cars)]

    init = {GroundAtom("empty-ferry"), GroundAtom("at-ferry", (rng.choice(locs),))}
    init.update(GroundAtom("location", (l,)) for l in locs)
    init.update(GroundAtom("car", (c,)) for c in cars)
    goal = set()
    for car in cars:
        src = rng.choice(locs)
        init.add(GroundAtom("at", (car, src)))
        others = [l for l in locs if l != src]
        dest = rng.choice(others) if rng.random() < 0.9 else src
        goal.add(GroundAtom("at", (car, dest)))
    objects = tuple((x, None) for x in locs + cars)
    return Task(name, DOMAIN_ID, objects, frozenset(init), frozenset(goal))
