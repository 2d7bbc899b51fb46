"""Miconic: elevators serve passengers in several implicit buildings.

Floors are named ``f{level}_b{building}``. Buildings exist only through
the ``above`` relation: floors of the same building are totally ordered
by it (full transitive closure in init) and floors of distinct buildings
are above-incomparable. Each building has exactly one lift-at atom.
"""

from __future__ import annotations

import random

from ..pddl import GroundAtom, Task
from .base import GenerationError

DOMAIN_ID = "miconic"
MIN_OBJECTS = 3  # one building with two floors and one passenger


def build_task(rng: random.Random, count_range: tuple[int, int], name: str) -> Task:
    lo, hi = count_range
    if hi < MIN_OBJECTS:
        raise GenerationError(f"miconic needs at least {MIN_OBJECTS} objects")
    n = rng.randint(max(lo, MIN_OBJECTS), hi)
    max_buildings = min(3, (n - 1) // 2)
    n_buildings = rng.randint(1, max_buildings)
    n_passengers = rng.randint(1, n - 2 * n_buildings)
    n_floors = n - n_passengers

    # Random composition of n_floors into n_buildings parts, each >= 2.
    sizes = [2] * n_buildings
    for _ in range(n_floors - 2 * n_buildings):
        sizes[rng.randrange(n_buildings)] += 1

    floors_of: dict[int, list[str]] = {}
    init: set[GroundAtom] = set()
    for b, size in enumerate(sizes, start=1):
        floors = [f"f{i}_b{b}" for i in range(1, size + 1)]
        floors_of[b] = floors
        for i in range(size):
            for j in range(i + 1, size):
                init.add(GroundAtom("above", (floors[i], floors[j])))
        init.add(GroundAtom("lift-at", (rng.choice(floors),)))

    passengers = [f"p{i}" for i in range(1, n_passengers + 1)]
    goal = set()
    for p in passengers:
        b = rng.randint(1, n_buildings)
        origin, destin = rng.sample(floors_of[b], 2)
        init.add(GroundAtom("origin", (p, origin)))
        init.add(GroundAtom("destin", (p, destin)))
        goal.add(GroundAtom("served", (p,)))

    objects = tuple(
        (f, "floor") for b in range(1, n_buildings + 1) for f in floors_of[b]
    ) + tuple((p, "passenger") for p in passengers)
    return Task(name, DOMAIN_ID, objects, frozenset(init), frozenset(goal))
