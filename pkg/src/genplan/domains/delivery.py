"""Delivery: carry newspapers from a home base to the locations that want them."""

from __future__ import annotations

import random

from ..pddl import GroundAtom, Task
from .base import GenerationError

DOMAIN_ID = "delivery"
MIN_OBJECTS = 3  # two locations and one paper


def build_task(rng: random.Random, count_range: tuple[int, int], name: str) -> Task:
    lo, hi = count_range
    if hi < MIN_OBJECTS:
        raise GenerationError(f"delivery needs at least {MIN_OBJECTS} objects")
    n = rng.randint(max(lo, MIN_OBJECTS), hi)
    n_locs = max(2, n // 2)
    n_papers = n - n_locs
    locs = [f"loc-{i}" for i in range(n_locs)]
    papers = [f"paper-{i}" for i in range(n_papers)]
    home = locs[0]
    n_wants = rng.randint(1, min(n_papers, n_locs - 1))
    wants = rng.sample(locs[1:], n_wants)

    init = {GroundAtom("at", (home,)), GroundAtom("ishomebase", (home,))}
    safe = {home, *wants}
    for loc in locs:
        if loc in safe or rng.random() < 0.8:
            init.add(GroundAtom("safe", (loc,)))
    init.update(GroundAtom("unpacked", (p,)) for p in papers)
    goal = {GroundAtom("satisfied", (w,)) for w in wants}
    objects = tuple((l, "loc") for l in locs) + tuple((p, "paper") for p in papers)
    return Task(name, DOMAIN_ID, objects, frozenset(init), frozenset(goal))
