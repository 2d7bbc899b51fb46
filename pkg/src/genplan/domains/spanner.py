"""Spanner: walk a one-way corridor, collecting single-use wrenches for nuts.

Locations form a simple directed link chain with the man at its head.
Spanners and nuts are scattered so that at every prefix of the chain at
least as many spanners as nuts have appeared, which keeps every task
solvable in a single forward pass.
"""

from __future__ import annotations

import random

from ..pddl import GroundAtom, Task
from .base import GenerationError

DOMAIN_ID = "spanner"
MIN_OBJECTS = 5  # man, two locations, one spanner, one nut


def build_task(rng: random.Random, count_range: tuple[int, int], name: str) -> Task:
    lo, hi = count_range
    if hi < MIN_OBJECTS:
        raise GenerationError(f"spanner needs at least {MIN_OBJECTS} objects")
    n = rng.randint(max(lo, MIN_OBJECTS), hi)
    n_nuts = rng.randint(1, max(1, (n - 3) // 3))
    n_spanners = rng.randint(n_nuts, n - 3 - n_nuts)
    n_locs = n - 1 - n_spanners - n_nuts

    locs = [f"loc-{i}" for i in range(1, n_locs + 1)]
    spanners = [f"spanner-{i}" for i in range(1, n_spanners + 1)]
    nuts = [f"nut-{i}" for i in range(1, n_nuts + 1)]

    init = {GroundAtom("at", ("bob", locs[0]))}
    for a, b in zip(locs, locs[1:]):
        init.add(GroundAtom("link", (a, b)))

    spanner_pos = sorted(rng.randrange(n_locs) for _ in spanners)
    order = list(range(n_spanners))
    rng.shuffle(order)
    for s, slot in zip(spanners, order):
        init.add(GroundAtom("spanner-at", (s, locs[spanner_pos[slot]])))
        init.add(GroundAtom("useable", (s,)))
    for i, nut in enumerate(nuts):
        # The i-th nut sits no earlier than the i-th spanner along the chain.
        pos = rng.randint(spanner_pos[i], n_locs - 1)
        init.add(GroundAtom("nut-at", (nut, locs[pos])))
        init.add(GroundAtom("loose", (nut,)))

    goal = frozenset(GroundAtom("tightened", (nut,)) for nut in nuts)
    objects = (
        tuple((l, "location") for l in locs)
        + (("bob", "man"),)
        + tuple((s, "spanner") for s in spanners)
        + tuple((x, "nut") for x in nuts)
    )
    return Task(name, DOMAIN_ID, objects, frozenset(init), goal)
