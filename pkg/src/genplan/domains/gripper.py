"""Gripper: a two-gripper robot ferries balls between rooms."""

from __future__ import annotations

import random

from ..pddl import GroundAtom, Task
from .base import GenerationError

DOMAIN_ID = "gripper"
MIN_OBJECTS = 5  # two rooms, two grippers, one ball


def build_task(rng: random.Random, count_range: tuple[int, int], name: str) -> Task:
    lo, hi = count_range
    if hi < MIN_OBJECTS:
        raise GenerationError(f"gripper needs at least {MIN_OBJECTS} objects")
    n = rng.randint(max(lo, MIN_OBJECTS), hi)
    n_rooms = rng.randint(2, min(4, n - 3))
    n_balls = n - 2 - n_rooms
    rooms = [f"room-{i}" for i in range(n_rooms)]
    balls = [f"ball-{i}" for i in range(n_balls)]
    grippers = ["gripper-0", "gripper-1"]

    init = set()
    init.update(GroundAtom("room", (r,)) for r in rooms)
    init.update(GroundAtom("ball", (b,)) for b in balls)
    init.update(GroundAtom("gripper", (g,)) for g in grippers)
    init.update(GroundAtom("free", (g,)) for g in grippers)
    init.add(GroundAtom("at-robby", (rng.choice(rooms),)))
    goal = set()
    for ball in balls:
        src = rng.choice(rooms)
        init.add(GroundAtom("at", (ball, src)))
        others = [r for r in rooms if r != src]
        dest = rng.choice(others) if rng.random() < 0.8 else src
        goal.add(GroundAtom("at", (ball, dest)))
    objects = tuple((x, None) for x in rooms + balls + grippers)
    return Task(name, DOMAIN_ID, objects, frozenset(init), frozenset(goal))
