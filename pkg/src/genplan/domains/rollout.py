"""Random baseline: sample applicable actions until goal, dead-end, or horizon."""

from __future__ import annotations

import random
from typing import Optional

from ..pddl import Domain, GroundAction, GroundedTask, Task, goal_reached


def random_rollout(
    domain: Domain,
    task: Task,
    horizon: int = 1000,
    rng: Optional[random.Random] = None,
    grounded: Optional[GroundedTask] = None,
) -> Optional[tuple[GroundAction, ...]]:
    """Uniformly sample applicable ground actions from init.

    Returns the executed plan if a goal state is reached within horizon
    actions; returns None on a dead-end (no applicable action) or when
    the horizon is exhausted.
    """
    rng = rng or random.Random()
    if grounded is None:
        grounded = GroundedTask(domain, task)
    state = task.init
    if goal_reached(state, task):
        return ()
    plan: list[GroundAction] = []
    for _ in range(horizon):
        entries = grounded.applicable_entries(state)
        if not entries:
            return None
        entry = rng.choice(entries)
        state = GroundedTask.apply(entry, state)
        plan.append(entry.action)
        if goal_reached(state, task):
            return tuple(plan)
    return None
