"""Conversions between Task values and the sets a get_plan program receives.

The program contract: ``objects`` is a set of (name, type) pairs, or a
set of bare names when the domain is untyped; ``init`` and ``goal`` are
sets of atom tuples with the predicate first. Wire payloads encode the
same data as sorted JSON arrays so child processes see a canonical
order.
"""

from __future__ import annotations

from typing import Any

from .pddl import GroundAtom, Task


def task_is_typed(task: Task) -> bool:
    return any(ty is not None for _, ty in task.objects)


def atom_tuple(atom: GroundAtom) -> tuple[str, ...]:
    return (atom.predicate,) + atom.args


def task_call_args(task: Task) -> tuple[set, set, set]:
    """The (objects, init, goal) sets passed to get_plan in-process."""
    if task_is_typed(task):
        objects: set = {(name, ty) for name, ty in task.objects}
    else:
        objects = {name for name, _ in task.objects}
    init = {atom_tuple(a) for a in task.init}
    goal = {atom_tuple(a) for a in task.goal}
    return objects, init, goal


def task_payload(task: Task) -> dict[str, Any]:
    """JSON-ready request fields with sets encoded as sorted arrays."""
    typed = task_is_typed(task)
    if typed:
        objects = sorted([name, ty] for name, ty in task.objects)
    else:
        objects = sorted(name for name, _ in task.objects)
    return {
        "typed": typed,
        "objects": objects,
        "init": sorted(list(atom_tuple(a)) for a in task.init),
        "goal": sorted(list(atom_tuple(a)) for a in task.goal),
    }
