"""The seven bundled benchmark domains: PDDL, generators, oracle plans.

Every generated task is certified solvable at generation time by running
the domain's hand-written oracle generalized plan through the validator.
Generation is deterministic per (domain, split, seed).
"""

from __future__ import annotations

import random
from functools import lru_cache
from importlib import resources

from ..marshal import task_call_args
from ..pddl import Domain, GroundAction, Task, parse_action_string, parse_domain
from ..validation import validate
from . import delivery, ferry, forest, gripper, heavy, miconic, spanner
from .base import SIZE_RANGES, TASK_COUNTS, GenerationError, GenParams, default_params
from .rollout import random_rollout

DOMAIN_IDS = ("delivery", "forest", "gripper", "miconic", "ferry", "spanner", "heavy")

_BUILDERS = {
    "delivery": delivery.build_task,
    "forest": forest.build_task,
    "gripper": gripper.build_task,
    "miconic": miconic.build_task,
    "ferry": ferry.build_task,
    "spanner": spanner.build_task,
    "heavy": heavy.build_task,
}


def domain_text(domain_id: str) -> str:
    if domain_id not in DOMAIN_IDS:
        raise GenerationError(f"unknown domain {domain_id!r}")
    return (
        resources.files("genplan").joinpath("resources", "domains", f"{domain_id}.pddl").read_text()
    )


@lru_cache(maxsize=None)
def load_domain(domain_id: str) -> Domain:
    return parse_domain(domain_text(domain_id))


def oracle_source(domain_id: str) -> str:
    """The domain's oracle generalized plan as get_plan source text."""
    if domain_id not in DOMAIN_IDS:
        raise GenerationError(f"unknown domain {domain_id!r}")
    return (
        resources.files("genplan").joinpath("resources", "oracles", f"{domain_id}.py").read_text()
    )


@lru_cache(maxsize=None)
def _oracle_fn(domain_id: str):
    namespace: dict = {}
    exec(compile(oracle_source(domain_id), f"<oracle:{domain_id}>", "exec"), namespace)
    return namespace["get_plan"]


def oracle_plan(domain_id: str, task: Task) -> tuple[GroundAction, ...]:
    """Run the oracle generalized plan on task and parse its action strings."""
    objects, init, goal = task_call_args(task)
    strings = _oracle_fn(domain_id)(objects, init, goal)
    domain = load_domain(domain_id)
    return tuple(parse_action_string(s, domain, task) for s in strings)


def generate(params: GenParams) -> list[Task]:
    """Generate tasks for params; deterministic per seed; all certified solvable."""
    if params.domain_id not in DOMAIN_IDS:
        raise GenerationError(f"unknown domain {params.domain_id!r}")
    rng = random.Random(f"{params.domain_id}/{params.split}/{params.seed}")
    domain = load_domain(params.domain_id)
    build = _BUILDERS[params.domain_id]
    tasks = []
    for index in range(params.num_tasks):
        name = f"{params.domain_id}-{params.split}-s{params.seed}-t{index}"
        if params.domain_id == "heavy":
            task = build(rng, params.count_range, name, covering_pairs=params.heavy_covering_pairs)
        else:
            task = build(rng, params.count_range, name)
        lo, hi = params.count_range
        count = len(task.objects)
        if not lo <= count <= hi:
            raise GenerationError(f"{name}: {count} objects outside {params.count_range}")
        plan = oracle_plan(params.domain_id, task)
        result = validate(plan, domain, task)
        if not result.valid:
            raise GenerationError(f"{name}: oracle plan failed certification ({result.status})")
        tasks.append(task)
    return tasks


__all__ = [
    "DOMAIN_IDS",
    "SIZE_RANGES",
    "TASK_COUNTS",
    "GenParams",
    "GenerationError",
    "default_params",
    "domain_text",
    "generate",
    "load_domain",
    "oracle_plan",
    "oracle_source",
    "random_rollout",
]
