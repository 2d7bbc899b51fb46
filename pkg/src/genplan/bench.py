"""Runtime benchmarks: program wall time vs problem size.

For every size in the grid, generate fresh tasks at exactly that object
count and measure the time spent inside get_plan (process-spawn overhead
excluded: in-process timing wraps the call, the subprocess path uses the
shim-reported figure). An external planner command may be templated in
for comparison; it receives domain and problem file paths and is timed
end to end.
"""

from __future__ import annotations

import statistics
import subprocess
import tempfile
import time
from dataclasses import dataclass
from pathlib import Path
from typing import Optional, Sequence

from .domains import GenParams, GenerationError, generate, load_domain, _oracle_fn
from .execution import InProcessExecutor
from .marshal import task_call_args
from .pddl import parse_action_string, render_domain, render_task
from .validation import validate


@dataclass(frozen=True)
class BenchSample:
    objects: int
    median_call_s: float
    solved_all: bool
    planner_median_s: Optional[float] = None


@dataclass(frozen=True)
class BenchResult:
    domain: str
    samples: tuple[BenchSample, ...]
    partial: Optional[str] = None  # why the curve stopped early, if it did


DEFAULT_SIZE_FACTORS = (1.0, 1.5, 2.0, 3.0, 4.0)


def default_size_grid(domain_id: str) -> list[int]:
    """Sizes spanning the domain's eval range up to 4x its maximum."""
    from .domains import SIZE_RANGES

    lo, hi = SIZE_RANGES[domain_id]["eval"]
    sizes = [lo] + [int(hi * f) for f in DEFAULT_SIZE_FACTORS]
    if domain_id == "forest":
        # Grids need a near-square factorization; snap to perfect squares.
        sizes = [max(4, round(s ** 0.5) ** 2) for s in sizes]
    return sorted(set(sizes))


def bench_runtime(
    domain_id: str,
    sizes: Sequence[int],
    program: Optional[str] = None,
    num_tasks: int = 10,
    budget_s: float = 30.0,
    seed: int = 0,
    planner_cmd: Optional[str] = None,
    executor=None,
) -> BenchResult:
    """Median get_plan seconds over num_tasks fresh tasks per size.

    ``program`` is get_plan source text; None benches the bundled oracle.
    ``planner_cmd`` is a shell template with {domain} and {problem}
    placeholders, run on the same tasks for a comparison column.
    """
    domain = load_domain(domain_id)
    samples: list[BenchSample] = []
    for size in sizes:
        try:
            tasks = generate(GenParams(domain_id, "eval", (size, size), num_tasks, seed))
        except GenerationError as err:
            return BenchResult(domain_id, tuple(samples), partial=f"size {size}: {err}")
        call_times: list[float] = []
        planner_times: list[float] = []
        solved_all = True
        for task in tasks:
            if program is None:
                call_s, solved = _time_oracle(domain_id, domain, task)
            else:
                call_s, solved = _time_program(program, domain, task, budget_s, executor)
            if not solved:
                return BenchResult(
                    domain_id,
                    tuple(samples),
                    partial=f"size {size}: program failed on {task.name}",
                )
            call_times.append(call_s)
            if planner_cmd:
                planner_time = _time_planner(planner_cmd, domain, task)
                if planner_time is not None:
                    planner_times.append(planner_time)
        samples.append(
            BenchSample(
                objects=size,
                median_call_s=statistics.median(call_times),
                solved_all=solved_all,
                planner_median_s=statistics.median(planner_times) if planner_times else None,
            )
        )
    return BenchResult(domain_id, tuple(samples))


def _time_oracle(domain_id: str, domain, task) -> tuple[float, bool]:
    get_plan = _oracle_fn(domain_id)
    objects, init, goal = task_call_args(task)
    start = time.perf_counter()
    strings = get_plan(objects, init, goal)
    call_s = time.perf_counter() - start
    plan = tuple(parse_action_string(s, domain, task) for s in strings)
    return call_s, validate(plan, domain, task).valid


def _time_program(program: str, domain, task, budget_s: float, executor) -> tuple[float, bool]:
    from .session import classify

    executor = executor or InProcessExecutor()
    outcome = executor.execute(program, task, budget_s=budget_s)
    kind, _ = classify(outcome, domain, task)
    call_s = outcome.call_time if outcome.call_time is not None else outcome.wall_time
    return call_s, kind is None


def _time_planner(planner_cmd: str, domain, task) -> Optional[float]:
    with tempfile.TemporaryDirectory(prefix="genplan-bench-") as tmp:
        domain_path = Path(tmp) / "domain.pddl"
        problem_path = Path(tmp) / "problem.pddl"
        domain_path.write_text(render_domain(domain))
        problem_path.write_text(render_task(task))
        command = planner_cmd.format(domain=domain_path, problem=problem_path)
        start = time.perf_counter()
        proc = subprocess.run(command, shell=True, capture_output=True)
        elapsed = time.perf_counter() - start
        return elapsed if proc.returncode == 0 else None
