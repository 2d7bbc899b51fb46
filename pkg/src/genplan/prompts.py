"""Exact prompt text construction.

Three staged prompts (domain summary, strategy, implementation) or one
merged variant; abbreviated task encodings for the initial prompts; and
the four repair-feedback prompts. All templates live under
``resources/prompts`` and construction is deterministic: the same inputs
produce byte-identical text.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from enum import Enum
from functools import lru_cache
from importlib import resources
from typing import Optional

from .pddl import Domain, Task, render_domain, render_task
from .validation import RawPlanOutput, SyntaxReport, ValidationResult

TYPED_OBJECTS_BULLET = "objects is a set of (object name, type name) tuples"
UNTYPED_OBJECTS_BULLET = "objects is a set of object names"


@dataclass(frozen=True)
class AbbreviationConfig:
    cap: int = 10  # max objects per type and atoms per predicate shown
    tasks_in_prompt: int = 2

    def __post_init__(self):
        if self.cap < 1 or self.tasks_in_prompt < 1:
            raise ValueError("cap and tasks_in_prompt must be at least 1")


@dataclass(frozen=True)
class PromptMessage:
    role: str  # user | assistant | system-note
    text: str

    def __post_init__(self):
        if not self.text:
            raise ValueError("empty prompt message")


class FeedbackKind(Enum):
    PYTHON_EXCEPTION = "python_exception"
    TIMEOUT = "timeout"
    PLAN_SYNTAX = "plan_syntax"
    PLAN_SEMANTICS = "plan_semantics"


@lru_cache(maxsize=None)
def _template(name: str) -> str:
    return resources.files("genplan").joinpath("resources", "prompts", f"{name}.txt").read_text()


def abbreviate_task(task: Task, cfg: AbbreviationConfig = AbbreviationConfig()) -> str:
    """Problem text with at most cfg.cap objects per type and init atoms per
    predicate; a ``; ...`` comment line marks each truncated group. The goal
    is always rendered in full."""
    lines = [f"(define (problem {task.name})", f"  (:domain {task.domain_name})"]
    lines.append("  (:objects")
    groups: dict[Optional[str], list[str]] = {}
    for name, ty in task.objects:
        groups.setdefault(ty, []).append(name)
    for ty, names in groups.items():
        shown = names[: cfg.cap]
        suffix = "" if ty is None else f" - {ty}"
        lines.append(f"    {' '.join(shown)}{suffix}")
        if len(names) > cfg.cap:
            lines.append("    ; ...")
    lines.append("  )")
    lines.append("  (:init")
    by_predicate: dict[str, list] = {}
    for atom in sorted(task.init):
        by_predicate.setdefault(atom.predicate, []).append(atom)
    for predicate in sorted(by_predicate):
        atoms = by_predicate[predicate]
        lines.extend(f"    {a}" for a in atoms[: cfg.cap])
        if len(atoms) > cfg.cap:
            lines.append("    ; ...")
    lines.append("  )")
    from .pddl.writer import render_goal_block

    lines.extend(render_goal_block(task))
    lines.append(")")
    return "\n".join(lines) + "\n"


def _implementation_block(domain: Domain) -> str:
    bullet = TYPED_OBJECTS_BULLET if domain.typed else UNTYPED_OBJECTS_BULLET
    return _template("implement").format(objects_bullet=bullet).rstrip("\n")


def build_stage_prompts(
    domain: Domain,
    training: list[Task],
    cfg: AbbreviationConfig = AbbreviationConfig(),
    mode: str = "cot",
) -> list[PromptMessage]:
    """The initial prompt sequence: three user messages in cot mode, one in
    merged mode (summary and strategy questions removed)."""
    if len(training) < cfg.tasks_in_prompt:
        raise ValueError(
            f"need at least {cfg.tasks_in_prompt} training tasks, got {len(training)}"
        )
    shown = training[: cfg.tasks_in_prompt]
    domain_pddl = render_domain(domain).rstrip("\n")
    tasks_pddl = "\n\n".join(abbreviate_task(t, cfg).rstrip("\n") for t in shown)
    if mode == "cot":
        return [
            PromptMessage(
                "user",
                _template("summary").format(
                    domain_pddl=domain_pddl, training_tasks_pddl=tasks_pddl
                ),
            ),
            PromptMessage("user", _template("strategy")),
            PromptMessage("user", _implementation_block(domain) + "\n"),
        ]
    if mode == "merged":
        return [
            PromptMessage(
                "user",
                _template("merged").format(
                    domain_pddl=domain_pddl,
                    training_tasks_pddl=tasks_pddl,
                    implementation=_implementation_block(domain),
                ),
            )
        ]
    raise ValueError(f"unknown prompt mode {mode!r}")


_FILE_RE = re.compile(r'File "[^"]*"')


def sanitize_traceback(traceback_text: str, max_frames: int = 20) -> str:
    """Replace host paths with <file-name-omitted> and keep the last frames."""
    text = _FILE_RE.sub('File "<file-name-omitted>"', traceback_text.rstrip("\n"))
    lines = text.split("\n")
    frame_starts = [i for i, line in enumerate(lines) if line.lstrip().startswith('File "')]
    if len(frame_starts) > max_frames:
        keep_from = frame_starts[-max_frames]
        head = lines[:1] if lines and lines[0].startswith("Traceback") else []
        lines = head + lines[keep_from:]
    return "\n".join(lines)


def format_plan(raw: RawPlanOutput, max_actions: Optional[int] = None) -> str:
    """repr of the returned plan; long plans are elided in the middle when a
    cap is set (default shows the full plan)."""
    if raw.items is None:
        return raw.render()
    items = list(raw.items)
    if max_actions is None or len(items) <= max_actions:
        return repr(items)
    head = items[: max_actions // 2]
    tail = items[len(items) - (max_actions - max_actions // 2) :]
    omitted = len(items) - len(head) - len(tail)
    return f"{repr(head)[:-1]}, ... ({omitted} actions omitted) ..., {repr(tail)[1:]}"


def _operator_listing(domain: Domain) -> str:
    return " ".join(op.signature() for op in sorted(domain.operators, key=lambda o: o.name))


def build_feedback_prompt(
    kind: FeedbackKind,
    task: Task,
    detail,
    domain: Domain,
    max_plan_actions: Optional[int] = None,
) -> PromptMessage:
    """One repair prompt. ``detail`` depends on kind:

    - PYTHON_EXCEPTION / TIMEOUT: the captured traceback text.
    - PLAN_SYNTAX: (RawPlanOutput, SyntaxReport).
    - PLAN_SEMANTICS: (RawPlanOutput, ValidationResult).

    The task is always embedded in full, never abbreviated.
    """
    task_pddl = render_task(task).rstrip("\n")
    if kind is FeedbackKind.PYTHON_EXCEPTION:
        text = _template("feedback_exception").format(
            task_pddl=task_pddl, traceback=sanitize_traceback(str(detail))
        )
    elif kind is FeedbackKind.TIMEOUT:
        text = _template("feedback_timeout").format(
            task_pddl=task_pddl, traceback=sanitize_traceback(str(detail))
        )
    elif kind is FeedbackKind.PLAN_SYNTAX:
        raw, report = detail
        assert isinstance(report, SyntaxReport) and report.violation is not None
        text = _template("feedback_syntax").format(
            task_pddl=task_pddl,
            plan=format_plan(raw, max_plan_actions),
            violation=report.violation.message,
            operators=_operator_listing(domain),
        )
    elif kind is FeedbackKind.PLAN_SEMANTICS:
        raw, result = detail
        assert isinstance(result, ValidationResult) and not result.valid
        if result.status == "precondition_failure":
            notes = [f"NOTE: {result.action} has an unsatisfied precondition at time {result.step_index}"]
            notes.extend(str(a) for a in result.advice)
        else:
            notes = [f"NOTE: the goal atom {a} was not achieved." for a in result.unachieved]
        text = _template("feedback_semantics").format(
            task_pddl=task_pddl,
            plan=format_plan(raw, max_plan_actions),
            notes="\n".join(notes),
        )
    else:
        raise ValueError(f"unknown feedback kind {kind!r}")
    return PromptMessage("user", text)
