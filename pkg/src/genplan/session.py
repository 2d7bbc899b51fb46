"""The synthesis session: prompt, extract, validate, re-prompt, repeat.

A session sends the stage prompts, accumulates the returned code into a
growing program, then checks training tasks in order. The first failure
is classified into one of the four feedback kinds and sent back; the new
response is appended (never overwriting earlier code) and validation
restarts from the first task. The loop stops when every training task
passes or the round budget is exhausted; the final response's program is
kept either way.
"""

from __future__ import annotations

import json
import logging
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional

from .chat import Transcript
from .execution import ExecutionOutcome, ProgramSource, extract_code_blocks
from .pddl import Domain, Task
from .prompts import (
    AbbreviationConfig,
    FeedbackKind,
    build_feedback_prompt,
    build_stage_prompts,
)
from .validation import check_syntax, validate

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class SynthesisConfig:
    max_debug_rounds: int = 4
    exec_budget_s: float = 30.0
    mode: str = "cot"  # cot | merged
    debug_enabled: bool = True
    abbreviation: AbbreviationConfig = field(default_factory=AbbreviationConfig)
    max_plan_actions_in_feedback: Optional[int] = None
    restart_from_first_task: bool = True  # re-check earlier tasks after a fix

    def __post_init__(self):
        if self.max_debug_rounds < 0:
            raise ValueError("max_debug_rounds must be >= 0")


@dataclass
class SynthesisSession:
    transcript: Transcript
    program: ProgramSource
    rounds_used: int = 0
    error_history: list[tuple[int, str, FeedbackKind]] = field(default_factory=list)
    tasks_used: set[str] = field(default_factory=set)
    solved_training: bool = False


def classify(outcome: ExecutionOutcome, domain: Domain, task: Task):
    """Map an execution outcome to a feedback kind and its prompt detail.

    Returns (None, None) when the outcome is a valid plan for task.
    """
    if outcome.status == "raised":
        return FeedbackKind.PYTHON_EXCEPTION, outcome.traceback
    if outcome.status == "timed_out":
        return FeedbackKind.TIMEOUT, outcome.traceback
    assert outcome.raw is not None
    report = check_syntax(outcome.raw, domain, task)
    if not report.ok:
        return FeedbackKind.PLAN_SYNTAX, (outcome.raw, report)
    assert report.plan is not None
    result = validate(report.plan, domain, task)
    if not result.valid:
        return FeedbackKind.PLAN_SEMANTICS, (outcome.raw, result)
    return None, None


def accumulate(program: ProgramSource, response: str, round_index: int) -> ProgramSource:
    """Append the response's extracted code; prior content is untouched."""
    blocks = extract_code_blocks(response)
    if not blocks:
        logger.warning("response %d contained no extractable code", round_index)
        return program
    return program.append(round_index, "\n\n".join(blocks))


def synthesize(
    domain: Domain,
    training_tasks: list[Task],
    cfg: SynthesisConfig,
    client,
    executor,
    transcript: Optional[Transcript] = None,
    state_path: Optional[str | Path] = None,
) -> SynthesisSession:
    if len(training_tasks) < 2:
        raise ValueError("synthesis needs at least two training tasks")
    if transcript is None:
        transcript = Transcript(
            session_id=domain.name,
            provider=getattr(client, "provider_tag", "unknown"),
            model=getattr(client, "model_tag", "unknown"),
        )
    session = SynthesisSession(transcript=transcript, program=ProgramSource())
    session.tasks_used = {t.name for t in training_tasks[: cfg.abbreviation.tasks_in_prompt]}

    messages = build_stage_prompts(domain, training_tasks, cfg.abbreviation, cfg.mode)
    response = ""
    for message in messages:
        response = client.query(transcript, message)
    session.program = accumulate(session.program, response, round_index=0)

    max_rounds = cfg.max_debug_rounds if cfg.debug_enabled else 0
    while True:
        failure = _first_failure(session.program, domain, training_tasks, cfg, executor)
        if failure is None:
            session.solved_training = True
            break
        if session.rounds_used >= max_rounds:
            break  # budget exhausted: the final response is still the program
        task, kind, detail = failure
        session.tasks_used.add(task.name)
        prompt = build_feedback_prompt(
            kind, task, detail, domain, cfg.max_plan_actions_in_feedback
        )
        response = client.query(transcript, prompt)
        session.rounds_used += 1
        session.program = accumulate(session.program, response, round_index=session.rounds_used)
        session.error_history.append((session.rounds_used, task.name, kind))
        if state_path is not None:
            save_session_state(session, state_path)
    if state_path is not None:
        save_session_state(session, state_path)
    return session


def _first_failure(program, domain, tasks, cfg, executor):
    if program.is_empty:
        # Nothing extractable: treat as an exception on the first task so
        # the feedback loop can still proceed.
        first = tasks[0]
        return first, FeedbackKind.PYTHON_EXCEPTION, "the response contained no code to run"
    for task in tasks:
        outcome = executor.execute(program, task, budget_s=cfg.exec_budget_s)
        kind, detail = classify(outcome, domain, task)
        if kind is not None:
            return task, kind, detail
    return None


def save_session_state(session: SynthesisSession, path: str | Path) -> Path:
    path = Path(path)
    payload = {
        "program_segments": [[r, code] for r, code in session.program.segments],
        "rounds_used": session.rounds_used,
        "error_history": [[r, task, kind.value] for r, task, kind in session.error_history],
        "tasks_used": sorted(session.tasks_used),
        "solved_training": session.solved_training,
    }
    path.write_text(json.dumps(payload, indent=2))
    return path


def load_session_state(path: str | Path) -> dict:
    return json.loads(Path(path).read_text())
