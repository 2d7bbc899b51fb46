"""Plan syntax checking and semantic validation with repair advice.

``check_syntax`` turns the untrusted value a synthesized program returned
into a parsed plan, or reports the first violation in plan order.
``validate`` simulates a parsed plan from the initial state and either
confirms it reaches the goal or explains the first failure: for an
inapplicable action, one advice atom per unmet positive precondition
("set it to true") and per violated negative precondition ("set it to
false"); for a goal miss, the unachieved goal atoms. Both functions are
pure and safe for unlimited parallel use.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any, Optional

from .pddl import (
    ActionSyntaxError,
    Domain,
    GroundAction,
    GroundAtom,
    Inapplicable,
    Task,
    parse_action_string,
)
from .pddl.model import step_in_place


@dataclass(frozen=True)
class RawPlanOutput:
    """What a program returned, untouched: a list of items, or a shape note."""

    items: Optional[tuple[Any, ...]]
    shape: Optional[str] = None

    @staticmethod
    def from_value(value: Any) -> "RawPlanOutput":
        if isinstance(value, list):
            return RawPlanOutput(items=tuple(value))
        return RawPlanOutput(items=None, shape=type(value).__name__)

    @property
    def is_list(self) -> bool:
        return self.items is not None

    def render(self) -> str:
        if self.items is None:
            return f"<{self.shape}>"
        return repr(list(self.items))


@dataclass(frozen=True)
class SyntaxViolation:
    code: str  # not-a-list | not-a-string | missing-parentheses |
    #            unknown-operator | unknown-object | wrong-arity | type-mismatch
    index: Optional[int]
    text: str  # offending string (or shape description)
    message: str


@dataclass(frozen=True)
class SyntaxReport:
    plan: Optional[tuple[GroundAction, ...]]
    violation: Optional[SyntaxViolation] = None

    @property
    def ok(self) -> bool:
        return self.violation is None


def check_syntax(raw: RawPlanOutput, domain: Domain, task: Task) -> SyntaxReport:
    """Check list-ness, string-ness, and per-action syntax, in plan order."""
    if not raw.is_list:
        return SyntaxReport(
            plan=None,
            violation=SyntaxViolation(
                "not-a-list",
                None,
                raw.render(),
                f"the returned value is not a list of strings (got {raw.shape})",
            ),
        )
    actions: list[GroundAction] = []
    assert raw.items is not None
    for i, item in enumerate(raw.items):
        if not isinstance(item, str):
            return SyntaxReport(
                plan=None,
                violation=SyntaxViolation(
                    "not-a-string",
                    i,
                    repr(item),
                    f"the item at step {i} is not a string (got {type(item).__name__})",
                ),
            )
        try:
            actions.append(parse_action_string(item, domain, task))
        except ActionSyntaxError as err:
            return SyntaxReport(
                plan=None,
                violation=SyntaxViolation(
                    err.code, i, item, f"the action {item} is invalid at step {i}"
                ),
            )
    return SyntaxReport(plan=tuple(actions))


@dataclass(frozen=True)
class AdviceAtom:
    """One repair hint: make ``atom`` have truth value ``value``."""

    atom: GroundAtom
    value: bool

    def __str__(self) -> str:
        return f"(Set {self.atom} to {'true' if self.value else 'false'})"


@dataclass(frozen=True)
class ValidationResult:
    status: str  # valid | precondition_failure | goal_failure
    step_index: Optional[int] = None
    action: Optional[GroundAction] = None
    advice: tuple[AdviceAtom, ...] = ()
    unachieved: tuple[GroundAtom, ...] = ()

    @property
    def valid(self) -> bool:
        return self.status == "valid"


def validate(plan: tuple[GroundAction, ...], domain: Domain, task: Task) -> ValidationResult:
    """Simulate plan from init; report the first failing step or goal miss.

    Precondition failures take precedence: a goal miss is only reported
    when every action applied. Duplicate and no-op actions are legal.
    """
    state = set(task.init)
    for i, action in enumerate(plan):
        failure = step_in_place(state, action, domain)
        if failure is not None:
            advice = tuple(AdviceAtom(a, True) for a in failure.missing) + tuple(
                AdviceAtom(a, False) for a in failure.violated
            )
            return ValidationResult(
                "precondition_failure", step_index=i, action=action, advice=advice
            )
    if task.goal <= state:
        return ValidationResult("valid")
    return ValidationResult("goal_failure", unachieved=tuple(sorted(task.goal - state)))
