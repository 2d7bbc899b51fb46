"""Fixed inputs for the feedback-prompt golden files."""

from __future__ import annotations

from genplan.domains import load_domain
from genplan.pddl import GroundAction, parse_task
from genplan.prompts import FeedbackKind
from genplan.validation import RawPlanOutput, check_syntax, validate

FOREST_TASK_TEXT = """
(define (problem forest-fixture)
  (:domain forest)
  (:objects r0_c0 - loc r0_c1 - loc r1_c0 - loc r1_c1 - loc)
  (:init
    (at r0_c0)
    (adjacent r0_c0 r0_c1) (adjacent r0_c1 r0_c0)
    (adjacent r0_c0 r1_c0) (adjacent r1_c0 r0_c0)
    (adjacent r0_c1 r1_c1) (adjacent r1_c1 r0_c1)
    (adjacent r1_c0 r1_c1) (adjacent r1_c1 r1_c0)
    (onTrail r0_c0) (onTrail r0_c1) (onTrail r1_c1))
  (:goal (and (at r1_c1)))
)
"""

EXCEPTION_TRACEBACK = (
    "Traceback (most recent call last):\n"
    '  File "/tmp/session/program.py", line 86, in get_plan\n'
    "    lift_at = {atom[1]: atom[2] for atom in init if atom[0] == 'lift-at'}\n"
    "IndexError: tuple index out of range"
)

TIMEOUT_TRACEBACK = (
    "Traceback (most recent call last):\n"
    '  File "/tmp/session/program.py", line 23, in get_plan\n'
    "    while not any(span_loc[1] == target for span_loc in locs):\n"
    "KeyboardInterrupt"
)


def feedback_fixtures(delivery_domain, delivery_task):
    """(name, kind, task, detail, domain) tuples for the four feedback kinds."""
    forest_domain = load_domain("forest")
    forest_task = parse_task(FOREST_TASK_TEXT, forest_domain)

    bad_syntax_raw = RawPlanOutput.from_value(["walk r0_c0 r0_c1", "walk r0_c1 r1_c1"])
    syntax_report = check_syntax(bad_syntax_raw, forest_domain, forest_task)

    semantic_plan = (
        GroundAction("pick-up", ("paper-1", "loc-0")),
        GroundAction("move", ("loc-0", "loc-1")),
        GroundAction("move", ("loc-1", "loc-2")),
        GroundAction("pick-up", ("paper-0", "loc-0")),
    )
    semantic_raw = RawPlanOutput.from_value([str(a) for a in semantic_plan])
    semantic_result = validate(semantic_plan, delivery_domain, delivery_task)

    return [
        ("exception", FeedbackKind.PYTHON_EXCEPTION, delivery_task, EXCEPTION_TRACEBACK, delivery_domain),
        ("timeout", FeedbackKind.TIMEOUT, delivery_task, TIMEOUT_TRACEBACK, delivery_domain),
        ("syntax", FeedbackKind.PLAN_SYNTAX, forest_task, (bad_syntax_raw, syntax_report), forest_domain),
        ("semantics", FeedbackKind.PLAN_SEMANTICS, delivery_task, (semantic_raw, semantic_result), delivery_domain),
    ]
