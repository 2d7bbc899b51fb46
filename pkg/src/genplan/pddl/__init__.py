"""Typed-STRIPS core: model, parser, renderer, simulator, name ablation."""

from .ablate import NameMap, ablate_names
from .errors import (
    ActionSyntaxError,
    ParseError,
    PddlError,
    UnsupportedFeatureError,
    ValidationError,
)
from .model import (
    Domain,
    GroundAction,
    GroundAtom,
    GroundedTask,
    Inapplicable,
    LiftedAtom,
    OperatorSchema,
    Param,
    Plan,
    PredicateSchema,
    State,
    Task,
    all_ground_actions,
    applicable_actions,
    applicable_actions_matching,
    check_domain,
    check_task,
    goal_reached,
    parse_action_string,
    step,
)
from .reader import parse_domain, parse_task
from .writer import render, render_domain, render_task

__all__ = [
    "ActionSyntaxError",
    "Domain",
    "GroundAction",
    "GroundAtom",
    "GroundedTask",
    "Inapplicable",
    "LiftedAtom",
    "NameMap",
    "OperatorSchema",
    "Param",
    "ParseError",
    "PddlError",
    "Plan",
    "PredicateSchema",
    "State",
    "Task",
    "UnsupportedFeatureError",
    "ValidationError",
    "ablate_names",
    "all_ground_actions",
    "applicable_actions",
    "applicable_actions_matching",
    "check_domain",
    "check_task",
    "goal_reached",
    "parse_action_string",
    "parse_domain",
    "parse_task",
    "render",
    "render_domain",
    "render_task",
    "step",
]
