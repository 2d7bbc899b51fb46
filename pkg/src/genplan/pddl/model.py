"""Immutable model of the typed-STRIPS subset and its execution semantics.

A domain holds predicate and operator schemas; a task holds objects, an
initial state, and a conjunctive goal. States are frozensets of ground
atoms under the closed-world assumption. Everything here is a value:
``step`` returns a new state and never mutates its inputs, so all types
are safe to share across worker threads or processes.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property
from typing import Iterator, Optional

from .errors import ActionSyntaxError, ValidationError

# (name, optional type); used both for schema parameters and task objects.
Param = tuple[str, Optional[str]]


@dataclass(frozen=True, order=True)
class GroundAtom:
    predicate: str
    args: tuple[str, ...] = ()

    def __str__(self) -> str:
        return "(" + " ".join((self.predicate,) + self.args) + ")"


@dataclass(frozen=True, order=True)
class LiftedAtom:
    """An atom over schema variables (each variable begins with ``?``)."""

    predicate: str
    args: tuple[str, ...] = ()

    def ground(self, binding: dict[str, str]) -> GroundAtom:
        return GroundAtom(self.predicate, tuple(binding[v] for v in self.args))

    def __str__(self) -> str:
        return "(" + " ".join((self.predicate,) + self.args) + ")"


@dataclass(frozen=True, order=True)
class GroundAction:
    operator: str
    args: tuple[str, ...] = ()

    def __str__(self) -> str:
        return "(" + " ".join((self.operator,) + self.args) + ")"


State = frozenset  # of GroundAtom
Plan = tuple  # of GroundAction


@dataclass(frozen=True)
class PredicateSchema:
    name: str
    params: tuple[Param, ...] = ()

    @property
    def arity(self) -> int:
        return len(self.params)


@dataclass(frozen=True)
class OperatorSchema:
    name: str
    params: tuple[Param, ...]
    precond_pos: frozenset[LiftedAtom]
    precond_neg: frozenset[LiftedAtom]
    add_effects: frozenset[LiftedAtom]
    del_effects: frozenset[LiftedAtom]

    @property
    def variables(self) -> tuple[str, ...]:
        return tuple(v for v, _ in self.params)

    def signature(self) -> str:
        """Type-free rendering, e.g. ``(walk ?from ?to)``."""
        return "(" + " ".join((self.name,) + self.variables) + ")"


@dataclass(frozen=True)
class Domain:
    name: str
    types: tuple[str, ...]
    predicates: tuple[PredicateSchema, ...]
    operators: tuple[OperatorSchema, ...]

    @property
    def typed(self) -> bool:
        return bool(self.types)

    @cached_property
    def predicate_map(self) -> dict[str, PredicateSchema]:
        return {p.name: p for p in self.predicates}

    @cached_property
    def operator_map(self) -> dict[str, OperatorSchema]:
        return {o.name: o for o in self.operators}

    @cached_property
    def static_predicates(self) -> frozenset[str]:
        """Predicates never touched by any operator effect."""
        touched = {
            a.predicate
            for op in self.operators
            for a in itertools.chain(op.add_effects, op.del_effects)
        }
        return frozenset(p.name for p in self.predicates) - frozenset(touched)


@dataclass(frozen=True)
class Task:
    name: str
    domain_name: str
    objects: tuple[Param, ...]
    init: frozenset[GroundAtom]
    goal: frozenset[GroundAtom]

    @cached_property
    def object_types(self) -> dict[str, Optional[str]]:
        return dict(self.objects)

    @cached_property
    def objects_by_type(self) -> dict[Optional[str], tuple[str, ...]]:
        grouped: dict[Optional[str], list[str]] = {}
        for name, ty in self.objects:
            grouped.setdefault(ty, []).append(name)
        return {ty: tuple(names) for ty, names in grouped.items()}

    def objects_of_type(self, ty: Optional[str]) -> tuple[str, ...]:
        if ty is None:
            # Untyped domain: any object fits any parameter.
            return tuple(name for name, _ in self.objects)
        return self.objects_by_type.get(ty, ())


@dataclass(frozen=True)
class Inapplicable:
    """Why an action does not apply: every unmet positive precondition and
    every violated (present-in-state) negative precondition."""

    missing: tuple[GroundAtom, ...]
    violated: tuple[GroundAtom, ...]


# ---------------------------------------------------------------------------
# Structural validation


def check_domain(domain: Domain) -> None:
    """Raise ValidationError if a Domain invariant does not hold."""
    seen_preds: set[str] = set()
    for pred in domain.predicates:
        if pred.name in seen_preds:
            raise ValidationError("duplicate-predicate", f"predicate {pred.name!r} declared twice")
        seen_preds.add(pred.name)
        _check_params(domain, pred.params, f"predicate {pred.name}")
    if len(set(domain.types)) != len(domain.types):
        raise ValidationError("duplicate-type", "type list contains duplicates")
    seen_ops: set[str] = set()
    any_annotation = any(
        ty is not None
        for schema in itertools.chain(domain.predicates, domain.operators)
        for _, ty in schema.params
    )
    if domain.types and not any_annotation:
        raise ValidationError("typing-inconsistent", "types declared but no parameter is typed")
    if not domain.types and any_annotation:
        raise ValidationError("typing-inconsistent", "typed parameter in an untyped domain")
    for op in domain.operators:
        if op.name in seen_ops:
            raise ValidationError("duplicate-operator", f"operator {op.name!r} declared twice")
        seen_ops.add(op.name)
        if op.name in seen_preds:
            # Not strictly forbidden by PDDL, but rejecting it keeps
            # ground-action strings unambiguous.
            pass
        _check_params(domain, op.params, f"operator {op.name}")
        params = dict(op.params)
        for where, atoms in (
            ("precondition", op.precond_pos | op.precond_neg),
            ("effect", op.add_effects | op.del_effects),
        ):
            for atom in atoms:
                schema = domain.predicate_map.get(atom.predicate)
                if schema is None:
                    raise ValidationError(
                        "unknown-predicate",
                        f"{op.name} {where} uses undeclared predicate {atom.predicate!r}",
                    )
                if len(atom.args) != schema.arity:
                    raise ValidationError(
                        "arity-mismatch",
                        f"{atom} in {op.name} {where}: {schema.name} takes {schema.arity} arguments",
                    )
                for var, (_, want) in zip(atom.args, schema.params):
                    if var not in params:
                        raise ValidationError(
                            "unbound-variable",
                            f"variable {var} in {op.name} {where} is not a parameter",
                        )
                    if want is not None and params[var] != want:
                        raise ValidationError(
                            "type-mismatch",
                            f"{var} has type {params[var]}, {schema.name} expects {want}",
                        )
        if op.precond_pos & op.precond_neg:
            raise ValidationError(
                "overlapping-precondition", f"{op.name} requires an atom both true and false"
            )
        if op.add_effects & op.del_effects:
            raise ValidationError(
                "overlapping-effect", f"{op.name} both adds and deletes an atom"
            )


def _check_params(domain: Domain, params: tuple[Param, ...], where: str) -> None:
    names = [v for v, _ in params]
    if len(set(names)) != len(names):
        raise ValidationError("duplicate-param", f"{where} repeats a parameter name")
    for var, ty in params:
        if not var.startswith("?"):
            raise ValidationError("bad-variable", f"{where}: parameter {var!r} must start with '?'")
        if ty is not None and ty not in domain.types:
            raise ValidationError("unknown-type", f"{where}: type {ty!r} is not declared")
        if ty is None and domain.types:
            raise ValidationError(
                "typing-inconsistent", f"{where}: parameter {var} lacks a type in a typed domain"
            )


def check_task(domain: Domain, task: Task) -> None:
    """Raise ValidationError if a Task invariant does not hold for domain."""
    if task.domain_name != domain.name:
        raise ValidationError(
            "domain-mismatch",
            f"task {task.name!r} references domain {task.domain_name!r}, not {domain.name!r}",
        )
    seen: set[str] = set()
    for name, ty in task.objects:
        if name in seen:
            raise ValidationError("duplicate-object", f"object {name!r} declared twice")
        seen.add(name)
        if ty is not None and ty not in domain.types:
            raise ValidationError("unknown-type", f"object {name!r} has undeclared type {ty!r}")
        if ty is None and domain.typed:
            raise ValidationError(
                "typing-inconsistent", f"object {name!r} lacks a type in a typed domain"
            )
        if ty is not None and not domain.typed:
            raise ValidationError(
                "typing-inconsistent", f"object {name!r} is typed in an untyped domain"
            )
    for where, atoms in (("init", task.init), ("goal", task.goal)):
        for atom in atoms:
            _check_ground_atom(domain, task, atom, where)


def _check_ground_atom(domain: Domain, task: Task, atom: GroundAtom, where: str) -> None:
    schema = domain.predicate_map.get(atom.predicate)
    if schema is None:
        raise ValidationError("unknown-predicate", f"{where} atom {atom} uses an undeclared predicate")
    if len(atom.args) != schema.arity:
        raise ValidationError(
            "arity-mismatch", f"{where} atom {atom}: {schema.name} takes {schema.arity} arguments"
        )
    for obj, (_, want) in zip(atom.args, schema.params):
        if obj not in task.object_types:
            raise ValidationError("unknown-object", f"{where} atom {atom}: unknown object {obj!r}")
        if want is not None and task.object_types[obj] != want:
            raise ValidationError(
                "type-mismatch", f"{where} atom {atom}: {obj} is not of type {want}"
            )


# ---------------------------------------------------------------------------
# Execution semantics


def step(state: State, action: GroundAction, domain: Domain) -> State | Inapplicable:
    """Apply one ground action, or report why it does not apply.

    On success the result is ``(state - del) | add`` with the operator's
    parameters bound to the action's arguments. Atoms outside add/del are
    untouched (frame property).
    """
    op = domain.operator_map.get(action.operator)
    if op is None:
        raise ValidationError("unknown-operator", f"no operator named {action.operator!r}")
    if len(action.args) != len(op.params):
        raise ValidationError("arity-mismatch", f"{action} does not match {op.signature()}")
    binding = dict(zip(op.variables, action.args))
    missing = tuple(sorted({g for g in (a.ground(binding) for a in op.precond_pos) if g not in state}))
    violated = tuple(sorted({g for g in (a.ground(binding) for a in op.precond_neg) if g in state}))
    if missing or violated:
        return Inapplicable(missing, violated)
    add = {a.ground(binding) for a in op.add_effects}
    delete = {a.ground(binding) for a in op.del_effects}
    return (state - delete) | add


def step_in_place(state: set, action: GroundAction, domain: Domain) -> Inapplicable | None:
    """``step`` against a mutable state set, updated in place on success.

    Behaviorally identical to ``step`` but avoids copying the whole state,
    keeping long-plan simulation at O(|precond| + |effects|) per action.
    Returns the Inapplicable report, or None when the action applied.
    """
    op = domain.operator_map.get(action.operator)
    if op is None:
        raise ValidationError("unknown-operator", f"no operator named {action.operator!r}")
    if len(action.args) != len(op.params):
        raise ValidationError("arity-mismatch", f"{action} does not match {op.signature()}")
    binding = dict(zip(op.variables, action.args))
    missing = tuple(sorted({g for g in (a.ground(binding) for a in op.precond_pos) if g not in state}))
    violated = tuple(sorted({g for g in (a.ground(binding) for a in op.precond_neg) if g in state}))
    if missing or violated:
        return Inapplicable(missing, violated)
    for atom in op.del_effects:
        state.discard(atom.ground(binding))
    for atom in op.add_effects:
        state.add(atom.ground(binding))
    return None


def goal_reached(state: State, task: Task) -> bool:
    return task.goal <= state


def parse_action_string(s: str, domain: Domain, task: Task) -> GroundAction:
    """Parse untrusted text like ``(pick-up paper1 loc4)`` into a GroundAction.

    Checks run in order: enclosing parentheses, operator name, object
    names, argument count, argument types. Each failure raises
    ActionSyntaxError with a distinct code and the offending token.
    """
    text = s.strip()
    if not (text.startswith("(") and text.endswith(")")):
        raise ActionSyntaxError(
            "missing-parentheses", s, f"the action {s} is not enclosed in parentheses"
        )
    parts = text[1:-1].split()
    if not parts:
        raise ActionSyntaxError("unknown-operator", s, "empty action")
    name = parts[0].lower()
    op = domain.operator_map.get(name)
    if op is None:
        raise ActionSyntaxError("unknown-operator", parts[0], f"unknown operator {parts[0]!r}")
    args = [a.lower() for a in parts[1:]]
    for arg in args:
        if arg not in task.object_types:
            raise ActionSyntaxError("unknown-object", arg, f"unknown object {arg!r}")
    if len(args) != len(op.params):
        raise ActionSyntaxError(
            "wrong-arity",
            name,
            f"{name} takes {len(op.params)} arguments, got {len(args)}",
        )
    for arg, (_, want) in zip(args, op.params):
        if want is not None and task.object_types[arg] != want:
            raise ActionSyntaxError(
                "type-mismatch", arg, f"{arg} is not of type {want} (required by {op.signature()})"
            )
    return GroundAction(name, tuple(args))


# ---------------------------------------------------------------------------
# Grounding

def _candidate_bindings(op: OperatorSchema, task: Task) -> Iterator[tuple[str, ...]]:
    pools = [task.objects_of_type(ty) for _, ty in op.params]
    return itertools.product(*pools)


def all_ground_actions(domain: Domain, task: Task) -> list[GroundAction]:
    """Every type-correct ground action, by brute-force enumeration."""
    out = []
    for op in domain.operators:
        for args in _candidate_bindings(op, task):
            out.append(GroundAction(op.name, args))
    return sorted(out)


def applicable_actions(state: State, domain: Domain, task: Task) -> list[GroundAction]:
    """Applicable actions via brute-force enumeration plus a step check."""
    return sorted(
        a for a in all_ground_actions(domain, task) if not isinstance(step(state, a, domain), Inapplicable)
    )


def applicable_actions_matching(state: State, domain: Domain, task: Task) -> list[GroundAction]:
    """Applicable actions via on-demand matching of positive preconditions.

    Binds parameters by unifying positive preconditions against the
    state's atoms before enumerating anything, so it never materializes
    the full ground action space. Agrees with `applicable_actions` on any
    input (property-tested on small tasks).
    """
    by_pred: dict[str, list[GroundAtom]] = {}
    for atom in state:
        by_pred.setdefault(atom.predicate, []).append(atom)
    found: list[GroundAction] = []
    for op in domain.operators:
        # Most-constrained-first: atoms with more variables first is a
        # reasonable static order for these small schemas.
        pos = sorted(op.precond_pos, key=lambda a: -len(a.args))
        results: set[tuple[str, ...]] = set()
        _match(op, pos, 0, {}, by_pred, task, results)
        binding_vars = op.variables
        for args in results:
            binding = dict(zip(binding_vars, args))
            if any(a.ground(binding) in state for a in op.precond_neg):
                continue
            found.append(GroundAction(op.name, args))
    return sorted(found)


def _match(
    op: OperatorSchema,
    pos: list[LiftedAtom],
    i: int,
    binding: dict[str, str],
    by_pred: dict[str, list[GroundAtom]],
    task: Task,
    results: set[tuple[str, ...]],
) -> None:
    if i == len(pos):
        # Enumerate any parameters untouched by positive preconditions.
        free = [(v, ty) for v, ty in op.params if v not in binding]
        pools = [task.objects_of_type(ty) for _, ty in free]
        for extra in itertools.product(*pools):
            full = dict(binding)
            full.update({v: o for (v, _), o in zip(free, extra)})
            results.add(tuple(full[v] for v in op.variables))
        return
    atom = pos[i]
    types = dict(op.params)
    for ground in by_pred.get(atom.predicate, ()):
        new = dict(binding)
        ok = True
        for var, obj in zip(atom.args, ground.args):
            want = types.get(var)
            if want is not None and task.object_types.get(obj) != want:
                ok = False
                break
            if new.setdefault(var, obj) != obj:
                ok = False
                break
        if ok:
            _match(op, pos, i + 1, new, by_pred, task, results)


@dataclass(frozen=True)
class _GroundedEntry:
    action: GroundAction
    dyn_pos: frozenset[GroundAtom]
    dyn_neg: frozenset[GroundAtom]
    add: frozenset[GroundAtom]
    delete: frozenset[GroundAtom]


class GroundedTask:
    """Grounds every operator once and answers applicable-set queries fast.

    Static preconditions (over predicates no effect touches) are checked
    once against init; surviving entries keep only their dynamic
    conditions and are indexed by one dynamic positive atom, so a query
    touches only entries whose key atom is currently true. Semantics are
    identical to filtering `all_ground_actions` with `step`.
    """

    def __init__(self, domain: Domain, task: Task):
        self.domain = domain
        self.task = task
        static = domain.static_predicates
        init = task.init
        entries: list[_GroundedEntry] = []
        for op in domain.operators:
            variables = op.variables
            pos = tuple(op.precond_pos)
            neg = tuple(op.precond_neg)
            add = tuple(op.add_effects)
            delete = tuple(op.del_effects)
            for args in _candidate_bindings(op, task):
                binding = dict(zip(variables, args))
                pos_g = [a.ground(binding) for a in pos]
                if any(g.predicate in static and g not in init for g in pos_g):
                    continue
                neg_g = [a.ground(binding) for a in neg]
                if any(g.predicate in static and g in init for g in neg_g):
                    continue
                entries.append(
                    _GroundedEntry(
                        GroundAction(op.name, args),
                        frozenset(g for g in pos_g if g.predicate not in static),
                        frozenset(g for g in neg_g if g.predicate not in static),
                        frozenset(a.ground(binding) for a in add),
                        frozenset(a.ground(binding) for a in delete),
                    )
                )
        self._by_key: dict[GroundAtom, list[_GroundedEntry]] = {}
        self._keyless: list[_GroundedEntry] = []
        for entry in entries:
            if entry.dyn_pos:
                self._by_key.setdefault(min(entry.dyn_pos), []).append(entry)
            else:
                self._keyless.append(entry)
        self._key_atoms = frozenset(self._by_key)

    def applicable_entries(self, state: State) -> list[_GroundedEntry]:
        out = []
        for key in self._key_atoms & state:
            for entry in self._by_key[key]:
                if entry.dyn_pos <= state and not (entry.dyn_neg & state):
                    out.append(entry)
        for entry in self._keyless:
            if not (entry.dyn_neg & state):
                out.append(entry)
        out.sort(key=lambda e: e.action)
        return out

    def applicable(self, state: State) -> list[GroundAction]:
        return [e.action for e in self.applicable_entries(state)]

    @staticmethod
    def apply(entry: _GroundedEntry, state: State) -> State:
        return (state - entry.delete) | entry.add
