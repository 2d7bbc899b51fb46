"""Canonical PDDL rendering.

The format is fixed so that prompt text is stable across runs:
requirements are derived from structure, conjunction atoms are sorted,
init lists one atom per line, and `(and ...)` is always emitted for
preconditions, effects, and goals, even with zero or one conjunct.
``parse(render(x))`` is structurally equal to ``x``.
"""

from __future__ import annotations

from .model import Domain, GroundAtom, LiftedAtom, OperatorSchema, Param, Task


def render(value: Domain | Task) -> str:
    if isinstance(value, Domain):
        return render_domain(value)
    if isinstance(value, Task):
        return render_task(value)
    raise TypeError(f"cannot render {type(value).__name__}")


def render_domain(domain: Domain) -> str:
    lines = [f"(define (domain {domain.name})"]
    reqs = [":strips"]
    if domain.types:
        reqs.append(":typing")
    if any(op.precond_neg for op in domain.operators):
        reqs.append(":negative-preconditions")
    lines.append(f"  (:requirements {' '.join(reqs)})")
    if domain.types:
        lines.append(f"  (:types {' '.join(domain.types)})")
    if domain.predicates:
        lines.append("  (:predicates")
        for pred in domain.predicates:
            lines.append(f"    ({' '.join([pred.name] + _params(pred.params))})")
        lines[-1] += ")"
    else:
        lines.append("  (:predicates)")
    for op in domain.operators:
        lines.extend(_render_operator(op))
    lines.append(")")
    return "\n".join(lines) + "\n"


def _params(params: tuple[Param, ...]) -> list[str]:
    out: list[str] = []
    for name, ty in params:
        if ty is None:
            out.append(name)
        else:
            out.extend([name, "-", ty])
    return out


def _render_operator(op: OperatorSchema) -> list[str]:
    pre = _conjunction(op.precond_pos, op.precond_neg)
    eff = _conjunction(op.add_effects, op.del_effects)
    return [
        f"  (:action {op.name}",
        f"    :parameters ({' '.join(_params(op.params))})",
        f"    :precondition {pre}",
        f"    :effect {eff})",
    ]


def _conjunction(pos: frozenset[LiftedAtom], neg: frozenset[LiftedAtom]) -> str:
    parts = [str(a) for a in sorted(pos)] + [f"(not {a})" for a in sorted(neg)]
    return "(and " + " ".join(parts) + ")" if parts else "(and)"


def render_task(task: Task) -> str:
    lines = [f"(define (problem {task.name})", f"  (:domain {task.domain_name})"]
    lines.extend(render_objects_block(task.objects))
    lines.extend(render_init_block(sorted(task.init)))
    lines.extend(render_goal_block(task))
    lines.append(")")
    return "\n".join(lines) + "\n"


def render_objects_block(objects: tuple[Param, ...]) -> list[str]:
    # One object per line preserves declaration order exactly, typed or not.
    if not objects:
        return ["  (:objects)"]
    lines = ["  (:objects"]
    for name, ty in objects:
        lines.append(f"    {name}" if ty is None else f"    {name} - {ty}")
    lines.append("  )")
    return lines


def render_init_block(atoms: list[GroundAtom]) -> list[str]:
    if not atoms:
        return ["  (:init)"]
    lines = ["  (:init"]
    lines.extend(f"    {atom}" for atom in atoms)
    lines.append("  )")
    return lines


def render_goal_block(task: Task) -> list[str]:
    if not task.goal:
        return ["  (:goal (and))"]
    lines = ["  (:goal (and"]
    lines.extend(f"    {atom}" for atom in sorted(task.goal))
    lines.append("  ))")
    return lines
