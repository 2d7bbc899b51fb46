"""Replace every identifier in a domain and its tasks with nondescriptive ones.

Each category (domain name, problem names, predicates, operators, types,
objects, variables) gets its own bijection onto numbered identifiers
(``predicate1``, ``operator1``, ``type1``, ``object1``, ``var1``,
``domain1``, ``problem1``, ...), assigned in declaration order. The
transform is an isomorphism: any plan valid for the original pair is
valid for the renamed pair and vice versa, and applying the inverted map
reproduces the input exactly.
"""

from __future__ import annotations

from dataclasses import dataclass

from .model import (
    Domain,
    GroundAction,
    GroundAtom,
    LiftedAtom,
    OperatorSchema,
    PredicateSchema,
    Task,
)


@dataclass(frozen=True)
class NameMap:
    domain: dict[str, str]
    problems: dict[str, str]
    predicates: dict[str, str]
    operators: dict[str, str]
    types: dict[str, str]
    objects: dict[str, str]
    variables: dict[str, str]

    def inverted(self) -> "NameMap":
        return NameMap(
            domain={v: k for k, v in self.domain.items()},
            problems={v: k for k, v in self.problems.items()},
            predicates={v: k for k, v in self.predicates.items()},
            operators={v: k for k, v in self.operators.items()},
            types={v: k for k, v in self.types.items()},
            objects={v: k for k, v in self.objects.items()},
            variables={v: k for k, v in self.variables.items()},
        )

    def apply_domain(self, domain: Domain) -> Domain:
        return Domain(
            name=self.domain[domain.name],
            types=tuple(self.types[t] for t in domain.types),
            predicates=tuple(
                PredicateSchema(
                    self.predicates[p.name],
                    tuple((self.variables[v], self._type(t)) for v, t in p.params),
                )
                for p in domain.predicates
            ),
            operators=tuple(self._operator(op) for op in domain.operators),
        )

    def apply_task(self, task: Task) -> Task:
        return Task(
            name=self.problems[task.name],
            domain_name=self.domain[task.domain_name],
            objects=tuple((self.objects[o], self._type(t)) for o, t in task.objects),
            init=frozenset(self.apply_atom(a) for a in task.init),
            goal=frozenset(self.apply_atom(a) for a in task.goal),
        )

    def apply_atom(self, atom: GroundAtom) -> GroundAtom:
        return GroundAtom(self.predicates[atom.predicate], tuple(self.objects[a] for a in atom.args))

    def apply_action(self, action: GroundAction) -> GroundAction:
        return GroundAction(self.operators[action.operator], tuple(self.objects[a] for a in action.args))

    def apply_plan(self, plan: tuple[GroundAction, ...]) -> tuple[GroundAction, ...]:
        return tuple(self.apply_action(a) for a in plan)

    def _type(self, ty: str | None) -> str | None:
        return None if ty is None else self.types[ty]

    def _operator(self, op: OperatorSchema) -> OperatorSchema:
        def lift(atom: LiftedAtom) -> LiftedAtom:
            return LiftedAtom(self.predicates[atom.predicate], tuple(self.variables[v] for v in atom.args))

        return OperatorSchema(
            name=self.operators[op.name],
            params=tuple((self.variables[v], self._type(t)) for v, t in op.params),
            precond_pos=frozenset(lift(a) for a in op.precond_pos),
            precond_neg=frozenset(lift(a) for a in op.precond_neg),
            add_effects=frozenset(lift(a) for a in op.add_effects),
            del_effects=frozenset(lift(a) for a in op.del_effects),
        )


def ablate_names(domain: Domain, tasks: list[Task]) -> tuple[Domain, list[Task], NameMap]:
    """Build the NameMap for (domain, tasks) and return the renamed pair."""
    variables: dict[str, str] = {}
    for schema in list(domain.predicates) + list(domain.operators):
        for var, _ in schema.params:
            if var not in variables:
                variables[var] = f"?var{len(variables) + 1}"
    objects: dict[str, str] = {}
    for task in tasks:
        for name, _ in task.objects:
            if name not in objects:
                objects[name] = f"object{len(objects) + 1}"
    problem_names = list(dict.fromkeys(t.name for t in tasks))
    name_map = NameMap(
        domain={domain.name: "domain1"},
        problems={n: f"problem{i + 1}" for i, n in enumerate(problem_names)},
        predicates={p.name: f"predicate{i + 1}" for i, p in enumerate(domain.predicates)},
        operators={o.name: f"operator{i + 1}" for i, o in enumerate(domain.operators)},
        types={t: f"type{i + 1}" for i, t in enumerate(domain.types)},
        objects=objects,
        variables=variables,
    )
    return name_map.apply_domain(domain), [name_map.apply_task(t) for t in tasks], name_map
