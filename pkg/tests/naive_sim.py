"""Brute-force reference semantics, independent of the library's simulator.

Grounds every operator over every type-correct argument tuple up front,
stores preconditions and effects as plain tuples, and simulates action
sequences with direct set arithmetic. This is the oracle that
``step``, ``applicable_actions``, and ``validate`` are checked against;
it deliberately reuses none of their code.
"""

from __future__ import annotations

import itertools

Atom = tuple  # (predicate, arg, arg, ...)


class NaiveGround:
    def __init__(self, domain, task):
        names = [n for n, _ in task.objects]
        by_type: dict = {}
        for n, t in task.objects:
            by_type.setdefault(t, []).append(n)
        self.table: dict[tuple[str, tuple[str, ...]], tuple] = {}
        for op in domain.operators:
            pools = [names if ty is None else by_type.get(ty, []) for _, ty in op.params]
            variables = [v for v, _ in op.params]
            for combo in itertools.product(*pools):
                sub = dict(zip(variables, combo))

                def g(atoms):
                    return frozenset((a.predicate,) + tuple(sub[x] for x in a.args) for a in atoms)

                self.table[(op.name, tuple(combo))] = (
                    g(op.precond_pos),
                    g(op.precond_neg),
                    g(op.add_effects),
                    g(op.del_effects),
                )

    @staticmethod
    def atom_key(atom) -> Atom:
        return (atom.predicate,) + tuple(atom.args)

    @staticmethod
    def state_key(atoms) -> frozenset:
        return frozenset((a.predicate,) + tuple(a.args) for a in atoms)

    def applicable(self, state: frozenset) -> list[tuple[str, tuple[str, ...]]]:
        return sorted(
            key
            for key, (pos, neg, _, _) in self.table.items()
            if pos <= state and not (neg & state)
        )

    def step(self, state: frozenset, name: str, args: tuple[str, ...]):
        """Return (new_state, missing, violated); missing/violated are None on success."""
        pos, neg, add, dele = self.table[(name, tuple(args))]
        missing = sorted(pos - state)
        violated = sorted(neg & state)
        if missing or violated:
            return state, missing, violated
        return (state - dele) | add, None, None

    def run(self, init: frozenset, actions):
        """Simulate; return (final_state, fail_index, missing, violated)."""
        state = init
        for i, (name, args) in enumerate(actions):
            state, missing, violated = self.step(state, name, args)
            if missing is not None or violated is not None:
                return state, i, missing, violated
        return state, None, None, None
