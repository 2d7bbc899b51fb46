"""Parser for the typed-STRIPS subset with negative preconditions.

Grammar (informal):

    domain  := (define (domain NAME) [(:requirements TOK*)] [(:types NAME*)]
                (:predicates (NAME VAR*)*) (:action ...)*)
    action  := (:action NAME :parameters (VAR*) [:precondition FORM] [:effect FORM])
    form    := (and LIT*) | LIT
    lit     := ATOM | (not ATOM)
    problem := (define (problem NAME) (:domain NAME) (:objects OBJ*)
                (:init ATOM*) (:goal (and ATOM*) | ATOM))

Typed lists use ``name ... - type`` groups. Identifiers and keywords are
case-insensitive and normalized to lower case; ``;`` starts a comment.
Requirements are parsed but only checked: anything beyond :strips,
:typing, and :negative-preconditions raises UnsupportedFeatureError, as
does any construct outside the grammar above (disjunctions, quantifiers,
conditional effects, type hierarchies, numeric fluents, ...).
"""

from __future__ import annotations

import re

from .errors import ParseError, UnsupportedFeatureError
from .model import (
    Domain,
    GroundAtom,
    LiftedAtom,
    OperatorSchema,
    Param,
    PredicateSchema,
    Task,
    check_domain,
    check_task,
)

_TOKEN_RE = re.compile(r"\(|\)|;[^\n]*|[^\s();]+")

_SUPPORTED_REQUIREMENTS = {":strips", ":typing", ":negative-preconditions"}

# Connectives and section keywords we recognize well enough to reject.
_UNSUPPORTED_CONNECTIVES = {
    "or": "disjunctive preconditions (or)",
    "imply": "implication (imply)",
    "when": "conditional effects (when)",
    "forall": "universal quantification (forall)",
    "exists": "existential quantification (exists)",
    "either": "either types",
    "=": "equality (=)",
    "increase": "numeric fluents (increase)",
    "decrease": "numeric fluents (decrease)",
    "assign": "numeric fluents (assign)",
}

_UNSUPPORTED_SECTIONS = {
    ":constants": "domain constants (:constants)",
    ":functions": "numeric functions (:functions)",
    ":derived": "derived predicates (:derived)",
    ":metric": "plan metrics (:metric)",
    ":constraints": "trajectory constraints (:constraints)",
    ":length": "length specification (:length)",
}


class _Tokens:
    def __init__(self, text: str):
        self.text = text
        self.toks: list[tuple[str, int]] = [
            (g, m.start()) for m in _TOKEN_RE.finditer(text) if (g := m.group())[0] != ";"
        ]
        self.i = 0

    def _line_col(self, pos: int) -> tuple[int, int]:
        line = self.text.count("\n", 0, pos) + 1
        col = pos - self.text.rfind("\n", 0, pos)
        return line, col

    def error(self, message: str, pos: int | None = None) -> ParseError:
        if pos is None:
            pos = self.toks[self.i - 1][1] if self.i > 0 else len(self.text)
        line, col = self._line_col(pos)
        return ParseError(message, line, col)

    def unsupported(self, feature: str, pos: int) -> UnsupportedFeatureError:
        line, col = self._line_col(pos)
        return UnsupportedFeatureError(feature, line, col)

    def peek(self) -> str | None:
        return self.toks[self.i][0] if self.i < len(self.toks) else None

    def next(self) -> tuple[str, int]:
        if self.i >= len(self.toks):
            raise self.error("unexpected end of input", len(self.text))
        tok = self.toks[self.i]
        self.i += 1
        return tok

    def expect(self, want: str) -> int:
        tok, pos = self.next()
        if tok.lower() != want:
            raise self.error(f"expected {want!r}, got {tok!r}", pos)
        return pos

    def name(self, what: str = "identifier") -> tuple[str, int]:
        tok, pos = self.next()
        if tok in "()":
            raise self.error(f"expected {what}, got {tok!r}", pos)
        return tok.lower(), pos

    def done(self) -> None:
        if self.i < len(self.toks):
            tok, pos = self.toks[self.i]
            raise self.error(f"trailing content after top-level form: {tok!r}", pos)


def parse_domain(text: str) -> Domain:
    """Parse one ``(define (domain ...))`` form into a validated Domain."""
    t = _Tokens(text)
    t.expect("(")
    t.expect("define")
    t.expect("(")
    kind, pos = t.name("'domain'")
    if kind != "domain":
        raise t.error(f"expected a domain definition, got ({kind} ...)", pos)
    name, _ = t.name("domain name")
    t.expect(")")

    types: tuple[str, ...] = ()
    predicates: list[PredicateSchema] = []
    operators: list[OperatorSchema] = []
    while t.peek() != ")":
        t.expect("(")
        section, pos = t.name("section keyword")
        if section == ":requirements":
            _parse_requirements(t)
        elif section == ":types":
            types = _parse_types(t)
        elif section == ":predicates":
            predicates = _parse_predicates(t)
        elif section == ":action":
            operators.append(_parse_action(t))
        elif section in _UNSUPPORTED_SECTIONS:
            raise t.unsupported(_UNSUPPORTED_SECTIONS[section], pos)
        else:
            raise t.error(f"unknown domain section {section!r}", pos)
    t.expect(")")
    t.done()
    domain = Domain(name, types, tuple(predicates), tuple(operators))
    check_domain(domain)
    return domain


def parse_task(text: str, domain: Domain) -> Task:
    """Parse one ``(define (problem ...))`` form against domain."""
    t = _Tokens(text)
    t.expect("(")
    t.expect("define")
    t.expect("(")
    kind, pos = t.name("'problem'")
    if kind != "problem":
        raise t.error(f"expected a problem definition, got ({kind} ...)", pos)
    name, _ = t.name("problem name")
    t.expect(")")

    domain_name: str | None = None
    objects: tuple[Param, ...] = ()
    init: set[GroundAtom] = set()
    goal: set[GroundAtom] = set()
    seen_goal = False
    while t.peek() != ")":
        t.expect("(")
        section, pos = t.name("section keyword")
        if section == ":domain":
            domain_name, _ = t.name("domain name")
            t.expect(")")
        elif section == ":requirements":
            _parse_requirements(t)
        elif section == ":objects":
            objects = _parse_typed_list(t, variables=False)
        elif section == ":init":
            init = _parse_init(t)
        elif section == ":goal":
            goal = _parse_goal(t)
            seen_goal = True
        elif section in _UNSUPPORTED_SECTIONS:
            raise t.unsupported(_UNSUPPORTED_SECTIONS[section], pos)
        else:
            raise t.error(f"unknown problem section {section!r}", pos)
    t.expect(")")
    t.done()
    if domain_name is None:
        raise t.error("problem is missing its (:domain ...) section", 0)
    if not seen_goal:
        raise t.error("problem is missing its (:goal ...) section", 0)
    task = Task(name, domain_name, objects, frozenset(init), frozenset(goal))
    check_task(domain, task)
    return task


# ---------------------------------------------------------------------------


def _parse_requirements(t: _Tokens) -> None:
    while t.peek() != ")":
        tok, pos = t.next()
        req = tok.lower()
        if req not in _SUPPORTED_REQUIREMENTS:
            raise t.unsupported(f"requirement {req}", pos)
    t.next()  # ')'


def _parse_types(t: _Tokens) -> tuple[str, ...]:
    names: list[str] = []
    while t.peek() != ")":
        tok, pos = t.next()
        if tok == "-":
            raise t.unsupported("type hierarchy in (:types ...)", pos)
        if tok == "(":
            raise t.unsupported("either types", pos)
        names.append(tok.lower())
    t.next()
    return tuple(names)


def _parse_typed_list(t: _Tokens, variables: bool) -> tuple[Param, ...]:
    """Parse ``a b - t c d`` groups up to (but not consuming into) ')'.

    With variables=True every name must start with '?'.
    """
    out: list[Param] = []
    pending: list[str] = []
    while t.peek() != ")":
        tok, pos = t.next()
        if tok == "(":
            raise t.error("unexpected '(' in typed list", pos)
        if tok == "-":
            ty, tpos = t.name("type name")
            if ty == "(":
                raise t.unsupported("either types", tpos)
            if not pending:
                raise t.error("dangling '-' in typed list", pos)
            out.extend((name, ty) for name in pending)
            pending = []
            continue
        name = tok.lower()
        if variables and not name.startswith("?"):
            raise t.error(f"expected a ?variable, got {tok!r}", pos)
        if not variables and name.startswith("?"):
            raise t.error(f"unexpected variable {tok!r} in object list", pos)
        pending.append(name)
    t.next()  # ')'
    out.extend((name, None) for name in pending)
    return tuple(out)


def _parse_predicates(t: _Tokens) -> list[PredicateSchema]:
    preds: list[PredicateSchema] = []
    while t.peek() != ")":
        t.expect("(")
        name, pos = t.name("predicate name")
        if name in _UNSUPPORTED_CONNECTIVES:
            raise t.unsupported(_UNSUPPORTED_CONNECTIVES[name], pos)
        params = _parse_typed_list(t, variables=True)
        preds.append(PredicateSchema(name, params))
    t.next()
    return preds


def _parse_action(t: _Tokens) -> OperatorSchema:
    name, _ = t.name("operator name")
    params: tuple[Param, ...] = ()
    pos_pre: set[LiftedAtom] = set()
    neg_pre: set[LiftedAtom] = set()
    add: set[LiftedAtom] = set()
    delete: set[LiftedAtom] = set()
    while t.peek() != ")":
        key, kpos = t.name("action keyword")
        if key == ":parameters":
            t.expect("(")
            params = _parse_typed_list(t, variables=True)
        elif key == ":precondition":
            pos_pre, neg_pre = _parse_formula(t)
        elif key == ":effect":
            add, delete = _parse_formula(t)
        else:
            raise t.error(f"unknown action keyword {key!r}", kpos)
    t.next()  # ')'
    return OperatorSchema(
        name,
        params,
        frozenset(pos_pre),
        frozenset(neg_pre),
        frozenset(add),
        frozenset(delete),
    )


def _parse_formula(t: _Tokens) -> tuple[set[LiftedAtom], set[LiftedAtom]]:
    """Parse ``(and lit*)`` or a single literal into (positive, negated)."""
    pos: set[LiftedAtom] = set()
    neg: set[LiftedAtom] = set()
    _parse_literals(t, pos, neg, allow_and=True)
    return pos, neg


def _parse_literals(t: _Tokens, pos: set[LiftedAtom], neg: set[LiftedAtom], allow_and: bool) -> None:
    t.expect("(")
    head = t.peek()
    if head == ")":  # '()' as an empty conjunction
        t.next()
        return
    assert head is not None
    lowered = head.lower()
    if lowered == "and":
        if not allow_and:
            raise t.error("nested 'and' is not a literal", t.toks[t.i][1])
        t.next()
        while t.peek() != ")":
            _parse_literals(t, pos, neg, allow_and=True)  # nested ands flatten
        t.next()
        return
    if lowered == "not":
        t.next()
        atom = _parse_lifted_atom(t)
        neg.add(atom)
        t.expect(")")
        return
    if lowered in _UNSUPPORTED_CONNECTIVES:
        _, hpos = t.next()
        raise t.unsupported(_UNSUPPORTED_CONNECTIVES[lowered], hpos)
    pos.add(_parse_atom_body(t))


def _parse_lifted_atom(t: _Tokens) -> LiftedAtom:
    t.expect("(")
    head = t.peek()
    if head is not None and head.lower() in _UNSUPPORTED_CONNECTIVES:
        _, pos = t.next()
        raise t.unsupported(_UNSUPPORTED_CONNECTIVES[head.lower()], pos)
    if head is not None and head.lower() == "not":
        _, pos = t.next()
        raise t.unsupported("nested negation (not (not ...))", pos)
    return _parse_atom_body(t)


def _parse_atom_body(t: _Tokens) -> LiftedAtom:
    name, _ = t.name("predicate name")
    args: list[str] = []
    while t.peek() != ")":
        tok, pos = t.next()
        if tok == "(":
            raise t.error("nested term in atom", pos)
        args.append(tok.lower())
    t.next()
    return LiftedAtom(name, tuple(args))


def _parse_init(t: _Tokens) -> set[GroundAtom]:
    # Hot path: init blocks hold tens of thousands of atoms at the paper's
    # eval sizes, so scan the raw token list with minimal call overhead.
    atoms: set[GroundAtom] = set()
    toks = t.toks
    i = t.i
    end = len(toks)
    while i < end:
        tok, pos = toks[i]
        if tok == ")":
            t.i = i + 1
            return atoms
        if tok != "(":
            t.i = i
            raise t.error(f"expected an atom, got {tok!r}", pos)
        i += 1
        if i >= end:
            break
        head, hpos = toks[i]
        predicate = head.lower()
        if predicate == "not":
            t.i = i
            raise t.unsupported("negated init atom", hpos)
        if predicate in _UNSUPPORTED_CONNECTIVES:
            t.i = i
            raise t.unsupported(_UNSUPPORTED_CONNECTIVES[predicate], hpos)
        if predicate in "()":
            t.i = i
            raise t.error("expected a predicate name", hpos)
        i += 1
        args: list[str] = []
        while i < end:
            tok2, pos2 = toks[i]
            if tok2 == ")":
                i += 1
                break
            if tok2 == "(":
                t.i = i
                raise t.error("nested term in atom", pos2)
            arg = tok2.lower()
            if arg.startswith("?"):
                t.i = i
                raise t.error(f"variable {arg!r} in a ground atom", pos2)
            args.append(arg)
            i += 1
        else:
            break
        atoms.add(GroundAtom(predicate, tuple(args)))
    t.i = end
    raise t.error("unexpected end of input in (:init ...)", len(t.text))


def _parse_goal(t: _Tokens) -> set[GroundAtom]:
    pos: set[LiftedAtom] = set()
    neg: set[LiftedAtom] = set()
    _parse_literals(t, pos, neg, allow_and=True)
    t.expect(")")
    if neg:
        raise UnsupportedFeatureError("negated goal atom (goals must be positive conjunctions)")
    return {_ground(t, a) for a in pos}


def _ground(t: _Tokens, atom: LiftedAtom) -> GroundAtom:
    for arg in atom.args:
        if arg.startswith("?"):
            raise t.error(f"variable {arg!r} in a ground atom")
    return GroundAtom(atom.predicate, atom.args)
