"""Domain/problem parsing, error reporting, and unsupported-feature rejection."""

import pytest

from genplan.pddl import (
    LiftedAtom,
    ParseError,
    UnsupportedFeatureError,
    ValidationError,
    parse_domain,
    parse_task,
)

PICK_UP_DOMAIN = """
(define (domain delivery)
  (:types loc paper)
  (:predicates (at ?l - loc) (isHomeBase ?l - loc) (unpacked ?p - paper)
               (carrying ?p - paper))
  (:action pick-up
    :parameters (?p - paper
                 ?l - loc)
    :precondition (and (at ?l)
      (isHomeBase ?l)
      (unpacked ?p))
    :effect (and (carrying ?p)
      (not (unpacked ?p))))
)
"""


def test_pick_up_operator_structure():
    domain = parse_domain(PICK_UP_DOMAIN)
    (op,) = domain.operators
    assert op.name == "pick-up"
    assert op.params == (("?p", "paper"), ("?l", "loc"))
    assert op.precond_pos == frozenset(
        {LiftedAtom("at", ("?l",)), LiftedAtom("ishomebase", ("?l",)), LiftedAtom("unpacked", ("?p",))}
    )
    assert op.precond_neg == frozenset()
    assert op.add_effects == frozenset({LiftedAtom("carrying", ("?p",))})
    assert op.del_effects == frozenset({LiftedAtom("unpacked", ("?p",))})


def test_domain_with_zero_operators():
    domain = parse_domain("(define (domain empty) (:predicates (p ?x)))")
    assert domain.operators == ()
    assert not domain.typed


def test_keywords_are_case_insensitive_and_names_lowercased():
    domain = parse_domain(
        "(DEFINE (DOMAIN Shouty) (:PREDICATES (P ?X)) (:ACTION GO :PARAMETERS (?X) :PRECONDITION (P ?X) :EFFECT (AND)))"
    )
    assert domain.name == "shouty"
    assert domain.predicates[0].name == "p"
    assert domain.operators[0].precond_pos == frozenset({LiftedAtom("p", ("?x",))})


def test_comments_are_stripped():
    domain = parse_domain(
        "(define (domain c) ; a domain\n (:predicates (p ?x)) ; predicates\n)"
    )
    assert domain.name == "c"


def test_syntax_error_carries_line_and_column():
    with pytest.raises(ParseError) as err:
        parse_domain("(define (domain x)\n  (:predicates (p ?x)\n")
    assert err.value.line is not None


def test_problem_form_rejected_by_parse_domain():
    with pytest.raises(ParseError):
        parse_domain("(define (problem p) (:domain d) (:goal (and)))")


@pytest.mark.parametrize(
    "snippet, feature",
    [
        ("(:requirements :disjunctive-preconditions)", ":disjunctive-preconditions"),
        ("(:requirements :adl)", ":adl"),
        ("(:constants a b)", ":constants"),
        ("(:functions (total-cost))", ":functions"),
        ("(:types a - b)", "type hierarchy"),
    ],
)
def test_unsupported_domain_constructs(snippet, feature):
    text = f"(define (domain d) {snippet} (:predicates (p ?x)))"
    with pytest.raises(UnsupportedFeatureError) as err:
        parse_domain(text)
    assert feature.lstrip(":").split()[0] in str(err.value)


@pytest.mark.parametrize(
    "precondition",
    [
        "(or (p ?x) (q ?x))",
        "(forall (?y) (p ?y))",
        "(exists (?y) (p ?y))",
        "(imply (p ?x) (q ?x))",
        "(= ?x ?x)",
    ],
)
def test_unsupported_formula_constructs(precondition):
    text = (
        "(define (domain d) (:predicates (p ?x) (q ?x))"
        f" (:action a :parameters (?x) :precondition {precondition} :effect (p ?x)))"
    )
    with pytest.raises(UnsupportedFeatureError):
        parse_domain(text)


def test_conditional_effect_rejected():
    text = (
        "(define (domain d) (:predicates (p ?x) (q ?x))"
        " (:action a :parameters (?x) :precondition (p ?x) :effect (when (p ?x) (q ?x))))"
    )
    with pytest.raises(UnsupportedFeatureError):
        parse_domain(text)


def test_duplicate_operator_names_rejected():
    text = (
        "(define (domain d) (:predicates (p ?x))"
        " (:action a :parameters (?x) :precondition (p ?x) :effect (and))"
        " (:action a :parameters (?x) :precondition (p ?x) :effect (and)))"
    )
    with pytest.raises(ValidationError) as err:
        parse_domain(text)
    assert err.value.code == "duplicate-operator"


def test_unbound_variable_rejected():
    text = (
        "(define (domain d) (:predicates (p ?x))"
        " (:action a :parameters (?x) :precondition (p ?y) :effect (and)))"
    )
    with pytest.raises(ValidationError) as err:
        parse_domain(text)
    assert err.value.code == "unbound-variable"


# --- problems ---------------------------------------------------------------


def test_parse_task_objects_and_init(delivery_domain):
    text = """
    (define (problem fig3)
      (:domain delivery)
      (:objects paper1 - paper loc4 - loc)
      (:init (unpacked paper1) (isHomeBase loc4) (at loc4) (safe loc4))
      (:goal (and (satisfied loc4)))
    )
    """
    task = parse_task(text, delivery_domain)
    assert ("paper1", "paper") in task.objects
    assert any(a.predicate == "unpacked" and a.args == ("paper1",) for a in task.init)


def test_empty_init_and_goal(delivery_domain):
    text = "(define (problem e) (:domain delivery) (:objects) (:init) (:goal (and)))"
    task = parse_task(text, delivery_domain)
    assert task.init == frozenset()
    assert task.goal == frozenset()


def test_domain_name_mismatch(delivery_domain):
    text = "(define (problem e) (:domain other) (:objects) (:init) (:goal (and)))"
    with pytest.raises(ValidationError) as err:
        parse_task(text, delivery_domain)
    assert err.value.code == "domain-mismatch"


def test_unknown_predicate_in_init(delivery_domain):
    text = (
        "(define (problem e) (:domain delivery) (:objects l - loc)"
        " (:init (bogus l)) (:goal (and)))"
    )
    with pytest.raises(ValidationError) as err:
        parse_task(text, delivery_domain)
    assert err.value.code == "unknown-predicate"


def test_arity_mismatch_in_init(delivery_domain):
    text = (
        "(define (problem e) (:domain delivery) (:objects l - loc)"
        " (:init (at l l)) (:goal (and)))"
    )
    with pytest.raises(ValidationError) as err:
        parse_task(text, delivery_domain)
    assert err.value.code == "arity-mismatch"


def test_unknown_type_in_objects(delivery_domain):
    text = "(define (problem e) (:domain delivery) (:objects x - widget) (:init) (:goal (and)))"
    with pytest.raises(ValidationError) as err:
        parse_task(text, delivery_domain)
    assert err.value.code == "unknown-type"


def test_negative_goal_rejected(delivery_domain):
    text = (
        "(define (problem e) (:domain delivery) (:objects l - loc)"
        " (:init) (:goal (and (not (satisfied l)))))"
    )
    with pytest.raises(UnsupportedFeatureError):
        parse_task(text, delivery_domain)
