import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from genplan.pddl import parse_domain, parse_task

DELIVERY_DOMAIN_TEXT = """
(define (domain delivery)
  (:requirements :strips :typing :negative-preconditions)
  (:types loc paper)
  (:predicates
    (at ?l - loc)
    (isHomeBase ?l - loc)
    (unpacked ?p - paper)
    (carrying ?p - paper)
    (satisfied ?l - loc)
    (safe ?l - loc))
  (:action pick-up
    :parameters (?p - paper ?l - loc)
    :precondition (and (at ?l) (isHomeBase ?l) (unpacked ?p))
    :effect (and (carrying ?p) (not (unpacked ?p))))
  (:action move
    :parameters (?from - loc ?to - loc)
    :precondition (and (at ?from) (safe ?to))
    :effect (and (at ?to) (not (at ?from))))
  (:action deliver
    :parameters (?p - paper ?l - loc)
    :precondition (and (at ?l) (carrying ?p))
    :effect (and (satisfied ?l) (not (carrying ?p))))
)
"""

DELIVERY_TASK_TEXT = """
(define (problem delivery-fixture)
  (:domain delivery)
  (:objects
    loc-0 - loc
    loc-1 - loc
    loc-2 - loc
    paper-0 - paper
    paper-1 - paper)
  (:init
    (at loc-0)
    (isHomeBase loc-0)
    (safe loc-0)
    (safe loc-1)
    (safe loc-2)
    (unpacked paper-0)
    (unpacked paper-1))
  (:goal (and (satisfied loc-1) (satisfied loc-2)))
)
"""


@pytest.fixture(scope="session")
def delivery_domain():
    return parse_domain(DELIVERY_DOMAIN_TEXT)


@pytest.fixture(scope="session")
def delivery_task(delivery_domain):
    return parse_task(DELIVERY_TASK_TEXT, delivery_domain)
