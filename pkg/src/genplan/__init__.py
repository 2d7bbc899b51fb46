"""genplan: a generalized-planning program synthesis harness.

Parses typed-STRIPS PDDL, prompts a chat model for a domain-specific
``get_plan`` program, executes and validates it against training tasks,
re-prompts with structured failure feedback, and evaluates the final
program on held-out tasks.
"""

__version__ = "0.1.0"
