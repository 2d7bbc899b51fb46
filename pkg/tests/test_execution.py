"""Code extraction and both executors, including the subprocess/shim path."""

import sys
import time
from pathlib import Path

import pytest

from genplan.execution import (
    ExecutorError,
    InProcessExecutor,
    ProgramSource,
    SubprocessExecutor,
    extract_code_blocks,
)

SHIM = Path(__file__).resolve().parents[1] / "shim" / "genplan_shim.py"

RETURN_EMPTY = "def get_plan(objects, init, goal):\n    return []\n"
SPIN = "def get_plan(objects, init, goal):\n    while True:\n        pass\n"
INDEX_ERROR = (
    "def get_plan(objects, init, goal):\n"
    "    lift_at = {atom[1]: atom[2] for atom in init}\n"
    "    return []\n"
)


@pytest.fixture(scope="module")
def subprocess_executor():
    return SubprocessExecutor(shim_cmd=[sys.executable, str(SHIM)])


# --- code extraction ------------------------------------------------------------


def test_extract_all_fenced_blocks_in_order():
    response = "Intro\n```python\nx = 1\n```\nmiddle\n```\ny = 2\n```\nend"
    assert extract_code_blocks(response) == ["x = 1", "y = 2"]


def test_fenceless_definition_taken_whole():
    assert extract_code_blocks(RETURN_EMPTY) == [RETURN_EMPTY.strip()]


def test_prose_only_yields_nothing():
    assert extract_code_blocks("I will fix the bug by checking bounds.") == []


def test_program_source_grows_monotonically():
    program = ProgramSource()
    assert program.is_empty
    one = program.append(0, "def helper():\n    return 1")
    two = one.append(1, "def get_plan(o, i, g):\n    return []")
    assert one.text in two.text
    assert len(two.text) > len(one.text)
    assert "# --- response 0 ---" in two.text
    assert "# --- response 1 ---" in two.text


# --- in-process executor --------------------------------------------------------


def test_inprocess_return_empty(delivery_task):
    outcome = InProcessExecutor().execute(RETURN_EMPTY, delivery_task)
    assert outcome.status == "returned"
    assert outcome.raw.items == ()


def test_inprocess_exception_traceback(delivery_task):
    outcome = InProcessExecutor().execute(INDEX_ERROR, delivery_task)
    assert outcome.status == "raised"
    assert "IndexError: tuple index out of range" in outcome.traceback


def test_inprocess_timeout_names_the_loop_line(delivery_task):
    start = time.perf_counter()
    outcome = InProcessExecutor().execute(SPIN, delivery_task, budget_s=0.3)
    elapsed = time.perf_counter() - start
    assert outcome.status == "timed_out"
    assert elapsed < 1.3
    assert "KeyboardInterrupt" in outcome.traceback
    assert "while True" in outcome.traceback


def test_inprocess_missing_get_plan(delivery_task):
    outcome = InProcessExecutor().execute("x = 1\n", delivery_task)
    assert outcome.status == "raised"
    assert "get_plan" in outcome.traceback


def test_inprocess_non_list_return(delivery_task):
    outcome = InProcessExecutor().execute(
        "def get_plan(o, i, g):\n    return {'not': 'a list'}\n", delivery_task
    )
    assert outcome.status == "returned"
    assert not outcome.raw.is_list
    assert outcome.raw.shape == "dict"


def test_empty_program_rejected(delivery_task):
    with pytest.raises(ExecutorError):
        InProcessExecutor().execute("", delivery_task)


# --- subprocess executor through the shim ----------------------------------------


def test_subprocess_return_empty(subprocess_executor, delivery_task):
    outcome = subprocess_executor.execute(RETURN_EMPTY, delivery_task, budget_s=10)
    assert outcome.status == "returned"
    assert outcome.raw.items == ()
    assert outcome.call_time is not None


def test_subprocess_timeout(subprocess_executor, delivery_task):
    start = time.perf_counter()
    outcome = subprocess_executor.execute(SPIN, delivery_task, budget_s=1.0)
    elapsed = time.perf_counter() - start
    assert outcome.status == "timed_out"
    assert elapsed < 2.0  # budget + 1 s grace
    assert "KeyboardInterrupt" in outcome.traceback
    assert "while True" in outcome.traceback


def test_subprocess_exception(subprocess_executor, delivery_task):
    outcome = subprocess_executor.execute(INDEX_ERROR, delivery_task, budget_s=10)
    assert outcome.status == "raised"
    assert "IndexError: tuple index out of range" in outcome.traceback


@pytest.mark.parametrize("budget", [1.0, 2.0])
def test_budget_enforcement(subprocess_executor, delivery_task, budget):
    start = time.perf_counter()
    outcome = subprocess_executor.execute(SPIN, delivery_task, budget_s=budget)
    elapsed = time.perf_counter() - start
    assert outcome.status == "timed_out"
    assert elapsed < budget + 1.0
    assert outcome.wall_time >= budget * 0.9


def test_isolation_between_calls(subprocess_executor, delivery_task):
    # A program that mutates module state cannot affect the next call.
    poison = (
        "import builtins\n"
        "builtins.POISONED = True\n"
        "def get_plan(o, i, g):\n"
        "    return ['poisoned']\n"
    )
    probe = (
        "import builtins\n"
        "def get_plan(o, i, g):\n"
        "    return ['poisoned'] if getattr(builtins, 'POISONED', False) else []\n"
    )
    first = subprocess_executor.execute(poison, delivery_task, budget_s=10)
    assert first.raw.items == ("poisoned",)
    second = subprocess_executor.execute(probe, delivery_task, budget_s=10)
    assert second.raw.items == ()


def test_typed_marshaling(subprocess_executor, delivery_task):
    program = (
        "def get_plan(objects, init, goal):\n"
        "    assert all(isinstance(o, tuple) and len(o) == 2 for o in objects)\n"
        "    assert ('paper-0', 'paper') in objects\n"
        "    assert ('unpacked', 'paper-0') in init\n"
        "    assert ('satisfied', 'loc-1') in goal\n"
        "    return []\n"
    )
    outcome = subprocess_executor.execute(program, delivery_task, budget_s=10)
    assert outcome.status == "returned", outcome.traceback


def test_untyped_marshaling(subprocess_executor):
    from genplan.domains import GenParams, generate

    task = generate(GenParams("gripper", "train", (5, 6), 1, 0))[0]
    program = (
        "def get_plan(objects, init, goal):\n"
        "    assert all(isinstance(o, str) for o in objects)\n"
        "    return []\n"
    )
    outcome = subprocess_executor.execute(program, task, budget_s=10)
    assert outcome.status == "returned", outcome.traceback


def test_program_prints_do_not_break_protocol(subprocess_executor, delivery_task):
    noisy = "print('hello from program')\ndef get_plan(o, i, g):\n    print('planning')\n    return []\n"
    outcome = subprocess_executor.execute(noisy, delivery_task, budget_s=10)
    assert outcome.status == "returned"
    assert outcome.raw.items == ()


def test_spawn_failure():
    executor = SubprocessExecutor(shim_cmd=["/does/not/exist"])
    with pytest.raises(ExecutorError):
        from genplan.domains import GenParams, generate

        executor.execute(RETURN_EMPTY, generate(GenParams("heavy", "train", (3, 3), 1, 0))[0])
