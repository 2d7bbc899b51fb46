"""Run synthesized get_plan programs with a wall-clock budget.

Two executors share one outcome type. SubprocessExecutor spawns a fresh
child per call (no state leaks between programs or tasks), speaks the
one-line-JSON wire protocol with an external shim command, and escalates
interrupt/terminate/kill if the child overruns its budget.
InProcessExecutor execs the program here, for pure-simulation runs and
shim-less environments; its timeout uses SIGALRM and so only fires on
the main thread.

Wire protocol (one JSON message per line on the child's stdio):
  request  {code, typed, objects, init, goal, budget_s}
  response {status: "plan"|"exception"|"timeout", plan?, traceback?, get_plan_s?}
"""

from __future__ import annotations

import json
import os
import re
import signal
import subprocess
import sys
import tempfile
import threading
import time
import traceback as traceback_module
from dataclasses import dataclass
from pathlib import Path
from typing import Optional, Sequence

from .marshal import task_call_args, task_payload
from .pddl import Task
from .validation import RawPlanOutput


@dataclass(frozen=True)
class ProgramSource:
    """The growing program file: code segments appended round by round."""

    segments: tuple[tuple[int, str], ...] = ()

    def append(self, round_index: int, code: str) -> "ProgramSource":
        return ProgramSource(self.segments + ((round_index, code),))

    @property
    def text(self) -> str:
        parts = []
        for round_index, code in self.segments:
            parts.append(f"# --- response {round_index} ---")
            parts.append(code.rstrip("\n"))
        return "\n".join(parts) + ("\n" if parts else "")

    @property
    def is_empty(self) -> bool:
        return not self.segments


_FENCE_RE = re.compile(r"```[^\n]*\n(.*?)```", re.DOTALL)
_DEFINITION_STARTS = ("def ", "import ", "from ", "class ", "@")


def extract_code_blocks(response: str) -> list[str]:
    """All fenced code blocks in order; a fence-less response counts whole
    when it starts with a definition keyword, else nothing is extracted."""
    blocks = [m.group(1).rstrip("\n") for m in _FENCE_RE.finditer(response)]
    if blocks:
        return blocks
    stripped = response.strip()
    if stripped.startswith(_DEFINITION_STARTS):
        return [stripped]
    return []


@dataclass(frozen=True)
class ExecutionOutcome:
    status: str  # returned | raised | timed_out
    raw: Optional[RawPlanOutput]
    traceback: Optional[str]
    wall_time: float
    call_time: Optional[float] = None

    @property
    def returned(self) -> bool:
        return self.status == "returned"


class ExecutorError(Exception):
    pass


class ShimProtocolError(ExecutorError):
    """The child produced no parseable protocol line."""


def _program_text(program: ProgramSource | str) -> str:
    text = program.text if isinstance(program, ProgramSource) else program
    if not text.strip():
        raise ExecutorError("refusing to execute an empty program")
    return text


def default_shim_cmd() -> list[str]:
    """Locate the shim: $GENPLAN_SHIM overrides; else the shim/ directory
    next to this repository checkout."""
    override = os.environ.get("GENPLAN_SHIM")
    if override:
        return [sys.executable, override]
    candidate = Path(__file__).resolve().parents[3] / "shim" / "genplan_shim.py"
    if candidate.exists():
        return [sys.executable, str(candidate)]
    raise ExecutorError("no shim found: set GENPLAN_SHIM or pass shim_cmd explicitly")


class SubprocessExecutor:
    """Fresh child process per call, minimal environment, jailed cwd."""

    def __init__(self, shim_cmd: Optional[Sequence[str]] = None, grace_s: float = 1.0):
        cmd = list(shim_cmd) if shim_cmd else default_shim_cmd()
        # The child runs in a jail directory, so relative paths must be
        # absolutized now.
        self.shim_cmd = [
            str(Path(part).resolve()) if os.sep in part and Path(part).exists() else part
            for part in cmd
        ]
        self.grace_s = grace_s

    def execute(self, program: ProgramSource | str, task: Task, budget_s: float = 30.0) -> ExecutionOutcome:
        request = dict(task_payload(task))
        request["code"] = _program_text(program)
        request["budget_s"] = budget_s
        line = json.dumps(request) + "\n"
        env = {
            "PATH": os.environ.get("PATH", "/usr/bin:/bin"),
            "PYTHONHASHSEED": "0",  # reproducible set iteration in the child
            "LC_ALL": "C.UTF-8",
        }
        start = time.perf_counter()
        with tempfile.TemporaryDirectory(prefix="genplan-exec-") as jail:
            env["HOME"] = jail
            try:
                child = subprocess.Popen(
                    self.shim_cmd,
                    stdin=subprocess.PIPE,
                    stdout=subprocess.PIPE,
                    stderr=subprocess.PIPE,
                    cwd=jail,
                    env=env,
                    text=True,
                )
            except OSError as err:
                raise ExecutorError(f"failed to spawn shim {self.shim_cmd}: {err}") from err
            out, err_text = self._communicate(child, line, budget_s)
        wall = time.perf_counter() - start
        return self._parse_response(child, out, err_text, wall)

    def _communicate(self, child: subprocess.Popen, line: str, budget_s: float) -> tuple[str, str]:
        try:
            return child.communicate(line, timeout=budget_s + self.grace_s)
        except subprocess.TimeoutExpired:
            pass
        # The shim's own alarm should have fired; escalate until it dies.
        for sig, wait in ((signal.SIGINT, 2.0), (signal.SIGTERM, 2.0), (signal.SIGKILL, None)):
            try:
                child.send_signal(sig)
            except ProcessLookupError:
                break
            try:
                return child.communicate(timeout=wait)
            except subprocess.TimeoutExpired:
                continue
        return child.communicate()

    def _parse_response(
        self, child: subprocess.Popen, out: str, err_text: str, wall: float
    ) -> ExecutionOutcome:
        lines = [l for l in (out or "").splitlines() if l.strip()]
        if not lines:
            if child.returncode not in (0, None):
                return ExecutionOutcome(
                    "raised",
                    raw=None,
                    traceback=err_text or f"child exited with status {child.returncode}",
                    wall_time=wall,
                )
            raise ShimProtocolError(f"no protocol line from shim (stderr: {err_text[:500]!r})")
        try:
            response = json.loads(lines[-1])
            status = response["status"]
        except (json.JSONDecodeError, KeyError, TypeError) as err:
            raise ShimProtocolError(f"malformed shim response {lines[-1][:200]!r}: {err}") from err
        call_time = response.get("get_plan_s")
        if status == "plan":
            return ExecutionOutcome(
                "returned",
                raw=RawPlanOutput.from_value(list(response.get("plan", []))),
                traceback=None,
                wall_time=wall,
                call_time=call_time,
            )
        if status == "exception":
            return ExecutionOutcome(
                "raised", raw=None, traceback=response.get("traceback", ""), wall_time=wall,
                call_time=call_time,
            )
        if status == "timeout":
            return ExecutionOutcome(
                "timed_out", raw=None, traceback=response.get("traceback", ""), wall_time=wall,
                call_time=call_time,
            )
        raise ShimProtocolError(f"unknown shim status {status!r}")


_PROGRAM_FILENAME = "<synthesized-program>"


def _program_traceback(text: str) -> str:
    """Current exception with this module's frames dropped and the program's
    source lines available to linecache, matching the child-side format."""
    import linecache

    linecache.cache[_PROGRAM_FILENAME] = (len(text), None, text.splitlines(True), _PROGRAM_FILENAME)
    exc_type, exc, tb = sys.exc_info()
    frames = [f for f in traceback_module.extract_tb(tb) if f.filename != __file__]
    lines = []
    if frames:
        lines.append("Traceback (most recent call last):\n")
        lines.extend(traceback_module.format_list(frames))
    lines.extend(traceback_module.format_exception_only(exc_type, exc))
    return "".join(lines)


class InProcessExecutor:
    """Exec the program in this process; pure-simulation execution mode."""

    def execute(self, program: ProgramSource | str, task: Task, budget_s: float = 30.0) -> ExecutionOutcome:
        text = _program_text(program)
        objects, init, goal = task_call_args(task)
        namespace: dict = {"__name__": "synthesized_program"}
        use_alarm = threading.current_thread() is threading.main_thread()
        start = time.perf_counter()
        call_time: Optional[float] = None

        def on_alarm(signum, frame):
            # Mirror the child-side behavior: the interruption surfaces as
            # a KeyboardInterrupt inside the running program.
            raise KeyboardInterrupt

        old_handler = None
        if use_alarm:
            old_handler = signal.signal(signal.SIGALRM, on_alarm)
            signal.setitimer(signal.ITIMER_REAL, budget_s)
        try:
            exec(compile(text, _PROGRAM_FILENAME, "exec"), namespace)
            fn = namespace.get("get_plan")
            if fn is None:
                raise NameError("get_plan is not defined by the synthesized program")
            call_start = time.perf_counter()
            value = fn(objects, init, goal)
            call_time = time.perf_counter() - call_start
        except KeyboardInterrupt:
            return ExecutionOutcome(
                "timed_out",
                raw=None,
                traceback=_program_traceback(text),
                wall_time=time.perf_counter() - start,
            )
        except BaseException:
            return ExecutionOutcome(
                "raised",
                raw=None,
                traceback=_program_traceback(text),
                wall_time=time.perf_counter() - start,
            )
        finally:
            if use_alarm:
                signal.setitimer(signal.ITIMER_REAL, 0.0)
                signal.signal(signal.SIGALRM, old_handler)
        return ExecutionOutcome(
            "returned",
            raw=RawPlanOutput.from_value(value),
            traceback=None,
            wall_time=time.perf_counter() - start,
            call_time=call_time,
        )
