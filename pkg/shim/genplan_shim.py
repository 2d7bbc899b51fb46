#!/usr/bin/env python3
"""Child-side driver for synthesized get_plan programs.

Reads exactly one JSON request line from stdin:

    {"code": str, "typed": bool, "objects": [...], "init": [...],
     "goal": [...], "budget_s": number}

loads the accumulated program source, calls
``get_plan(objects, init, goal)`` with sets ((name, type) tuples for
objects, or bare names when typed is false; atom tuples with the
predicate first for init and goal), and writes exactly one JSON response
line to stdout:

    {"status": "plan",      "plan": [str, ...], "get_plan_s": number}
    {"status": "exception", "traceback": str}
    {"status": "timeout",   "traceback": str, "get_plan_s": number}

A SIGALRM at budget_s seconds raises KeyboardInterrupt inside the
running program, so timeout tracebacks look like genuine runtime
tracebacks pointing at the interrupted line. Anything the program prints
goes to stderr; stdout carries only the protocol line.
"""

import json
import os
import signal
import sys
import time
import traceback

PROGRAM_FILE = "program.py"


def _respond(out, payload):
    out.write(json.dumps(payload) + "\n")
    out.flush()


def _program_traceback():
    """Current exception formatted with the driver's own frames removed, so
    the text looks like a genuine traceback of the program alone."""
    exc_type, exc, tb = sys.exc_info()
    frames = [f for f in traceback.extract_tb(tb) if f.filename != __file__]
    lines = []
    if frames:
        lines.append("Traceback (most recent call last):\n")
        lines.extend(traceback.format_list(frames))
    lines.extend(traceback.format_exception_only(exc_type, exc))
    return "".join(lines)


def run_job(job, out):
    code = job["code"]
    budget_s = float(job["budget_s"])
    if job["typed"]:
        objects = {tuple(entry) for entry in job["objects"]}
    else:
        objects = set(job["objects"])
    init = {tuple(atom) for atom in job["init"]}
    goal = {tuple(atom) for atom in job["goal"]}

    # Materialize the growing program file so tracebacks carry source lines.
    with open(PROGRAM_FILE, "w") as f:
        f.write(code)

    def on_alarm(signum, frame):
        raise KeyboardInterrupt

    signal.signal(signal.SIGALRM, on_alarm)
    namespace = {"__name__": "synthesized_program"}
    call_started = None
    signal.setitimer(signal.ITIMER_REAL, budget_s)
    try:
        exec(compile(code, os.path.abspath(PROGRAM_FILE), "exec"), namespace)
        get_plan = namespace.get("get_plan")
        if get_plan is None:
            signal.setitimer(signal.ITIMER_REAL, 0.0)
            _respond(out, {
                "status": "exception",
                "traceback": "NameError: the program does not define get_plan(objects, init, goal)",
            })
            return
        call_started = time.perf_counter()
        value = get_plan(objects, init, goal)
        elapsed = time.perf_counter() - call_started
        signal.setitimer(signal.ITIMER_REAL, 0.0)
    except KeyboardInterrupt:
        elapsed = time.perf_counter() - call_started if call_started else budget_s
        _respond(out, {
            "status": "timeout",
            "traceback": _program_traceback(),
            "get_plan_s": elapsed,
        })
        return
    except BaseException:
        signal.setitimer(signal.ITIMER_REAL, 0.0)
        _respond(out, {"status": "exception", "traceback": _program_traceback()})
        return

    if isinstance(value, list) and all(isinstance(item, str) for item in value):
        _respond(out, {"status": "plan", "plan": value, "get_plan_s": elapsed})
    else:
        _respond(out, {
            "status": "exception",
            "traceback": "TypeError: get_plan must return a list of strings, got "
            + type(value).__name__,
        })


def main():
    protocol_out = sys.stdout
    sys.stdout = sys.stderr  # program prints must not touch the protocol stream
    line = sys.stdin.readline()
    if not line.strip():
        _respond(protocol_out, {"status": "exception", "traceback": "empty request"})
        return 1
    job = json.loads(line)
    run_job(job, protocol_out)
    return 0


if __name__ == "__main__":
    sys.exit(main())
