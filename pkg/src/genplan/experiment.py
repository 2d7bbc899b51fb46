"""Experiment runner: one record per (domain, seed, approach) cell.

Cells generate their tasks, run the approach (oracle and random run as
in-process baselines; the LLM approaches run a synthesis session and
then evaluate the final program on every eval task under the budget),
and append line-delimited JSON records. Re-running a config resumes:
complete cells are skipped, incomplete ones retried. Provider failures
are recorded as incomplete cells, never dropped.
"""

from __future__ import annotations

import json
import logging
import random
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from pathlib import Path
from typing import Optional

from .chat import ProviderConfig, ReplayClient, Transcript, make_client, persist
from .domains import default_params, generate, load_domain, oracle_plan, random_rollout
from .execution import InProcessExecutor, SubprocessExecutor
from .pddl import Domain, Task, ablate_names
from .session import SynthesisConfig, classify, save_session_state, synthesize
from .validation import validate

logger = logging.getLogger(__name__)

APPROACHES = ("full", "no-cot", "no-debug", "no-names", "random", "oracle")
LLM_APPROACHES = ("full", "no-cot", "no-debug", "no-names")


@dataclass(frozen=True)
class EvalOutcome:
    solved: bool
    wall_time: float


@dataclass(frozen=True)
class ReportRecord:
    domain: str
    seed: int
    approach: str
    outcomes: tuple[EvalOutcome, ...]
    rounds_used: int = 0
    error_history: tuple[tuple[int, str, str], ...] = ()
    tasks_used: int = 0
    incomplete: Optional[str] = None

    @property
    def solve_fraction(self) -> float:
        if not self.outcomes:
            return 0.0
        return sum(1 for o in self.outcomes if o.solved) / len(self.outcomes)

    @property
    def success(self) -> bool:
        return bool(self.outcomes) and all(o.solved for o in self.outcomes)

    def to_json(self) -> str:
        return json.dumps(
            {
                "domain": self.domain,
                "seed": self.seed,
                "approach": self.approach,
                "outcomes": [[o.solved, o.wall_time] for o in self.outcomes],
                "rounds_used": self.rounds_used,
                "error_history": [list(e) for e in self.error_history],
                "tasks_used": self.tasks_used,
                "incomplete": self.incomplete,
            },
            sort_keys=True,
        )

    @staticmethod
    def from_json(line: str) -> "ReportRecord":
        data = json.loads(line)
        return ReportRecord(
            domain=data["domain"],
            seed=data["seed"],
            approach=data["approach"],
            outcomes=tuple(EvalOutcome(bool(s), float(w)) for s, w in data["outcomes"]),
            rounds_used=data["rounds_used"],
            error_history=tuple(tuple(e) for e in data["error_history"]),
            tasks_used=data["tasks_used"],
            incomplete=data.get("incomplete"),
        )


def load_records(path: str | Path) -> list[ReportRecord]:
    path = Path(path)
    if not path.exists():
        return []
    return [ReportRecord.from_json(line) for line in path.read_text().splitlines() if line.strip()]


def append_record(path: str | Path, record: ReportRecord) -> None:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with path.open("a") as f:
        f.write(record.to_json() + "\n")


@dataclass(frozen=True)
class ExperimentConfig:
    domains: tuple[str, ...]
    seeds: tuple[int, ...]
    approach: str
    out_dir: str
    provider: Optional[ProviderConfig] = None
    budget_s: float = 30.0
    max_rounds: int = 4
    num_train: Optional[int] = None
    num_eval: Optional[int] = None
    execution: str = "inprocess"  # inprocess | subprocess
    shim_cmd: Optional[tuple[str, ...]] = None
    horizon: int = 1000
    transcripts_dir: Optional[str] = None
    workers: int = 1

    @staticmethod
    def from_file(path: str | Path, approach: Optional[str] = None, **overrides) -> "ExperimentConfig":
        """Load the declarative config file; per-approach overrides in an
        ``overrides`` mapping are applied on top, then keyword overrides."""
        data = json.loads(Path(path).read_text())
        per_approach = data.pop("overrides", {})
        chosen = approach or data.get("approach")
        merged = dict(data)
        if chosen and chosen in per_approach:
            merged.update(per_approach[chosen])
        if chosen:
            merged["approach"] = chosen
        merged.update({k: v for k, v in overrides.items() if v is not None})
        provider = merged.get("provider")
        if isinstance(provider, dict):
            merged["provider"] = ProviderConfig(**provider)
        merged["domains"] = tuple(merged["domains"])
        merged["seeds"] = tuple(merged["seeds"])
        if merged.get("shim_cmd"):
            merged["shim_cmd"] = tuple(merged["shim_cmd"])
        return ExperimentConfig(**merged)


def _make_executor(config: ExperimentConfig):
    if config.execution == "subprocess":
        return SubprocessExecutor(shim_cmd=config.shim_cmd)
    return InProcessExecutor()


def _default_client_factory(config: ExperimentConfig):
    def factory(domain_id: str, seed: int, approach: str):
        provider = config.provider
        if provider is None:
            raise ValueError(f"approach {approach!r} needs a provider")
        if provider.provider == "replay":
            base = config.transcripts_dir or provider.transcript_path or "."
            path = Path(base)
            if path.is_dir():
                path = path / f"{domain_id}_{seed}_{approach}.json"
            return ReplayClient.from_path(path)
        return make_client(provider)

    return factory


def run_experiment(config: ExperimentConfig, client_factory=None) -> list[ReportRecord]:
    if config.approach not in APPROACHES:
        raise ValueError(f"unknown approach {config.approach!r}")
    out_dir = Path(config.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    records_path = out_dir / "records.jsonl"
    existing = {
        (r.domain, r.seed, r.approach): r
        for r in load_records(records_path)
        if r.incomplete is None
    }
    if client_factory is None and config.approach in LLM_APPROACHES:
        client_factory = _default_client_factory(config)

    cells = [
        (domain_id, seed)
        for domain_id in config.domains
        for seed in config.seeds
        if (domain_id, seed, config.approach) not in existing
    ]
    records = list(existing.values())
    if config.workers > 1 and config.approach in ("oracle", "random"):
        with ProcessPoolExecutor(max_workers=config.workers) as pool:
            futures = [pool.submit(run_cell, config, d, s, None) for d, s in cells]
            for future in futures:
                record = future.result()
                append_record(records_path, record)
                records.append(record)
    else:
        for domain_id, seed in cells:
            record = run_cell(config, domain_id, seed, client_factory)
            append_record(records_path, record)
            records.append(record)
    return sorted(records, key=lambda r: (r.domain, r.seed, r.approach))


def run_cell(
    config: ExperimentConfig, domain_id: str, seed: int, client_factory=None
) -> ReportRecord:
    try:
        return _run_cell(config, domain_id, seed, client_factory)
    except Exception as err:  # mark the cell incomplete, never drop it
        logger.exception("cell (%s, %s, %s) failed", domain_id, seed, config.approach)
        return ReportRecord(
            domain=domain_id,
            seed=seed,
            approach=config.approach,
            outcomes=(),
            incomplete=f"{type(err).__name__}: {err}",
        )


def _run_cell(config, domain_id: str, seed: int, client_factory) -> ReportRecord:
    domain = load_domain(domain_id)
    eval_tasks = generate(default_params(domain_id, "eval", seed, num_tasks=config.num_eval))
    approach = config.approach

    if approach == "oracle":
        outcomes = [_run_oracle_eval(domain_id, domain, task, config.budget_s) for task in eval_tasks]
        return ReportRecord(domain_id, seed, approach, tuple(outcomes))

    if approach == "random":
        outcomes = []
        for index, task in enumerate(eval_tasks):
            rng = random.Random(f"{domain_id}/{seed}/{index}/rollout")
            start = time.perf_counter()
            plan = random_rollout(domain, task, horizon=config.horizon, rng=rng)
            outcomes.append(EvalOutcome(plan is not None, time.perf_counter() - start))
        return ReportRecord(domain_id, seed, approach, tuple(outcomes))

    # LLM-backed approaches: synthesize, then evaluate the final program.
    train_tasks = generate(default_params(domain_id, "train", seed, num_tasks=config.num_train))
    if approach == "no-names":
        n_train = len(train_tasks)
        domain, renamed, _ = ablate_names(domain, train_tasks + eval_tasks)
        train_tasks, eval_tasks = renamed[:n_train], renamed[n_train:]
    client = client_factory(domain_id, seed, approach)
    executor = _make_executor(config)
    session_cfg = SynthesisConfig(
        max_debug_rounds=config.max_rounds,
        exec_budget_s=config.budget_s,
        mode="merged" if approach == "no-cot" else "cot",
        debug_enabled=approach != "no-debug",
    )
    transcript = Transcript(
        session_id=f"{domain_id}_{seed}_{approach}",
        provider=getattr(client, "provider_tag", "unknown"),
        model=getattr(client, "model_tag", "unknown"),
    )
    session = synthesize(domain, train_tasks, session_cfg, client, executor, transcript=transcript)
    out_dir = Path(config.out_dir) / "transcripts"
    out_dir.mkdir(parents=True, exist_ok=True)
    persist(transcript, out_dir / f"{domain_id}_{seed}_{approach}.json")
    save_session_state(session, out_dir / f"{domain_id}_{seed}_{approach}.state.json")

    outcomes = []
    for task in eval_tasks:
        outcome = executor.execute(session.program, task, budget_s=config.budget_s)
        kind, _ = classify(outcome, domain, task)
        outcomes.append(EvalOutcome(kind is None, outcome.wall_time))
    return ReportRecord(
        domain_id,
        seed,
        approach,
        tuple(outcomes),
        rounds_used=session.rounds_used,
        error_history=tuple((r, t, k.value) for r, t, k in session.error_history),
        tasks_used=len(session.tasks_used),
    )


def _run_oracle_eval(domain_id: str, domain: Domain, task: Task, budget_s: float) -> EvalOutcome:
    start = time.perf_counter()
    plan = oracle_plan(domain_id, task)
    wall = time.perf_counter() - start
    solved = wall <= budget_s and validate(plan, domain, task).valid
    return EvalOutcome(solved, wall)
