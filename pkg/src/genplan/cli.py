"""Command-line experiment runner.

Subcommands: gen-tasks, synthesize, evaluate, report, bench,
ablate-names. Options can come from a declarative JSON config file
(with per-approach overrides) and are overridden by flags. The live
provider reads its credential from the environment variable named in
the provider config; tests and offline runs use replay transcripts.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path

from .bench import bench_runtime, default_size_grid
from .chat import ProviderConfig
from .domains import DOMAIN_IDS, default_params, domain_text, generate, load_domain
from .experiment import APPROACHES, ExperimentConfig, load_records, run_experiment
from .metrics import compute_metrics, write_report
from .pddl import ablate_names, parse_task, render_domain, render_task


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO, format="%(levelname)s %(name)s: %(message)s")
    return args.func(args)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="genplan", description=__doc__)
    sub = parser.add_subparsers(required=True)

    gen = sub.add_parser("gen-tasks", help="generate benchmark tasks as .pddl files")
    _common_flags(gen)
    gen.add_argument("--splits", nargs="+", default=["train", "eval"], choices=["train", "eval"])
    gen.set_defaults(func=cmd_gen_tasks)

    synth = sub.add_parser("synthesize", help="run synthesis sessions (no eval)")
    _experiment_flags(synth)
    synth.set_defaults(func=cmd_synthesize)

    ev = sub.add_parser("evaluate", help="run the full experiment and write records")
    _experiment_flags(ev)
    ev.set_defaults(func=cmd_evaluate)

    rep = sub.add_parser("report", help="aggregate records into CSV tables and JSON")
    rep.add_argument("--records", required=True, help="records.jsonl path")
    rep.add_argument("--out-dir", required=True)
    rep.add_argument("--max-rounds", type=int, default=4)
    rep.set_defaults(func=cmd_report)

    bench = sub.add_parser("bench", help="runtime vs problem size")
    bench.add_argument("--domain", required=True, choices=DOMAIN_IDS)
    bench.add_argument("--sizes", nargs="*", type=int)
    bench.add_argument("--num-tasks", type=int, default=10)
    bench.add_argument("--seed", type=int, default=0)
    bench.add_argument("--budget-s", type=float, default=30.0)
    bench.add_argument("--program", help="get_plan source file (default: bundled oracle)")
    bench.add_argument("--planner-cmd", help="shell template with {domain} and {problem}")
    bench.add_argument("--out", help="write samples as JSON here")
    bench.set_defaults(func=cmd_bench)

    abl = sub.add_parser("ablate-names", help="write name-ablated copies of a domain and tasks")
    abl.add_argument("--domain", required=True, choices=DOMAIN_IDS)
    abl.add_argument("--tasks", nargs="*", default=[], help="task .pddl files")
    abl.add_argument("--out-dir", required=True)
    abl.set_defaults(func=cmd_ablate_names)

    return parser


def _common_flags(cmd):
    cmd.add_argument("--domains", nargs="+", default=list(DOMAIN_IDS), choices=DOMAIN_IDS)
    cmd.add_argument("--seeds", nargs="+", type=int, default=[0])
    cmd.add_argument("--out-dir", default="results")
    cmd.add_argument("--num-train", type=int)
    cmd.add_argument("--num-eval", type=int)


def _experiment_flags(cmd):
    _common_flags(cmd)
    cmd.add_argument("--config", help="declarative JSON config file")
    cmd.add_argument("--approach", choices=APPROACHES)
    cmd.add_argument("--provider", choices=["live", "replay"])
    cmd.add_argument("--endpoint")
    cmd.add_argument("--model", default="default")
    cmd.add_argument("--credential-env")
    cmd.add_argument("--transcripts-dir")
    cmd.add_argument("--budget-s", type=float)
    cmd.add_argument("--max-rounds", type=int)
    cmd.add_argument("--execution", choices=["inprocess", "subprocess"])
    cmd.add_argument("--shim-cmd", nargs="+")
    cmd.add_argument("--planner-cmd", help="accepted for config parity; used by bench")
    cmd.add_argument("--workers", type=int)


def _experiment_config(args) -> ExperimentConfig:
    overrides = dict(
        domains=tuple(args.domains) if args.domains else None,
        seeds=tuple(args.seeds) if args.seeds else None,
        out_dir=args.out_dir,
        budget_s=args.budget_s,
        max_rounds=args.max_rounds,
        num_train=args.num_train,
        num_eval=args.num_eval,
        execution=args.execution,
        shim_cmd=tuple(args.shim_cmd) if args.shim_cmd else None,
        transcripts_dir=args.transcripts_dir,
        workers=args.workers,
    )
    if args.provider:
        overrides["provider"] = ProviderConfig(
            provider=args.provider,
            model=args.model,
            endpoint=args.endpoint,
            credential_env=args.credential_env,
            transcript_path=args.transcripts_dir,
        )
    if args.config:
        return ExperimentConfig.from_file(args.config, approach=args.approach, **overrides)
    clean = {k: v for k, v in overrides.items() if v is not None}
    clean.setdefault("domains", tuple(DOMAIN_IDS))
    clean.setdefault("seeds", (0,))
    clean.setdefault("out_dir", "results")
    return ExperimentConfig(approach=args.approach or "oracle", **clean)


def cmd_gen_tasks(args) -> int:
    out = Path(args.out_dir)
    for domain_id in args.domains:
        domain_file = out / "tasks" / domain_id / "domain.pddl"
        domain_file.parent.mkdir(parents=True, exist_ok=True)
        domain_file.write_text(domain_text(domain_id))
        for seed in args.seeds:
            for split in args.splits:
                num = args.num_train if split == "train" else args.num_eval
                params = default_params(domain_id, split, seed, num_tasks=num)
                split_dir = out / "tasks" / domain_id / str(seed) / split
                split_dir.mkdir(parents=True, exist_ok=True)
                for i, task in enumerate(generate(params)):
                    (split_dir / f"task-{i:02d}.pddl").write_text(render_task(task))
        print(f"wrote tasks for {domain_id} under {out / 'tasks' / domain_id}")
    return 0


def cmd_synthesize(args) -> int:
    config = _experiment_config(args)
    if config.approach not in ("full", "no-cot", "no-debug", "no-names"):
        print("synthesize requires an LLM approach (full/no-cot/no-debug/no-names)", file=sys.stderr)
        return 2
    import dataclasses

    records = run_experiment(dataclasses.replace(config, num_eval=0))
    for record in records:
        status = record.incomplete or f"rounds={record.rounds_used}"
        print(f"{record.domain} seed={record.seed}: {status}")
    return 0


def cmd_evaluate(args) -> int:
    config = _experiment_config(args)
    records = run_experiment(config)
    for record in records:
        if record.incomplete:
            print(f"{record.domain} seed={record.seed} {record.approach}: INCOMPLETE {record.incomplete}")
        else:
            print(
                f"{record.domain} seed={record.seed} {record.approach}: "
                f"{record.solve_fraction:.2f} solved, rounds={record.rounds_used}"
            )
    return 0


def cmd_report(args) -> int:
    records = load_records(args.records)
    if not records:
        print(f"no records found at {args.records}", file=sys.stderr)
        return 1
    table = compute_metrics(records, max_rounds=args.max_rounds)
    for path in write_report(table, args.out_dir):
        print(f"wrote {path}")
    return 0


def cmd_bench(args) -> int:
    sizes = args.sizes or default_size_grid(args.domain)
    program = Path(args.program).read_text() if args.program else None
    result = bench_runtime(
        args.domain,
        sizes,
        program=program,
        num_tasks=args.num_tasks,
        budget_s=args.budget_s,
        seed=args.seed,
        planner_cmd=args.planner_cmd,
    )
    for sample in result.samples:
        planner = f" planner={sample.planner_median_s:.3f}s" if sample.planner_median_s else ""
        print(f"{args.domain} n={sample.objects}: median get_plan {sample.median_call_s:.4f}s{planner}")
    if result.partial:
        print(f"PARTIAL: {result.partial}")
    if args.out:
        Path(args.out).write_text(
            json.dumps(
                {
                    "domain": result.domain,
                    "partial": result.partial,
                    "samples": [
                        [s.objects, s.median_call_s, s.planner_median_s] for s in result.samples
                    ],
                },
                indent=2,
            )
        )
    return 0 if result.partial is None else 1


def cmd_ablate_names(args) -> int:
    domain = load_domain(args.domain)
    tasks = [parse_task(Path(p).read_text(), domain) for p in args.tasks]
    ablated_domain, ablated_tasks, name_map = ablate_names(domain, tasks)
    out = Path(args.out_dir)
    out.mkdir(parents=True, exist_ok=True)
    (out / "domain.pddl").write_text(render_domain(ablated_domain))
    for original, task in zip(args.tasks, ablated_tasks):
        (out / Path(original).name).write_text(render_task(task))
    (out / "name_map.json").write_text(
        json.dumps(
            {
                "domain": name_map.domain,
                "problems": name_map.problems,
                "predicates": name_map.predicates,
                "operators": name_map.operators,
                "types": name_map.types,
                "objects": name_map.objects,
                "variables": name_map.variables,
            },
            indent=2,
            sort_keys=True,
        )
    )
    print(f"wrote ablated domain and {len(ablated_tasks)} tasks to {out}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
