"""Shared generator types and the paper-reported size defaults."""

from __future__ import annotations

from dataclasses import dataclass


class GenerationError(Exception):
    """Requested parameters cannot produce the domain's required structure."""


@dataclass(frozen=True)
class GenParams:
    domain_id: str
    split: str  # train | eval
    count_range: tuple[int, int]
    num_tasks: int
    seed: int
    heavy_covering_pairs: bool = False  # emit only covering heavier pairs

    def __post_init__(self):
        lo, hi = self.count_range
        if lo < 1 or hi < lo:
            raise GenerationError(f"bad object-count range {self.count_range}")
        if self.split not in ("train", "eval"):
            raise GenerationError(f"split must be train or eval, got {self.split!r}")


# Object-count ranges per domain and split.
SIZE_RANGES: dict[str, dict[str, tuple[int, int]]] = {
    "delivery": {"train": (9, 17), "eval": (70, 100)},
    "forest": {"train": (64, 100), "eval": (100, 144)},
    "gripper": {"train": (20, 30), "eval": (60, 80)},
    "miconic": {"train": (6, 30), "eval": (11, 150)},
    "ferry": {"train": (13, 20), "eval": (30, 50)},
    "spanner": {"train": (9, 15), "eval": (30, 60)},
    "heavy": {"train": (3, 10), "eval": (100, 250)},
}

# 10 training and 30 evaluation tasks unless the domain overrides.
TASK_COUNTS: dict[str, dict[str, int]] = {
    domain: {"train": 10, "eval": 30} for domain in SIZE_RANGES
}
TASK_COUNTS["delivery"]["train"] = 5
TASK_COUNTS["forest"]["train"] = 4


def default_params(domain_id: str, split: str, seed: int, num_tasks: int | None = None) -> GenParams:
    if domain_id not in SIZE_RANGES:
        raise GenerationError(f"unknown domain {domain_id!r}")
    return GenParams(
        domain_id=domain_id,
        split=split,
        count_range=SIZE_RANGES[domain_id][split],
        num_tasks=num_tasks if num_tasks is not None else TASK_COUNTS[domain_id][split],
        seed=seed,
    )
