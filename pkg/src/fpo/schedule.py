"""Analytical makespan model for block-parallel execution on P units.

This is a cost model, not a timing simulator: work is measured in abstract
units (one weight per distance op, one per point load) and no pipelining,
bank-conflict or DRAM-latency effects are modeled.  Two workloads:

* sampling ("fps"): blocks are independent jobs placed on units by
  longest-processing-time-first greedy (inter-block parallelism);
* neighbor search ("neighbor"): leaves are processed in depth-first order
  and each leaf's centers are striped across the units while the leaf's
  search-space data is loaded once and shared (intra-block parallelism).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import ConfigError, DomainError
from .partition import BlockSet

_LOAD_NONE = object()


@dataclass(frozen=True)
class ScheduleConfig:
    units: int = 1
    mode: str = "fps"  # "fps" | "neighbor"
    distance_op_cost: float = 1.0
    point_load_cost: float = 1.0

    def __post_init__(self) -> None:
        if self.units < 1:
            raise ConfigError(f"units must be >= 1, got {self.units}")
        if self.mode not in ("fps", "neighbor"):
            raise ConfigError(f"mode must be 'fps' or 'neighbor', got {self.mode!r}")
        if self.distance_op_cost < 0 or self.point_load_cost < 0:
            raise ConfigError("cost weights must be >= 0")


@dataclass
class ScheduleReport:
    makespan: float
    per_unit_busy: list[float]
    utilization: float
    loads_with_reuse: int
    loads_without_reuse: int
    reuse_factor: float
    parent_loads: int = 0
    parent_loads_saved: int = 0


def _fps_scan_count(size: int, quota: int) -> int:
    """Total window-check candidate scans: sum over iterations of size - i."""
    return quota * size - quota * (quota - 1) // 2


def fps_block_cost(size: int, quota: int, config: ScheduleConfig) -> float:
    """Per-block sampling cost: scans at distance cost, block loaded once."""
    if quota == 0:
        return 0.0
    return (_fps_scan_count(size, quota) * config.distance_op_cost
            + size * config.point_load_cost)


def schedule_fps(blockset: BlockSet, quotas: Sequence[int],
                 config: ScheduleConfig) -> ScheduleReport:
    """LPT placement of per-block sampling jobs on P units.

    loads_without_reuse is the counterfactual where every scan re-fetches its
    candidate; loads_with_reuse fetches each active block once into a local
    buffer.
    """
    sizes = blockset.sizes()
    if len(quotas) != len(sizes):
        raise DomainError("quotas must give one entry per block")
    costs = [fps_block_cost(int(s), int(q), config) for s, q in zip(sizes, quotas)]
    loads = np.zeros(config.units, dtype=np.float64)
    for b in sorted(range(len(costs)), key=lambda b: (-costs[b], b)):
        loads[int(np.argmin(loads))] += costs[b]
    makespan = float(loads.max())
    busy = [float(x) for x in loads]
    util = 1.0 if makespan == 0 else float(sum(busy) / (config.units * makespan))
    with_reuse = sum(int(s) for s, q in zip(sizes, quotas) if q > 0)
    without = sum(_fps_scan_count(int(s), int(q)) for s, q in zip(sizes, quotas) if q > 0)
    reuse = 1.0 if with_reuse == 0 else without / with_reuse
    return ScheduleReport(
        makespan=makespan, per_unit_busy=busy, utilization=util,
        loads_with_reuse=int(with_reuse), loads_without_reuse=int(without),
        reuse_factor=float(reuse),
    )


def schedule_neighbor(blockset: BlockSet, centers_per_leaf: Sequence[int],
                      config: ScheduleConfig) -> ScheduleReport:
    """Striped neighbor search: leaves in depth-first order, centers on P units.

    Per leaf the search-space load is charged once (loads_with_reuse) versus
    once per center in the no-reuse counterfactual (loads_without_reuse), so
    with k centers per leaf the reuse factor is exactly k.  The makespan adds
    each leaf's load time plus the busiest unit's ceil(k / P) space scans.
    Parent data shared across consecutive sibling leaves is reported via
    parent_loads / parent_loads_saved.  Unit 0 carries the shared load and
    the ceiling share of every stripe, so its busy time equals the makespan.
    """
    if len(centers_per_leaf) != blockset.num_blocks:
        raise DomainError("centers_per_leaf must give one entry per block")
    makespan = 0.0
    busy = np.zeros(config.units, dtype=np.float64)
    with_reuse = 0
    without = 0
    parent_loads = 0
    parent_saved = 0
    last_token = _LOAD_NONE
    for b in range(blockset.num_blocks):
        k = int(centers_per_leaf[b])
        if k < 0:
            raise DomainError(f"negative center count for block {b}")
        if k == 0:
            continue
        lo, hi = blockset.search_spans[b]
        space = blockset.blocks[hi - 1].end - blockset.blocks[lo].start
        token = blockset.parent_tokens[b]
        if token is not None:
            if token == last_token:
                parent_saved += 1
            else:
                parent_loads += 1
            last_token = token
        else:
            last_token = _LOAD_NONE
        with_reuse += space
        without += k * space
        scan = space * config.distance_op_cost
        load = space * config.point_load_cost
        counts = np.bincount(np.arange(k) % config.units, minlength=config.units)
        busy += counts.astype(np.float64) * scan
        busy[0] += load
        makespan += load + int(counts.max()) * scan
    busy_list = [float(x) for x in busy]
    util = 1.0 if makespan == 0 else float(sum(busy_list) / (config.units * makespan))
    reuse = 1.0 if with_reuse == 0 else without / with_reuse
    return ScheduleReport(
        makespan=float(makespan), per_unit_busy=busy_list, utilization=util,
        loads_with_reuse=int(with_reuse), loads_without_reuse=int(without),
        reuse_factor=float(reuse), parent_loads=parent_loads,
        parent_loads_saved=parent_saved,
    )
