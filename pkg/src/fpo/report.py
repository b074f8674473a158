"""Machine-readable report encoding and partition artifact (de)serialization.

All reports carry schema version "fpo-report/1".  Counters are integers;
distances and other measured reals are decimal strings with 9 significant
digits so that reports are diff-stable.  Keys are sorted, making a report
byte-identical across runs with the same flags and seed (wall-clock timings
live under the single top-level key "wallclock_ms").
"""

from __future__ import annotations

import json

import numpy as np

from .cloud import LayoutPermutation
from .counters import CostCounters
from .errors import ParseError
from .partition import (
    BlockSet,
    BlockView,
    FractalTree,
    PartitionStats,
    TreeNode,
    _grouped_spans,
    _tree_spans,
)
from .pointops import GatherResult, NeighborResult, SampleResult
from .schedule import ScheduleReport

SCHEMA_VERSION = "fpo-report/1"


def fmt_real(x: float) -> str:
    return f"{float(x):.9g}"


def dumps_report(obj: dict) -> str:
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"


def counters_to_json(counters: CostCounters, feature_width: int = 0) -> dict:
    return counters.as_dict(feature_width)


def stats_to_json(stats: PartitionStats, feature_width: int = 0) -> dict:
    return {
        "num_blocks": stats.num_blocks,
        "max_block": stats.max_block,
        "min_nonempty_block": stats.min_nonempty_block,
        "size_cov": fmt_real(stats.size_cov),
        "levels": stats.levels,
        "counters": counters_to_json(stats.counters, feature_width),
    }


def sample_to_json(sample: SampleResult) -> dict:
    doc = {"mode": sample.mode, "indices": [int(i) for i in sample.indices]}
    if sample.seed_index is not None:
        doc["seed_index"] = int(sample.seed_index)
    if sample.per_block_counts is not None:
        doc["per_block_counts"] = [int(q) for q in sample.per_block_counts]
    return doc


def neighbors_to_json(result: NeighborResult) -> dict:
    doc: dict = {
        "mode": result.mode,
        "centers": [int(c) for c in result.centers],
        "counts": [int(c) for c in result.counts],
        "found": [[int(i) for i in f] for f in result.found],
        "distances": [[fmt_real(d) for d in ds] for ds in result.distances],
        "search_space": list(result.search_space),
    }
    if result.radius is not None:
        doc["radius"] = fmt_real(result.radius)
    if result.num is not None:
        doc["num"] = int(result.num)
    if result.k is not None:
        doc["k"] = int(result.k)
    if result.block_ids is not None:
        doc["block_ids"] = [int(b) for b in result.block_ids]
    return doc


def gather_to_json(result: GatherResult) -> dict:
    return {
        "num": result.num,
        "padded": [bool(p) for p in result.padded],
        "vectors": [[[fmt_real(v) for v in row] for row in vecs]
                    for vecs in result.vectors],
    }


def schedule_to_json(report: ScheduleReport) -> dict:
    return {
        "makespan": fmt_real(report.makespan),
        "per_unit_busy": [fmt_real(x) for x in report.per_unit_busy],
        "utilization": fmt_real(report.utilization),
        "loads_with_reuse": report.loads_with_reuse,
        "loads_without_reuse": report.loads_without_reuse,
        "reuse_factor": fmt_real(report.reuse_factor),
        "parent_loads": report.parent_loads,
        "parent_loads_saved": report.parent_loads_saved,
    }


# ---------------------------------------------------------------------------
# Partition artifacts
# ---------------------------------------------------------------------------


def partition_to_json(blockset: BlockSet, tree: FractalTree | None = None,
                      stats: PartitionStats | None = None) -> dict:
    doc: dict = {
        "schema": SCHEMA_VERSION,
        "method": blockset.method,
        "n": blockset.n,
        "layout": [int(i) for i in blockset.layout.perm],
        "blocks": [
            {
                "id": b.id,
                "depth": b.depth,
                "start": b.start,
                "end": b.end,
                "parent": _key_to_json(b.parent),
                "cell": list(b.cell) if b.cell is not None else None,
                "degenerate_stop": b.degenerate_stop,
            }
            for b in blockset.blocks
        ],
        "search_spans": [[lo, hi] for lo, hi in blockset.search_spans],
    }
    if blockset.cells is not None:
        doc["cells"] = list(blockset.cells)
    if tree is not None:
        doc["tree"] = {
            "root": tree.root,
            "th": tree.th,
            "start_dim": tree.start_dim,
            "leaf_ids": list(tree.leaf_ids),
            "nodes": [
                {
                    "depth": nd.depth,
                    "parent": nd.parent,
                    "start": nd.start,
                    "end": nd.end,
                    "split_dim": nd.split_dim,
                    "mid": nd.mid,
                    "left": nd.left,
                    "right": nd.right,
                    "degenerate_stop": nd.degenerate_stop,
                }
                for nd in tree.nodes
            ],
        }
    if stats is not None:
        doc["stats"] = stats_to_json(stats)
    return doc


def _key_to_json(key):
    if key is None or isinstance(key, int):
        return key
    if isinstance(key, tuple):
        return [_key_to_json(k) for k in key]
    return key


def _key_from_json(key):
    if key is None or isinstance(key, int):
        return key
    if isinstance(key, list):
        return tuple(_key_from_json(k) for k in key)
    return key


def partition_from_json(doc: dict) -> tuple[BlockSet, FractalTree | None]:
    """Rebuild a BlockSet (and tree, when present) from its JSON artifact."""
    if doc.get("schema") != SCHEMA_VERSION:
        raise ParseError(f"unsupported partition schema {doc.get('schema')!r}")
    layout = LayoutPermutation(perm=np.asarray(doc["layout"], dtype=np.int64))
    blocks = [
        BlockView(
            id=int(b["id"]), depth=int(b["depth"]), start=int(b["start"]),
            end=int(b["end"]), parent=_key_from_json(b.get("parent")),
            cell=tuple(b["cell"]) if b.get("cell") is not None else None,
            degenerate_stop=bool(b.get("degenerate_stop", False)),
        )
        for b in doc["blocks"]
    ]
    tree = None
    if "tree" in doc:
        t = doc["tree"]
        nodes = [
            TreeNode(
                depth=int(nd["depth"]),
                parent=nd["parent"],
                start=int(nd["start"]),
                end=int(nd["end"]),
                split_dim=nd["split_dim"],
                mid=nd["mid"],
                left=nd["left"],
                right=nd["right"],
                degenerate_stop=bool(nd.get("degenerate_stop", False)),
            )
            for nd in t["nodes"]
        ]
        tree = FractalTree(
            nodes=nodes, root=int(t["root"]), th=int(t["th"]),
            start_dim=int(t["start_dim"]), layout=layout,
            leaf_ids=[int(i) for i in t["leaf_ids"]], method=doc["method"],
        )
    spans = [(int(lo), int(hi)) for lo, hi in doc["search_spans"]]
    if tree is not None:
        _, tokens = _tree_spans(tree, blocks)
    else:
        depth = max((b.depth for b in blocks), default=0)
        _, tokens = _grouped_spans(blocks, depth) if doc["method"] == "uniform" else (
            None, [b.parent if b.depth >= 2 else None for b in blocks])
    blockset = BlockSet(
        blocks=blocks, layout=layout, method=doc["method"], n=int(doc["n"]),
        search_spans=spans, parent_tokens=tokens, tree=tree,
        cells=tuple(doc["cells"]) if "cells" in doc else None,
    )
    return blockset, tree


# ---------------------------------------------------------------------------
# Bench report schema (for validation in CI)
# ---------------------------------------------------------------------------

BENCH_SCHEMA = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "type": "object",
    "required": ["schema", "command", "suite", "runs"],
    "properties": {
        "schema": {"const": SCHEMA_VERSION},
        "command": {"const": "bench"},
        "suite": {"enum": ["scaling", "ablation", "threshold"]},
        "meta": {"type": "object"},
        "runs": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["counters"],
                "properties": {
                    "n": {"type": "integer"},
                    "method": {"type": "string"},
                    "th": {"type": "integer"},
                    "counters": {"type": "object"},
                    "partition_stats": {"type": "object"},
                    "quality": {"type": "object"},
                    "schedule": {"type": "object"},
                },
            },
        },
        "wallclock_ms": {"type": "object"},
    },
}
