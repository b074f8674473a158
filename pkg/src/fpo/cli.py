"""Command-line front end.

Subcommands: ``gen`` (synthetic clouds to file), ``partition`` (build and
serialize a partition), ``ops`` (run point operations globally or block-wise,
optionally verifying against brute-force oracles), and ``bench`` (scaling /
ablation / threshold suites emitting plot-ready JSON).

Exit codes: 0 success, 1 usage, 2 validation or contract failure, 3 IO.
Every command is deterministic given its flags plus FPO_SEED; wall-clock
timings are informational and confined to the "wallclock_ms" report key.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
import time
from pathlib import Path

import numpy as np

from . import io as cloud_io
from .cloud import PointCloud
from .counters import CostCounters
from .errors import (
    ConfigError,
    ContractViolation,
    DomainError,
    FpoError,
    ParseError,
    ValidationError,
)
from .metrics import dispersion_ratios, neighbor_recall
from .partition import (
    METHODS,
    fractal_partition,
    kdtree_partition,
    octree_partition,
    partition_stats,
    uniform_partition,
)
from .pointops import (
    block_ball_query,
    block_fps,
    block_gather,
    block_knn,
    fps_window_check,
    gather,
    global_ball_query,
    global_fps,
    global_knn,
    search_space,
)
from .report import (
    SCHEMA_VERSION,
    counters_to_json,
    dumps_report,
    fmt_real,
    gather_to_json,
    neighbors_to_json,
    partition_from_json,
    partition_to_json,
    sample_to_json,
    schedule_to_json,
    stats_to_json,
)
from .schedule import ScheduleConfig, schedule_fps, schedule_neighbor
from .synth import KINDS, SynthSpec, generate_detailed

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_VALIDATION = 2
EXIT_IO = 3

DEFAULT_TH_SWEEP = (8, 16, 32, 64, 128, 256, 512, 1024, 4096)


def _default_seed() -> int:
    return int(os.environ.get("FPO_SEED", "0"))


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):  # exit 1 on usage errors, not argparse's 2
        self.print_usage(sys.stderr)
        sys.stderr.write(f"{self.prog}: error: {message}\n")
        raise SystemExit(EXIT_USAGE)


class _Phases:
    """Wall-clock per phase, reported but never part of acceptance."""

    def __init__(self) -> None:
        self.ms: dict[str, float] = {}

    def run(self, name: str, fn):
        t0 = time.perf_counter()
        out = fn()
        self.ms[name] = (time.perf_counter() - t0) * 1000.0
        return out


def _emit(doc: dict, target: str) -> None:
    text = dumps_report(doc)
    if target == "-":
        sys.stdout.write(text)
    else:
        Path(target).write_text(text, encoding="utf-8")


def _parse_cells(text: str) -> tuple[int, int, int]:
    parts = text.split(",")
    if len(parts) == 1:
        parts = parts * 3
    if len(parts) != 3:
        raise ConfigError(f"--cells expects 1 or 3 comma-separated ints, got {text!r}")
    return tuple(int(p) for p in parts)  # type: ignore[return-value]


def _auto_radius(cloud: PointCloud, target: float = 16.0) -> float:
    """Radius at which a uniform-density ball holds about `target` points."""
    extent = cloud.coords.max(axis=0) - cloud.coords.min(axis=0)
    volume = float(np.prod(np.where(extent > 0, extent, 1.0)))
    return (3.0 * target * volume / (4.0 * math.pi * cloud.n)) ** (1.0 / 3.0)


# ---------------------------------------------------------------------------
# gen
# ---------------------------------------------------------------------------


def _cmd_gen(args) -> int:
    params = {}
    for key, flag in (
        ("side", args.side),
        ("clusters", args.clusters),
        ("std", args.std),
        ("axis", args.axis),
        ("value", args.value),
        ("separation", args.separation),
        ("outlier_fraction", args.fraction),
    ):
        if flag is not None:
            params[key] = flag
    spec = SynthSpec(kind=args.kind, n=args.n, seed=args.seed, params=params,
                     feature_width=args.feature_width)
    phases = _Phases()
    cloud, info = phases.run("generate", lambda: generate_detailed(spec))
    fmt = args.format or cloud_io.infer_format(args.out)
    phases.run("save", lambda: cloud_io.save_cloud(cloud, args.out, fmt))
    doc = {
        "schema": SCHEMA_VERSION,
        "command": "gen",
        "kind": spec.kind,
        "n": spec.n,
        "c": cloud.c,
        "seed": spec.seed,
        "params": {k: fmt_real(v) for k, v in params.items()},
        "out": str(args.out),
        "format": fmt,
    }
    if "outlier_count" in info:
        doc["outlier_count"] = int(info["outlier_count"])
        doc["outlier_indices"] = [int(i) for i in info["outlier_indices"]]
    if "constant_axis" in info:
        doc["constant_axis"] = int(info["constant_axis"])
    if "region_assignment" in info:
        assign = info["region_assignment"]
        doc["region_sizes"] = [int((assign == 0).sum()), int((assign == 1).sum())]
    doc["wallclock_ms"] = {k: round(v, 3) for k, v in phases.ms.items()}
    _emit(doc, args.json)
    return EXIT_OK


# ---------------------------------------------------------------------------
# partition
# ---------------------------------------------------------------------------


def _build_partition(cloud: PointCloud, args, counters: CostCounters):
    """Run the partitioner selected by flags; returns (blockset, tree|None)."""
    if args.method == "fractal":
        tree, blockset = fractal_partition(cloud, args.th, args.start_dim, counters)
        return blockset, tree
    if args.method == "kdtree":
        tree, blockset = kdtree_partition(cloud, args.bs, args.start_dim, counters)
        return blockset, tree
    if args.method == "uniform":
        cells = _parse_cells(args.cells)
        return uniform_partition(cloud, cells, counters), None
    if args.method == "octree":
        return octree_partition(cloud, args.th, args.max_depth, counters), None
    raise ConfigError(f"unknown method {args.method!r}")


def _cmd_partition(args) -> int:
    phases = _Phases()
    cloud = phases.run("load", lambda: cloud_io.load_cloud(args.input, args.format))
    counters = CostCounters()
    blockset, tree = phases.run(
        "partition", lambda: _build_partition(cloud, args, counters))
    stats = partition_stats(blockset, tree, counters)
    doc = partition_to_json(blockset, tree, stats)
    doc["command"] = "partition"
    doc["input"] = str(args.input)
    doc["wallclock_ms"] = {k: round(v, 3) for k, v in phases.ms.items()}
    _emit(doc, args.json)
    return EXIT_OK


# ---------------------------------------------------------------------------
# ops
# ---------------------------------------------------------------------------


def _load_or_build_partition(cloud, args, counters):
    if args.partition_json:
        doc = json.loads(Path(args.partition_json).read_text(encoding="utf-8"))
        blockset, tree = partition_from_json(doc)
        if blockset.n != cloud.n:
            raise ValidationError(
                f"partition artifact covers n={blockset.n}, cloud has n={cloud.n}")
        return blockset, tree
    return _build_partition(cloud, args, counters)


def _split_sample_by_block(sample, blockset):
    """Per-block center arrays from a block-mode SampleResult."""
    out = []
    pos = 0
    for q in sample.per_block_counts:
        out.append(sample.indices[pos:pos + q])
        pos += q
    return out


def _cmd_ops(args) -> int:
    phases = _Phases()
    cloud = phases.run("load", lambda: cloud_io.load_cloud(args.input, args.format))
    n = cloud.n
    m = args.m if args.m is not None else max(1, n // 4)
    rate = args.rate if args.rate is not None else m / n
    seed_index = args.seed_index if args.seed_index is not None else _default_seed()
    if not 0 <= seed_index < n:
        raise DomainError(f"seed index {seed_index} out of range [0, {n})")
    radius = args.r if args.r is not None else _auto_radius(cloud)
    counters = CostCounters()
    part_counters = CostCounters()
    doc: dict = {
        "schema": SCHEMA_VERSION,
        "command": "ops",
        "op": args.op,
        "mode": args.mode,
        "n": n,
        "flags": {
            "m": m, "rate": fmt_real(rate), "seed_index": seed_index,
            "r": fmt_real(radius), "num": args.num, "k": args.k,
        },
    }
    verify: dict = {}
    blockset = None
    if args.mode == "block":
        blockset, _tree = phases.run(
            "partition", lambda: _load_or_build_partition(cloud, args, part_counters))
        doc["partition"] = {"method": blockset.method,
                            "num_blocks": blockset.num_blocks,
                            "counters": counters_to_json(part_counters, cloud.c)}

    if args.op == "fps":
        if args.mode == "global":
            result = phases.run("fps", lambda: fps_window_check(
                cloud, m, seed_index, counters))
            if args.verify_oracle:
                oracle_counters = CostCounters()
                oracle = global_fps(cloud, m, seed_index, oracle_counters)
                same = bool(np.array_equal(result.indices, oracle.indices))
                verify["skip_equivalent"] = same
                verify["window_distance_ops"] = counters.distance_ops
                verify["naive_distance_ops"] = oracle_counters.distance_ops
                if not same:
                    raise ContractViolation("window-check FPS diverged from naive FPS")
        else:
            result = phases.run("fps", lambda: block_fps(
                cloud, blockset, rate, m, args.seed_policy, counters))
            if args.verify_oracle:
                oracle = fps_window_check(cloud, m, seed_index, CostCounters())
                pair_ratio, cov_ratio = dispersion_ratios(result, oracle, cloud)
                verify["dispersion_ratio"] = fmt_real(pair_ratio)
                verify["coverage_radius_ratio"] = fmt_real(cov_ratio)
        doc["result"] = sample_to_json(result)

    elif args.op in ("bq", "knn"):
        result, oracle = _run_neighbor_op(cloud, blockset, args, m, rate, radius,
                                          seed_index, counters, phases)
        doc["result"] = neighbors_to_json(result)
        if args.verify_oracle:
            _verify_neighbors(args, cloud, blockset, result, oracle, radius, verify)

    elif args.op == "gather":
        if cloud.c == 0:
            raise DomainError("gather requires a cloud with features")
        if args.mode == "global":
            sample = fps_window_check(cloud, m, seed_index, CostCounters())
            neighbors = global_ball_query(cloud, sample.indices, radius, args.num,
                                          counters)
            result = phases.run("gather", lambda: gather(cloud, neighbors, counters))
            if args.verify_oracle:
                ok = all(
                    np.array_equal(vecs[: cnt], cloud.features[fnd[: cnt]])
                    for vecs, fnd, cnt in zip(result.vectors, neighbors.found,
                                              neighbors.counts)
                )
                verify["bit_identical"] = bool(ok)
                if not ok:
                    raise ContractViolation("gather altered feature values")
        else:
            sample = block_fps(cloud, blockset, rate, m, args.seed_policy,
                               CostCounters())
            centers = _split_sample_by_block(sample, blockset)
            neighbors = block_ball_query(cloud, blockset, radius, args.num,
                                         counters, centers)
            result = phases.run("gather", lambda: block_gather(
                cloud, blockset, neighbors, counters))
            if args.verify_oracle:
                reference = gather(cloud, neighbors, CostCounters())
                ok = all(
                    np.array_equal(a, b)
                    for a, b in zip(result.vectors, reference.vectors)
                ) and result.padded == reference.padded
                verify["bit_identical"] = bool(ok)
                if not ok:
                    raise ContractViolation("block gather diverged from gather")
        doc["neighbors"] = neighbors_to_json(neighbors)
        doc["result"] = gather_to_json(result)
    else:
        raise ConfigError(f"unknown op {args.op!r}")

    doc["counters"] = counters_to_json(counters, cloud.c)
    if verify:
        doc["verify"] = verify
    doc["wallclock_ms"] = {k: round(v, 3) for k, v in phases.ms.items()}
    _emit(doc, args.json)
    return EXIT_OK


def _run_neighbor_op(cloud, blockset, args, m, rate, radius, seed_index,
                     counters, phases):
    """Run bq/knn in the requested mode; centers follow the pipeline defaults:
    grouping (bq) centers are FPS outputs, interpolation (knn) centers are all
    points."""
    if args.op == "bq":
        if args.mode == "global":
            sample = fps_window_check(cloud, m, seed_index, CostCounters())
            result = phases.run("bq", lambda: global_ball_query(
                cloud, sample.indices, radius, args.num, counters))
            oracle = result
        else:
            sample = block_fps(cloud, blockset, rate, m, args.seed_policy,
                               CostCounters())
            centers = _split_sample_by_block(sample, blockset)
            result = phases.run("bq", lambda: block_ball_query(
                cloud, blockset, radius, args.num, counters, centers))
            oracle = None
            if args.verify_oracle:
                oracle = global_ball_query(cloud, result.centers, radius, args.num,
                                           CostCounters())
        return result, oracle
    if args.mode == "global":
        centers = np.arange(cloud.n, dtype=np.int64)
        result = phases.run("knn", lambda: global_knn(cloud, centers, args.k,
                                                      counters))
        return result, result
    result = phases.run("knn", lambda: block_knn(cloud, blockset, args.k, counters))
    oracle = None
    if args.verify_oracle:
        oracle = global_knn(cloud, result.centers, args.k, CostCounters())
    return result, oracle


def _verify_neighbors(args, cloud, blockset, result, oracle, radius, verify):
    """Oracle comparison plus hard subset-soundness re-verification."""
    if args.mode == "block":
        spaces = {b: set(search_space(blockset, b).tolist())
                  for b in set(int(x) for x in result.block_ids)}
        for pos, found in enumerate(result.found):
            b = int(result.block_ids[pos])
            if not set(found.tolist()) <= spaces[b]:
                raise ContractViolation(
                    f"neighbor outside search space for center {result.centers[pos]}")
        recall = neighbor_recall(result, oracle)
        verify["recall"] = fmt_real(recall)
    if args.op == "bq":
        for pos, (found, dists) in enumerate(zip(result.found, result.distances)):
            center = cloud.coords[result.centers[pos]]
            actual = np.sqrt(((cloud.coords[found] - center) ** 2).sum(axis=1))
            if not (actual <= radius + 1e-12).all():
                raise ContractViolation(
                    f"ball-query neighbor beyond radius for center {result.centers[pos]}")
        verify["radius_sound"] = True
    verify["search_space_sound"] = True


# ---------------------------------------------------------------------------
# bench
# ---------------------------------------------------------------------------


def _bench_partition(cloud, method, th, counters):
    if method == "fractal":
        tree, blockset = fractal_partition(cloud, th, 0, counters)
        return blockset, tree
    if method == "kdtree":
        tree, blockset = kdtree_partition(cloud, th, 0, counters)
        return blockset, tree
    if method == "uniform":
        per_axis = max(1, round((cloud.n / th) ** (1.0 / 3.0)))
        return uniform_partition(cloud, (per_axis,) * 3, counters), None
    if method == "octree":
        return octree_partition(cloud, th, 16, counters), None
    raise ConfigError(f"unknown method {method!r}")


def _bench_point_ops(cloud, blockset, rate, num, k, radius, units):
    """Block-wise fps + bq + knn (+ gather when features exist) with quality
    proxies against global oracles."""
    total_m = max(1, int(math.floor(rate * cloud.n)))
    run: dict = {"counters": {}}
    c_fps = CostCounters()
    sample = block_fps(cloud, blockset, rate, total_m, "first", c_fps)
    run["counters"]["fps"] = counters_to_json(c_fps, cloud.c)
    centers = _split_sample_by_block(sample, blockset)

    c_bq = CostCounters()
    bq = block_ball_query(cloud, blockset, radius, num, c_bq, centers)
    run["counters"]["bq"] = counters_to_json(c_bq, cloud.c)

    c_knn = CostCounters()
    knn = block_knn(cloud, blockset, k, c_knn)
    run["counters"]["knn"] = counters_to_json(c_knn, cloud.c)

    if cloud.c:
        c_ga = CostCounters()
        block_gather(cloud, blockset, bq, c_ga)
        run["counters"]["gather"] = counters_to_json(c_ga, cloud.c)

    bq_oracle = global_ball_query(cloud, bq.centers, radius, num, CostCounters())
    knn_oracle = global_knn(cloud, knn.centers, k, CostCounters())
    g_sample = fps_window_check(cloud, min(total_m, cloud.n), 0, CostCounters())
    quality = {
        "bq_recall": fmt_real(neighbor_recall(bq, bq_oracle)),
        "knn_recall": fmt_real(neighbor_recall(knn, knn_oracle)),
    }
    if total_m >= 2:
        pair_ratio, cov_ratio = dispersion_ratios(sample, g_sample, cloud)
        quality["fps_dispersion_ratio"] = fmt_real(pair_ratio)
        quality["coverage_radius_ratio"] = fmt_real(cov_ratio)
    run["quality"] = quality

    cfg_fps = ScheduleConfig(units=units, mode="fps")
    cfg_nb = ScheduleConfig(units=units, mode="neighbor")
    run["schedule"] = {
        "fps": schedule_to_json(schedule_fps(blockset, sample.per_block_counts,
                                             cfg_fps)),
        "neighbor": schedule_to_json(schedule_neighbor(
            blockset, [b.size for b in blockset.blocks], cfg_nb)),
    }
    run["distance_ops_total"] = (c_fps.distance_ops + c_bq.distance_ops
                                 + c_knn.distance_ops)
    return run


def _cmd_bench(args) -> int:
    phases = _Phases()
    seed = args.seed if args.seed is not None else _default_seed()
    runs: list[dict] = []
    doc = {
        "schema": SCHEMA_VERSION,
        "command": "bench",
        "suite": args.suite,
        "meta": {"seed": seed, "kind": args.kind, "units": args.units,
                 "rate": fmt_real(args.rate), "num": args.num, "k": args.k},
        "runs": runs,
    }

    def make_cloud(n):
        spec = SynthSpec(kind=args.kind, n=n, seed=seed,
                         feature_width=args.feature_width)
        cloud, _ = generate_detailed(spec)
        return cloud

    if args.suite == "scaling":
        sizes = [int(s) for s in args.sizes.split(",")]
        for n in sizes:
            cloud = make_cloud(n)
            for method in METHODS:
                counters = CostCounters()
                blockset, tree = phases.run(
                    f"partition-{method}-{n}",
                    lambda m=method: _bench_partition(cloud, m, args.th, counters))
                stats = partition_stats(blockset, tree, counters)
                runs.append({
                    "n": n, "method": method, "th": args.th,
                    "partition_stats": stats_to_json(stats, cloud.c),
                    "counters": counters_to_json(counters, cloud.c),
                })
    elif args.suite == "ablation":
        cloud = make_cloud(args.n)
        radius = args.r if args.r is not None else _auto_radius(cloud)
        for method in METHODS:
            counters = CostCounters()
            blockset, tree = phases.run(
                f"partition-{method}",
                lambda m=method: _bench_partition(cloud, m, args.th, counters))
            stats = partition_stats(blockset, tree, counters)
            run = phases.run(f"ops-{method}", lambda bs=blockset: _bench_point_ops(
                cloud, bs, args.rate, args.num, args.k, radius, args.units))
            run.update({
                "n": args.n, "method": method, "th": args.th,
                "partition_stats": stats_to_json(stats, cloud.c),
            })
            run["counters"]["partition"] = counters_to_json(counters, cloud.c)
            runs.append(run)
    elif args.suite == "threshold":
        cloud = make_cloud(args.n)
        radius = args.r if args.r is not None else _auto_radius(cloud)
        th_list = ([int(t) for t in args.th_list.split(",")]
                   if args.th_list else list(DEFAULT_TH_SWEEP))
        for th in th_list:
            counters = CostCounters()
            tree, blockset = fractal_partition(cloud, th, 0, counters)
            stats = partition_stats(blockset, tree, counters)
            run = phases.run(f"ops-th{th}", lambda bs=blockset: _bench_point_ops(
                cloud, bs, args.rate, args.num, args.k, radius, args.units))
            run.update({
                "n": args.n, "method": "fractal", "th": th,
                "partition_stats": stats_to_json(stats, cloud.c),
            })
            run["counters"]["partition"] = counters_to_json(counters, cloud.c)
            runs.append(run)
    else:
        raise ConfigError(f"unknown suite {args.suite!r}")

    doc["wallclock_ms"] = {key: round(v, 3) for key, v in phases.ms.items()}
    target = args.json if args.json else (args.out or "-")
    _emit(doc, target)
    return EXIT_OK


# ---------------------------------------------------------------------------
# Parser wiring
# ---------------------------------------------------------------------------


def build_parser() -> _Parser:
    parser = _Parser(prog="fpo", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    g = sub.add_parser("gen", help="generate a synthetic cloud file")
    g.add_argument("--kind", choices=KINDS, required=True)
    g.add_argument("--n", type=int, required=True)
    g.add_argument("--seed", type=int, default=_default_seed())
    g.add_argument("--feature-width", type=int, default=0)
    g.add_argument("--out", required=True)
    g.add_argument("--format", choices=cloud_io.FORMATS, default=None)
    g.add_argument("--side", type=float, default=None)
    g.add_argument("--clusters", type=int, default=None)
    g.add_argument("--std", type=float, default=None)
    g.add_argument("--axis", type=int, default=None)
    g.add_argument("--value", type=float, default=None)
    g.add_argument("--separation", type=float, default=None)
    g.add_argument("--fraction", type=float, default=None)
    g.add_argument("--json", default="-")
    g.set_defaults(func=_cmd_gen)

    def add_partition_flags(p):
        p.add_argument("--method", choices=METHODS, default="fractal")
        p.add_argument("--th", type=int, default=256)
        p.add_argument("--bs", type=int, default=256)
        p.add_argument("--cells", default="4,4,4")
        p.add_argument("--max-depth", type=int, default=16)
        p.add_argument("--start-dim", type=int, choices=(0, 1, 2), default=0)

    p = sub.add_parser("partition", help="partition a cloud and emit the artifact")
    p.add_argument("--input", required=True)
    p.add_argument("--format", choices=cloud_io.FORMATS, default=None)
    add_partition_flags(p)
    p.add_argument("--json", default="-")
    p.set_defaults(func=_cmd_partition)

    o = sub.add_parser("ops", help="run point operations")
    o.add_argument("--input", required=True)
    o.add_argument("--format", choices=cloud_io.FORMATS, default=None)
    o.add_argument("--op", choices=("fps", "bq", "knn", "gather"), required=True)
    o.add_argument("--mode", choices=("global", "block"), required=True)
    o.add_argument("--m", type=int, default=None)
    o.add_argument("--rate", type=float, default=None)
    o.add_argument("--seed-index", type=int, default=None)
    o.add_argument("--seed-policy", choices=("first", "lowest"), default="first")
    o.add_argument("--r", type=float, default=None)
    o.add_argument("--num", type=int, default=16)
    o.add_argument("--k", type=int, default=3)
    o.add_argument("--eps", type=float, default=1e-8)
    add_partition_flags(o)
    o.add_argument("--partition-json", default=None,
                   help="load a partition artifact instead of partitioning inline")
    o.add_argument("--verify-oracle", action="store_true")
    o.add_argument("--json", default="-")
    o.set_defaults(func=_cmd_ops)

    b = sub.add_parser("bench", help="run a benchmark suite")
    b.add_argument("--suite", choices=("scaling", "ablation", "threshold"),
                   required=True)
    b.add_argument("--sizes", default="1024,4096,16384")
    b.add_argument("--n", type=int, default=4096)
    b.add_argument("--th", type=int, default=256)
    b.add_argument("--th-list", default=None)
    b.add_argument("--kind", choices=KINDS, default="uniform-cube")
    b.add_argument("--feature-width", type=int, default=4)
    b.add_argument("--seed", type=int, default=None)
    b.add_argument("--rate", type=float, default=0.25)
    b.add_argument("--r", type=float, default=None)
    b.add_argument("--num", type=int, default=16)
    b.add_argument("--k", type=int, default=3)
    b.add_argument("--units", type=int, default=4)
    b.add_argument("--out", default=None)
    b.add_argument("--json", default=None)
    b.set_defaults(func=_cmd_bench)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except (ParseError, ValidationError, ConfigError, DomainError,
            ContractViolation) as exc:
        print(f"fpo: error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except FpoError as exc:
        print(f"fpo: error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except OSError as exc:
        print(f"fpo: io error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
