"""Global and block-wise point operations.

Global variants are oracle-grade brute-force references: farthest point
sampling, ball query, k-nearest-neighbor search, inverse-distance feature
interpolation, and gathering.  Block-wise variants restrict each leaf's
candidate set to its search space (the leaf's own points at depth <= 1,
otherwise all points under its immediate parent) and charge data loads per
block with parent reuse across sibling leaves, instead of per scan.

All results are expressed in original point indices.  Block-wise execution is
block-independent: sequential depth-first processing defines the reference
output, and the per-block results never depend on other blocks.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .cloud import PointCloud
from .counters import CostCounters
from .errors import ContractViolation, DomainError
from .partition import BlockSet, FractalTree

_LOAD_NONE = object()  # parent-cache sentinel distinct from None


# ---------------------------------------------------------------------------
# Result types
# ---------------------------------------------------------------------------


@dataclass
class SampleResult:
    """Ordered sample of distinct original indices."""

    indices: np.ndarray
    mode: str  # "global" | "block"
    seed_index: int | None = None
    per_block_counts: list[int] | None = None


@dataclass
class NeighborResult:
    """Per-center neighbor lists with found-counts and search-space provenance.

    found[i] holds original indices for centers[i]; distances[i] is aligned
    with found[i].  Ball-query results keep first-found (ascending index)
    order; KNN results are sorted by ascending distance, ties by lower index.
    """

    centers: np.ndarray
    found: list[np.ndarray]
    distances: list[np.ndarray]
    counts: np.ndarray
    search_space: list[str]  # "whole-cloud" | "leaf" | "leaf+parent"
    mode: str
    radius: float | None = None
    num: int | None = None
    k: int | None = None
    block_ids: np.ndarray | None = None


@dataclass
class GatherResult:
    """Per-center feature rows aligned with a NeighborResult's found lists."""

    vectors: list[np.ndarray]
    padded: list[bool]
    num: int | None = None

    @property
    def any_padded(self) -> bool:
        return any(self.padded)


# ---------------------------------------------------------------------------
# Distance helpers (shared by global and block paths for bit-identity)
# ---------------------------------------------------------------------------


def _dist_matrix(coords: np.ndarray, center_ids: np.ndarray, cand_ids: np.ndarray,
                 cand_chunk: int = 8192) -> np.ndarray:
    """Euclidean distances, centers x candidates, computed row-independently."""
    c = coords[center_ids]
    out = np.empty((len(center_ids), len(cand_ids)), dtype=np.float64)
    for s in range(0, len(cand_ids), cand_chunk):
        e = min(s + cand_chunk, len(cand_ids))
        diff = c[:, None, :] - coords[cand_ids[s:e]][None, :, :]
        out[:, s:e] = np.sqrt((diff * diff).sum(axis=2))
    return out


def _k_smallest(row: np.ndarray, k: int) -> np.ndarray:
    """Positions of the k smallest values, ascending, ties by lower position."""
    k_eff = min(k, row.shape[0])
    if k_eff == row.shape[0]:
        sel = np.arange(row.shape[0])
    else:
        part = np.argpartition(row, k_eff - 1)[:k_eff]
        kth = row[part].max()
        strictly = np.flatnonzero(row < kth)
        need = k_eff - len(strictly)
        sel = np.concatenate([strictly, np.flatnonzero(row == kth)[:need]])
    order = np.argsort(row[sel], kind="stable")
    return sel[order]


def _center_chunks(n_centers: int, n_cand: int) -> int:
    return max(1, 4_000_000 // max(1, n_cand))


# ---------------------------------------------------------------------------
# Farthest point sampling
# ---------------------------------------------------------------------------


def _fps_scan(
    coords: np.ndarray,
    subset_ids: np.ndarray,
    m: int,
    seed_local: int,
    skip: bool,
    counters: CostCounters,
    charge_reads: bool = True,
) -> np.ndarray:
    """Iterative FPS over one candidate set, in local index space.

    Iteration i appends the current sample, distance-updates the candidates
    (all of them in naive mode; only the s-i not-yet-sampled ones in
    window-check mode), then marks the sample and picks the next one as the
    unsampled argmax of min-distance, ties broken by lowest index.  The two
    modes differ only in scan work: an already-sampled point has zero
    min-distance, so re-scanning it can never change the argmax.
    """
    pts = coords[subset_ids]
    s = len(pts)
    mind = np.full(s, np.inf)
    sampled = np.zeros(s, dtype=bool)
    out = np.empty(m, dtype=np.int64)
    cur = int(seed_local)
    for i in range(m):
        out[i] = cur
        if skip:
            cand = np.flatnonzero(~sampled)
            diff = pts[cand] - pts[cur]
            d = np.sqrt((diff * diff).sum(axis=1))
            mind[cand] = np.minimum(mind[cand], d)
            counters.distance_ops += len(cand)
            counters.skipped_candidates += s - len(cand)
            if charge_reads:
                counters.point_reads += len(cand)
        else:
            diff = pts - pts[cur]
            d = np.sqrt((diff * diff).sum(axis=1))
            np.minimum(mind, d, out=mind)
            counters.distance_ops += s
            if charge_reads:
                counters.point_reads += s
        sampled[cur] = True
        if i + 1 < m:
            valid = np.flatnonzero(~sampled)
            cur = int(valid[np.argmax(mind[valid])])
    return subset_ids[out]


def _check_fps_args(cloud: PointCloud, m: int, seed_index: int) -> None:
    if not 1 <= m <= cloud.n:
        raise DomainError(f"sample count m={m} must be in [1, n={cloud.n}]")
    if not 0 <= seed_index < cloud.n:
        raise DomainError(f"seed_index {seed_index} out of range [0, {cloud.n})")


def global_fps(cloud: PointCloud, m: int, seed_index: int = 0,
               counters: CostCounters | None = None) -> SampleResult:
    """Naive farthest point sampling: every iteration scans all n points."""
    _check_fps_args(cloud, m, seed_index)
    counters = counters if counters is not None else CostCounters()
    all_ids = np.arange(cloud.n, dtype=np.int64)
    idx = _fps_scan(cloud.coords, all_ids, m, seed_index, skip=False, counters=counters)
    return SampleResult(indices=idx, mode="global", seed_index=seed_index)


def fps_window_check(cloud: PointCloud, m: int, seed_index: int = 0,
                     counters: CostCounters | None = None) -> SampleResult:
    """FPS with a validity-mask skip of already-sampled points.

    Output is index-for-index identical to global_fps; only the counters
    differ: iteration i computes n - i distances and the skipped candidates
    are recorded.
    """
    _check_fps_args(cloud, m, seed_index)
    counters = counters if counters is not None else CostCounters()
    all_ids = np.arange(cloud.n, dtype=np.int64)
    idx = _fps_scan(cloud.coords, all_ids, m, seed_index, skip=True, counters=counters)
    return SampleResult(indices=idx, mode="global", seed_index=seed_index)


def largest_remainder_quotas(sizes: np.ndarray, rate: float, total_m: int) -> np.ndarray:
    """Per-block quotas: floor(rate * size), redistributed so they sum to total_m.

    Deficits are filled in order of largest fractional remainder (ties by
    lower block id); surpluses are drained from the smallest remainder (ties
    by higher block id).  Quotas never exceed block sizes or drop below 0.
    """
    sizes = np.asarray(sizes, dtype=np.int64)
    if total_m > sizes.sum():
        raise DomainError(f"total_m={total_m} exceeds available points {sizes.sum()}")
    raw = rate * sizes
    base = np.minimum(np.floor(raw).astype(np.int64), sizes)
    rem = raw - np.floor(raw)
    deficit = int(total_m - base.sum())
    ids = np.arange(len(sizes))
    if deficit > 0:
        order = np.lexsort((ids, -rem))
        while deficit > 0:
            progressed = False
            for b in order:
                if deficit == 0:
                    break
                if base[b] < sizes[b]:
                    base[b] += 1
                    deficit -= 1
                    progressed = True
            if not progressed:  # pragma: no cover - excluded by the sum guard
                raise DomainError("cannot satisfy total_m with given block sizes")
    elif deficit < 0:
        order = np.lexsort((-ids, rem))
        while deficit < 0:
            for b in order:
                if deficit == 0:
                    break
                if base[b] > 0:
                    base[b] -= 1
                    deficit += 1
    return base


def block_fps(
    cloud: PointCloud,
    blockset: BlockSet,
    rate: float,
    total_m: int,
    seed_policy: str = "first",
    counters: CostCounters | None = None,
) -> SampleResult:
    """Independent window-check FPS per block with a fixed sampling rate.

    Each block receives quota floor(rate * size) (largest-remainder adjusted
    so quotas sum to total_m exactly), is loaded once, and is sampled with
    its own seed: the block's first point in layout order ("first", the
    default) or its lowest original index ("lowest").  Results concatenate
    in depth-first block order.
    """
    if not 0.0 < rate <= 1.0:
        raise DomainError(f"rate must be in (0, 1], got {rate}")
    if not 1 <= total_m <= cloud.n:
        raise DomainError(f"total_m={total_m} must be in [1, n={cloud.n}]")
    if seed_policy not in ("first", "lowest"):
        raise DomainError(f"unknown seed_policy {seed_policy!r}")
    counters = counters if counters is not None else CostCounters()
    quotas = largest_remainder_quotas(blockset.sizes(), rate, total_m)
    parts: list[np.ndarray] = []
    for b in range(blockset.num_blocks):
        q = int(quotas[b])
        if q == 0:
            continue
        ids = blockset.block_points(b)
        counters.point_reads += len(ids)  # block loaded once, scans stay on-chip
        seed_local = 0 if seed_policy == "first" else int(np.argmin(ids))
        parts.append(_fps_scan(cloud.coords, ids, q, seed_local, skip=True,
                               counters=counters, charge_reads=False))
    indices = np.concatenate(parts) if parts else np.empty(0, dtype=np.int64)
    return SampleResult(indices=indices, mode="block",
                        per_block_counts=[int(q) for q in quotas])


# ---------------------------------------------------------------------------
# Search space
# ---------------------------------------------------------------------------


def search_space(partition: FractalTree | BlockSet, leaf_id: int) -> np.ndarray:
    """Candidate set for a leaf's neighbor search, ascending original indices.

    Leaves at depth 0 (root) or depth 1 search only their own points; deeper
    leaves search all points under their immediate parent node.
    """
    if isinstance(partition, FractalTree):
        if not 0 <= leaf_id < len(partition.leaf_ids):
            raise DomainError(f"leaf id {leaf_id} out of range")
        node = partition.nodes[partition.leaf_ids[leaf_id]]
        if node.depth <= 1 or node.parent is None:
            lo, hi = node.start, node.end
        else:
            parent = partition.nodes[node.parent]
            lo, hi = parent.start, parent.end
        ids = partition.layout.perm[lo:hi]
    elif isinstance(partition, BlockSet):
        if not 0 <= leaf_id < partition.num_blocks:
            raise DomainError(f"block id {leaf_id} out of range")
        ids = partition.span_indices(leaf_id)
    else:
        raise DomainError(f"expected FractalTree or BlockSet, got {type(partition)!r}")
    return np.sort(ids)


def _space_tag(blockset: BlockSet, block_id: int) -> str:
    return "leaf" if blockset.parent_tokens[block_id] is None else "leaf+parent"


def _centers_by_block(blockset: BlockSet,
                      centers_per_block: list[np.ndarray] | None) -> list[np.ndarray]:
    if centers_per_block is None:
        return [blockset.block_points(b) for b in range(blockset.num_blocks)]
    if len(centers_per_block) != blockset.num_blocks:
        raise DomainError("centers_per_block must give one entry per block")
    return [np.asarray(c, dtype=np.int64) for c in centers_per_block]


# ---------------------------------------------------------------------------
# Ball query
# ---------------------------------------------------------------------------


def global_ball_query(
    cloud: PointCloud,
    centers: np.ndarray,
    r: float,
    num: int,
    counters: CostCounters | None = None,
) -> NeighborResult:
    """For each center keep the first num in-radius points by ascending index."""
    if r <= 0:
        raise DomainError(f"radius must be > 0, got {r}")
    if num < 1:
        raise DomainError(f"num must be >= 1, got {num}")
    counters = counters if counters is not None else CostCounters()
    centers = np.asarray(centers, dtype=np.int64)
    cand = np.arange(cloud.n, dtype=np.int64)
    found, dists = _ball_rows(cloud.coords, centers, cand, r, num, counters,
                              charge_reads=True)
    return NeighborResult(
        centers=centers, found=found, distances=dists,
        counts=np.array([len(f) for f in found], dtype=np.int64),
        search_space=["whole-cloud"] * len(centers), mode="global",
        radius=float(r), num=int(num),
    )


def _ball_rows(coords, centers, cand, r, num, counters, charge_reads):
    found: list[np.ndarray] = []
    dists: list[np.ndarray] = []
    chunk = _center_chunks(len(centers), len(cand))
    for s in range(0, len(centers), chunk):
        e = min(s + chunk, len(centers))
        dmat = _dist_matrix(coords, centers[s:e], cand)
        for row in dmat:
            sel = np.flatnonzero(row <= r)[:num]
            found.append(cand[sel])
            dists.append(row[sel])
    counters.distance_ops += len(centers) * len(cand)
    if charge_reads:
        counters.point_reads += len(centers) * len(cand)
    return found, dists


def block_ball_query(
    cloud: PointCloud,
    blockset: BlockSet,
    r: float,
    num: int,
    counters: CostCounters | None = None,
    centers_per_block: list[np.ndarray] | None = None,
) -> NeighborResult:
    """Ball query with per-leaf candidates restricted to the leaf's search space.

    Centers default to each leaf's own points.  Search-space data is charged
    once per leaf (the parent's points for depth >= 2, reused across sibling
    leaves in depth-first order), not once per scan.
    """
    if r <= 0:
        raise DomainError(f"radius must be > 0, got {r}")
    if num < 1:
        raise DomainError(f"num must be >= 1, got {num}")
    counters = counters if counters is not None else CostCounters()
    centers_by_block = _centers_by_block(blockset, centers_per_block)
    all_centers: list[np.ndarray] = []
    all_found: list[np.ndarray] = []
    all_dists: list[np.ndarray] = []
    tags: list[str] = []
    block_ids: list[int] = []
    last_token = _LOAD_NONE
    for b in range(blockset.num_blocks):
        centers = centers_by_block[b]
        if len(centers) == 0:
            continue
        cand = np.sort(blockset.span_indices(b))
        last_token = _charge_space_load(blockset, b, counters, "point_reads", last_token)
        f, d = _ball_rows(cloud.coords, centers, cand, r, num, counters,
                          charge_reads=False)
        all_centers.append(centers)
        all_found.extend(f)
        all_dists.extend(d)
        tags.extend([_space_tag(blockset, b)] * len(centers))
        block_ids.extend([b] * len(centers))
    centers = np.concatenate(all_centers) if all_centers else np.empty(0, dtype=np.int64)
    return NeighborResult(
        centers=centers, found=all_found, distances=all_dists,
        counts=np.array([len(f) for f in all_found], dtype=np.int64),
        search_space=tags, mode="block", radius=float(r), num=int(num),
        block_ids=np.array(block_ids, dtype=np.int64),
    )


def _charge_space_load(blockset: BlockSet, block_id: int, counters: CostCounters,
                       attr: str, last_token):
    """Charge one block/parent load; consecutive siblings reuse the parent."""
    token = blockset.parent_tokens[block_id]
    if token is None:
        setattr(counters, attr, getattr(counters, attr) + blockset.blocks[block_id].size)
        return _LOAD_NONE
    if token == last_token:
        counters.parent_loads_saved += 1
        return last_token
    counters.parent_loads += 1
    lo, hi = blockset.search_spans[block_id]
    span_size = blockset.blocks[hi - 1].end - blockset.blocks[lo].start
    setattr(counters, attr, getattr(counters, attr) + span_size)
    return token


# ---------------------------------------------------------------------------
# K nearest neighbors
# ---------------------------------------------------------------------------


def global_knn(
    cloud: PointCloud,
    centers: np.ndarray,
    k: int,
    counters: CostCounters | None = None,
    candidates: np.ndarray | None = None,
) -> NeighborResult:
    """Exact k nearest by Euclidean distance, ties by lower index.

    candidates restricts the searched set (e.g. to previously sampled
    points); it defaults to the whole cloud.
    """
    if k < 1:
        raise DomainError(f"k must be >= 1, got {k}")
    counters = counters if counters is not None else CostCounters()
    centers = np.asarray(centers, dtype=np.int64)
    cand = (np.sort(np.asarray(candidates, dtype=np.int64))
            if candidates is not None else np.arange(cloud.n, dtype=np.int64))
    found, dists = _knn_rows(cloud.coords, centers, cand, k, counters,
                             charge_reads=True)
    return NeighborResult(
        centers=centers, found=found, distances=dists,
        counts=np.array([len(f) for f in found], dtype=np.int64),
        search_space=["whole-cloud"] * len(centers), mode="global", k=int(k),
    )


def _knn_rows(coords, centers, cand, k, counters, charge_reads):
    found: list[np.ndarray] = []
    dists: list[np.ndarray] = []
    chunk = _center_chunks(len(centers), len(cand))
    for s in range(0, len(centers), chunk):
        e = min(s + chunk, len(centers))
        dmat = _dist_matrix(coords, centers[s:e], cand)
        for row in dmat:
            sel = _k_smallest(row, k)
            found.append(cand[sel])
            dists.append(row[sel])
    counters.distance_ops += len(centers) * len(cand)
    if charge_reads:
        counters.point_reads += len(centers) * len(cand)
    return found, dists


def block_knn(
    cloud: PointCloud,
    blockset: BlockSet,
    k: int,
    counters: CostCounters | None = None,
    centers_per_block: list[np.ndarray] | None = None,
) -> NeighborResult:
    """KNN with per-leaf candidates restricted to the leaf's search space."""
    if k < 1:
        raise DomainError(f"k must be >= 1, got {k}")
    counters = counters if counters is not None else CostCounters()
    centers_by_block = _centers_by_block(blockset, centers_per_block)
    all_centers: list[np.ndarray] = []
    all_found: list[np.ndarray] = []
    all_dists: list[np.ndarray] = []
    tags: list[str] = []
    block_ids: list[int] = []
    last_token = _LOAD_NONE
    for b in range(blockset.num_blocks):
        centers = centers_by_block[b]
        if len(centers) == 0:
            continue
        cand = np.sort(blockset.span_indices(b))
        last_token = _charge_space_load(blockset, b, counters, "point_reads", last_token)
        f, d = _knn_rows(cloud.coords, centers, cand, k, counters, charge_reads=False)
        all_centers.append(centers)
        all_found.extend(f)
        all_dists.extend(d)
        tags.extend([_space_tag(blockset, b)] * len(centers))
        block_ids.extend([b] * len(centers))
    centers = np.concatenate(all_centers) if all_centers else np.empty(0, dtype=np.int64)
    return NeighborResult(
        centers=centers, found=all_found, distances=all_dists,
        counts=np.array([len(f) for f in all_found], dtype=np.int64),
        search_space=tags, mode="block", k=int(k),
        block_ids=np.array(block_ids, dtype=np.int64),
    )


# ---------------------------------------------------------------------------
# Interpolation and gathering
# ---------------------------------------------------------------------------


def interpolate_features(neighbors: NeighborResult, features: np.ndarray,
                         eps: float = 1e-8) -> np.ndarray:
    """Inverse-distance weighted blend of neighbor features per center.

    Weights are 1 / (d + eps), normalized to sum to one.
    """
    if features is None:
        raise DomainError("interpolation requires features")
    if eps <= 0:
        raise DomainError(f"eps must be > 0, got {eps}")
    out = np.empty((len(neighbors.centers), features.shape[1]), dtype=np.float64)
    for i, (idx, d) in enumerate(zip(neighbors.found, neighbors.distances)):
        if len(idx) == 0:
            raise DomainError(f"center position {i} has zero neighbors")
        w = 1.0 / (d + eps)
        w = w / w.sum()
        out[i] = w @ features[idx]
    return out


def _emit_slots(found: np.ndarray, num: int | None, features: np.ndarray,
                ) -> tuple[np.ndarray, bool, int]:
    """Feature rows for one center plus (padded flag, charged lookups).

    With a ball-query cap num: short results repeat the first found neighbor
    to fill num slots; empty results zero-fill.  Without a cap the rows are
    exactly the found list.
    """
    c = features.shape[1]
    if num is None:
        return features[found].copy(), False, len(found)
    count = len(found)
    if count == 0:
        return np.zeros((num, c), dtype=features.dtype), True, 0
    if count < num:
        rows = np.concatenate([found, np.full(num - count, found[0], dtype=np.int64)])
        return features[rows].copy(), True, num
    return features[found[:num]].copy(), False, num


def gather(cloud: PointCloud, neighbors: NeighborResult,
           counters: CostCounters | None = None) -> GatherResult:
    """Fetch feature vectors for every neighbor index, one read per lookup."""
    if cloud.features is None:
        raise DomainError("gather requires a cloud with features")
    counters = counters if counters is not None else CostCounters()
    vectors: list[np.ndarray] = []
    padded: list[bool] = []
    for found in neighbors.found:
        if len(found) and (found.min() < 0 or found.max() >= cloud.n):
            raise DomainError("neighbor index out of range")
        vecs, pad, reads = _emit_slots(found, neighbors.num, cloud.features)
        counters.feature_reads += reads
        vectors.append(vecs)
        padded.append(pad)
    return GatherResult(vectors=vectors, padded=padded, num=neighbors.num)


def gather_traversal_order(num_blocks: int) -> tuple[list[int], list[int]]:
    """Two-cursor block schedule: one unit left-to-right, one right-to-left.

    The units meet in the middle; with 4 blocks unit 1 visits 0, 1 and
    unit 2 visits 3, 2.
    """
    h = (num_blocks + 1) // 2
    return list(range(h)), list(range(num_blocks - 1, h - 1, -1))


def block_gather(
    cloud: PointCloud,
    blockset: BlockSet,
    neighbors: NeighborResult,
    counters: CostCounters | None = None,
) -> GatherResult:
    """Gather with block-granular feature loads and two-cursor traversal.

    Values are bit-identical to gather on the same NeighborResult; only the
    load accounting differs: each visited leaf charges its search-space
    features once, with parent data reused across sibling leaves within each
    cursor's stream.  A neighbor index outside its leaf's search space is a
    contract violation.
    """
    if cloud.features is None:
        raise DomainError("gather requires a cloud with features")
    counters = counters if counters is not None else CostCounters()
    n_centers = len(neighbors.centers)
    if neighbors.block_ids is not None:
        block_ids = neighbors.block_ids
    else:
        block_ids = np.array(
            [blockset.block_of(int(c)) for c in neighbors.centers], dtype=np.int64
        )
    by_block: dict[int, list[int]] = {}
    for pos, b in enumerate(block_ids):
        by_block.setdefault(int(b), []).append(pos)
    vectors: list[np.ndarray | None] = [None] * n_centers
    padded: list[bool] = [False] * n_centers
    for unit_blocks in gather_traversal_order(blockset.num_blocks):
        last_token = _LOAD_NONE
        for b in unit_blocks:
            positions = by_block.get(b)
            if not positions:
                continue
            space = np.sort(blockset.span_indices(b))
            last_token = _charge_space_load(blockset, b, counters, "feature_reads",
                                            last_token)
            for pos in positions:
                found = neighbors.found[pos]
                if len(found):
                    loc = np.searchsorted(space, found)
                    ok = (loc < len(space)) & (space[np.minimum(loc, len(space) - 1)] == found)
                    if not ok.all():
                        bad = found[~ok][0]
                        raise ContractViolation(
                            f"neighbor index {bad} outside search space of block {b}"
                        )
                vecs, pad, _ = _emit_slots(found, neighbors.num, cloud.features)
                vectors[pos] = vecs
                padded[pos] = pad
    return GatherResult(vectors=vectors, padded=padded, num=neighbors.num)
