"""Partition builders and block views.

Four strategies over one API:

* ``fractal_partition``: recursive binary split at the min-max midpoint of a
  cycled coordinate axis, terminating when blocks hold <= th points.  Levels
  are processed synchronously (one traversal round per tree level that still
  contains a splittable block), matching a pipelined engine that partitions
  along one axis while computing the next axis' midpoints in the same pass.
* ``uniform_partition``: even spatial grid, empty cells dropped, cells laid
  out in Morton (interleaved-bit) order.
* ``kdtree_partition``: recursive median split with sequential, indivisible
  sorts; each split is one sort invocation over the whole subset.
* ``octree_partition``: dynamic 8-way subdivision of cells exceeding th.

All strategies emit leaf blocks whose layout ranges are contiguous, disjoint
and in depth-first order, defining the storage permutation.  Every block also
carries a parent view (tree parent node, or the enclosing 2x-coarser cell) so
block-wise point operations run uniformly across methods.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .cloud import LayoutPermutation, PointCloud
from .counters import CostCounters
from .errors import ConfigError, DomainError

METHODS = ("fractal", "uniform", "kdtree", "octree")


# ---------------------------------------------------------------------------
# Tree and block structures
# ---------------------------------------------------------------------------


@dataclass
class TreeNode:
    """One node of a binary partition tree.

    Leaves have left is None.  start/end is the covered range of layout
    slots: for a leaf its own block, for an internal node the union of its
    subtree's leaf ranges (contiguous by depth-first construction).
    """

    depth: int
    parent: int | None
    start: int = 0
    end: int = 0
    split_dim: int | None = None
    mid: float | None = None
    left: int | None = None
    right: int | None = None
    degenerate_stop: bool = False

    @property
    def is_leaf(self) -> bool:
        return self.left is None

    @property
    def size(self) -> int:
        return self.end - self.start


@dataclass
class FractalTree:
    """Binary partition tree plus the layout permutation its leaves define."""

    nodes: list[TreeNode]
    root: int
    th: int
    start_dim: int
    layout: LayoutPermutation
    leaf_ids: list[int]  # node ids of leaves in depth-first order
    method: str = "fractal"

    @property
    def num_leaves(self) -> int:
        return len(self.leaf_ids)


@dataclass
class BlockView:
    """One leaf block: contiguous layout range plus parent/depth metadata."""

    id: int
    depth: int
    start: int
    end: int
    parent: object = None  # tree node id, or (level, cell) key, or None
    cell: tuple[int, int, int] | None = None
    degenerate_stop: bool = False

    @property
    def size(self) -> int:
        return self.end - self.start


@dataclass
class BlockSet:
    """Leaf blocks of a partition, their layout, and search-space structure.

    search_spans[b] = (lo, hi) such that blocks[lo:hi] are exactly the blocks
    forming block b's neighbor-search space (the block itself at depth <= 1,
    otherwise all blocks under its immediate parent).  parent_tokens[b] is a
    hashable cache key identifying that parent load (None at depth <= 1).
    Sibling blocks are adjacent in block order for every method, so a span is
    always contiguous.
    """

    blocks: list[BlockView]
    layout: LayoutPermutation
    method: str
    n: int
    search_spans: list[tuple[int, int]]
    parent_tokens: list[object]
    tree: FractalTree | None = None
    cells: tuple[int, int, int] | None = None
    _inverse: np.ndarray | None = field(default=None, repr=False)
    _starts: np.ndarray | None = field(default=None, repr=False)

    @property
    def num_blocks(self) -> int:
        return len(self.blocks)

    def sizes(self) -> np.ndarray:
        return np.array([b.size for b in self.blocks], dtype=np.int64)

    def block_points(self, block_id: int) -> np.ndarray:
        """Original indices of a block's points, in layout order."""
        b = self.blocks[block_id]
        return self.layout.perm[b.start : b.end]

    def block_of(self, original_index: int) -> int:
        """Block id containing an original point index."""
        if self._inverse is None:
            self._inverse = self.layout.inverse()
            self._starts = np.array([b.start for b in self.blocks], dtype=np.int64)
        slot = self._inverse[original_index]
        return int(np.searchsorted(self._starts, slot, side="right") - 1)

    def span_indices(self, block_id: int) -> np.ndarray:
        """Original indices covered by a block's search span (layout order)."""
        lo, hi = self.search_spans[block_id]
        return self.layout.perm[self.blocks[lo].start : self.blocks[hi - 1].end]


@dataclass
class PartitionStats:
    num_blocks: int
    max_block: int
    min_nonempty_block: int
    size_cov: float
    levels: int
    counters: CostCounters


# ---------------------------------------------------------------------------
# Shared helpers
# ---------------------------------------------------------------------------


def morton3(ix: np.ndarray, iy: np.ndarray, iz: np.ndarray, bits: int = 21) -> np.ndarray:
    """Interleave the bits of three cell coordinates (x lowest)."""
    ix = np.asarray(ix, dtype=np.int64)
    iy = np.asarray(iy, dtype=np.int64)
    iz = np.asarray(iz, dtype=np.int64)
    code = np.zeros_like(ix)
    for b in range(bits):
        code |= ((ix >> b) & 1) << (3 * b)
        code |= ((iy >> b) & 1) << (3 * b + 1)
        code |= ((iz >> b) & 1) << (3 * b + 2)
    return code


def _emit_tree(
    nodes: list[TreeNode],
    root: int,
    leaf_subsets: dict[int, np.ndarray],
    th: int,
    start_dim: int,
    method: str,
) -> tuple[FractalTree, BlockSet]:
    """Assign depth-first leaf ranges, build the permutation and block views."""
    leaf_ids: list[int] = []
    parts: list[np.ndarray] = []
    cursor = 0
    stack = [root]
    while stack:
        nid = stack.pop()
        node = nodes[nid]
        if node.is_leaf:
            subset = leaf_subsets[nid]
            node.start = cursor
            node.end = cursor + len(subset)
            cursor = node.end
            leaf_ids.append(nid)
            parts.append(subset)
        else:
            stack.append(node.right)
            stack.append(node.left)
    # Children are created after their parents, so a reverse sweep fills
    # internal ranges bottom-up.
    for nid in range(len(nodes) - 1, -1, -1):
        node = nodes[nid]
        if not node.is_leaf:
            node.start = nodes[node.left].start
            node.end = nodes[node.right].end
    perm = np.concatenate(parts) if parts else np.empty(0, dtype=np.int64)
    layout = LayoutPermutation(perm=perm)
    tree = FractalTree(
        nodes=nodes, root=root, th=th, start_dim=start_dim, layout=layout,
        leaf_ids=leaf_ids, method=method,
    )
    blocks = [
        BlockView(
            id=i,
            depth=nodes[nid].depth,
            start=nodes[nid].start,
            end=nodes[nid].end,
            parent=nodes[nid].parent,
            degenerate_stop=nodes[nid].degenerate_stop,
        )
        for i, nid in enumerate(leaf_ids)
    ]
    spans, tokens = _tree_spans(tree, blocks)
    blockset = BlockSet(
        blocks=blocks, layout=layout, method=method, n=layout.n,
        search_spans=spans, parent_tokens=tokens, tree=tree,
    )
    return tree, blockset


def _tree_spans(tree: FractalTree, blocks: list[BlockView]) -> tuple[list, list]:
    starts = np.array([b.start for b in blocks], dtype=np.int64)
    ends = np.array([b.end for b in blocks], dtype=np.int64)
    spans: list[tuple[int, int]] = []
    tokens: list[object] = []
    for i, nid in enumerate(tree.leaf_ids):
        node = tree.nodes[nid]
        if node.depth <= 1 or node.parent is None:
            spans.append((i, i + 1))
            tokens.append(None)
        else:
            parent = tree.nodes[node.parent]
            lo = int(np.searchsorted(starts, parent.start, side="left"))
            hi = int(np.searchsorted(ends, parent.end, side="right"))
            spans.append((lo, hi))
            tokens.append(node.parent)
    return spans, tokens


# ---------------------------------------------------------------------------
# Fractal partitioning
# ---------------------------------------------------------------------------


def fractal_partition(
    cloud: PointCloud,
    th: int,
    start_dim: int = 0,
    counters: CostCounters | None = None,
) -> tuple[FractalTree, BlockSet]:
    """Min-max midpoint partitioning with dimension cycling.

    Split dimension at depth k is (start_dim + k) mod 3; the midpoint is
    (max + min) / 2 of that coordinate over the block; points with
    coord < mid go left, coord >= mid go right.  If the cycled dimension is
    constant over the block the next dimension is tried (up to 3); blocks
    that are constant in all three dimensions stop with degenerate_stop set.
    """
    if th < 1:
        raise DomainError(f"th must be >= 1, got {th}")
    if start_dim not in (0, 1, 2):
        raise DomainError(f"start_dim must be 0, 1 or 2, got {start_dim}")
    counters = counters if counters is not None else CostCounters()
    coords = cloud.coords
    nodes = [TreeNode(depth=0, parent=None)]
    subsets: dict[int, np.ndarray] = {0: np.arange(cloud.n, dtype=np.int64)}
    frontier = [0]
    while frontier:
        splitters = [
            nid for nid in frontier
            if len(subsets[nid]) > th and not nodes[nid].degenerate_stop
        ]
        if not splitters:
            break
        counters.traversal_rounds += 1
        next_frontier: list[int] = []
        for nid in splitters:
            idx = subsets[nid]
            node = nodes[nid]
            split_done = False
            for attempt in range(3):
                dim = (start_dim + node.depth + attempt) % 3
                vals = coords[idx, dim]
                counters.point_reads += len(idx)
                lo = vals.min()
                hi = vals.max()
                if hi > lo:
                    mid = (hi + lo) / 2.0
                    mask = vals < mid
                    node.split_dim = int(dim)
                    node.mid = float(mid)
                    left_id = len(nodes)
                    nodes.append(TreeNode(depth=node.depth + 1, parent=nid))
                    right_id = len(nodes)
                    nodes.append(TreeNode(depth=node.depth + 1, parent=nid))
                    node.left = left_id
                    node.right = right_id
                    subsets[left_id] = idx[mask]
                    subsets[right_id] = idx[~mask]
                    del subsets[nid]
                    next_frontier.extend((left_id, right_id))
                    split_done = True
                    break
            if not split_done:
                node.degenerate_stop = True
        frontier = next_frontier
    return _emit_tree(nodes, 0, subsets, th, start_dim, "fractal")


# ---------------------------------------------------------------------------
# KD-tree partitioning
# ---------------------------------------------------------------------------


def kdtree_partition(
    cloud: PointCloud,
    bs: int,
    start_dim: int = 0,
    counters: CostCounters | None = None,
) -> tuple[FractalTree, BlockSet]:
    """Recursive median split along cycled dimensions.

    Each split sorts the whole subset (one sort invocation charging the
    subset size); the median is the element at position ceil(k/2)-1 of the
    sorted order, ties broken by original index, and the lower half goes
    left.  Sorts are sequential: there is no level batching and
    traversal_rounds is never incremented.
    """
    if bs < 1:
        raise DomainError(f"bs must be >= 1, got {bs}")
    counters = counters if counters is not None else CostCounters()
    coords = cloud.coords
    nodes = [TreeNode(depth=0, parent=None)]
    subsets: dict[int, np.ndarray] = {0: np.arange(cloud.n, dtype=np.int64)}
    stack = [0]
    while stack:
        nid = stack.pop()
        idx = subsets[nid]
        k = len(idx)
        if k <= bs:
            continue
        node = nodes[nid]
        dim = (start_dim + node.depth) % 3
        order = np.lexsort((idx, coords[idx, dim]))
        counters.sort_invocations += 1
        counters.sort_elements += k
        counters.point_reads += k
        half = (k + 1) // 2  # ceil(k/2) elements in the lower half
        node.split_dim = int(dim)
        node.mid = float(coords[idx[order[half - 1]], dim])
        left_id = len(nodes)
        nodes.append(TreeNode(depth=node.depth + 1, parent=nid))
        right_id = len(nodes)
        nodes.append(TreeNode(depth=node.depth + 1, parent=nid))
        node.left = left_id
        node.right = right_id
        subsets[left_id] = idx[order[:half]]
        subsets[right_id] = idx[order[half:]]
        del subsets[nid]
        stack.append(right_id)
        stack.append(left_id)
    return _emit_tree(nodes, 0, subsets, bs, start_dim, "kdtree")


# ---------------------------------------------------------------------------
# Uniform grid partitioning
# ---------------------------------------------------------------------------


def uniform_partition(
    cloud: PointCloud,
    cells_per_axis: tuple[int, int, int],
    counters: CostCounters | None = None,
) -> BlockSet:
    """Even spatial grid; empty cells dropped; Morton cell order.

    A single binning pass charges n point reads.  Every non-empty cell
    becomes a block at depth ceil(log2(max cells)); its parent view is the
    enclosing 2x-coarser cell, and sibling cells are adjacent in Morton
    order, so search spans stay contiguous.
    """
    cells = tuple(int(c) for c in cells_per_axis)
    if len(cells) != 3 or any(c < 1 for c in cells):
        raise ConfigError(f"cells_per_axis must be three ints >= 1, got {cells_per_axis}")
    counters = counters if counters is not None else CostCounters()
    coords = cloud.coords
    n = cloud.n
    counters.point_reads += n
    lo = coords.min(axis=0)
    hi = coords.max(axis=0)
    extent = hi - lo
    extent[extent == 0] = 1.0
    cell_idx = np.empty((n, 3), dtype=np.int64)
    for a in range(3):
        cell_idx[:, a] = np.clip(
            np.floor((coords[:, a] - lo[a]) / extent[a] * cells[a]).astype(np.int64),
            0,
            cells[a] - 1,
        )
    codes = morton3(cell_idx[:, 0], cell_idx[:, 1], cell_idx[:, 2])
    perm = np.argsort(codes, kind="stable").astype(np.int64)
    sorted_codes = codes[perm]
    boundaries = np.flatnonzero(np.diff(sorted_codes)) + 1
    starts = np.concatenate([[0], boundaries])
    ends = np.concatenate([boundaries, [n]])
    depth = max((int(c - 1).bit_length() for c in cells), default=0)
    blocks = []
    for i, (s, e) in enumerate(zip(starts, ends)):
        cell = tuple(int(v) for v in cell_idx[perm[s]])
        parent = (cell[0] >> 1, cell[1] >> 1, cell[2] >> 1)
        blocks.append(
            BlockView(
                id=i, depth=depth, start=int(s), end=int(e),
                parent=parent if depth >= 2 else None, cell=cell,
            )
        )
    spans, tokens = _grouped_spans(blocks, depth)
    return BlockSet(
        blocks=blocks, layout=LayoutPermutation(perm=perm), method="uniform",
        n=n, search_spans=spans, parent_tokens=tokens, cells=cells,
    )


def _grouped_spans(blocks: list[BlockView], depth: int) -> tuple[list, list]:
    """Spans for same-depth grids: group consecutive blocks sharing a parent cell."""
    spans: list[tuple[int, int]] = []
    tokens: list[object] = []
    if depth <= 1:
        return [(i, i + 1) for i in range(len(blocks))], [None] * len(blocks)
    group_of = {}
    lo = 0
    while lo < len(blocks):
        hi = lo + 1
        while hi < len(blocks) and blocks[hi].parent == blocks[lo].parent:
            hi += 1
        for i in range(lo, hi):
            group_of[i] = (lo, hi)
        lo = hi
    for i, b in enumerate(blocks):
        spans.append(group_of[i])
        tokens.append(b.parent)
    return spans, tokens


# ---------------------------------------------------------------------------
# Octree partitioning
# ---------------------------------------------------------------------------


def octree_partition(
    cloud: PointCloud,
    th: int,
    max_depth: int = 16,
    counters: CostCounters | None = None,
) -> BlockSet:
    """Dynamic 8-way subdivision of any cell holding more than th points.

    Cells split at their spatial center into 8 equal sub-cells (child index
    bit 0/1/2 for x/y/z, low half first), visited in that order depth-first.
    Recursion stops at max_depth; a still-oversized cell there becomes a
    degenerate_stop leaf.
    """
    if th < 1:
        raise DomainError(f"th must be >= 1, got {th}")
    if max_depth < 1:
        raise DomainError(f"max_depth must be >= 1, got {max_depth}")
    counters = counters if counters is not None else CostCounters()
    coords = cloud.coords
    n = cloud.n
    lo = coords.min(axis=0)
    hi = coords.max(axis=0)
    leaves: list[tuple[int, tuple[int, int, int], np.ndarray, bool]] = []
    parent_spans: dict[tuple[int, tuple[int, int, int]], tuple[int, int]] = {}
    split_depths: set[int] = set()

    def visit(idx: np.ndarray, depth: int, cell: tuple[int, int, int],
              blo: np.ndarray, bhi: np.ndarray) -> None:
        if len(idx) <= th or depth >= max_depth:
            leaves.append((depth, cell, idx, len(idx) > th))
            return
        counters.point_reads += len(idx)
        split_depths.add(depth)
        first_leaf = len(leaves)
        center = (blo + bhi) / 2.0
        sel = (
            (coords[idx, 0] >= center[0]).astype(np.int64)
            | ((coords[idx, 1] >= center[1]).astype(np.int64) << 1)
            | ((coords[idx, 2] >= center[2]).astype(np.int64) << 2)
        )
        for child in range(8):
            sub = idx[sel == child]
            if len(sub) == 0:
                continue
            bits = (child & 1, (child >> 1) & 1, (child >> 2) & 1)
            clo = blo.copy()
            chi = bhi.copy()
            for a in range(3):
                if bits[a]:
                    clo[a] = center[a]
                else:
                    chi[a] = center[a]
            ccell = (cell[0] * 2 + bits[0], cell[1] * 2 + bits[1], cell[2] * 2 + bits[2])
            visit(sub, depth + 1, ccell, clo, chi)
        parent_spans[(depth, cell)] = (first_leaf, len(leaves))

    visit(np.arange(n, dtype=np.int64), 0, (0, 0, 0), lo.copy(), hi.copy())
    counters.traversal_rounds += len(split_depths)

    parts = [leaf[2] for leaf in leaves]
    perm = np.concatenate(parts) if parts else np.empty(0, dtype=np.int64)
    blocks = []
    cursor = 0
    for i, (depth, cell, idx, oversized) in enumerate(leaves):
        parent_key = None
        if depth >= 1:
            parent_key = (depth - 1, (cell[0] >> 1, cell[1] >> 1, cell[2] >> 1))
        blocks.append(
            BlockView(
                id=i, depth=depth, start=cursor, end=cursor + len(idx),
                parent=parent_key, cell=cell, degenerate_stop=oversized,
            )
        )
        cursor += len(idx)
    spans: list[tuple[int, int]] = []
    tokens: list[object] = []
    for i, b in enumerate(blocks):
        if b.depth <= 1 or b.parent not in parent_spans:
            spans.append((i, i + 1))
            tokens.append(None)
        else:
            spans.append(parent_spans[b.parent])
            tokens.append(b.parent)
    return BlockSet(
        blocks=blocks, layout=LayoutPermutation(perm=perm), method="octree",
        n=n, search_spans=spans, parent_tokens=tokens,
    )


# ---------------------------------------------------------------------------
# Statistics
# ---------------------------------------------------------------------------


def partition_stats(
    blockset: BlockSet,
    tree: FractalTree | None = None,
    counters: CostCounters | None = None,
) -> PartitionStats:
    sizes = blockset.sizes()
    mean = float(sizes.mean())
    cov = float(sizes.std() / mean) if mean > 0 else 0.0
    if counters is not None and blockset.method in ("fractal", "octree"):
        levels = counters.traversal_rounds
    else:
        levels = max((b.depth for b in blockset.blocks), default=0)
    return PartitionStats(
        num_blocks=blockset.num_blocks,
        max_block=int(sizes.max()),
        min_nonempty_block=int(sizes.min()),
        size_cov=cov,
        levels=levels,
        counters=counters.snapshot() if counters is not None else CostCounters(),
    )
