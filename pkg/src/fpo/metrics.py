"""Quality proxies comparing block-wise results against global oracles.

Network-accuracy deltas are out of scope; these geometric proxies stand in:
sample dispersion (minimum pairwise distance and coverage radius), neighbor
recall against the brute-force global result, and counter deltas.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .cloud import PointCloud
from .errors import DomainError
from .pointops import NeighborResult, SampleResult


@dataclass
class QualityReport:
    fps_dispersion_ratio: float | None = None
    coverage_radius_ratio: float | None = None
    bq_recall: float | None = None
    knn_recall: float | None = None
    counter_deltas: dict | None = None


def fps_dispersion(sample: SampleResult | np.ndarray, cloud: PointCloud,
                   ) -> tuple[float, float]:
    """Brute-force (min pairwise distance, coverage radius) of a sample.

    Coverage radius is the max over all cloud points of the distance to the
    nearest sampled point.
    """
    idx = sample.indices if isinstance(sample, SampleResult) else np.asarray(sample)
    if len(idx) < 2:
        raise DomainError(f"dispersion needs a sample of >= 2 points, got {len(idx)}")
    pts = cloud.coords[idx]
    min_pair = np.inf
    chunk = max(1, 2_000_000 // max(1, len(idx)))
    for s in range(0, len(idx), chunk):
        e = min(s + chunk, len(idx))
        diff = pts[s:e, None, :] - pts[None, :, :]
        d = np.sqrt((diff * diff).sum(axis=2))
        for row_off, row in enumerate(d):
            row[s + row_off] = np.inf  # exclude self distance
        min_pair = min(min_pair, float(d.min()))
    coverage = 0.0
    for s in range(0, cloud.n, chunk):
        e = min(s + chunk, cloud.n)
        diff = cloud.coords[s:e, None, :] - pts[None, :, :]
        d = np.sqrt((diff * diff).sum(axis=2))
        coverage = max(coverage, float(d.min(axis=1).max()))
    return min_pair, coverage


def neighbor_recall(block: NeighborResult, oracle: NeighborResult) -> float:
    """Mean over centers of |block found ∩ oracle found| / max(1, |oracle found|)."""
    if not np.array_equal(block.centers, oracle.centers):
        raise DomainError("recall requires identical center sets in identical order")
    if block.radius != oracle.radius or block.k != oracle.k or block.num != oracle.num:
        raise DomainError("recall requires matching query parameters (R/num or K)")
    vals = []
    for bf, of in zip(block.found, oracle.found):
        inter = np.intersect1d(bf, of, assume_unique=False)
        vals.append(len(inter) / max(1, len(of)))
    return float(np.mean(vals)) if vals else 1.0


def dispersion_ratios(block_sample: SampleResult, global_sample: SampleResult,
                      cloud: PointCloud) -> tuple[float, float]:
    """(min-pairwise ratio, coverage-radius ratio), block over global."""
    b_pair, b_cov = fps_dispersion(block_sample, cloud)
    g_pair, g_cov = fps_dispersion(global_sample, cloud)
    pair_ratio = b_pair / g_pair if g_pair > 0 else float("inf")
    cov_ratio = b_cov / g_cov if g_cov > 0 else (1.0 if b_cov == 0 else float("inf"))
    return pair_ratio, cov_ratio
