"""Deterministic synthetic point-cloud generators.

Stress shapes cover the distributions that trip naive partitioners: uniform
filler, density clusters, coplanar points (one axis non-splittable), two
distant dense regions, and sparse outliers inflating the bounding box.  The
same SynthSpec always yields the bit-identical cloud; coordinates and
features are quantized through float32 so that bin-f32 round trips are exact.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping

import numpy as np

from .cloud import PointCloud
from .errors import ConfigError

KINDS = (
    "uniform-cube",
    "gaussian-clusters",
    "planar",
    "two-dense-regions",
    "with-outliers",
)

_ALLOWED_PARAMS = {
    "uniform-cube": {"side"},
    "gaussian-clusters": {"clusters", "std"},
    "planar": {"axis", "value"},
    "two-dense-regions": {"std", "separation"},
    "with-outliers": {"outlier_fraction", "clusters", "std"},
}


@dataclass(frozen=True)
class SynthSpec:
    kind: str
    n: int
    seed: int = 0
    params: Mapping[str, float] = field(default_factory=dict)
    feature_width: int = 0

    def __post_init__(self) -> None:
        if self.kind not in KINDS:
            raise ConfigError(f"unknown generator kind {self.kind!r}; expected one of {KINDS}")
        if self.n < 1:
            raise ConfigError(f"n must be >= 1, got {self.n}")
        if self.feature_width < 0:
            raise ConfigError(f"feature_width must be >= 0, got {self.feature_width}")
        unknown = set(self.params) - _ALLOWED_PARAMS[self.kind]
        if unknown:
            raise ConfigError(f"unknown params for kind {self.kind!r}: {sorted(unknown)}")


def generate(spec: SynthSpec) -> PointCloud:
    cloud, _ = generate_detailed(spec)
    return cloud


def generate_detailed(spec: SynthSpec) -> tuple[PointCloud, dict]:
    """Generate a cloud plus kind-specific metadata (e.g. flagged outliers)."""
    rng = np.random.default_rng(np.uint64(spec.seed))
    info: dict = {"kind": spec.kind, "n": spec.n, "seed": spec.seed}
    p = spec.params

    if spec.kind == "uniform-cube":
        side = float(p.get("side", 1.0))
        if side <= 0:
            raise ConfigError(f"side must be > 0, got {side}")
        coords = rng.random((spec.n, 3)) * side

    elif spec.kind == "gaussian-clusters":
        coords = _gaussian_clusters(rng, spec.n, p)

    elif spec.kind == "planar":
        axis = int(p.get("axis", 2))
        if axis not in (0, 1, 2):
            raise ConfigError(f"axis must be 0, 1 or 2, got {axis}")
        value = float(p.get("value", 0.5))
        coords = rng.random((spec.n, 3))
        coords[:, axis] = value
        info["constant_axis"] = axis

    elif spec.kind == "two-dense-regions":
        std = float(p.get("std", 0.02))
        if std <= 0:
            raise ConfigError(f"std must be > 0, got {std}")
        separation = float(p.get("separation", 12.0 * std))
        if separation < 10.0 * std:
            raise ConfigError(
                f"separation {separation} must be >= 10x std ({10.0 * std})"
            )
        centers = np.array(
            [[0.25, 0.25, 0.25], [0.25 + separation, 0.25, 0.25]], dtype=np.float64
        )
        assign = rng.integers(0, 2, spec.n)
        coords = centers[assign] + rng.normal(0.0, std, (spec.n, 3))
        info["region_assignment"] = assign
        info["separation"] = separation

    elif spec.kind == "with-outliers":
        fraction = float(p.get("outlier_fraction", 0.025))
        if not 0.0 <= fraction <= 1.0:
            raise ConfigError(f"outlier_fraction must be in [0, 1], got {fraction}")
        coords = _gaussian_clusters(rng, spec.n, p)
        n_out = int(round(fraction * spec.n))
        outliers = np.sort(rng.choice(spec.n, size=n_out, replace=False))
        if n_out:
            lo = coords.min(axis=0)
            hi = coords.max(axis=0)
            center = (lo + hi) / 2.0
            half = np.maximum((hi - lo) / 2.0, 1e-6) * 10.0
            coords[outliers] = center + (rng.random((n_out, 3)) * 2.0 - 1.0) * half
        info["outlier_indices"] = outliers
        info["outlier_count"] = n_out

    else:  # pragma: no cover - guarded by SynthSpec validation
        raise ConfigError(f"unknown kind {spec.kind!r}")

    coords = coords.astype(np.float32).astype(np.float64)
    features = None
    if spec.feature_width:
        features = rng.random((spec.n, spec.feature_width))
        features = features.astype(np.float32).astype(np.float64)
    return PointCloud(coords=coords, features=features), info


def _gaussian_clusters(rng: np.random.Generator, n: int, p: Mapping[str, float]) -> np.ndarray:
    k = int(p.get("clusters", 4))
    if k < 1:
        raise ConfigError(f"clusters must be >= 1, got {k}")
    std = float(p.get("std", 0.05))
    if std <= 0:
        raise ConfigError(f"std must be > 0, got {std}")
    centers = rng.random((k, 3))
    assign = rng.integers(0, k, n)
    return centers[assign] + rng.normal(0.0, std, (n, 3))
