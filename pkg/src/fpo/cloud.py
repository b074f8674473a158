"""Core data types: point clouds and layout permutations.

Original point indices are the stable identity throughout the package; every
operation result is expressed in original indices.  A LayoutPermutation is a
separate view describing the physical storage order produced by a partitioner,
which keeps oracle equivalence checks independent of the layout.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ValidationError


@dataclass
class PointCloud:
    """n points with 3D coordinates and optional per-point feature vectors.

    coords: (n, 3) float64 array; features: (n, c) float64 array or None.
    Coordinates are kept in full precision; the half-precision storage model
    only affects traffic accounting (see counters.SCALAR_BYTES).
    """

    coords: np.ndarray
    features: np.ndarray | None = None

    def __post_init__(self) -> None:
        self.coords = np.asarray(self.coords, dtype=np.float64)
        if self.coords.ndim != 2 or self.coords.shape[1] != 3:
            raise ValidationError(f"coords must be (n, 3), got {self.coords.shape}")
        if self.coords.shape[0] < 1:
            raise ValidationError("point cloud must contain at least one point")
        if not np.isfinite(self.coords).all():
            raise ValidationError("coords contain non-finite values")
        if self.features is not None:
            self.features = np.asarray(self.features, dtype=np.float64)
            if self.features.ndim != 2 or self.features.shape[0] != self.coords.shape[0]:
                raise ValidationError(
                    f"features must be (n, c) with n={self.coords.shape[0]}, "
                    f"got {self.features.shape}"
                )
            if self.features.shape[1] == 0:
                self.features = None
            elif not np.isfinite(self.features).all():
                raise ValidationError("features contain non-finite values")

    @property
    def n(self) -> int:
        return self.coords.shape[0]

    @property
    def c(self) -> int:
        return 0 if self.features is None else self.features.shape[1]


@dataclass
class LayoutPermutation:
    """Bijection between layout slots and original point indices.

    perm[i] is the original index of the point stored at layout slot i, so a
    leaf block covering layout range [start, end) holds points
    perm[start:end].
    """

    perm: np.ndarray

    def __post_init__(self) -> None:
        self.perm = np.asarray(self.perm, dtype=np.int64)
        if self.perm.ndim != 1:
            raise ValidationError("permutation must be one-dimensional")
        n = self.perm.shape[0]
        if not np.array_equal(np.sort(self.perm), np.arange(n)):
            raise ValidationError("permutation is not a bijection on 0..n-1")

    @property
    def n(self) -> int:
        return self.perm.shape[0]

    def inverse(self) -> np.ndarray:
        """inv[original_index] = layout slot."""
        inv = np.empty_like(self.perm)
        inv[self.perm] = np.arange(self.perm.shape[0])
        return inv
