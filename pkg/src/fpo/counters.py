"""Instrumentation ledger for compute and data-movement accounting.

Counters model abstract work units, not wall-clock time: one distance_op per
Euclidean distance evaluation, one point_read per off-buffer coordinate fetch,
one feature_read per off-buffer feature-vector fetch.  Block-wise operations
charge whole blocks once per load (plus parent loads shared across sibling
blocks), whereas global operations re-fetch candidates every scan.  Traffic in
bytes is derived from the read counters assuming half-precision storage.
"""

from __future__ import annotations

from dataclasses import dataclass, fields, replace

# Modeled storage width of one scalar.  Storage is half precision; arithmetic
# in this package is always performed in full precision.
SCALAR_BYTES = 2


@dataclass
class CostCounters:
    """Monotone ledger of work performed by one operation run."""

    distance_ops: int = 0
    point_reads: int = 0
    feature_reads: int = 0
    traversal_rounds: int = 0
    sort_invocations: int = 0
    sort_elements: int = 0
    parent_loads: int = 0
    parent_loads_saved: int = 0
    skipped_candidates: int = 0

    def bytes_read(self, feature_width: int = 0, scalar_bytes: int = SCALAR_BYTES) -> int:
        """Derived traffic: coordinate reads are 3 scalars, feature reads are c scalars."""
        return (
            self.point_reads * 3 * scalar_bytes
            + self.feature_reads * feature_width * scalar_bytes
        )

    def snapshot(self) -> "CostCounters":
        return replace(self)

    def merge(self, other: "CostCounters") -> "CostCounters":
        """Associative accumulation, e.g. when counters are kept per block."""
        for f in fields(self):
            setattr(self, f.name, getattr(self, f.name) + getattr(other, f.name))
        return self

    def as_dict(self, feature_width: int = 0) -> dict[str, int]:
        d = {f.name: int(getattr(self, f.name)) for f in fields(self)}
        d["bytes_read"] = self.bytes_read(feature_width)
        return d
