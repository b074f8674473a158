"""Point-cloud file IO.

Two interchange formats:

* ``xyz-text``: one point per line, whitespace-separated floats, at least
  three columns; columns 4..3+c are features.  ``#`` comments and blank
  lines are ignored.
* ``bin-f32``: magic ``FPC1`` (4 bytes), u32 little-endian n, u32 c, then
  n*3 float32 coords followed by n*c float32 features.

bin-f32 round-trips bit-exactly for float32-representable values (all
generated clouds are float32-quantized).
"""

from __future__ import annotations

import struct
from pathlib import Path

import numpy as np

from .cloud import PointCloud
from .errors import ParseError

FORMATS = ("xyz-text", "bin-f32")
_MAGIC = b"FPC1"


def infer_format(path: str | Path) -> str:
    """.fpc and .bin mean bin-f32; anything else is treated as text."""
    suffix = Path(path).suffix.lower()
    return "bin-f32" if suffix in (".fpc", ".bin") else "xyz-text"


def load_cloud(path: str | Path, format: str | None = None) -> PointCloud:
    fmt = format or infer_format(path)
    if fmt == "xyz-text":
        return _load_xyz(Path(path))
    if fmt == "bin-f32":
        return _load_bin(Path(path))
    raise ParseError(f"unknown format {fmt!r}; expected one of {FORMATS}")


def save_cloud(cloud: PointCloud, path: str | Path, format: str | None = None) -> None:
    fmt = format or infer_format(path)
    if fmt == "xyz-text":
        _save_xyz(cloud, Path(path))
    elif fmt == "bin-f32":
        _save_bin(cloud, Path(path))
    else:
        raise ParseError(f"unknown format {fmt!r}; expected one of {FORMATS}")


def _load_xyz(path: Path) -> PointCloud:
    rows: list[list[float]] = []
    width = None
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            body = line.split("#", 1)[0].strip()
            if not body:
                continue
            toks = body.split()
            if len(toks) < 3:
                raise ParseError(f"{path}: line {lineno}: expected >= 3 columns, got {len(toks)}")
            if width is None:
                width = len(toks)
            elif len(toks) != width:
                raise ParseError(
                    f"{path}: line {lineno}: inconsistent column count "
                    f"({len(toks)} vs {width})"
                )
            try:
                rows.append([float(t) for t in toks])
            except ValueError as exc:
                raise ParseError(f"{path}: line {lineno}: {exc}") from exc
    if not rows:
        raise ParseError(f"{path}: no data lines")
    data = np.asarray(rows, dtype=np.float64)
    coords = data[:, :3]
    features = data[:, 3:] if data.shape[1] > 3 else None
    return PointCloud(coords=coords, features=features)


def _save_xyz(cloud: PointCloud, path: Path) -> None:
    data = cloud.coords if cloud.features is None else np.hstack([cloud.coords, cloud.features])
    with open(path, "w", encoding="utf-8") as fh:
        for row in data:
            fh.write(" ".join(repr(v) for v in row.tolist()) + "\n")


def _load_bin(path: Path) -> PointCloud:
    raw = path.read_bytes()
    if len(raw) < 12:
        raise ParseError(f"{path}: truncated header at byte {len(raw)} (need 12)")
    if raw[:4] != _MAGIC:
        raise ParseError(f"{path}: bad magic {raw[:4]!r} at byte 0")
    n, c = struct.unpack_from("<II", raw, 4)
    expected = 12 + 4 * n * (3 + c)
    if len(raw) < expected:
        raise ParseError(f"{path}: short record, {len(raw)} bytes < expected {expected}")
    flat = np.frombuffer(raw, dtype="<f4", count=n * (3 + c), offset=12)
    coords = flat[: n * 3].reshape(n, 3).astype(np.float64)
    features = None
    if c:
        features = flat[n * 3 :].reshape(n, c).astype(np.float64)
    return PointCloud(coords=coords, features=features)


def _save_bin(cloud: PointCloud, path: Path) -> None:
    parts = [_MAGIC, struct.pack("<II", cloud.n, cloud.c)]
    parts.append(cloud.coords.astype("<f4").tobytes())
    if cloud.features is not None:
        parts.append(cloud.features.astype("<f4").tobytes())
    path.write_bytes(b"".join(parts))
