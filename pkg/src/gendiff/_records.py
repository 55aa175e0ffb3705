"""Flat binary record files.

A record is a 16-byte magic header followed by a little-endian stream:
``uint64 n_arrays``, then for each array ``uint64 ndim``, ``uint64`` shape
entries, and the payload as row-major float64.  Model checkpoints and
episode datasets share this container.
"""

from __future__ import annotations

import os

import numpy as np

MAGIC = b"GENDIFF-FLAT-v01"
assert len(MAGIC) == 16


class RecordError(RuntimeError):
    pass


def write_record(path: str | os.PathLike, arrays: list[np.ndarray]) -> None:
    with open(path, "wb") as fh:
        fh.write(MAGIC)
        fh.write(np.uint64(len(arrays)).astype("<u8").tobytes())
        for arr in arrays:
            a = np.ascontiguousarray(arr, dtype="<f8")
            fh.write(np.uint64(a.ndim).astype("<u8").tobytes())
            fh.write(np.asarray(a.shape, dtype="<u8").tobytes())
            fh.write(a.tobytes())


def read_record(path: str | os.PathLike) -> list[np.ndarray]:
    with open(path, "rb") as fh:
        magic = fh.read(16)
        if magic != MAGIC:
            raise RecordError(f"{path}: bad or unsupported record header {magic!r}")
        data = fh.read()
    out: list[np.ndarray] = []
    pos = 0

    def take_u64(count: int) -> np.ndarray:
        nonlocal pos
        vals = np.frombuffer(data, dtype="<u8", count=count, offset=pos)
        pos += 8 * count
        return vals

    n_arrays = int(take_u64(1)[0])
    for _ in range(n_arrays):
        ndim = int(take_u64(1)[0])
        shape = tuple(int(v) for v in take_u64(ndim))
        size = int(np.prod(shape)) if shape else 1
        vals = np.frombuffer(data, dtype="<f8", count=size, offset=pos)
        pos += 8 * size
        out.append(vals.reshape(shape).copy())
    if pos != len(data):
        raise RecordError(f"{path}: {len(data) - pos} trailing bytes")
    return out
