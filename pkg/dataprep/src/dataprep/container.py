"""Standalone writer/reader for the dataset container format.

Deliberately independent of the main package: this module re-implements the
on-disk layout from its documented byte-level description so that converted
datasets and oracle computations cross-check the other side rather than
reusing its code.

Layout (all integers little-endian):

    meta.json     {"num_nodes", "num_features", "num_classes", "name", ...}
    edges.bin     b"GVTE", u32 M, M * (u32 u32) - one orientation per edge
    features.bin  b"GVTF", u32 N, u32 F, N*F float32 row-major
    labels.bin    b"GVTL", u32 N, N * int32 (-1 = unlabeled)
    splits.json   {"train": [...], "val": [...], "test": [...]}
"""

from __future__ import annotations

import json
import struct
from pathlib import Path

import numpy as np


def write_container(
    out_dir: str | Path,
    edges: np.ndarray,
    features: np.ndarray,
    labels: np.ndarray,
    num_classes: int,
    splits: dict[str, list[int]],
    name: str,
    extra_meta: dict | None = None,
) -> Path:
    """Write one dataset directory.  edges: (M, 2), one orientation per edge."""
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    n, f = features.shape

    meta = {"num_nodes": n, "num_features": f, "num_classes": int(num_classes), "name": name}
    if extra_meta:
        meta.update(extra_meta)
    (out / "meta.json").write_text(json.dumps(meta, indent=1))

    edges = np.asarray(edges, dtype=np.uint32).reshape(-1, 2)
    with open(out / "edges.bin", "wb") as fh:
        fh.write(b"GVTE")
        fh.write(struct.pack("<I", edges.shape[0]))
        fh.write(edges.astype("<u4").tobytes())

    with open(out / "features.bin", "wb") as fh:
        fh.write(b"GVTF")
        fh.write(struct.pack("<II", n, f))
        fh.write(np.ascontiguousarray(features, dtype="<f4").tobytes())

    with open(out / "labels.bin", "wb") as fh:
        fh.write(b"GVTL")
        fh.write(struct.pack("<I", n))
        fh.write(np.asarray(labels).astype("<i4").tobytes())

    (out / "splits.json").write_text(json.dumps({k: [int(i) for i in v] for k, v in splits.items()}))
    return out


def read_container(path: str | Path) -> dict:
    """Read a container directory back into plain arrays."""
    path = Path(path)
    meta = json.loads((path / "meta.json").read_text())
    with open(path / "edges.bin", "rb") as fh:
        assert fh.read(4) == b"GVTE", "bad edges magic"
        (m,) = struct.unpack("<I", fh.read(4))
        edges = np.frombuffer(fh.read(8 * m), dtype="<u4").reshape(m, 2).astype(np.int64)
    with open(path / "features.bin", "rb") as fh:
        assert fh.read(4) == b"GVTF", "bad features magic"
        n, f = struct.unpack("<II", fh.read(8))
        features = np.frombuffer(fh.read(4 * n * f), dtype="<f4").reshape(n, f)
    with open(path / "labels.bin", "rb") as fh:
        assert fh.read(4) == b"GVTL", "bad labels magic"
        (ln,) = struct.unpack("<I", fh.read(4))
        labels = np.frombuffer(fh.read(4 * ln), dtype="<i4").astype(np.int64)
    splits = json.loads((path / "splits.json").read_text())
    return {
        "meta": meta,
        "edges": edges,
        "features": features.copy(),
        "labels": labels,
        "splits": {k: np.asarray(v, dtype=np.int64) for k, v in splits.items()},
    }


def edge_homophily(edges: np.ndarray, labels: np.ndarray) -> float:
    """Fraction of edges joining same-class endpoints (unlabeled excluded)."""
    u, v = edges[:, 0], edges[:, 1]
    known = (labels[u] >= 0) & (labels[v] >= 0)
    if not known.any():
        return float("nan")
    return float((labels[u[known]] == labels[v[known]]).mean())
