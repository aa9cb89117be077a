"""Dense reference forward pass for cross-implementation comparison.

Reads a container directory and an encoder checkpoint file, rebuilds every
view finder as an explicit dense matrix, stacks the propagated features,
and collapses each view vector with the checkpoint's parameters.  Nothing
here is shared with the sparse implementation; agreement between the two
is the point.

Checkpoint layout: magic ``GVTC``, u32 version, u64 JSON header length,
JSON header (finder set, tensor index), then f32 little-endian tensors at
the recorded byte offsets.
"""

from __future__ import annotations

import json
import math
import struct
from pathlib import Path

import numpy as np
from scipy.special import erf

MAX_DENSE_NODES = 5000


class OracleError(Exception):
    pass


def read_checkpoint(path: str | Path) -> dict:
    with open(path, "rb") as f:
        if f.read(4) != b"GVTC":
            raise OracleError(f"{path}: not a checkpoint file")
        (version,) = struct.unpack("<I", f.read(4))
        (hlen,) = struct.unpack("<Q", f.read(8))
        header = json.loads(f.read(hlen))
        blob = f.read()
    tensors = {}
    for entry in header["phi"]["tensors"]:
        size = int(np.prod(entry["shape"])) if entry["shape"] else 1
        arr = np.frombuffer(blob, dtype="<f4", count=size, offset=entry["offset"])
        tensors[entry["name"]] = arr.astype(np.float64).reshape(entry["shape"])
    return {"header": header, "tensors": tensors, "version": version}


def dense_view_finder(spec: dict, adj: np.ndarray, lambda_max: float = 2.0) -> np.ndarray:
    """Materialize nu(A) as a dense matrix from its JSON description."""
    n = adj.shape[0]
    deg = adj.sum(axis=1)

    def norm(p, q):
        with np.errstate(divide="ignore"):
            dp = np.where(deg > 0, deg**-p, 0.0)
            dq = np.where(deg > 0, deg**-q, 0.0)
        return dp[:, None] * adj * dq[None, :]

    variant = spec["variant"]
    if variant == "identity":
        return np.eye(n)
    if variant == "self_augmented":
        return adj + np.eye(n)
    if variant == "normalized_power":
        return np.linalg.matrix_power(norm(spec["p"], spec["q"]), spec["k"])
    if variant == "chebyshev":
        lap_scaled = (2.0 / lambda_max) * (np.eye(n) - norm(0.5, 0.5)) - np.eye(n)
        t_prev, t_cur = np.eye(n), lap_scaled
        if spec["k"] == 0:
            return t_prev
        for _ in range(2, spec["k"] + 1):
            t_prev, t_cur = t_cur, 2.0 * lap_scaled @ t_cur - t_prev
        return t_cur
    if variant == "truncated_diffusion":
        alpha, rw = spec["alpha"], norm(1.0, 0.0)
        acc, term = alpha * np.eye(n), np.eye(n)
        for _ in range(1, spec["K"] + 1):
            term = (1.0 - alpha) * rw @ term
            acc += alpha * term
        return acc
    raise OracleError(f"unknown view finder variant {variant!r}")


def _gelu(x: np.ndarray) -> np.ndarray:
    return 0.5 * x * (1.0 + erf(x / math.sqrt(2.0)))


def collapse(header: dict, tensors: dict, stacked: np.ndarray) -> np.ndarray:
    """Apply the checkpoint's collapsing map to every view vector."""
    phi = header["phi"]
    if phi["variant"] == "linear":
        return stacked @ tensors["g"] + tensors["b"][0]
    depth = len(tensors) // 2
    h = stacked
    for i in range(depth):
        h = h @ tensors[f"w{i}"] + tensors[f"b{i}"]
        if i < depth - 1:
            if phi["activation"] == "gelu":
                h = _gelu(h)
            elif phi["activation"] != "identity":
                raise OracleError(f"unknown activation {phi['activation']!r}")
    return h[..., 0]


def oracle_forward(
    container_dir: str | Path,
    checkpoint_path: str | Path,
    depth: int = 1,
    max_nodes: int | None = None,
) -> np.ndarray:
    """Dense forward pass over a container with a checkpoint's encoder."""
    from .container import read_container

    data = read_container(container_dir)
    n = data["meta"]["num_nodes"]
    if n > MAX_DENSE_NODES:
        raise OracleError(f"{n} nodes exceeds the dense limit {MAX_DENSE_NODES}")
    ckpt = read_checkpoint(checkpoint_path)
    header = ckpt["header"]

    adj = np.zeros((n, n))
    e = data["edges"]
    adj[e[:, 0], e[:, 1]] = 1.0
    adj[e[:, 1], e[:, 0]] = 1.0
    np.fill_diagonal(adj, 0.0)

    finders = [
        dense_view_finder(s, adj, header.get("lambda_max", 2.0)) for s in header["finder_set"]
    ]
    z = data["features"].astype(np.float64)
    if max_nodes is not None and n > max_nodes:
        raise OracleError(f"{n} nodes exceeds requested limit {max_nodes}")
    for _ in range(depth):
        stacked = np.stack([f @ z for f in finders], axis=-1)
        z = collapse(header, ckpt["tensors"], stacked)
    return z
