"""Parsers for the public benchmark sources we convert.

Two source families:

* Planetoid citation networks (cora, citeseer, pubmed): the pickled
  ``ind.<name>.{x,y,tx,ty,allx,ally,graph,test.index}`` files from
  https://github.com/kimiyoung/planetoid (data/ directory).  The public
  split is the standard one: the first len(y) nodes train, the following
  500 validate, and test.index tests.

* WebKB pages (texas, cornell, wisconsin): the
  ``out1_graph_edges.txt`` / ``out1_node_feature_label.txt`` pair from
  https://github.com/graphdml-uiuc-jlu/geom-gcn (new_data/<name>/).

Both return (edges (M,2), features (N,F) float32, labels (N,) int64).
"""

from __future__ import annotations

import pickle
from pathlib import Path

import numpy as np
import scipy.sparse as sp


class SourceError(Exception):
    """Raised when a source directory is missing or malformed."""


def _load_pickle(path: Path):
    if not path.exists():
        raise SourceError(f"missing source file: {path}")
    with open(path, "rb") as f:
        return pickle.load(f, encoding="latin1")


def load_planetoid(src_dir: str | Path, name: str):
    """Parse one Planetoid dataset; returns (edges, features, labels, splits)."""
    src = Path(src_dir)
    x = _load_pickle(src / f"ind.{name}.x")
    y = _load_pickle(src / f"ind.{name}.y")
    allx = _load_pickle(src / f"ind.{name}.allx")
    ally = _load_pickle(src / f"ind.{name}.ally")
    tx = _load_pickle(src / f"ind.{name}.tx")
    ty = _load_pickle(src / f"ind.{name}.ty")
    graph = _load_pickle(src / f"ind.{name}.graph")
    idx_path = src / f"ind.{name}.test.index"
    if not idx_path.exists():
        raise SourceError(f"missing source file: {idx_path}")
    test_idx = np.loadtxt(idx_path, dtype=np.int64)

    num_nodes = len(graph)
    num_feats = allx.shape[1]
    num_classes = ally.shape[1]

    features = np.zeros((num_nodes, num_feats), dtype=np.float32)
    onehot = np.zeros((num_nodes, num_classes), dtype=np.float64)
    features[: allx.shape[0]] = np.asarray(sp.csr_matrix(allx).todense())
    onehot[: ally.shape[0]] = np.asarray(ally)
    # row j of tx/ty belongs to node test_idx[j] (file order); citeseer has
    # isolated test nodes absent from test_idx whose rows stay all-zero
    features[test_idx] = np.asarray(sp.csr_matrix(tx).todense())
    onehot[test_idx] = np.asarray(ty)

    labels = np.where(onehot.sum(axis=1) > 0, onehot.argmax(axis=1), -1).astype(np.int64)

    edges = []
    for u, nbrs in graph.items():
        for v in nbrs:
            if u < v:
                edges.append((u, v))
            elif v < u:
                edges.append((v, u))
    edges = np.unique(np.asarray(edges, dtype=np.int64), axis=0)

    n_train = y.shape[0]
    splits = {
        "train": list(range(n_train)),
        "val": list(range(n_train, n_train + 500)),
        "test": [int(i) for i in np.sort(test_idx) if labels[i] >= 0],
    }
    return edges, features, labels, num_classes, splits


def load_webkb(src_dir: str | Path, name: str):
    """Parse one WebKB dataset from its edge/feature-label text files."""
    src = Path(src_dir)
    edge_file = src / "out1_graph_edges.txt"
    feat_file = src / "out1_node_feature_label.txt"
    for p in (edge_file, feat_file):
        if not p.exists():
            raise SourceError(f"missing source file: {p}")

    rows = []
    with open(feat_file) as f:
        header = f.readline()
        for line in f:
            node_id, feat_str, label = line.strip().split("\t")
            rows.append((int(node_id), feat_str, int(label)))
    rows.sort()
    num_nodes = len(rows)
    num_feats = len(rows[0][1].split(","))
    features = np.zeros((num_nodes, num_feats), dtype=np.float32)
    labels = np.zeros(num_nodes, dtype=np.int64)
    for node_id, feat_str, label in rows:
        features[node_id] = np.asarray(feat_str.split(","), dtype=np.float32)
        labels[node_id] = label
    num_classes = int(labels.max()) + 1

    raw = np.loadtxt(edge_file, dtype=np.int64, skiprows=1)
    lo = np.minimum(raw[:, 0], raw[:, 1])
    hi = np.maximum(raw[:, 0], raw[:, 1])
    keep = lo != hi
    edges = np.unique(np.stack([lo[keep], hi[keep]], axis=1), axis=0)
    return edges, features, labels, num_classes, None
