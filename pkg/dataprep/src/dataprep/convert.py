"""Benchmark-to-container conversion with split policies.

Split policies:

* "public": the dataset's canonical split (Planetoid datasets only).
* "sample20": 20 training nodes per class (all available when a class is
  smaller, with a warning), half the remaining labeled nodes for
  validation, the rest for testing.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .container import edge_homophily, write_container
from .sources import SourceError, load_planetoid, load_webkb

PLANETOID = ("cora", "citeseer", "pubmed")
WEBKB = ("texas", "cornell", "wisconsin")


@dataclass
class ConversionRecipe:
    dataset: str
    policy: str = "public"     # "public" | "sample20"
    seed: int = 0

    def __post_init__(self):
        if self.policy not in ("public", "sample20"):
            raise ValueError(f"unknown split policy {self.policy!r}")


def sample20_splits(labels: np.ndarray, seed: int) -> dict[str, list[int]]:
    """Per-class-20 training with half-remainder validation."""
    rng = np.random.default_rng(seed)
    labeled = np.nonzero(labels >= 0)[0]
    train: list[int] = []
    for cls in np.unique(labels[labeled]):
        members = labeled[labels[labeled] == cls]
        take = 20
        if members.size < take:
            warnings.warn(
                f"class {cls} has only {members.size} labeled nodes; using all of them for training"
            )
            take = members.size
        train.extend(rng.choice(members, size=take, replace=False).tolist())
    rest = np.setdiff1d(labeled, np.asarray(train, dtype=np.int64))
    rest = rng.permutation(rest)
    half = rest.size // 2
    return {
        "train": sorted(int(i) for i in train),
        "val": sorted(int(i) for i in rest[:half]),
        "test": sorted(int(i) for i in rest[half:]),
    }


def convert(recipe: ConversionRecipe, src_dir: str | Path, out_dir: str | Path) -> Path:
    """Convert one benchmark into a container directory."""
    name = recipe.dataset.lower()
    if name in PLANETOID:
        edges, features, labels, num_classes, public = load_planetoid(src_dir, name)
    elif name in WEBKB:
        edges, features, labels, num_classes, public = load_webkb(src_dir, name)
    else:
        raise SourceError(f"unknown dataset {recipe.dataset!r}")

    if recipe.policy == "public":
        if public is None:
            raise SourceError(f"{name} has no public split; use --policy sample20")
        splits = public
    else:
        splits = sample20_splits(labels, recipe.seed)

    return write_container(
        out_dir,
        edges,
        features,
        labels,
        num_classes,
        splits,
        name=name,
        extra_meta={
            "split_policy": recipe.policy,
            "split_seed": recipe.seed,
            "homophily_ratio": round(edge_homophily(edges, labels), 4),
        },
    )
