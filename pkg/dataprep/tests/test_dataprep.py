import json
import struct

import numpy as np
import pytest

from dataprep import (
    ConversionRecipe,
    OracleError,
    SourceError,
    convert,
    dense_view_finder,
    edge_homophily,
    load_webkb,
    oracle_forward,
    read_container,
    sample20_splits,
    write_container,
)
from dataprep.oracle import read_checkpoint


def write_linear_checkpoint(path, g_coef, bias, finder_set):
    """Hand-assemble a checkpoint file with a linear collapsing map."""
    g32 = np.asarray(g_coef, dtype="<f4")
    b32 = np.asarray([bias], dtype="<f4")
    blob = g32.tobytes() + b32.tobytes()
    header = {
        "finder_set": finder_set,
        "phi": {
            "variant": "linear",
            "activation": None,
            "tensors": [
                {"name": "g", "shape": [g32.size], "offset": 0},
                {"name": "b", "shape": [1], "offset": g32.nbytes},
            ],
        },
        "pretrain_depth": 1,
        "lambda_max": 2.0,
    }
    payload = json.dumps(header).encode()
    with open(path, "wb") as f:
        f.write(b"GVTC")
        f.write(struct.pack("<I", 1))
        f.write(struct.pack("<Q", len(payload)))
        f.write(payload)
        f.write(blob)


class TestContainer:
    def test_roundtrip(self, tmp_path):
        r = np.random.default_rng(0)
        edges = np.array([[0, 1], [1, 2], [2, 3]])
        feats = r.standard_normal((4, 3)).astype(np.float32)
        labels = np.array([0, 1, -1, 1])
        splits = {"train": [0], "val": [1], "test": [3]}
        write_container(tmp_path / "c", edges, feats, labels, 2, splits, name="t")
        back = read_container(tmp_path / "c")
        assert back["meta"]["num_nodes"] == 4
        np.testing.assert_array_equal(back["edges"], edges)
        np.testing.assert_array_equal(back["features"], feats)
        np.testing.assert_array_equal(back["labels"], labels)
        np.testing.assert_array_equal(back["splits"]["test"], [3])

    def test_homophily(self):
        edges = np.array([[0, 1], [1, 2], [2, 3]])
        labels = np.array([0, 0, 1, -1])
        assert edge_homophily(edges, labels) == pytest.approx(0.5)


class TestSplits:
    def test_sample20_counts(self):
        labels = np.repeat(np.arange(3), 50)
        splits = sample20_splits(labels, seed=1)
        assert len(splits["train"]) == 60
        rest = 150 - 60
        assert len(splits["val"]) == rest // 2
        assert len(splits["test"]) == rest - rest // 2
        all_idx = splits["train"] + splits["val"] + splits["test"]
        assert len(set(all_idx)) == 150

    def test_small_class_warns_and_takes_all(self):
        labels = np.array([0] * 30 + [1] * 5)
        with pytest.warns(UserWarning, match="class 1"):
            splits = sample20_splits(labels, seed=0)
        assert sum(labels[i] == 1 for i in splits["train"]) == 5

    def test_unlabeled_excluded(self):
        labels = np.array([0] * 25 + [-1] * 10)
        splits = sample20_splits(labels, seed=0)
        assert all(labels[i] >= 0 for k in splits for i in splits[k])


class TestConvert:
    def _webkb_fixture(self, tmp_path):
        tmp_path.mkdir(parents=True, exist_ok=True)
        (tmp_path / "out1_graph_edges.txt").write_text(
            "node_id\tnode_id\n0\t1\n1\t2\n2\t0\n3\t0\n"
        )
        rows = ["node_id\tfeature\tlabel"]
        for i in range(4):
            feat = ",".join(str((i + j) % 2) for j in range(5))
            rows.append(f"{i}\t{feat}\t{i % 2}")
        (tmp_path / "out1_node_feature_label.txt").write_text("\n".join(rows) + "\n")
        return tmp_path

    def test_webkb_roundtrip(self, tmp_path):
        src = self._webkb_fixture(tmp_path / "src")
        edges, feats, labels, nc, public = load_webkb(src, "texas")
        assert feats.shape == (4, 5)
        assert nc == 2
        assert public is None

    def test_convert_writes_homophily(self, tmp_path):
        src = self._webkb_fixture(tmp_path / "src")
        out = convert(ConversionRecipe("texas", "sample20", seed=0), src, tmp_path / "out")
        meta = read_container(out)["meta"]
        assert meta["split_policy"] == "sample20"
        assert 0.0 <= meta["homophily_ratio"] <= 1.0

    def test_public_policy_requires_public_split(self, tmp_path):
        src = self._webkb_fixture(tmp_path / "src")
        with pytest.raises(SourceError, match="no public split"):
            convert(ConversionRecipe("texas", "public"), src, tmp_path / "out")

    def test_unknown_dataset(self, tmp_path):
        with pytest.raises(SourceError):
            convert(ConversionRecipe("mystery"), tmp_path, tmp_path / "out")

    def test_bad_policy(self):
        with pytest.raises(ValueError):
            ConversionRecipe("cora", policy="fancy")


class TestOracle:
    def test_linear_identity_checkpoint(self, tmp_path):
        # with only the identity view and g = [1], the transform is x itself
        r = np.random.default_rng(3)
        feats = r.standard_normal((6, 4)).astype(np.float32)
        edges = np.array([[0, 1], [1, 2], [3, 4]])
        write_container(tmp_path / "c", edges, feats, np.zeros(6, int), 1,
                        {"train": [0], "val": [1], "test": [2]}, name="t")
        ck = tmp_path / "lin.gvtc"
        write_linear_checkpoint(ck, [1.0], 0.0, [{"variant": "identity"}])
        z = oracle_forward(tmp_path / "c", ck, depth=1)
        np.testing.assert_allclose(z, feats, atol=1e-7)

    def test_dense_finders_reference_values(self):
        # path graph 0-1-2: random-walk average of [1, 0, 2] is [0, 1.5, 0]
        adj = np.zeros((3, 3))
        adj[0, 1] = adj[1, 0] = adj[1, 2] = adj[2, 1] = 1.0
        rw = dense_view_finder({"variant": "normalized_power", "p": 1.0, "q": 0.0, "k": 1}, adj)
        np.testing.assert_allclose(rw @ np.array([1.0, 0.0, 2.0]), [0.0, 1.5, 0.0], atol=1e-12)
        sym = dense_view_finder({"variant": "normalized_power", "p": 0.5, "q": 0.5, "k": 1}, adj)
        np.testing.assert_allclose((sym @ np.array([1.0, 0.0, 2.0]))[1], 2.12132034, atol=1e-8)

    def test_checkpoint_reader_rejects_bad_magic(self, tmp_path):
        bad = tmp_path / "bad.gvtc"
        bad.write_bytes(b"XXXX" + b"\0" * 16)
        with pytest.raises(OracleError):
            read_checkpoint(bad)

    def test_node_limit(self, tmp_path):
        n = 5001
        feats = np.zeros((n, 1), dtype=np.float32)
        write_container(tmp_path / "big", np.array([[0, 1]]), feats, np.zeros(n, int), 1,
                        {"train": [0], "val": [1], "test": [2]}, name="big")
        ck = tmp_path / "lin.gvtc"
        write_linear_checkpoint(ck, [1.0], 0.0, [{"variant": "identity"}])
        with pytest.raises(OracleError, match="dense limit"):
            oracle_forward(tmp_path / "big", ck)
