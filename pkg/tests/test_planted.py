import numpy as np
import pytest

from attrcd import load_network, load_truth
from attrcd.graph import decode_labels
from attrcd.metrics import nmi
from attrcd.planted import gen_planted, write_planted


def components_of(net):
    """Ground-truth-free connected components of the whole network."""
    # reuse the union-find decoder by selecting each node's first neighbour,
    # then union the remaining edges by hand
    labels = np.arange(net.node_count)
    parent = list(range(net.node_count))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for u, v in net.edges.tolist():
        ru, rv = find(u), find(v)
        if ru != rv:
            parent[rv] = ru
    return np.array([find(i) for i in range(net.node_count)])


class TestGenPlanted:
    def test_parameter_validation(self):
        with pytest.raises(ValueError):
            gen_planted(10, 3, 0.5, 0.1, 0.0, 0)  # not divisible
        with pytest.raises(ValueError):
            gen_planted(12, 3, 0.2, 0.5, 0.0, 0)  # p_out >= p_in
        with pytest.raises(ValueError):
            gen_planted(12, 3, 0.5, 0.1, 1.5, 0)  # bad noise
        with pytest.raises(ValueError):
            gen_planted(0, 1, 0.5, 0.0, 0.0, 0)

    def test_disconnected_blocks_recover_truth(self):
        planted = gen_planted(32, 4, 0.9, 0.0, 0.0, seed=5)
        comp = components_of(planted.network)
        from attrcd.graph import Partition

        p = Partition.from_labels(comp)
        assert nmi(p, planted.truth) == pytest.approx(1.0, abs=1e-12)
        # homogeneous attributes: every node keeps its community id
        assert np.array_equal(planted.attributes, planted.labels.astype(float))

    def test_full_noise_anticorrelates_with_truth(self):
        planted = gen_planted(16, 2, 0.9, 0.0, 1.0, seed=6)
        assert np.array_equal(planted.attributes, 1.0 - planted.labels)

    def test_edge_probabilities_respected(self):
        planted = gen_planted(64, 4, 0.3, 0.01, 0.0, seed=7)
        labels = planted.labels
        intra = sum(1 for u, v in planted.edges.tolist() if labels[u] == labels[v])
        inter = planted.edges.shape[0] - intra
        n_intra_pairs = 4 * 16 * 15 // 2
        n_inter_pairs = 64 * 63 // 2 - n_intra_pairs
        assert 0.15 < intra / n_intra_pairs < 0.45
        assert inter / n_inter_pairs < 0.05

    def test_determinism_and_seed_sensitivity(self):
        a = gen_planted(32, 4, 0.4, 0.02, 0.1, seed=8)
        b = gen_planted(32, 4, 0.4, 0.02, 0.1, seed=8)
        c = gen_planted(32, 4, 0.4, 0.02, 0.1, seed=9)
        assert np.array_equal(a.edges, b.edges)
        assert np.array_equal(a.attributes, b.attributes)
        assert not (np.array_equal(a.edges, c.edges) and np.array_equal(a.attributes, c.attributes))


class TestWritePlanted:
    def test_round_trip(self, tmp_path):
        planted = gen_planted(24, 3, 0.6, 0.05, 0.2, seed=10)
        paths = write_planted(planted, tmp_path)
        net = load_network(paths["edges"], paths["attrs"], "single")
        truth = load_truth(paths["truth"], net.node_count)
        assert net.node_count == 24
        assert net.edge_count == planted.edges.shape[0]
        assert truth.community_count == 3

    def test_byte_identical_reruns(self, tmp_path):
        p1 = write_planted(gen_planted(24, 3, 0.6, 0.05, 0.2, seed=11), tmp_path / "a")
        p2 = write_planted(gen_planted(24, 3, 0.6, 0.05, 0.2, seed=11), tmp_path / "b")
        for key in p1:
            assert p1[key].read_bytes() == p2[key].read_bytes()
