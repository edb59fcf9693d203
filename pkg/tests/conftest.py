from pathlib import Path

import numpy as np
import pytest

from attrcd import build_network
from attrcd.graph import Partition

DATA_DIR = Path(__file__).resolve().parent.parent / "data"


@pytest.fixture
def g4_single():
    """Path 0-1-2-3 with scalar attributes (1, 1, 3, 5)."""
    return build_network([(0, 1), (1, 2), (2, 3)], np.array([1.0, 1.0, 3.0, 5.0]), "single")


@pytest.fixture
def g4_multi():
    """Path 0-1-2-3 with binary attribute rows (1,0), (1,0), (1,1), (0,1)."""
    attrs = np.array([[1, 0], [1, 0], [1, 1], [0, 1]], dtype=float)
    return build_network([(0, 1), (1, 2), (2, 3)], attrs, "multi")


@pytest.fixture
def g4_split():
    """The partition {{0,1},{2,3}} of the 4-node path."""
    return Partition.from_labels([0, 0, 1, 1])


def random_graph(rng: np.random.Generator, n_nodes: int, p: float = 0.4):
    """Random simple graph guaranteed to include node n_nodes-1 in an edge."""
    edges = []
    for i in range(n_nodes):
        for j in range(i + 1, n_nodes):
            if rng.random() < p:
                edges.append((i, j))
    if not edges or max(max(e) for e in edges) < n_nodes - 1:
        edges.append((n_nodes - 2, n_nodes - 1))
    return edges
