"""Continuous edge encoding: sigmoid, per-block softmax, argmax.

A genotype is a real vector x in [0,1]^d with d = 2L (one slot per directed
node-neighbour incidence). Node i owns the contiguous block of length
degree(i) at ``net.block_offsets[i]``, one slot per neighbour in ascending id
order. Encoding maps each block through sigmoid and softmax and selects the
neighbour with the largest probability, ties going to the lowest neighbour
id; decoding the resulting selection yields a partition.
"""

from __future__ import annotations

from typing import Iterator

import numpy as np

from .graph import AttributeNetwork, EdgeSelection, Partition, decode_labels


def sigmoid(v):
    """Elementwise logistic function 1 / (1 + exp(-v))."""
    return 1.0 / (1.0 + np.exp(-np.asarray(v, dtype=np.float64)))


def softmax(h: np.ndarray) -> np.ndarray:
    """Probability vector exp(h_j) / sum exp(h_j), computed with max-subtraction."""
    h = np.asarray(h, dtype=np.float64)
    if h.size == 0:
        raise ValueError("softmax of an empty vector")
    e = np.exp(h - h.max())
    return e / e.sum()


def check_genotype(x: np.ndarray, net: AttributeNetwork) -> np.ndarray:
    x = np.asarray(x, dtype=np.float64)
    if x.shape != (net.genotype_length,):
        raise ValueError(
            f"genotype has shape {x.shape}, expected ({net.genotype_length},)"
        )
    return x


def encode(x: np.ndarray, net: AttributeNetwork) -> EdgeSelection:
    """Map a continuous genotype to one selected neighbour per node.

    Isolated nodes are skipped (marked -1). Only the within-block ordering of
    x matters: sigmoid and softmax are strictly order-preserving.
    """
    x = check_genotype(x, net)
    h = sigmoid(x)
    padded = np.where(net.pad_valid, h[net.pad_slots], -np.inf)
    # per-block softmax with max-subtraction, then argmax (first max wins,
    # which is the lowest neighbour id because neighbours are sorted)
    block_max = padded.max(axis=1, keepdims=True)
    probs = np.exp(padded - np.where(np.isfinite(block_max), block_max, 0.0))
    probs[~net.pad_valid] = 0.0
    sums = probs.sum(axis=1, keepdims=True)
    np.divide(probs, sums, out=probs, where=sums > 0)
    slots = probs.argmax(axis=1)
    selected = net.pad_neighbors[np.arange(net.node_count), slots]
    selected = np.where(net.degrees > 0, selected, -1)
    return EdgeSelection(selected_neighbor=selected)


def gnn_decode(x: np.ndarray, net: AttributeNetwork) -> Partition:
    """Full genotype-to-partition map: decode(encode(x))."""
    sel = encode(x, net)
    return decode_labels(sel.selected_neighbor, net.node_count)


def random_genotype(net: AttributeNetwork, rng: np.random.Generator) -> np.ndarray:
    """Uniform sample from the genotype box [0,1]^d."""
    return rng.random(net.genotype_length)


def selection_genotype(sel: EdgeSelection, net: AttributeNetwork) -> np.ndarray:
    """Canonical continuous genotype encoding a given selection.

    Every block is 0.25 except the selected neighbour's slot at 0.75, the
    fixed representative of the argmax region that decodes to `sel`;
    encode(selection_genotype(sel)) round-trips to `sel`.
    """
    x = np.full(net.genotype_length, 0.25)
    for i, s in enumerate(sel.selected_neighbor.tolist()):
        if s >= 0:
            slot = int(net.block_offsets[i]) + int(np.searchsorted(net.adjacency[i], s))
            x[slot] = 0.75
    return x


def random_selection(net: AttributeNetwork, rng: np.random.Generator) -> EdgeSelection:
    """Uniform locus genotype: each non-isolated node picks a random neighbour."""
    selected = np.full(net.node_count, -1, dtype=np.int64)
    for i in range(net.node_count):
        d = int(net.degrees[i])
        if d:
            selected[i] = net.adjacency[i][rng.integers(d)]
    return EdgeSelection(selected_neighbor=selected)


def locus_neighbors(g: EdgeSelection, net: AttributeNetwork) -> Iterator[EdgeSelection]:
    """All locus genotypes differing from g in exactly one node's selection.

    Yields sum_i (degree(i) - 1) genotypes, in node order then ascending
    neighbour id, skipping each node's current selection.
    """
    base = g.selected_neighbor
    for i in range(net.node_count):
        current = base[i]
        for nb in net.adjacency[i].tolist():
            if nb == current:
                continue
            out = base.copy()
            out[i] = nb
            yield EdgeSelection(selected_neighbor=out)
