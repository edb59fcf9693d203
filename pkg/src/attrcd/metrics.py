"""Partition evaluation metrics: density, attribute entropy, and NMI.

Entropies use the natural logarithm (values are in nats). NMI is invariant to
the log base, entropy is not; reported entropy values are comparable only
between runs of this package.
"""

from __future__ import annotations

import numpy as np

from .graph import (
    MULTI_BINARY,
    AttributeNetwork,
    Partition,
    partition_stats,
)
from .objectives import DegenerateNetworkError


def density(p: Partition, net: AttributeNetwork) -> float:
    """Fraction of edges that are intra-community, in [0, 1]."""
    if net.edge_count == 0:
        raise DegenerateNetworkError("density is undefined on an edgeless network")
    stats = partition_stats(p, net)
    return float(stats.intra_edges.sum()) / net.edge_count


def _categorical_entropy(values: np.ndarray) -> float:
    _, counts = np.unique(values, return_counts=True)
    probs = counts / values.size
    return float(-(probs * np.log(probs)).sum())


def _mean_binary_entropy(rows: np.ndarray) -> float:
    q = rows.mean(axis=0)
    h = np.zeros_like(q)
    inner = (q > 0) & (q < 1)
    qi = q[inner]
    h[inner] = -(qi * np.log(qi) + (1 - qi) * np.log(1 - qi))
    return float(h.mean())


def entropy(p: Partition, net: AttributeNetwork) -> float:
    """Size-weighted within-community attribute entropy, lower is purer.

    Single-real attributes: entropy of the empirical distribution of the
    attribute value inside each community. Multi-binary attributes: the mean
    over attribute dimensions of each dimension's binary entropy inside the
    community (an extension; the categorical form is defined for one
    attribute only).
    """
    r = net.node_count
    total = 0.0
    for idx in p.members:
        if net.attribute_kind == MULTI_BINARY:
            h = _mean_binary_entropy(net.attributes[idx])
        else:
            h = _categorical_entropy(net.attributes[idx, 0])
        total += (idx.size / r) * h
    return total


def confusion_matrix(p: Partition, truth: Partition) -> np.ndarray:
    """Counts M[i, j] of nodes in community i of p and community j of truth."""
    if p.community_of.shape != truth.community_of.shape:
        raise ValueError("partitions cover different node counts")
    cp, ct = p.community_count, truth.community_count
    flat = p.community_of * ct + truth.community_of
    return np.bincount(flat, minlength=cp * ct).reshape(cp, ct)


def nmi(p: Partition, truth: Partition) -> float:
    """Normalised mutual information between two partitions, in [0, 1].

    Zero-count terms are dropped. When both partitions consist of a single
    community the expression is 0/0; the partitions are then identical and
    the value is fixed to 1.
    """
    M = confusion_matrix(p, truth)
    r = float(M.sum())
    row = M.sum(axis=1).astype(np.float64)
    col = M.sum(axis=0).astype(np.float64)

    nz = M > 0
    cells = M[nz].astype(np.float64)
    outer = np.outer(row, col)[nz]
    numerator = -2.0 * float((cells * np.log(r * cells / outer)).sum())

    row_nz = row[row > 0]
    col_nz = col[col > 0]
    denominator = float((row_nz * np.log(row_nz / r)).sum()) + float(
        (col_nz * np.log(col_nz / r)).sum()
    )
    if denominator == 0.0:
        return 1.0  # both single-community, hence the same partition
    return numerator / denominator
