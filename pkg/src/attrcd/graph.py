"""Attribute networks, partitions, and locus-style edge selections.

An attribute network is an undirected simple graph whose nodes carry a
fixed-width real attribute vector. Node ids are dense integers 0..r-1 with
r defined as (max node id in the edge list) + 1; the attribute file must
supply exactly r rows. Isolated nodes are legal and decode to singleton
communities.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path
from typing import NamedTuple

import numpy as np

SINGLE_REAL = "single"
MULTI_BINARY = "multi"
ATTRIBUTE_KINDS = (SINGLE_REAL, MULTI_BINARY)


class NetworkFormatError(ValueError):
    """A dataset file could not be parsed."""


class NetworkConsistencyError(ValueError):
    """Parsed data violates a structural invariant (counts, self-loops, ...)."""


@dataclass(frozen=True)
class AttributeNetwork:
    """Immutable undirected graph with per-node attribute vectors.

    ``edges`` holds each undirected edge once as (u, v) with u < v, sorted.
    ``adjacency[i]`` is the ascending array of neighbours of node i.
    ``attributes`` has shape (node_count, attr_dim); for the single-real kind
    attr_dim is 1. Derived layout arrays (degrees, block offsets, padded
    neighbour tables) support the continuous edge encoding: node i owns the
    genotype slots ``block_offsets[i]:block_offsets[i+1]``, one per neighbour
    in ascending id order.
    """

    node_count: int
    edges: np.ndarray
    adjacency: tuple[np.ndarray, ...]
    attributes: np.ndarray
    attribute_kind: str
    degrees: np.ndarray
    block_offsets: np.ndarray
    unit_attributes: np.ndarray | None
    pad_slots: np.ndarray
    pad_neighbors: np.ndarray
    pad_valid: np.ndarray

    @property
    def edge_count(self) -> int:
        return int(self.edges.shape[0])

    @property
    def genotype_length(self) -> int:
        """Length of a continuous genotype: one slot per (node, neighbour) pair."""
        return int(self.block_offsets[-1])

    @property
    def attr_dim(self) -> int:
        return int(self.attributes.shape[1])


@dataclass(frozen=True)
class Partition:
    """Assignment of every node to one community.

    Community ids are dense (0..community_count-1) and canonical: community k
    has a smaller least member node id than community k+1, so two partitions
    describe the same clustering iff their ``community_of`` arrays are equal.
    """

    community_of: np.ndarray
    community_count: int
    members: tuple[np.ndarray, ...]

    @staticmethod
    def from_labels(labels: np.ndarray | list[int]) -> "Partition":
        """Build a canonical partition from arbitrary integer labels."""
        labels = np.asarray(labels)
        if labels.ndim != 1 or labels.size == 0:
            raise ValueError("labels must be a non-empty 1-d array")
        canon = np.empty(labels.size, dtype=np.int64)
        seen: dict[int, int] = {}
        for i, lab in enumerate(labels.tolist()):
            idx = seen.setdefault(lab, len(seen))
            canon[i] = idx
        c = len(seen)
        members = tuple(np.flatnonzero(canon == k) for k in range(c))
        return Partition(community_of=canon, community_count=c, members=members)

    def sizes(self) -> np.ndarray:
        return np.bincount(self.community_of, minlength=self.community_count)


@dataclass(frozen=True)
class EdgeSelection:
    """One chosen neighbour per node; -1 marks an isolated node."""

    selected_neighbor: np.ndarray

    def validate(self, net: AttributeNetwork) -> None:
        sel = self.selected_neighbor
        if sel.shape != (net.node_count,):
            raise ValueError(
                f"selection has length {sel.shape}, expected ({net.node_count},)"
            )
        for i, s in enumerate(sel.tolist()):
            deg = int(net.degrees[i])
            if deg == 0:
                if s != -1:
                    raise ValueError(f"node {i} is isolated but selects {s}")
            elif s < 0 or not _in_sorted(net.adjacency[i], s):
                raise ValueError(f"node {i} selects {s}, not one of its neighbours")


class PartitionStats(NamedTuple):
    """Per-community intra-edge counts, degree sums, and sizes."""

    intra_edges: np.ndarray
    degree_sums: np.ndarray
    sizes: np.ndarray


def _in_sorted(arr: np.ndarray, value: int) -> bool:
    pos = np.searchsorted(arr, value)
    return pos < arr.size and arr[pos] == value


def build_network(
    edges: np.ndarray | list[tuple[int, int]],
    attributes: np.ndarray,
    kind: str,
) -> AttributeNetwork:
    """Validate raw edge and attribute arrays and assemble a network.

    ``edges`` may list each undirected edge in either orientation but only
    once; self-loops and duplicates are rejected. ``attributes`` must have one
    row per node (node count = max edge endpoint + 1, or the attribute row
    count when there are no edges).
    """
    if kind not in ATTRIBUTE_KINDS:
        raise ValueError(f"unknown attribute kind {kind!r}, expected one of {ATTRIBUTE_KINDS}")

    edges = np.asarray(edges, dtype=np.int64).reshape(-1, 2)
    attributes = np.asarray(attributes, dtype=np.float64)
    if attributes.ndim == 1:
        attributes = attributes.reshape(-1, 1)
    if attributes.ndim != 2 or attributes.shape[0] == 0:
        raise NetworkConsistencyError("attribute table must be a non-empty 2-d array")

    if edges.size:
        if (edges < 0).any():
            raise NetworkConsistencyError("negative node id in edge list")
        if (edges[:, 0] == edges[:, 1]).any():
            bad = edges[edges[:, 0] == edges[:, 1]][0]
            raise NetworkConsistencyError(f"self-loop on node {int(bad[0])}")
        lo = np.minimum(edges[:, 0], edges[:, 1])
        hi = np.maximum(edges[:, 0], edges[:, 1])
        order = np.lexsort((hi, lo))
        edges = np.column_stack([lo[order], hi[order]])
        dup = (np.diff(edges[:, 0]) == 0) & (np.diff(edges[:, 1]) == 0)
        if dup.any():
            u, v = edges[1:][dup][0]
            raise NetworkConsistencyError(f"duplicate edge {int(u)} {int(v)}")
        node_count = int(edges.max()) + 1
    else:
        node_count = attributes.shape[0]

    if attributes.shape[0] != node_count:
        raise NetworkConsistencyError(
            f"attribute file has {attributes.shape[0]} rows but the edge list "
            f"implies {node_count} nodes"
        )

    if kind == SINGLE_REAL:
        if attributes.shape[1] != 1:
            raise NetworkConsistencyError(
                f"single-real attributes must have one value per node, got "
                f"{attributes.shape[1]} columns"
            )
        unit = None
    else:
        if not np.isin(attributes, (0.0, 1.0)).all():
            raise NetworkConsistencyError("multi-binary attributes must be 0/1 valued")
        norms = np.linalg.norm(attributes, axis=1)
        if (norms == 0).any():
            bad = int(np.flatnonzero(norms == 0)[0])
            raise NetworkConsistencyError(
                f"node {bad} has an all-zero attribute vector (cosine undefined)"
            )
        unit = attributes / norms[:, None]

    adjacency = _adjacency_from_edges(edges, node_count)
    degrees = np.array([a.size for a in adjacency], dtype=np.int64)
    block_offsets = np.zeros(node_count + 1, dtype=np.int64)
    np.cumsum(degrees, out=block_offsets[1:])

    dmax = int(degrees.max()) if node_count else 0
    pad_slots = np.zeros((node_count, max(dmax, 1)), dtype=np.int64)
    pad_neighbors = np.full((node_count, max(dmax, 1)), -1, dtype=np.int64)
    pad_valid = np.zeros((node_count, max(dmax, 1)), dtype=bool)
    for i in range(node_count):
        d = int(degrees[i])
        pad_slots[i, :d] = np.arange(block_offsets[i], block_offsets[i] + d)
        pad_neighbors[i, :d] = adjacency[i]
        pad_valid[i, :d] = True

    edges.setflags(write=False)
    attributes.setflags(write=False)
    return AttributeNetwork(
        node_count=node_count,
        edges=edges,
        adjacency=adjacency,
        attributes=attributes,
        attribute_kind=kind,
        degrees=degrees,
        block_offsets=block_offsets,
        unit_attributes=unit,
        pad_slots=pad_slots,
        pad_neighbors=pad_neighbors,
        pad_valid=pad_valid,
    )


def _adjacency_from_edges(edges: np.ndarray, node_count: int) -> tuple[np.ndarray, ...]:
    neighbors: list[list[int]] = [[] for _ in range(node_count)]
    for u, v in edges.tolist():
        neighbors[u].append(v)
        neighbors[v].append(u)
    return tuple(np.array(sorted(ns), dtype=np.int64) for ns in neighbors)


def _parse_edge_file(path: Path) -> np.ndarray:
    rows: list[tuple[int, int]] = []
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            parts = line.split()
            if len(parts) != 2:
                raise NetworkFormatError(
                    f"{path}:{lineno}: expected two node ids, got {line!r}"
                )
            try:
                u, v = int(parts[0]), int(parts[1])
            except ValueError as exc:
                raise NetworkFormatError(
                    f"{path}:{lineno}: non-integer node id in {line!r}"
                ) from exc
            if u < 0 or v < 0:
                raise NetworkFormatError(f"{path}:{lineno}: negative node id")
            rows.append((u, v))
    return np.array(rows, dtype=np.int64).reshape(-1, 2)


def _parse_attr_file(path: Path, kind: str) -> np.ndarray:
    rows: list[list[float]] = []
    width: int | None = None
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            parts = line.split()
            if kind == SINGLE_REAL and len(parts) != 1:
                raise NetworkFormatError(
                    f"{path}:{lineno}: single-real attributes need one value per line"
                )
            try:
                vals = [float(p) for p in parts]
            except ValueError as exc:
                raise NetworkFormatError(
                    f"{path}:{lineno}: non-numeric attribute value"
                ) from exc
            if width is None:
                width = len(vals)
            elif len(vals) != width:
                raise NetworkConsistencyError(
                    f"{path}:{lineno}: ragged attribute row (width {len(vals)}, "
                    f"expected {width})"
                )
            rows.append(vals)
    if not rows:
        raise NetworkFormatError(f"{path}: no attribute rows")
    return np.array(rows, dtype=np.float64)


def load_network(edge_path: str | Path, attr_path: str | Path, kind: str) -> AttributeNetwork:
    """Load and validate a network from an edge-list file and an attribute file.

    Edge file: one edge per line as two whitespace-separated node ids,
    ``#`` comment lines ignored. Attribute file: one row per node in id order
    (one real per line for kind ``"single"``, fixed-width 0/1 values for kind
    ``"multi"``).
    """
    edge_path, attr_path = Path(edge_path), Path(attr_path)
    for p in (edge_path, attr_path):
        if not p.exists():
            raise NetworkFormatError(f"file not found: {p}")
    edges = _parse_edge_file(edge_path)
    attributes = _parse_attr_file(attr_path, kind)
    return build_network(edges, attributes, kind)


def load_truth(path: str | Path, node_count: int) -> Partition:
    """Load ground-truth labels (one community id per line in node-id order)."""
    path = Path(path)
    if not path.exists():
        raise NetworkFormatError(f"file not found: {path}")
    labels: list[int] = []
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            try:
                labels.append(int(line.split()[0]))
            except ValueError as exc:
                raise NetworkFormatError(f"{path}:{lineno}: non-integer label") from exc
    if len(labels) != node_count:
        raise NetworkConsistencyError(
            f"{path}: {len(labels)} labels for {node_count} nodes"
        )
    return Partition.from_labels(np.array(labels, dtype=np.int64))


def decode(sel: EdgeSelection, net: AttributeNetwork) -> Partition:
    """Connected components of the graph on edges {i, sel[i]}.

    Isolated nodes become singleton communities. Deterministic: community ids
    follow the order of each community's smallest member node id.
    """
    sel.validate(net)
    return decode_labels(sel.selected_neighbor, net.node_count)


def decode_labels(selected: np.ndarray, node_count: int) -> Partition:
    """Union-find decode of a selection array (no validation, hot path)."""
    parent = list(range(node_count))
    for i, s in enumerate(selected.tolist()):
        if s < 0:
            continue
        a, b = i, s
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        while parent[b] != b:
            parent[b] = parent[parent[b]]
            b = parent[b]
        if a != b:
            parent[b] = a
    labels = np.empty(node_count, dtype=np.int64)
    root_label = [-1] * node_count
    c = 0
    for i in range(node_count):
        a = i
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        if root_label[a] < 0:
            root_label[a] = c
            c += 1
        labels[i] = root_label[a]
    members = tuple(np.flatnonzero(labels == k) for k in range(c))
    return Partition(community_of=labels, community_count=c, members=members)


def partition_stats(p: Partition, net: AttributeNetwork) -> PartitionStats:
    """Per-community intra-edge count l_k, degree sum d_k, and size r_k."""
    comm = p.community_of
    c = p.community_count
    sizes = np.bincount(comm, minlength=c)
    degree_sums = np.bincount(comm, weights=net.degrees, minlength=c).astype(np.int64)
    if net.edge_count:
        cu = comm[net.edges[:, 0]]
        cv = comm[net.edges[:, 1]]
        intra = np.bincount(cu[cu == cv], minlength=c)
    else:
        intra = np.zeros(c, dtype=np.int64)
    return PartitionStats(intra_edges=intra, degree_sums=degree_sums, sizes=sizes)
