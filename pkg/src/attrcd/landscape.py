"""Fitness landscape analysis via iterated local search.

The community detection problem is probed in two search spaces: the original
discrete locus space (one selected neighbour per node, neighbourhood = all
single-position changes), and the transformed continuous space (genotypes in
[0,1]^d, neighbourhood = the Euclidean epsilon-ball). A single-objective ILS
alternates best-improvement descent (discrete) or sampled first-improvement
descent (continuous) with a perturbation jump, collecting local optima until
a budget is reached. From its counters and archive come three ruggedness
measures:

* LOD, local optima encountered per 100 moves (accepted descent moves plus
  perturbation jumps both count as moves);
* ER, the fraction of perturbations whose descent reached a previously
  unvisited local optimum;
* FDC, the Pearson correlation between sampled optima's objective values and
  their distance to the nearest best-known solution.

Novelty for ER is exact genotype identity in the discrete space. In the
continuous space two optima count as the same when their objective values
coincide: distinct real vectors are almost surely never equal (and distinct
descents essentially never revisit the same vector), so a vector-identity
rule would label every continuous optimum "new" and make ER vacuous there.
Decoded-partition identity (``novelty="phenotype"``) and the raw
vector-distance rule (``novelty="genotype"``) remain available.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import connected_components

from .graph import AttributeNetwork, EdgeSelection, decode_labels
from .encoding import encode, gnn_decode, random_selection, selection_genotype
from .objectives import DEFAULT_DENOMINATOR, attr_similarity, modularity

SPACES = ("discrete", "continuous")
OBJECTIVES = ("q", "attr")

_BEST_SET_CAP = 512
_VALUE_TIE_TOL = 1e-12
_NOVELTY_EUCLID_TOL = 1e-9


@dataclass
class LandscapeConfig:
    objective: str = "q"
    space: str = "discrete"
    local_optima_budget: int = 10000
    fdc_sample: int = 1000
    epsilon_sample: int = 100000
    epsilon_pairs: int = 1_000_000
    perturb_edges: int = 10
    ls_trials: int = 50
    epsilon: float | None = None
    novelty: str = "auto"  # "auto" | "genotype" | "phenotype"
    denominator: str = DEFAULT_DENOMINATOR
    seed: int = 0

    def __post_init__(self) -> None:
        if self.objective not in OBJECTIVES:
            raise ValueError(f"objective must be one of {OBJECTIVES}")
        if self.space not in SPACES:
            raise ValueError(f"space must be one of {SPACES}")
        for name in ("local_optima_budget", "fdc_sample", "epsilon_sample",
                     "epsilon_pairs", "perturb_edges", "ls_trials"):
            if getattr(self, name) <= 0:
                raise ValueError(f"{name} must be positive")
        if self.novelty not in ("auto", "genotype", "phenotype", "value"):
            raise ValueError("novelty must be auto, genotype, phenotype, or value")

    def resolved_novelty(self) -> str:
        if self.novelty != "auto":
            return self.novelty
        return "genotype" if self.space == "discrete" else "value"


@dataclass
class IlsCounters:
    optima: int = 0
    moves: int = 0
    perturbations: int = 0
    escapes: int = 0


@dataclass
class IlsResult:
    genotypes: list[np.ndarray]
    values: np.ndarray
    counters: IlsCounters
    best_value: float
    best_genotypes: list[np.ndarray]
    epsilon: float | None = None


@dataclass
class LandscapeReport:
    space: str
    objective: str
    lod: float
    er: float
    fdc: float | None


def discrete_distance(g1, g2) -> int:
    """Number of positions where two locus genotypes select differently."""
    a = g1.selected_neighbor if isinstance(g1, EdgeSelection) else np.asarray(g1)
    b = g2.selected_neighbor if isinstance(g2, EdgeSelection) else np.asarray(g2)
    if a.shape != b.shape:
        raise ValueError(f"genotype lengths differ: {a.shape} vs {b.shape}")
    return int((a != b).sum())


def lod(counters: IlsCounters) -> float:
    """Local optima per 100 moves."""
    if counters.moves <= 0:
        raise ValueError("LOD undefined without moves")
    return 100.0 * counters.optima / counters.moves


def er(counters: IlsCounters) -> float:
    """Fraction of perturbations that reached a new local optimum."""
    if counters.perturbations <= 0:
        raise ValueError("ER undefined without perturbations")
    return counters.escapes / counters.perturbations


def fdc(
    values: np.ndarray,
    genotypes: list[np.ndarray],
    best_genotypes: list[np.ndarray],
    space: str,
    sample: int = 1000,
    seed: int = 0,
) -> float | None:
    """Pearson correlation between optima values and distance to the best set.

    Distance is the nearest-member distance (position count for the discrete
    space, Euclidean for the continuous one). Returns None when either the
    sampled values or the distances have zero variance.
    """
    values = np.asarray(values, dtype=np.float64)
    n = values.size
    if n < 2 or not best_genotypes:
        return None
    rng = np.random.Generator(np.random.Philox(np.random.SeedSequence(entropy=seed, spawn_key=(103,))))
    idx = np.sort(rng.choice(n, size=min(sample, n), replace=False))
    f = values[idx]
    B = np.stack(best_genotypes)
    d = np.empty(idx.size)
    for pos, i in enumerate(idx.tolist()):
        g = genotypes[i]
        if space == "discrete":
            d[pos] = (B != g[None, :]).sum(axis=1).min()
        else:
            d[pos] = np.sqrt(((B - g[None, :]) ** 2).sum(axis=1)).min()
    return pearson(f, d)


def pearson(x: np.ndarray, y: np.ndarray) -> float | None:
    x = np.asarray(x, dtype=np.float64)
    y = np.asarray(y, dtype=np.float64)
    xc = x - x.mean()
    yc = y - y.mean()
    sx = float(np.sqrt((xc**2).mean()))
    sy = float(np.sqrt((yc**2).mean()))
    if sx == 0.0 or sy == 0.0:
        return None
    return float((xc * yc).mean() / (sx * sy))


def _partition_value_fn(net: AttributeNetwork, cfg: LandscapeConfig) -> Callable:
    if cfg.objective == "q":
        return lambda p: -modularity(p, net)
    return lambda p: attr_similarity(p, net, cfg.denominator)


def calibrate_epsilon(net: AttributeNetwork, cfg: LandscapeConfig) -> float:
    """Neighbourhood radius for the continuous space.

    Streams `epsilon_pairs` random pairs out of `epsilon_sample` uniform
    genotypes (regenerated on demand from per-index seeds, so the full sample
    never needs to be held) and returns the midpoint of the extreme pairwise
    Euclidean distances.
    """
    d = net.genotype_length
    if d == 0:
        return 0.0
    n = cfg.epsilon_sample
    if n < 2:
        raise ValueError("epsilon_sample must be at least 2")
    pair_rng = np.random.Generator(
        np.random.Philox(np.random.SeedSequence(entropy=cfg.seed, spawn_key=(101,)))
    )
    dmin, dmax = np.inf, -np.inf
    remaining = cfg.epsilon_pairs
    chunk = 8192
    while remaining > 0:
        m = min(chunk, remaining)
        remaining -= m
        i = pair_rng.integers(0, n, size=m)
        j = pair_rng.integers(0, n, size=m)
        clash = i == j
        while clash.any():
            j[clash] = pair_rng.integers(0, n, size=int(clash.sum()))
            clash = i == j
        ids, inverse = np.unique(np.concatenate([i, j]), return_inverse=True)
        X = np.empty((ids.size, d))
        for row, k in enumerate(ids.tolist()):
            X[row] = _indexed_uniform(cfg.seed, k, d)
        diff = X[inverse[:m]] - X[inverse[m:]]
        dist = np.sqrt((diff**2).sum(axis=1))
        dmin = min(dmin, float(dist.min()))
        dmax = max(dmax, float(dist.max()))
    return (dmin + dmax) / 2.0


def _indexed_uniform(seed: int, index: int, d: int) -> np.ndarray:
    ss = np.random.SeedSequence(entropy=seed, spawn_key=(102, index))
    return np.random.Generator(np.random.Philox(ss)).random(d)


def ils(net: AttributeNetwork, cfg: LandscapeConfig) -> IlsResult:
    """Collect local optima with an iterated local search.

    Discrete space: best-improvement descent over all single-selection
    changes, perturbation rewrites `perturb_edges` random selections.
    Continuous space: first-improvement descent sampling `ls_trials` points
    per step inside the epsilon-ball, perturbation jumps to a point farther
    than epsilon. Runs until `local_optima_budget` optima are recorded.
    """
    rng = np.random.Generator(
        np.random.Philox(
            np.random.SeedSequence(
                entropy=cfg.seed,
                spawn_key=(7, SPACES.index(cfg.space), OBJECTIVES.index(cfg.objective)),
            )
        )
    )
    if cfg.space == "discrete":
        return _ils_discrete(net, cfg, rng)
    return _ils_continuous(net, cfg, rng)


class _Archive:
    """Recorded optima plus novelty bookkeeping and the best-value set."""

    def __init__(self, novelty: str, net: AttributeNetwork, space: str):
        self.genotypes: list[np.ndarray] = []
        self.values: list[float] = []
        self.best_value = np.inf
        self.best_genotypes: list[np.ndarray] = []
        self._novelty = novelty
        self._net = net
        self._space = space
        self._seen: set[bytes] = set()
        self._seen_vectors: list[np.ndarray] = []

    def _novelty_key(self, genotype: np.ndarray, value: float) -> bytes:
        if self._novelty == "value":
            return np.float64(value).tobytes()
        if self._novelty == "phenotype":
            if self._space == "discrete":
                part = decode_labels(genotype, self._net.node_count)
            else:
                part = gnn_decode(genotype, self._net)
            return part.community_of.tobytes()
        return np.ascontiguousarray(genotype).tobytes()

    def record(self, genotype: np.ndarray, value: float) -> bool:
        """Store one optimum; returns True when it was not seen before."""
        g = genotype.copy()
        self.genotypes.append(g)
        self.values.append(value)
        if value < self.best_value - _VALUE_TIE_TOL:
            self.best_value = value
            self.best_genotypes = [g]
        elif value <= self.best_value + _VALUE_TIE_TOL and len(self.best_genotypes) < _BEST_SET_CAP:
            self.best_genotypes.append(g)

        if self._novelty == "genotype" and self._space == "continuous":
            # vector identity up to a tiny Euclidean tolerance
            for seen in self._seen_vectors:
                if np.sqrt(((seen - g) ** 2).sum()) <= _NOVELTY_EUCLID_TOL:
                    return False
            self._seen_vectors.append(g)
            return True
        key = self._novelty_key(g, value)
        if key in self._seen:
            return False
        self._seen.add(key)
        return True


def _ils_discrete(net: AttributeNetwork, cfg: LandscapeConfig, rng) -> IlsResult:
    value_of = _partition_value_fn(net, cfg)
    scan = _DiscreteScan(net, cfg)
    counters = IlsCounters()
    archive = _Archive(cfg.resolved_novelty(), net, "discrete")
    movable = np.flatnonzero(net.degrees > 0)

    sel = random_selection(net, rng).selected_neighbor
    value = value_of(decode_labels(sel, net.node_count))
    while True:
        sel, value = _descend_discrete(sel, value, scan, value_of, net, counters)
        counters.optima += 1
        is_new = archive.record(sel, value)
        if counters.perturbations and is_new:
            counters.escapes += 1
        if counters.optima >= cfg.local_optima_budget:
            break
        sel = _perturb_discrete(sel, net, cfg, rng, movable)
        value = value_of(decode_labels(sel, net.node_count))
        counters.perturbations += 1
        counters.moves += 1
    return IlsResult(
        genotypes=archive.genotypes,
        values=np.array(archive.values),
        counters=counters,
        best_value=archive.best_value,
        best_genotypes=archive.best_genotypes,
    )


_SCAN_TIE_TOL = 1e-9
_SCAN_TIE_CAP = 4


def _descend_discrete(sel, value, scan, value_of, net, counters):
    # Best-improvement descent. The batched scan ranks the neighbourhood; the
    # winner (and any float-level ties) is re-checked with the canonical
    # evaluator so rounding differences between the two paths cannot create
    # spurious moves or fake optima.
    while True:
        nodes, choices = scan.neighbor_list(sel)
        if nodes.size == 0:
            return sel, value
        values = scan.values(sel, nodes, choices)
        order = np.argsort(values, kind="stable")
        vmin = values[order[0]]
        moved = False
        for k in order[:_SCAN_TIE_CAP].tolist():
            if values[k] > vmin + _SCAN_TIE_TOL:
                break
            candidate = sel.copy()
            candidate[nodes[k]] = choices[k]
            cand_value = value_of(decode_labels(candidate, net.node_count))
            if cand_value < value:
                sel, value = candidate, cand_value
                counters.moves += 1
                moved = True
                break
        if not moved:
            return sel, value


def _perturb_discrete(sel, net, cfg, rng, movable) -> np.ndarray:
    out = sel.copy()
    if movable.size == 0:
        return out
    k = min(cfg.perturb_edges, movable.size)
    nodes = rng.choice(movable, size=k, replace=False)
    for i in nodes.tolist():
        options = net.adjacency[i]
        if options.size > 1:
            others = options[options != out[i]]
            out[i] = others[rng.integers(others.size)]
        else:
            out[i] = options[0]
    return out


def _ils_continuous(net: AttributeNetwork, cfg: LandscapeConfig, rng) -> IlsResult:
    value_of = _partition_value_fn(net, cfg)
    d = net.genotype_length
    epsilon = cfg.epsilon if cfg.epsilon is not None else calibrate_epsilon(net, cfg)
    counters = IlsCounters()
    archive = _Archive(cfg.resolved_novelty(), net, "continuous")
    scan = _DiscreteScan(net, cfg)

    def evaluate(x: np.ndarray) -> float:
        return value_of(gnn_decode(x, net))

    x = rng.random(d)
    value = evaluate(x)
    while True:
        x, value = _descend_continuous(
            x, value, epsilon, cfg, rng, evaluate, counters, net, scan, value_of
        )
        # record (and continue from) the canonical representative of the
        # optimum's argmax region: same selection and value, but comparable
        # coordinates, so genotype-space distances between optima measure
        # selection disagreement instead of sampling noise
        x = selection_genotype(encode(x, net), net)
        counters.optima += 1
        is_new = archive.record(x, value)
        if counters.perturbations and is_new:
            counters.escapes += 1
        if counters.optima >= cfg.local_optima_budget:
            break
        x = _jump_outside(x, epsilon, rng, d)
        value = evaluate(x)
        counters.perturbations += 1
        counters.moves += 1
    return IlsResult(
        genotypes=archive.genotypes,
        values=np.array(archive.values),
        counters=counters,
        best_value=archive.best_value,
        best_genotypes=archive.best_genotypes,
        epsilon=epsilon,
    )


def _descend_continuous(x, value, epsilon, cfg, rng, evaluate, counters, net, scan, value_of):
    # Alternate a stochastic sampling phase with a deterministic descent over
    # single-selection rewrites. A rewrite changes one node's genotype block
    # so its argmax switches neighbour; the rewritten point stays within the
    # epsilon-ball whenever its Euclidean offset fits, so the sweep is part of
    # the same neighbourhood search. Without it a bounded trial budget
    # declares optima wherever sampling happens to stall, which buries the
    # attractor structure of the decoded landscape under stopping noise.
    while True:
        while True:  # sampling phase: first-improvement, fixed trial budget
            improved = False
            for _ in range(cfg.ls_trials):
                candidate = _sample_in_ball(x, epsilon, rng)
                cand_value = evaluate(candidate)
                if cand_value < value:
                    x, value = candidate, cand_value
                    counters.moves += 1
                    improved = True
                    break
            if not improved:
                break
        flips = 0
        while True:  # deterministic phase: best improving rewrite, repeated
            flipped = _improving_flip(x, value, epsilon, net, scan, value_of)
            if flipped is None:
                break
            x, value = flipped
            counters.moves += 1
            flips += 1
        if flips == 0:
            return x, value


def _improving_flip(x, value, epsilon, net, scan, value_of):
    """Best strictly-improving single-selection rewrite of x within the ball."""
    sel = _encode_array(x, net)
    nodes, choices = scan.neighbor_list(sel)
    if nodes.size == 0:
        return None
    values = scan.values(sel, nodes, choices)
    order = np.argsort(values, kind="stable")
    vmin = values[order[0]]
    for k in order[:_SCAN_TIE_CAP].tolist():
        if values[k] > vmin + _SCAN_TIE_TOL:
            break
        candidate_sel = sel.copy()
        candidate_sel[nodes[k]] = choices[k]
        cand_value = value_of(decode_labels(candidate_sel, net.node_count))
        if cand_value >= value:
            continue
        candidate = _rewrite_block(x, int(nodes[k]), int(choices[k]), net)
        if np.sqrt(((candidate - x) ** 2).sum()) <= epsilon:
            return candidate, cand_value
    return None


def _rewrite_block(x: np.ndarray, node: int, neighbor: int, net: AttributeNetwork) -> np.ndarray:
    """Copy of x whose block for `node` canonically selects `neighbor`.

    The chosen slot becomes 0.75 and the block's other slots 0.25, the
    canonical continuous representation of one selected neighbour. Canonical
    rewrites give repeatedly-descended optima comparable coordinates, so
    genotype-space distances between deep optima reflect how much their
    selections disagree rather than leftover initialisation noise.
    """
    out = x.copy()
    lo, hi = int(net.block_offsets[node]), int(net.block_offsets[node + 1])
    out[lo:hi] = 0.25
    slot = lo + int(np.searchsorted(net.adjacency[node], neighbor))
    out[slot] = 0.75
    return out


def _encode_array(x: np.ndarray, net: AttributeNetwork) -> np.ndarray:
    return encode(x, net).selected_neighbor


def _sample_in_ball(x: np.ndarray, epsilon: float, rng) -> np.ndarray:
    # random direction, radius uniform on (0, epsilon], clipped to the box.
    # Radius-uniform sampling deliberately covers all step scales: in high
    # dimension nearly all of the ball's volume sits at distance ~epsilon
    # from x, and drawing only such points would reduce the local search to
    # global random sampling with no refinement steps.
    u = rng.standard_normal(x.size)
    norm = np.sqrt((u**2).sum())
    if norm == 0.0:
        return x.copy()
    c = x + (epsilon * rng.random()) * u / norm
    np.clip(c, 0.0, 1.0, out=c)
    return c


def _jump_outside(x: np.ndarray, epsilon: float, rng, d: int) -> np.ndarray:
    for _ in range(64):
        c = rng.random(d)
        if np.sqrt(((c - x) ** 2).sum()) > epsilon:
            return c
    return c


class _DiscreteScan:
    """Batched evaluation of the full single-change neighbourhood.

    All neighbour genotypes of a selection are decoded in one shot: their
    selection graphs are laid out block-diagonally and labelled with a single
    connected-components call, then the objective is reduced per block with
    bincounts. Chunked so memory stays bounded on large networks. Values may
    differ from the scalar evaluator by float rounding, so callers re-check
    the winning candidate canonically before accepting a move.
    """

    def __init__(self, net: AttributeNetwork, cfg: LandscapeConfig):
        self.net = net
        self.cfg = cfg
        r = net.node_count
        self.cand_node = np.repeat(np.arange(r), net.degrees)
        self.cand_choice = np.concatenate(
            [a for a in net.adjacency if a.size] or [np.empty(0, dtype=np.int64)]
        )
        cells_cap = 4_000_000
        per_row = max(r * max(1, net.attr_dim if cfg.objective == "attr" else 1), 1)
        self.chunk = max(1, cells_cap // per_row)

    def neighbor_list(self, sel: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
        keep = self.cand_choice != sel[self.cand_node]
        return self.cand_node[keep], self.cand_choice[keep]

    def values(self, sel: np.ndarray, nodes: np.ndarray, choices: np.ndarray) -> np.ndarray:
        out = np.empty(nodes.size)
        for start in range(0, nodes.size, self.chunk):
            stop = min(start + self.chunk, nodes.size)
            out[start:stop] = self._chunk_values(sel, nodes[start:stop], choices[start:stop])
        return out

    def _chunk_values(self, sel, nodes, choices) -> np.ndarray:
        net = self.net
        r = net.node_count
        m = nodes.size
        offsets = np.arange(m, dtype=np.int64) * r

        dst = np.tile(sel, (m, 1))
        dst[np.arange(m), nodes] = choices
        src = np.tile(np.arange(r, dtype=np.int64), (m, 1)) + offsets[:, None]
        dst = dst + offsets[:, None]
        valid = (dst - offsets[:, None]) >= 0

        graph = coo_matrix(
            (np.ones(int(valid.sum()), dtype=np.int8), (src[valid], dst[valid])),
            shape=(m * r, m * r),
        )
        n_labels, labels = connected_components(graph, directed=False)
        label_block = np.empty(n_labels, dtype=np.int64)
        label_block[labels] = np.arange(m * r) // r
        sizes = np.bincount(labels, minlength=n_labels)

        if self.cfg.objective == "q":
            return self._q_values(labels, label_block, n_labels, m, offsets)
        return self._attr_values(labels, label_block, sizes, n_labels, m)

    def _q_values(self, labels, label_block, n_labels, m, offsets):
        net = self.net
        L = net.edge_count
        deg_tile = np.tile(net.degrees, m).astype(np.float64)
        dsum = np.bincount(labels, weights=deg_tile, minlength=n_labels)
        eu = (net.edges[:, 0][None, :] + offsets[:, None]).ravel()
        ev = (net.edges[:, 1][None, :] + offsets[:, None]).ravel()
        lu, lv = labels[eu], labels[ev]
        intra = np.bincount(lu[lu == lv], minlength=n_labels)
        contrib = intra / L - (dsum / (2.0 * L)) ** 2
        q = np.bincount(label_block, weights=contrib, minlength=m)
        return -q

    def _attr_values(self, labels, label_block, sizes, n_labels, m):
        net = self.net
        starts = np.zeros(n_labels, dtype=np.int64)
        np.cumsum(sizes[:-1], out=starts[1:])
        if net.attribute_kind == "single":
            attr_tile = np.tile(net.attributes[:, 0], m)
            order = np.lexsort((attr_tile, labels))
            svals = attr_tile[order]
            pos = np.arange(svals.size) - np.repeat(starts, sizes)
            n_of = np.repeat(sizes, sizes)
            pairsum = np.add.reduceat((2.0 * pos - (n_of - 1)) * svals, starts)
        else:
            unit = np.tile(net.unit_attributes, (m, 1))
            acc = np.zeros((n_labels, unit.shape[1]))
            np.add.at(acc, labels, unit)
            pairsum = ((acc**2).sum(axis=1) - sizes) / 2.0
        numer = np.bincount(label_block, weights=pairsum, minlength=m)
        if self.cfg.denominator == "none":
            return numer
        denom_label = _denominator_per_label(sizes, self.cfg.denominator)
        denom = np.bincount(label_block, weights=denom_label, minlength=m)
        return np.where(denom > 0, numer / np.where(denom > 0, denom, 1.0), 0.0)


def _denominator_per_label(sizes: np.ndarray, denominator: str) -> np.ndarray:
    s = sizes.astype(np.float64)
    if denominator == "pairs":
        return s * (s - 1)
    if denominator == "size":
        return s
    if denominator == "size_sq":
        return s**2
    if denominator == "size_minus1_sq":
        return (s - 1) ** 2
    raise ValueError(f"unknown denominator {denominator!r}")


def convert_best(
    genotypes: list[np.ndarray], from_space: str, to_space: str, net: AttributeNetwork
) -> list[np.ndarray]:
    """Map best-known solutions between spaces.

    A discrete selection becomes its canonical continuous genotype; a
    continuous genotype becomes its encoded selection. Values carry over
    unchanged because both representations decode to the same partition.
    """
    if from_space == to_space:
        return [np.asarray(g) for g in genotypes]
    out = []
    for g in genotypes:
        g = np.asarray(g)
        if from_space == "discrete":
            out.append(selection_genotype(EdgeSelection(g), net))
        else:
            out.append(encode(g, net).selected_neighbor)
    return out


def merge_best(
    entries: list[tuple[float, np.ndarray]], cap: int = _BEST_SET_CAP
) -> tuple[float, list[np.ndarray]]:
    """Reduce (value, genotype) pairs to the best value and its tied members."""
    best_value = np.inf
    best: list[np.ndarray] = []
    for v, g in entries:
        if v < best_value - _VALUE_TIE_TOL:
            best_value = v
            best = [g]
        elif v <= best_value + _VALUE_TIE_TOL and len(best) < cap:
            best.append(g)
    return best_value, best


def analyze(
    net: AttributeNetwork,
    cfg: LandscapeConfig,
    extra_best_genotypes: list[np.ndarray] | None = None,
    extra_best_values: list[float] | None = None,
) -> tuple[LandscapeReport, IlsResult]:
    """Run one (space, objective) ILS and reduce it to a LandscapeReport.

    `extra_best_*` lets callers widen the best-known solution set beyond what
    the ILS itself found (for instance with an evolutionary run's front).
    """
    result = ils(net, cfg)
    best_value = result.best_value
    best = list(result.best_genotypes)
    if extra_best_genotypes:
        vals = extra_best_values or []
        for g, v in zip(extra_best_genotypes, vals):
            g = np.asarray(g)
            if cfg.space == "continuous" and g.dtype.kind == "f":
                g = selection_genotype(encode(g, net), net)
            if v < best_value - _VALUE_TIE_TOL:
                best_value = v
                best = [g]
            elif v <= best_value + _VALUE_TIE_TOL and len(best) < _BEST_SET_CAP:
                best.append(g)
    correlation = fdc(
        result.values,
        result.genotypes,
        best,
        cfg.space,
        sample=cfg.fdc_sample,
        seed=cfg.seed,
    )
    report = LandscapeReport(
        space=cfg.space,
        objective=cfg.objective,
        lod=lod(result.counters),
        er=er(result.counters),
        fdc=correlation,
    )
    return report, result
