"""Multi-objective evolutionary engine (NSGA-II selection, DE variation).

Each generation: binary-tournament parent pool of size N, one DE/rand/1
offspring per pool slot followed by polynomial mutation, merge with the
current population, fast non-dominated sort, and crowding-based truncation
back to N. All randomness comes from one counter-based stream per run
(Philox), split into per-generation substreams, so runs are reproducible
regardless of how evaluations are scheduled.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .graph import AttributeNetwork, Partition
from .encoding import gnn_decode
from .metrics import nmi
from .objectives import DEFAULT_DENOMINATOR, ObjectiveVector, evaluate

log = logging.getLogger(__name__)

LOWER_BOUND = 0.0
UPPER_BOUND = 1.0


@dataclass
class EngineConfig:
    population_size: int = 100
    generations: int = 200
    f_de: float = 0.7
    cr: float = 0.5
    p_m: float = 0.02
    eta_m: float = 20.0
    seed: int = 0

    def __post_init__(self) -> None:
        if self.population_size <= 0 or self.population_size % 2:
            raise ValueError("population_size must be a positive even integer")
        if self.generations <= 0:
            raise ValueError("generations must be positive")
        if self.f_de <= 0:
            raise ValueError("f_de must be positive")
        if not 0.0 <= self.cr <= 1.0:
            raise ValueError("cr must be in [0,1]")
        if not 0.0 <= self.p_m <= 1.0:
            raise ValueError("p_m must be in [0,1]")
        if self.eta_m <= 0:
            raise ValueError("eta_m must be positive")


@dataclass(eq=False)  # identity comparison; genotypes are arrays
class Individual:
    genotype: np.ndarray
    objectives: ObjectiveVector
    rank: int = 0
    crowding: float = 0.0


@dataclass
class EngineResult:
    population: list[Individual]
    front: list[Individual]
    generations: int


def dominates(a: ObjectiveVector, b: ObjectiveVector) -> bool:
    """Pareto dominance: no worse in all objectives, better in at least one."""
    return a.f1 <= b.f1 and a.f2 <= b.f2 and (a.f1 < b.f1 or a.f2 < b.f2)


def fast_nondominated_sort(objs: Sequence[ObjectiveVector]) -> list[list[int]]:
    """Partition indices into non-dominated fronts (front 0 first)."""
    F = np.asarray(objs, dtype=np.float64).reshape(len(objs), -1)
    if F.shape[0] == 0:
        raise ValueError("cannot sort an empty objective list")
    le = (F[:, None, :] <= F[None, :, :]).all(axis=2)
    lt = (F[:, None, :] < F[None, :, :]).any(axis=2)
    dom = le & lt  # dom[i, j]: i dominates j
    n_dominators = dom.sum(axis=0)
    fronts: list[list[int]] = []
    remaining = np.ones(F.shape[0], dtype=bool)
    while remaining.any():
        members = np.flatnonzero(remaining & (n_dominators == 0))
        fronts.append(members.tolist())
        remaining[members] = False
        n_dominators = n_dominators - dom[members].sum(axis=0)
    return fronts


def crowding_distance(objs: Sequence[ObjectiveVector]) -> np.ndarray:
    """NSGA-II crowding distance within one front.

    Boundary points per objective get +inf; interior points accumulate
    normalised gaps between their sorted neighbours. Objectives with zero
    range contribute nothing.
    """
    F = np.asarray(objs, dtype=np.float64).reshape(len(objs), -1)
    n = F.shape[0]
    dist = np.zeros(n)
    if n == 0:
        return dist
    for m in range(F.shape[1]):
        order = np.argsort(F[:, m], kind="stable")
        vals = F[order, m]
        dist[order[0]] = np.inf
        dist[order[-1]] = np.inf
        span = vals[-1] - vals[0]
        if n > 2 and span > 0:
            dist[order[1:-1]] += (vals[2:] - vals[:-2]) / span
    return dist


def binary_tournament(
    ranks: np.ndarray, crowding: np.ndarray, rng: np.random.Generator, picks: int
) -> np.ndarray:
    """Indices of `picks` tournament winners (2 contestants, with replacement).

    Lower rank wins, then higher crowding, then the first contestant drawn.
    """
    n = ranks.shape[0]
    a = rng.integers(0, n, size=picks)
    b = rng.integers(0, n, size=picks)
    b_wins = (ranks[b] < ranks[a]) | ((ranks[b] == ranks[a]) & (crowding[b] > crowding[a]))
    return np.where(b_wins, b, a)


def de_variation(
    x1: np.ndarray,
    x2: np.ndarray,
    x3: np.ndarray,
    cfg: EngineConfig,
    rng: np.random.Generator,
) -> np.ndarray:
    """DE/rand/1 crossover followed by polynomial mutation, clamped to [0,1].

    Per dimension: y = x1 + F_DE (x2 - x3) when rand() <= CR, else x1; clamp;
    then with probability p_m perturb by the bounded polynomial-mutation step
    with distribution index eta_m; clamp again.
    """
    d = x1.shape[0]
    cross = rng.random(d) <= cfg.cr
    y = np.where(cross, x1 + cfg.f_de * (x2 - x3), x1)
    np.clip(y, LOWER_BOUND, UPPER_BOUND, out=y)

    mutate = rng.random(d) < cfg.p_m
    rhat = rng.random(d)
    if mutate.any():
        width = UPPER_BOUND - LOWER_BOUND
        up = (UPPER_BOUND - y) / width
        lo = (y - LOWER_BOUND) / width
        eta = cfg.eta_m
        low_branch = (2.0 * rhat + (1.0 - 2.0 * rhat) * up**eta) ** (1.0 / eta) - 1.0
        high_branch = 1.0 - (2.0 - 2.0 * rhat + (2.0 * rhat - 1.0) * lo**eta) ** (1.0 / eta)
        delta = np.where(rhat < 0.5, low_branch, high_branch)
        y = np.where(mutate, y + delta * width, y)
        np.clip(y, LOWER_BOUND, UPPER_BOUND, out=y)
    return y


def _rank_and_crowd(population: list[Individual]) -> list[list[int]]:
    objs = [ind.objectives for ind in population]
    fronts = fast_nondominated_sort(objs)
    for rank, front in enumerate(fronts):
        cd = crowding_distance([population[i].objectives for i in front])
        for pos, i in enumerate(front):
            population[i].rank = rank
            population[i].crowding = float(cd[pos])
    return fronts


def _pick_mates(j: int, pool_size: int, rng: np.random.Generator) -> tuple[int, int]:
    # two distinct pool members other than j; degenerate pools fall back to
    # sampling with replacement
    if pool_size >= 3:
        candidates = np.delete(np.arange(pool_size), j)
        a, b = rng.choice(candidates, size=2, replace=False)
    elif pool_size == 2:
        other = 1 - j
        a = b = other
    else:
        a = b = j
    return int(a), int(b)


def run(
    net: AttributeNetwork,
    cfg: EngineConfig,
    denominator: str = DEFAULT_DENOMINATOR,
) -> EngineResult:
    """Run the full optimisation and return the final population and front 0."""
    n, d = cfg.population_size, net.genotype_length
    root = np.random.SeedSequence(cfg.seed)
    streams = root.spawn(cfg.generations + 1)
    rng_init = np.random.Generator(np.random.Philox(streams[0]))

    genotypes = rng_init.random((n, d))
    population = [
        Individual(genotype=genotypes[i], objectives=evaluate(genotypes[i], net, denominator))
        for i in range(n)
    ]
    _rank_and_crowd(population)

    for gen in range(cfg.generations):
        rng = np.random.Generator(np.random.Philox(streams[gen + 1]))
        ranks = np.array([ind.rank for ind in population])
        crowd = np.array([ind.crowding for ind in population])
        pool = binary_tournament(ranks, crowd, rng, picks=n)

        offspring: list[Individual] = []
        for j in range(n):
            a, b = _pick_mates(j, n, rng)
            y = de_variation(
                population[pool[j]].genotype,
                population[pool[a]].genotype,
                population[pool[b]].genotype,
                cfg,
                rng,
            )
            offspring.append(Individual(genotype=y, objectives=evaluate(y, net, denominator)))

        merged = population + offspring
        fronts = _rank_and_crowd(merged)
        population = _environmental_selection(merged, fronts, n)

        if log.isEnabledFor(logging.INFO):
            best_q = -min(ind.objectives.f1 for ind in population if ind.rank == 0)
            front_size = sum(ind.rank == 0 for ind in population)
            log.info("generation %d: best Q %.6g, front size %d", gen + 1, best_q, front_size)

    front = [ind for ind in population if ind.rank == 0]
    return EngineResult(population=population, front=front, generations=cfg.generations)


def _environmental_selection(
    merged: list[Individual], fronts: list[list[int]], n: int
) -> list[Individual]:
    chosen: list[Individual] = []
    for front in fronts:
        if len(chosen) + len(front) <= n:
            chosen.extend(merged[i] for i in front)
            if len(chosen) == n:
                break
        else:
            # stable sort keeps lowest index first among equal crowding values
            by_crowding = sorted(front, key=lambda i: -merged[i].crowding)
            chosen.extend(merged[i] for i in by_crowding[: n - len(chosen)])
            break
    return chosen


def select_report_solution(
    front: Sequence[Individual],
    policy: str,
    net: AttributeNetwork | None = None,
    truth: Partition | None = None,
) -> Individual:
    """Pick one front member to report.

    Policies: "max_q" (lowest f1, ties to lowest f2 then lowest index),
    "max_nmi" (highest agreement with the given ground truth), "knee" (largest
    perpendicular distance to the line joining the front's objective extremes).
    """
    if not front:
        raise ValueError("empty front")
    if policy == "max_q":
        best = 0
        for i in range(1, len(front)):
            fi, fb = front[i].objectives, front[best].objectives
            if fi.f1 < fb.f1 or (fi.f1 == fb.f1 and fi.f2 < fb.f2):
                best = i
        return front[best]
    if policy == "max_nmi":
        if truth is None or net is None:
            raise ValueError("max_nmi policy needs the network and ground-truth labels")
        scores = [nmi(gnn_decode(ind.genotype, net), truth) for ind in front]
        return front[int(np.argmax(scores))]
    if policy == "knee":
        F = np.array([ind.objectives for ind in front])
        lo1 = int(np.lexsort((F[:, 1], F[:, 0]))[0])
        lo2 = int(np.lexsort((F[:, 0], F[:, 1]))[0])
        p, q = F[lo1], F[lo2]
        span = np.hypot(*(q - p))
        if span == 0:
            return front[0]
        dists = np.abs((q[0] - p[0]) * (p[1] - F[:, 1]) - (p[0] - F[:, 0]) * (q[1] - p[1])) / span
        return front[int(np.argmax(dists))]
    raise ValueError(f"unknown policy {policy!r}")
