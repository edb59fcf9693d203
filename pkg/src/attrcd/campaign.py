"""Multi-seed experiment campaigns and their result files.

A campaign runs the engine once per seed on one network, reduces each run to
a RunRecord, and aggregates selected-solution and front-wide statistics over
seeds. All emitted files are byte-deterministic for a fixed configuration;
wall-clock timings are reported on the console only, never in artifacts.
"""

from __future__ import annotations

import json
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .graph import AttributeNetwork, Partition
from .encoding import gnn_decode
from .engine import EngineConfig, run, select_report_solution
from .metrics import density, entropy, nmi
from .objectives import DEFAULT_DENOMINATOR


@dataclass
class RunRecord:
    seed: int
    generations: int
    front: list[tuple[float, float]]
    selected_policy: str
    selected_f1: float
    selected_f2: float
    selected_k: int
    selected_density: float
    selected_entropy: float
    selected_nmi: float | None
    selected_assignment: list[int]
    front_density_min: float
    front_density_max: float
    front_entropy_min: float
    front_entropy_max: float
    front_k_min: int
    front_k_max: int
    front_nmi_max: float | None
    wall_time_s: float


def run_seed(
    net: AttributeNetwork,
    seed: int,
    base_cfg: EngineConfig,
    policy: str = "max_q",
    denominator: str = DEFAULT_DENOMINATOR,
    truth: Partition | None = None,
) -> RunRecord:
    """One engine run plus metric reduction for one seed."""
    cfg = EngineConfig(
        population_size=base_cfg.population_size,
        generations=base_cfg.generations,
        f_de=base_cfg.f_de,
        cr=base_cfg.cr,
        p_m=base_cfg.p_m,
        eta_m=base_cfg.eta_m,
        seed=seed,
    )
    t0 = time.perf_counter()
    result = run(net, cfg, denominator)
    wall = time.perf_counter() - t0

    front = sorted(result.front, key=lambda ind: (ind.objectives.f1, ind.objectives.f2))
    parts = [gnn_decode(ind.genotype, net) for ind in front]
    dens = [density(p, net) for p in parts]
    ents = [entropy(p, net) for p in parts]
    ks = [p.community_count for p in parts]
    nmis = [nmi(p, truth) for p in parts] if truth is not None else None

    selected = select_report_solution(front, policy, net=net, truth=truth)
    sel_idx = next(i for i, ind in enumerate(front) if ind is selected)
    sel_part = parts[sel_idx]

    return RunRecord(
        seed=seed,
        generations=cfg.generations,
        front=[(float(i.objectives.f1), float(i.objectives.f2)) for i in front],
        selected_policy=policy,
        selected_f1=float(selected.objectives.f1),
        selected_f2=float(selected.objectives.f2),
        selected_k=sel_part.community_count,
        selected_density=dens[sel_idx],
        selected_entropy=ents[sel_idx],
        selected_nmi=nmis[sel_idx] if nmis is not None else None,
        selected_assignment=sel_part.community_of.tolist(),
        front_density_min=min(dens),
        front_density_max=max(dens),
        front_entropy_min=min(ents),
        front_entropy_max=max(ents),
        front_k_min=min(ks),
        front_k_max=max(ks),
        front_nmi_max=max(nmis) if nmis is not None else None,
        wall_time_s=wall,
    )


def _seed_worker(args) -> RunRecord:
    return run_seed(*args)


def run_campaign(
    net: AttributeNetwork,
    seeds: list[int],
    base_cfg: EngineConfig,
    policy: str = "max_q",
    denominator: str = DEFAULT_DENOMINATOR,
    truth: Partition | None = None,
    jobs: int = 1,
) -> list[RunRecord]:
    """Run all seeds (optionally in parallel) and return records in seed order."""
    tasks = [(net, s, base_cfg, policy, denominator, truth) for s in seeds]
    if jobs > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            records = list(pool.map(_seed_worker, tasks))
    else:
        records = [run_seed(*t) for t in tasks]
    return sorted(records, key=lambda rec: rec.seed)


def _stats(values: list[float]) -> dict[str, float]:
    arr = np.asarray(values, dtype=np.float64)
    return {
        "max": float(arr.max()),
        "min": float(arr.min()),
        "avg": float(arr.mean()),
        "std": float(arr.std()),
    }


def aggregate(records: list[RunRecord]) -> dict:
    """Campaign statistics over seeds, for selected solutions and front ranges."""
    if not records:
        raise ValueError("no records to aggregate")
    sel_d = _stats([r.selected_density for r in records])
    sel_e = _stats([r.selected_entropy for r in records])
    ks = [r.selected_k for r in records]
    modal_k = int(np.bincount(ks).argmax())
    out = {
        "seeds": [r.seed for r in records],
        "policy": records[0].selected_policy,
        "selected": {
            "d_max": sel_d["max"], "d_min": sel_d["min"],
            "d_avg": sel_d["avg"], "d_std": sel_d["std"],
            "e_max": sel_e["max"], "e_min": sel_e["min"],
            "e_avg": sel_e["avg"], "e_std": sel_e["std"],
            "k_min": min(ks), "k_max": max(ks), "k_modal": modal_k,
        },
        "front": {
            "d_max": max(r.front_density_max for r in records),
            "d_min": min(r.front_density_min for r in records),
            "e_max": max(r.front_entropy_max for r in records),
            "e_min": min(r.front_entropy_min for r in records),
            "k_min": min(r.front_k_min for r in records),
            "k_max": max(r.front_k_max for r in records),
        },
    }
    if records[0].selected_nmi is not None:
        nm = _stats([r.selected_nmi for r in records])
        out["selected"].update(
            {"nmi_max": nm["max"], "nmi_min": nm["min"], "nmi_avg": nm["avg"], "nmi_std": nm["std"]}
        )
        out["front"]["nmi_max_avg"] = float(
            np.mean([r.front_nmi_max for r in records])
        )
        out["front"]["nmi_max_per_seed"] = [r.front_nmi_max for r in records]
    return out


def record_to_json_dict(rec: RunRecord) -> dict:
    """JSON form of a record; wall time is deliberately excluded so reruns
    with the same seed produce byte-identical files."""
    return {
        "seed": rec.seed,
        "generations": rec.generations,
        "front": [[f1, f2] for f1, f2 in rec.front],
        "selected": {
            "policy": rec.selected_policy,
            "f1": rec.selected_f1,
            "f2": rec.selected_f2,
            "community_count": rec.selected_k,
            "density": rec.selected_density,
            "entropy": rec.selected_entropy,
            "nmi": rec.selected_nmi,
        },
        "front_stats": {
            "density_min": rec.front_density_min,
            "density_max": rec.front_density_max,
            "entropy_min": rec.front_entropy_min,
            "entropy_max": rec.front_entropy_max,
            "community_count_min": rec.front_k_min,
            "community_count_max": rec.front_k_max,
            "nmi_max": rec.front_nmi_max,
        },
    }


def write_campaign(records: list[RunRecord], out_dir: str | Path) -> dict:
    """Write per-seed record/front/assignment files plus campaign aggregates."""
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    for rec in records:
        seed_dir = out_dir / f"seed_{rec.seed:04d}"
        seed_dir.mkdir(exist_ok=True)
        with open(seed_dir / "record.json", "w", encoding="utf-8") as fh:
            json.dump(record_to_json_dict(rec), fh, indent=2, sort_keys=True)
            fh.write("\n")
        with open(seed_dir / "front.csv", "w", encoding="utf-8") as fh:
            fh.write("f1,f2\n")
            for f1, f2 in rec.front:
                fh.write(f"{f1:.6g},{f2:.6g}\n")
        with open(seed_dir / "assignment.txt", "w", encoding="utf-8") as fh:
            for comm in rec.selected_assignment:
                fh.write(f"{comm}\n")

    agg = aggregate(records)
    with open(out_dir / "aggregate.json", "w", encoding="utf-8") as fh:
        json.dump(agg, fh, indent=2, sort_keys=True)
        fh.write("\n")
    with open(out_dir / "aggregate.csv", "w", encoding="utf-8") as fh:
        cols = ["scope", "d_max", "d_min", "d_avg", "d_std",
                "e_max", "e_min", "e_avg", "e_std", "k_min", "k_max"]
        fh.write(",".join(cols) + "\n")
        sel = agg["selected"]
        fh.write(
            "selected,"
            + ",".join(f"{sel[c]:.6g}" for c in cols[1:9])
            + f",{sel['k_min']},{sel['k_max']}\n"
        )
        fr = agg["front"]
        fh.write(
            "front,"
            + f"{fr['d_max']:.6g},{fr['d_min']:.6g},,,"
            + f"{fr['e_max']:.6g},{fr['e_min']:.6g},,,"
            + f"{fr['k_min']},{fr['k_max']}\n"
        )
    return agg
