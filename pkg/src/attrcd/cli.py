"""Command-line harness: detect, landscape, gen-planted.

Exit codes: 0 success, 1 validation error (bad flags, unreadable or
inconsistent inputs), 2 unexpected runtime error.
"""

from __future__ import annotations

import argparse
import logging
import sys
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

from . import campaign, landscape
from .encoding import encode, selection_genotype
from .engine import EngineConfig, run as engine_run
from .graph import load_network, load_truth
from .landscape import LandscapeConfig, calibrate_epsilon
from .objectives import DENOMINATORS, DEFAULT_DENOMINATOR
from .planted import gen_planted, write_planted


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # argparse defaults to exit code 2
        self.print_usage(sys.stderr)
        raise ValidationError(message)


class ValidationError(ValueError):
    pass


def _read_config_file(path: str) -> dict[str, str]:
    """Flat key=value config lines; blank lines and # comments ignored."""
    values: dict[str, str] = {}
    p = Path(path)
    if not p.exists():
        raise ValidationError(f"config file not found: {path}")
    for lineno, raw in enumerate(p.read_text(encoding="utf-8").splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if "=" not in line:
            raise ValidationError(f"{path}:{lineno}: expected key = value")
        key, _, val = line.partition("=")
        values[key.strip()] = val.strip()
    return values


def _merge(args: argparse.Namespace, config: dict[str, str], key: str, cast, default):
    flag_val = getattr(args, key, None)
    if flag_val is not None:
        return flag_val
    if key in config:
        try:
            return cast(config[key])
        except ValueError as exc:
            raise ValidationError(f"config key {key!r}: {exc}") from exc
    return default


def build_parser() -> _Parser:
    parser = _Parser(prog="attrcd", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    det = sub.add_parser("detect", help="run a multi-seed detection campaign")
    det.add_argument("--edges", help="edge list file")
    det.add_argument("--attrs", help="attribute file")
    det.add_argument("--kind", choices=("single", "multi"), help="attribute kind")
    det.add_argument("--truth", help="optional ground-truth label file")
    det.add_argument("--seeds", type=int, help="number of seeds (default 31)")
    det.add_argument("--seed-base", type=int, help="first seed (default 0)")
    det.add_argument("--config", help="flat key=value config file; flags override")
    det.add_argument("--out", help="output directory (default campaign_out)")
    det.add_argument("--pop", type=int, dest="population_size", help="population size")
    det.add_argument("--gens", type=int, dest="generations", help="generations")
    det.add_argument("--f-de", type=float, dest="f_de")
    det.add_argument("--cr", type=float, dest="cr")
    det.add_argument("--p-m", type=float, dest="p_m")
    det.add_argument("--eta-m", type=float, dest="eta_m")
    det.add_argument("--policy", choices=("max_q", "max_nmi", "knee"))
    det.add_argument("--denominator", choices=sorted(DENOMINATORS))
    det.add_argument("--jobs", type=int, help="parallel seed workers (default 1)")
    det.add_argument("-v", "--verbose", action="store_true")

    lnd = sub.add_parser("landscape", help="fitness landscape analysis")
    lnd.add_argument("--edges", required=True)
    lnd.add_argument("--attrs", required=True)
    lnd.add_argument("--kind", choices=("single", "multi"), required=True)
    lnd.add_argument("--space", choices=("both", "discrete", "continuous"), default="both")
    lnd.add_argument("--objective", choices=("Q", "attr", "both"), default="both")
    lnd.add_argument("--budget", type=int, default=10000, help="local optima per run")
    lnd.add_argument("--fdc-sample", type=int, default=1000)
    lnd.add_argument("--epsilon-sample", type=int, default=100000)
    lnd.add_argument("--epsilon-pairs", type=int, default=1_000_000)
    lnd.add_argument("--perturb-edges", type=int, default=10)
    lnd.add_argument("--ls-trials", type=int, default=50)
    lnd.add_argument("--novelty", choices=("auto", "genotype", "phenotype", "value"), default="auto")
    lnd.add_argument("--denominator", choices=sorted(DENOMINATORS), default=DEFAULT_DENOMINATOR)
    lnd.add_argument("--seed", type=int, default=0)
    lnd.add_argument("--no-engine-front", action="store_true",
                     help="skip the evolutionary run that widens the best-known set")
    lnd.add_argument("--engine-pop", type=int, default=100,
                     help="population size for the best-known-set run")
    lnd.add_argument("--engine-gens", type=int, default=200,
                     help="generations for the best-known-set run")
    lnd.add_argument("--jobs", type=int, default=1)
    lnd.add_argument("--out", default="landscape_out")
    lnd.add_argument("-v", "--verbose", action="store_true")

    gen = sub.add_parser("gen-planted", help="generate a planted-partition network")
    gen.add_argument("--nodes", type=int, required=True)
    gen.add_argument("--comms", type=int, required=True)
    gen.add_argument("--pin", type=float, required=True)
    gen.add_argument("--pout", type=float, required=True)
    gen.add_argument("--noise", type=float, default=0.0)
    gen.add_argument("--seed", type=int, default=0)
    gen.add_argument("--out", default="planted_out")
    return parser


def _cmd_detect(args: argparse.Namespace) -> int:
    config = _read_config_file(args.config) if args.config else {}
    edges = _merge(args, config, "edges", str, None)
    attrs = _merge(args, config, "attrs", str, None)
    kind = _merge(args, config, "kind", str, None)
    if not edges or not attrs or not kind:
        raise ValidationError("detect needs --edges, --attrs and --kind (flags or config)")
    if kind not in ("single", "multi"):
        raise ValidationError(f"kind must be single or multi, got {kind!r}")
    truth_path = _merge(args, config, "truth", str, None)
    out_dir = Path(_merge(args, config, "out", str, "campaign_out"))
    n_seeds = _merge(args, config, "seeds", int, 31)
    seed_base = _merge(args, config, "seed_base", int, 0)
    policy = _merge(args, config, "policy", str, "max_q")
    denominator = _merge(args, config, "denominator", str, DEFAULT_DENOMINATOR)
    jobs = _merge(args, config, "jobs", int, 1)
    if n_seeds <= 0:
        raise ValidationError("seeds must be positive")

    cfg = EngineConfig(
        population_size=_merge(args, config, "population_size", int, 100),
        generations=_merge(args, config, "generations", int, 200),
        f_de=_merge(args, config, "f_de", float, 0.7),
        cr=_merge(args, config, "cr", float, 0.5),
        p_m=_merge(args, config, "p_m", float, 0.02),
        eta_m=_merge(args, config, "eta_m", float, 20.0),
    )
    net = load_network(edges, attrs, kind)
    truth = load_truth(truth_path, net.node_count) if truth_path else None
    if policy == "max_nmi" and truth is None:
        raise ValidationError("policy max_nmi needs --truth")

    seeds = list(range(seed_base, seed_base + n_seeds))
    records = campaign.run_campaign(
        net, seeds, cfg, policy=policy, denominator=denominator, truth=truth, jobs=jobs
    )
    agg = campaign.write_campaign(records, out_dir)

    sel = agg["selected"]
    total_wall = sum(r.wall_time_s for r in records)
    print(f"campaign: {len(seeds)} seeds on {edges} ({net.node_count} nodes, "
          f"{net.edge_count} edges), {total_wall:.6g}s")
    print(f"selected ({policy}): D_avg {sel['d_avg']:.6g} ({sel['d_std']:.6g}), "
          f"E_avg {sel['e_avg']:.6g} ({sel['e_std']:.6g}), k {sel['k_min']}-{sel['k_max']}")
    print(f"front-wide: D in [{agg['front']['d_min']:.6g}, {agg['front']['d_max']:.6g}], "
          f"E in [{agg['front']['e_min']:.6g}, {agg['front']['e_max']:.6g}]")
    if "nmi_avg" in sel:
        print(f"NMI: avg {sel['nmi_avg']:.6g} ({sel['nmi_std']:.6g}), "
              f"max {sel['nmi_max']:.6g}")
    print(f"wrote {out_dir}")
    return 0


def _ils_worker(task):
    net, cfg = task
    return landscape.ils(net, cfg)


def _cmd_landscape(args: argparse.Namespace) -> int:
    net = load_network(args.edges, args.attrs, args.kind)
    spaces = ["discrete", "continuous"] if args.space == "both" else [args.space]
    objectives = ["q", "attr"] if args.objective == "both" else [args.objective.lower()]
    out_dir = Path(args.out)
    out_dir.mkdir(parents=True, exist_ok=True)

    def make_cfg(space: str, objective: str, epsilon: float | None) -> LandscapeConfig:
        return LandscapeConfig(
            objective=objective,
            space=space,
            local_optima_budget=args.budget,
            fdc_sample=args.fdc_sample,
            epsilon_sample=args.epsilon_sample,
            epsilon_pairs=args.epsilon_pairs,
            perturb_edges=args.perturb_edges,
            ls_trials=args.ls_trials,
            epsilon=epsilon,
            novelty=args.novelty,
            denominator=args.denominator,
            seed=args.seed,
        )

    epsilon = None
    if "continuous" in spaces:
        epsilon = calibrate_epsilon(net, make_cfg("continuous", objectives[0], None))
        print(f"epsilon: {epsilon:.6g}")

    # the front of one evolutionary run widens the best-known solution sets
    front = []
    if not args.no_engine_front:
        front = engine_run(
            net,
            EngineConfig(
                population_size=args.engine_pop,
                generations=args.engine_gens,
                seed=args.seed,
            ),
        ).front

    keys = [(space, objective) for objective in objectives for space in spaces]
    cfgs = {
        (space, objective): make_cfg(space, objective, epsilon if space == "continuous" else None)
        for space, objective in keys
    }
    tasks = [(net, cfgs[k]) for k in keys]
    if args.jobs > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            results = dict(zip(keys, pool.map(_ils_worker, tasks)))
    else:
        results = dict(zip(keys, (_ils_worker(t) for t in tasks)))

    # best-known reference sets pool the tied best solutions of every run of
    # the same objective (converted between spaces) plus the engine front
    reports = []
    for objective in objectives:
        entries: dict[str, list] = {space: [] for space in spaces}
        for space in spaces:
            res = results[(space, objective)]
            for target in spaces:
                converted = landscape.convert_best(res.best_genotypes, space, target, net)
                entries[target].extend((res.best_value, g) for g in converted)
        for ind in front:
            value = ind.objectives.f1 if objective == "q" else ind.objectives.f2
            sel = encode(ind.genotype, net)
            for space in spaces:
                native = (
                    selection_genotype(sel, net) if space == "continuous"
                    else sel.selected_neighbor
                )
                entries[space].append((value, native))
        for space in spaces:
            res = results[(space, objective)]
            _, best = landscape.merge_best(entries[space])
            correlation = landscape.fdc(
                res.values, res.genotypes, best, space,
                sample=args.fdc_sample, seed=args.seed,
            )
            reports.append(
                landscape.LandscapeReport(
                    space=space,
                    objective=objective,
                    lod=landscape.lod(res.counters),
                    er=landscape.er(res.counters),
                    fdc=correlation,
                )
            )

    def fmt(x) -> str:
        return "" if x is None else f"{x:.6g}"

    with open(out_dir / "landscape.csv", "w", encoding="utf-8") as fh:
        fh.write("space,objective,lod,er,fdc\n")
        for rep in reports:
            fh.write(f"{rep.space},{rep.objective},{rep.lod:.6g},{rep.er:.6g},{fmt(rep.fdc)}\n")

    by_key = {(rep.space, rep.objective): rep for rep in reports}
    with open(out_dir / "comparison.csv", "w", encoding="utf-8") as fh:
        fh.write("objective,lod_o,lod_t,er_o,er_t,fdc_o,fdc_t\n")
        for objective in objectives:
            disc = by_key.get(("discrete", objective))
            cont = by_key.get(("continuous", objective))
            cells = [
                fmt(disc.lod if disc else None), fmt(cont.lod if cont else None),
                fmt(disc.er if disc else None), fmt(cont.er if cont else None),
                fmt(disc.fdc if disc else None), fmt(cont.fdc if cont else None),
            ]
            fh.write(f"{objective}," + ",".join(cells) + "\n")

    for rep in reports:
        print(f"{rep.space}/{rep.objective}: LOD {rep.lod:.6g}, ER {rep.er:.6g}, "
              f"FDC {fmt(rep.fdc) or 'n/a'}")
    print(f"wrote {out_dir}")
    return 0


def _cmd_gen_planted(args: argparse.Namespace) -> int:
    planted = gen_planted(args.nodes, args.comms, args.pin, args.pout, args.noise, args.seed)
    paths = write_planted(planted, args.out)
    print(f"planted network: {args.nodes} nodes, {planted.edges.shape[0]} edges, "
          f"{args.comms} communities")
    for name, path in paths.items():
        print(f"{name}: {path}")
    return 0


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if getattr(args, "verbose", False):
            logging.basicConfig(level=logging.INFO, format="%(message)s")
        if args.command == "detect":
            return _cmd_detect(args)
        if args.command == "landscape":
            return _cmd_landscape(args)
        if args.command == "gen-planted":
            return _cmd_gen_planted(args)
        raise ValidationError(f"unknown command {args.command!r}")
    except (ValidationError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except Exception as exc:  # pragma: no cover - unexpected failures
        print(f"internal error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
