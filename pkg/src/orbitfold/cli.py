"""Command-line entry point: ``orbitfold <subcommand> ...``.

JSON goes to stdout.  Exit status is 0 when the report passes, 1 when a
check inside the report fails, and 2 on bad input.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field

from .backtrack import DEFAULT_NODE_BUDGET
from .errors import OrbitfoldError
from .group import load_group, point_orbits, subset_orbits
from .iog import k_intersection_graph
from .partition import shape_of
from .spectral import aut_order, ds_scan, invariants, spectrum_from_shape

EXIT_PASS, EXIT_FAIL, EXIT_INPUT = 0, 1, 2


@dataclass
class RunConfig:
    subcommand: str
    paths: list[str] = field(default_factory=list)
    k: int = 1
    ambient: str | None = None
    fmt: str = "json"
    budget: int = DEFAULT_NODE_BUDGET
    workers: int = 1
    point: int | None = None
    max_n: int = 6
    dot: str | None = None
    seed: int = 0

    def __post_init__(self):
        if self.workers < 1:
            raise ValueError("worker count must be at least 1")


def _emit(obj, cfg: RunConfig, text: str | None = None) -> None:
    if cfg.fmt == "text" and text is not None:
        sys.stdout.write(text.rstrip("\n") + "\n")
    else:
        sys.stdout.write(json.dumps(obj, indent=2, ensure_ascii=False) + "\n")


def cmd_orbits(cfg: RunConfig) -> int:
    G = load_group(cfg.paths[0])
    P = point_orbits(G) if cfg.k == 1 else subset_orbits(G, cfg.k)
    shape = shape_of(P)
    obj = {"degree": G.degree, "order": G.order(), "k": cfg.k, "partition": P.to_json_obj(), "shape": str(shape)}
    _emit(obj, cfg, f"order {G.order()}, k={cfg.k}, {len(P)} orbits, shape {shape}")
    return EXIT_PASS


def cmd_graph(cfg: RunConfig) -> int:
    G1 = load_group(cfg.paths[0])
    G2 = load_group(cfg.paths[1])
    g = k_intersection_graph(G1, G2, cfg.k)
    shape = g.shape
    if cfg.dot:
        with open(cfg.dot, "w", encoding="utf-8") as fh:
            fh.write(g.to_dot())
    if cfg.fmt == "dot":
        sys.stdout.write(g.to_dot())
        return EXIT_PASS
    inv = invariants(shape)
    aut = aut_order(shape)
    spec = spectrum_from_shape(shape)
    obj = {
        "k": cfg.k,
        "vertices": g.vertex_count,
        "edges": g.edge_count,
        "shape": str(shape),
        "graph": shape.graph_name(),
        "complete": len(shape) == 1,
        "spectrum": spec.to_json_obj()["pairs"],
        "aut_order": aut.order,
        "aut": str(aut),
        "chi": inv.chi,
        "omega": inv.omega,
        "alpha": inv.alpha,
    }
    _emit(obj, cfg, f"{shape.graph_name()}  spectrum {spec}  |Aut| = {aut.order}")
    return EXIT_PASS


def cmd_classify(cfg: RunConfig) -> int:
    from .mathieu import CATALOG, classify, load_validated_group

    G = load_validated_group(cfg.ambient)
    H = load_group(cfg.paths[0])
    res = classify(G, H, CATALOG[cfg.ambient.lower()])
    obj = {"ambient": cfg.ambient.lower(), "subgroup_order": H.order(), **res.to_json_obj()}
    _emit(obj, cfg, f"{res.status}: {res.label or ', '.join(c.title for c in res.candidates) or '-'} (shape {res.shape})")
    return EXIT_PASS if res.status != "unknown_shape" else EXIT_FAIL


def _status_code(report: dict) -> int:
    return EXIT_PASS if report["status"] == "pass" else EXIT_FAIL


def cmd_catalog(cfg: RunConfig) -> int:
    from .mathieu import verify_catalog

    report = verify_catalog(cfg.ambient, cfg.budget)
    lines = [f"{r['entry']}: claimed {r['claimed_shape']}, computed {r['computed_shape']}, "
             f"order {r['computed_order']}, {r['status']}" for r in report["rows"]]
    _emit(report, cfg, "\n".join(lines + [f"overall: {report['status']}"]))
    return _status_code(report)


def cmd_recognize12(cfg: RunConfig) -> int:
    from .mathieu import recognize_degree12

    report = recognize_degree12(load_group(cfg.paths[0]), cfg.budget)
    _emit(report, cfg, f"verdict {report['verdict']}; consistent: {', '.join(report['candidates_consistent']) or 'none'}")
    return EXIT_PASS if report["verdict"] == "M12" else EXIT_FAIL


def cmd_rigidity(cfg: RunConfig) -> int:
    from .mathieu import steiner_rigidity_check

    G = load_group(cfg.paths[0])
    if cfg.point is None or not 1 <= cfg.point <= G.degree:
        raise OrbitfoldError(f"--point must lie in 1..{G.degree}")
    report = steiner_rigidity_check(G, cfg.point - 1)
    lines = [f"k={l['k']}: {l['orbit_count']} orbits, rank {l['rank']}, {l['status']}" for l in report["levels"]]
    _emit(report, cfg, "\n".join(lines))
    return _status_code(report)


def cmd_ds_scan(cfg: RunConfig) -> int:
    report = ds_scan(cfg.max_n, cfg.workers)
    _emit(report, cfg, f"{report['total_graphs']} graphs, {len(report['counterexamples'])} counterexamples")
    return _status_code(report)


COMMANDS = {
    "orbits": cmd_orbits,
    "graph": cmd_graph,
    "classify": cmd_classify,
    "catalog": cmd_catalog,
    "recognize12": cmd_recognize12,
    "rigidity": cmd_rigidity,
    "ds-scan": cmd_ds_scan,
}


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="orbitfold", description="Orbit fingerprints of permutation groups.")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", dest="fmt", choices=["json", "dot", "text"], default="json")
    common.add_argument("--budget", type=int, default=DEFAULT_NODE_BUDGET, help="backtrack node budget")
    common.add_argument("--workers", type=int, default=1)
    common.add_argument("--seed", type=int, default=0)
    sub = p.add_subparsers(dest="subcommand", required=True)

    s = sub.add_parser("orbits", parents=[common], help="orbit partition on points or k-subsets")
    s.add_argument("group")
    s.add_argument("--k", type=int, default=1)

    s = sub.add_parser("graph", parents=[common], help="intersection orbital graph of two groups")
    s.add_argument("group1")
    s.add_argument("group2")
    s.add_argument("--k", type=int, default=1)
    s.add_argument("--dot", metavar="PATH")

    s = sub.add_parser("classify", parents=[common], help="identify a subgroup of a Mathieu group by orbit shape")
    s.add_argument("--ambient", required=True, choices=["m11", "m12", "m24"])
    s.add_argument("subgroup")

    s = sub.add_parser("catalog", parents=[common], help="verify a maximal-subgroup catalogue")
    s.add_argument("--ambient", required=True, choices=["m11", "m12", "m24"])

    s = sub.add_parser("recognize12", parents=[common], help="decide whether a degree-12 group is M12")
    s.add_argument("group")

    s = sub.add_parser("rigidity", parents=[common], help="orbital graphs of a point stabilizer on k-subsets")
    s.add_argument("group")
    s.add_argument("--point", type=int, required=True, help="1-based point")

    s = sub.add_parser("ds-scan", parents=[common], help="exhaustive cospectral-mate scan")
    s.add_argument("--max-n", type=int, default=6)
    return p


def config_from_args(ns: argparse.Namespace) -> RunConfig:
    paths = [getattr(ns, a) for a in ("group", "group1", "group2", "subgroup") if getattr(ns, a, None)]
    return RunConfig(
        subcommand=ns.subcommand,
        paths=paths,
        k=getattr(ns, "k", 1),
        ambient=getattr(ns, "ambient", None),
        fmt=ns.fmt,
        budget=ns.budget,
        workers=ns.workers,
        point=getattr(ns, "point", None),
        max_n=getattr(ns, "max_n", 6),
        dot=getattr(ns, "dot", None),
        seed=ns.seed,
    )


def main(argv=None) -> int:
    parser = build_parser()
    try:
        ns = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_INPUT if e.code else EXIT_PASS
    try:
        cfg = config_from_args(ns)
        return COMMANDS[cfg.subcommand](cfg)
    except (OrbitfoldError, OSError, ValueError) as e:
        print(f"orbitfold: error: {e}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
