"""``symcensus`` command line.

Exit codes: 0 success, 2 invalid input, 3 resource cap exceeded, 4 property failure.
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys
from pathlib import Path
from typing import Sequence

from ..constructions import ConstructionError
from ..coverings import (
    CoveringError, derived_graph, fold_parity_check, load_voltages, quotient_graph, verify_covering,
)
from ..graphs import GraphError, is_connected, load_graph, save_graph, valency
from ..perm import Permutation, schreier_sims
from ..symmetry.search import DEFAULT_NODE_LIMIT, ResourceLimitExceeded, is_isomorphic
from .census import format_table, run_census
from .families import build
from .propsuite import DEFAULTS, run_suites
from .report import analyze, format_text, write_reports

EXIT_OK, EXIT_INVALID, EXIT_CAP, EXIT_PROPERTY = 0, 2, 3, 4

log = logging.getLogger("symcensus")


class InvalidInput(ValueError):
    pass


def sidecar_path(path: str | Path) -> Path:
    path = Path(path)
    return path.with_name(path.name + ".json")


def _emit(obj, out: str | None) -> None:
    text = obj if isinstance(obj, str) else json.dumps(obj)
    if out:
        Path(out).write_text(text + "\n")
    else:
        print(text)


# -- subcommands ---------------------------------------------------------------


def cmd_construct(args) -> int:
    params = {k: getattr(args, k) for k in ("n", "p", "tag", "eps", "a", "r") if getattr(args, k) is not None}
    g = build(args.family, params)
    save_graph(g, args.out)
    labels = getattr(g, "labels", None)
    side = {
        "family": args.family,
        "params": params,
        "labels": [str(x) for x in labels] if labels else [str(v) for v in range(g.n)],
    }
    sidecar_path(args.out).write_text(json.dumps(side) + "\n")
    log.info("wrote %s (%d vertices, %d edges)", args.out, g.n, g.m)
    return EXIT_OK


def cmd_analyze(args) -> int:
    g = load_graph(args.graph)
    family, params = "", {}
    side = sidecar_path(args.graph)
    if side.exists():
        meta = json.loads(side.read_text())
        family, params = meta.get("family", ""), meta.get("params", {})
    rep = analyze(g, args.id or Path(args.graph).stem, family, params, node_limit=args.node_limit)
    _emit(rep.to_json() if args.format == "json" else format_text(rep), args.out)
    issues = rep.issues()
    for msg in issues:
        log.error("inconsistent report: %s", msg)
    return EXIT_PROPERTY if issues else EXIT_OK


def cmd_iso(args) -> int:
    g1, g2 = load_graph(args.graph1), load_graph(args.graph2)
    res = is_isomorphic(g1, g2, node_limit=args.node_limit)
    out = {"isomorphic": res.isomorphic}
    if res.isomorphic:
        out["mapping"] = list(res.mapping)
    _emit(out, args.out)
    return EXIT_OK


def cmd_cover(args) -> int:
    base = load_graph(args.base)
    va = load_voltages(args.voltages, base)
    d = derived_graph(va)
    if args.out_graph:
        save_graph(d.graph, args.out_graph)
    rep = verify_covering(d.graph, base, d.projection, compute_ct=False)
    parity = fold_parity_check(d.graph, base, rep)
    out = {
        "n": d.graph.n,
        "m": d.graph.m,
        "connected": is_connected(d.graph),
        "is_covering": rep.is_covering,
        "fold_number": rep.fold_number,
        "ct_order": d.ct_group.order,
        "ct_semiregular": d.ct_group.is_semiregular(),
        "fold_parity": parity.status,
    }
    _emit(out, args.out)
    return EXIT_OK if parity.passed else EXIT_PROPERTY


def read_generators(path: str | Path, n: int) -> list[Permutation]:
    gens = []
    for lineno, line in enumerate(Path(path).read_text().splitlines(), 1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        try:
            images = [int(x) for x in line.split()]
            p = Permutation(images)
        except ValueError as exc:
            raise InvalidInput(f"{path}:{lineno}: {exc}") from None
        if p.degree != n:
            raise InvalidInput(f"{path}:{lineno}: permutation of degree {p.degree}, graph has {n} vertices")
        gens.append(p)
    return gens


def cmd_quotient(args) -> int:
    g = load_graph(args.graph)
    gens = read_generators(args.generators, g.n)
    N = schreier_sims(gens, g.n)
    q = quotient_graph(g, N)
    if args.out_graph:
        save_graph(q.graph, args.out_graph)
    rep = verify_covering(g, q.graph, q.orbit_of, compute_ct=False)
    out = {
        "orbits": q.graph.n,
        "group_order": str(N.order),
        "semiregular": N.is_semiregular(),
        "quotient_valency": valency(q.graph),
        "is_covering": rep.is_covering,
        "fold_number": rep.fold_number,
        "internal_edges": sum(q.internal_edges.values()),
        "max_multiplicity": max(q.multiplicity.values(), default=0),
        "orbit_of": list(q.orbit_of),
    }
    _emit(out, args.out)
    return EXIT_OK


def cmd_census(args) -> int:
    res = run_census(args.pmax, cache=args.cache, jobs=args.jobs, node_limit=args.node_limit)
    _emit(format_table(res), args.out)
    if args.jsonl:
        write_reports(res.reports, args.jsonl)
    if any(msg.startswith("resource cap") for _, msg in res.errors):
        return EXIT_CAP
    return EXIT_OK if res.ok else EXIT_PROPERTY


def read_config(path: str | Path) -> dict:
    cfg = {}
    for lineno, line in enumerate(Path(path).read_text().splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise InvalidInput(f"{path}:{lineno}: expected key=value")
        key, value = (s.strip() for s in line.split("=", 1))
        if key not in DEFAULTS:
            raise InvalidInput(f"{path}:{lineno}: unknown key {key!r}")
        try:
            cfg[key] = int(value)
        except ValueError:
            raise InvalidInput(f"{path}:{lineno}: {key} must be an integer") from None
    return cfg


def resolve_propsuite_config(args, environ=os.environ) -> dict:
    """Flags override the config file, which overrides SYMCENSUS_SEED (seed only)."""
    cfg = dict(DEFAULTS)
    env_seed = environ.get("SYMCENSUS_SEED")
    if env_seed is not None:
        try:
            cfg["seed"] = int(env_seed)
        except ValueError:
            raise InvalidInput(f"SYMCENSUS_SEED={env_seed!r} is not an integer") from None
    if args.config:
        cfg.update(read_config(args.config))
    for key in DEFAULTS:
        value = getattr(args, key, None)
        if value is not None:
            cfg[key] = value
    return cfg


def cmd_propsuite(args) -> int:
    cfg = resolve_propsuite_config(args)
    names = args.suites.split(",") if args.suites else None
    try:
        results = run_suites(cfg, names)
    except ValueError as exc:
        raise InvalidInput(str(exc)) from None
    lines = [f"seed {cfg['seed']}"] + [r.line() for r in results]
    for r in results:
        lines.extend(f"  {r.name}: {msg}" for msg in r.failures)
    _emit("\n".join(lines), args.out)
    return EXIT_OK if all(r.passed for r in results) else EXIT_PROPERTY


# -- parser ----------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="symcensus", description="Symmetry analysis of tetravalent graphs.")
    ap.add_argument("-v", "--verbose", action="store_true")
    sub = ap.add_subparsers(dest="command", required=True)

    def limit(p):
        p.add_argument("--node-limit", type=int, default=DEFAULT_NODE_LIMIT, help="search-tree node cap")

    p = sub.add_parser("construct", help="build a named graph and write it in symgraph format")
    p.add_argument("--family", required=True)
    for name in ("n", "p", "eps", "a", "r"):
        p.add_argument(f"--{name}", type=int)
    p.add_argument("--tag", choices=list("abcde"))
    p.add_argument("--out", "-o", required=True)
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("analyze", help="full symmetry report of a graph file")
    p.add_argument("graph")
    p.add_argument("--id")
    p.add_argument("--format", choices=("json", "text"), default="json")
    p.add_argument("--out", "-o")
    limit(p)
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("iso", help="isomorphism test with witness")
    p.add_argument("graph1")
    p.add_argument("graph2")
    p.add_argument("--out", "-o")
    limit(p)
    p.set_defaults(func=cmd_iso)

    p = sub.add_parser("cover", help="derived graph of a voltage file")
    p.add_argument("base")
    p.add_argument("voltages")
    p.add_argument("--out-graph")
    p.add_argument("--out", "-o")
    p.set_defaults(func=cmd_cover)

    p = sub.add_parser("quotient", help="quotient by the group generated by permutations in a file")
    p.add_argument("graph")
    p.add_argument("generators", help="one permutation per line, as the list of images")
    p.add_argument("--out-graph")
    p.add_argument("--out", "-o")
    p.set_defaults(func=cmd_quotient)

    p = sub.add_parser("census", help="analyze every constructible graph of order 6p^2, p <= pmax")
    p.add_argument("--pmax", type=int, default=7)
    p.add_argument("--cache", help="JSONL results cache keyed by graph hash")
    p.add_argument("--jsonl", help="write all reports to this JSONL file")
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--out", "-o")
    limit(p)
    p.set_defaults(func=cmd_census)

    p = sub.add_parser("propsuite", help="run the seeded property suites")
    p.add_argument("--seed", type=int)
    p.add_argument("--config", help="key=value file (seed, covers, ct_samples, max_n, relabelings)")
    p.add_argument("--covers", type=int)
    p.add_argument("--ct-samples", dest="ct_samples", type=int)
    p.add_argument("--max-n", dest="max_n", type=int)
    p.add_argument("--relabelings", type=int)
    p.add_argument("--suites", help="comma-separated subset")
    p.add_argument("--out", "-o")
    p.set_defaults(func=cmd_propsuite)
    return ap


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(message)s")
    try:
        return args.func(args)
    except ResourceLimitExceeded as exc:
        log.error("%s", exc)
        return EXIT_CAP
    except AssertionError as exc:
        log.error("internal consistency check failed: %s", exc)
        return EXIT_PROPERTY
    except (InvalidInput, GraphError, ConstructionError, CoveringError, OSError, ValueError) as exc:
        log.error("%s", exc)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
