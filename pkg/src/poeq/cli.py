"""Command-line entry point.

Exit status: 0 when every solve succeeds and every enabled oracle agrees,
2 for bad input or usage, 3 when an oracle disagrees, 4 when the solver
itself fails.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Dict, List, Optional, Sequence, Tuple

from .core import DEFAULT_ENUMERATION_CAP, CapExceeded, Instance
from .descent import g_value, solve
from .generate import RetriesExhausted, generate_instance
from .geometry import rd_map
from .graph import build_graph
from .io import InputError, exact, frac, graph_summary, instance_to_dict, load_instance, point, report_to_dict
from .oracles import grid_min_g, hyperplane_support_check, maxmin_lp
from .svg import render_dot, render_svg

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_MISMATCH = 3
EXIT_SOLVER = 4


@dataclass
class GenerateSpec:
    m: int
    seed: int
    general: bool = False
    retries: int = 100
    grid: int = 1000


@dataclass
class RunConfig:
    inputs: List[str] = field(default_factory=list)
    generate: Optional[GenerateSpec] = None
    count: int = 1
    algorithms: Tuple[str, ...] = ("steepest",)
    lp: bool = False
    grid: Optional[int] = None
    support: bool = False
    json: bool = False
    svg: Optional[str] = None
    dot: Optional[str] = None
    normalize: bool = False
    cap: int = DEFAULT_ENUMERATION_CAP
    start: Optional[int] = None
    workers: int = 1

    def validate(self) -> None:
        if not self.inputs and self.generate is None:
            raise InputError("give --input FILE or --generate m=K,seed=S")
        if self.grid is not None and self.grid < 3:
            raise InputError("grid resolution must be at least 3")
        if self.generate is not None and self.generate.m < 1:
            raise InputError("m must be at least 1")
        if self.count < 1:
            raise InputError("--count must be at least 1")


def parse_generate(text: str) -> GenerateSpec:
    fields: Dict[str, str] = {}
    for part in text.replace(" ", ",").split(","):
        if not part:
            continue
        key, _, val = part.partition("=")
        fields[key.strip()] = val.strip()
    unknown = set(fields) - {"m", "seed", "general", "retries", "grid"}
    if unknown:
        raise InputError(f"unknown --generate keys: {', '.join(sorted(unknown))}")
    if "m" not in fields:
        raise InputError("--generate needs m=K")
    try:
        return GenerateSpec(
            m=int(fields["m"]),
            seed=int(fields.get("seed", "0")),
            general=fields.get("general", "no") in ("", "1", "true", "yes"),
            retries=int(fields.get("retries", "100")),
            grid=int(fields.get("grid", "1000")),
        )
    except ValueError as exc:
        raise InputError(f"bad --generate value: {exc}") from None


def parse_oracles(text: str) -> Dict[str, Any]:
    out: Dict[str, Any] = {"lp": False, "grid": None, "support": False}
    for part in text.split(","):
        part = part.strip()
        if not part:
            continue
        if part == "lp":
            out["lp"] = True
        elif part == "support":
            out["support"] = True
        elif part.startswith("grid"):
            _, _, n = part.partition("=")
            try:
                out["grid"] = int(n) if n else 60
            except ValueError:
                raise InputError(f"bad grid resolution {n!r}") from None
        else:
            raise InputError(f"unknown oracle {part!r}")
    return out


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="poeq", description="Equitable Pareto-optimal division among three players.")
    p.add_argument("--input", action="append", default=[], metavar="FILE", help="instance JSON (repeatable)")
    p.add_argument("--generate", nargs="+", metavar="SPEC", help="random instance, e.g. m=5,seed=7[,general][,retries=R]")
    p.add_argument("--count", type=int, default=1, help="with --generate: number of consecutive seeds")
    p.add_argument("--workers", type=int, default=1, help="parallel solver processes for batches")
    p.add_argument("--algorithm", choices=["simple", "steepest", "both"], default="steepest")
    p.add_argument("--oracle", default="", metavar="LIST", help="comma list of lp, grid=N, support")
    p.add_argument("--start", type=int, help="start vertex index (default: closest to the center)")
    p.add_argument("--svg", metavar="FILE")
    p.add_argument("--dot", metavar="FILE")
    p.add_argument("--json", action="store_true", help="JSON output (one document per line in batches)")
    p.add_argument("--normalize", action="store_true", help="divide each row by its sum")
    p.add_argument("--cap", type=int, default=DEFAULT_ENUMERATION_CAP, help="largest m for 3^m enumeration")
    return p


def config_from_args(argv: Optional[Sequence[str]] = None) -> RunConfig:
    args = build_parser().parse_args(argv)
    oracles = parse_oracles(args.oracle)
    cfg = RunConfig(
        inputs=list(args.input),
        generate=parse_generate(",".join(args.generate)) if args.generate else None,
        count=args.count,
        algorithms=("simple", "steepest") if args.algorithm == "both" else (args.algorithm,),
        lp=oracles["lp"], grid=oracles["grid"], support=oracles["support"],
        json=args.json, svg=args.svg, dot=args.dot,
        normalize=args.normalize, cap=args.cap, start=args.start, workers=args.workers,
    )
    cfg.validate()
    return cfg


def _jobs(cfg: RunConfig) -> List[Tuple[int, str, Instance]]:
    jobs = []
    for path in cfg.inputs:
        jobs.append((len(jobs), path, load_instance(path, normalize=cfg.normalize)))
    if cfg.generate is not None:
        g = cfg.generate
        for k in range(cfg.count):
            try:
                inst = generate_instance(g.m, g.seed + k, g.general, g.retries, g.grid)
            except RetriesExhausted as exc:
                raise InputError(str(exc)) from None
            jobs.append((len(jobs), f"generate:m={g.m},seed={g.seed + k}", inst))
    return jobs


def _suffixed(path: Optional[str], seq: int, many: bool) -> Optional[str]:
    if not path or not many:
        return path
    root, ext = os.path.splitext(path)
    return f"{root}.{seq}{ext}"


def run_one(job: Tuple[int, str, Instance], cfg: RunConfig, many: bool = False) -> Dict[str, Any]:
    seq, source, inst = job
    doc: Dict[str, Any] = {"seq": seq, "source": source, "instance": instance_to_dict(inst)}
    try:
        graph = build_graph(inst)
        doc["graph"] = graph_summary(graph)
        if cfg.start is not None and not 0 <= cfg.start < len(graph.vertices):
            raise InputError(f"start vertex {cfg.start} out of range 0..{len(graph.vertices) - 1}")
        reports = [solve(inst, alg, graph=graph, start=cfg.start) for alg in cfg.algorithms]
    except InputError as exc:
        doc.update(status="input_error", error=str(exc), exit=EXIT_USAGE)
        return doc
    except Exception as exc:  # any failure inside the solver is reported, not raised
        doc.update(status="solver_error", error=f"{type(exc).__name__}: {exc}", exit=EXIT_SOLVER)
        return doc

    doc["runs"] = [report_to_dict(r) for r in reports]
    value: Fraction = reports[0].value
    doc["value"] = exact(value)
    verdicts: Dict[str, Any] = {}
    if len(reports) > 1:
        same = all(r.value == value for r in reports)
        verdicts["algorithms"] = {"agree": same, "values": [frac(r.value) for r in reports]}
    if cfg.lp:
        lp = maxmin_lp(inst)
        verdicts["lp"] = {"value": frac(lp.value), "agree": lp.value == value}
    if cfg.grid is not None:
        gamma, gv = grid_min_g(inst, cfg.grid)
        bound = Fraction(3 * inst.m, cfg.grid)
        verdicts["grid"] = {"resolution": cfg.grid, "gamma": point(gamma), "value": frac(gv),
                            "agree": value <= gv <= value + bound}
    if cfg.support:
        try:
            ok, checked = True, 0
            for r in reports:
                for v in r.path:
                    gamma = rd_map(v.location)
                    best, _ = hyperplane_support_check(inst, gamma, cfg.cap)
                    ok = ok and best == g_value(inst, gamma)
                    checked += 1
            verdicts["support"] = {"checked": checked, "agree": ok}
        except CapExceeded as exc:
            doc.update(status="input_error", error=str(exc), exit=EXIT_USAGE)
            return doc
    doc["oracles"] = verdicts
    agree = all(v["agree"] for v in verdicts.values())
    doc["status"] = "ok" if agree else "oracle_mismatch"
    doc["exit"] = EXIT_OK if agree else EXIT_MISMATCH

    report = reports[-1]
    if cfg.svg:
        render_svg(inst, graph, report, _suffixed(cfg.svg, seq, many))
    if cfg.dot:
        render_dot(graph, report, _suffixed(cfg.dot, seq, many))
    return doc


def _run_star(args):
    return run_one(*args)


def run(cfg: RunConfig):
    """Solve every job; yields result documents in input order."""
    jobs = _jobs(cfg)
    many = len(jobs) > 1
    if cfg.workers > 1 and many:
        with ProcessPoolExecutor(max_workers=cfg.workers) as pool:
            yield from pool.map(_run_star, [(job, cfg, many) for job in jobs])
    else:
        for job in jobs:
            yield run_one(job, cfg, many)


def format_text(doc: Dict[str, Any]) -> str:
    lines = [f"[{doc['seq']}] {doc['source']}: {doc['status']}"]
    if "error" in doc:
        lines.append(f"  error: {doc['error']}")
    if "graph" in doc:
        g = doc["graph"]
        hist = ", ".join(f"{k}:{v}" for k, v in g["class_histogram"].items())
        lines.append(f"  graph: {g['vertices']} vertices, {g['arcs']} arcs ({hist})")
    for r in doc.get("runs", []):
        path = " -> ".join(f"v{v['index']}" for v in r["path"])
        lines.append(f"  {r['algorithm']}: path {path}, gamma* = ({', '.join(r['gamma_star'])})")
        lines.append(f"    value {r['value']['exact']} (~{r['value']['decimal']}), {r['split_pattern']}")
        for s in r["splits"]:
            shares = ", ".join(f"{k}:{v}" for k, v in s["shares"].items())
            lines.append(f"    item {s['item']}: {{{shares}}}")
    for name, v in doc.get("oracles", {}).items():
        lines.append(f"  oracle {name}: {'OK' if v['agree'] else 'MISMATCH'}")
    return "\n".join(lines)


def main(argv: Optional[Sequence[str]] = None) -> int:
    try:
        cfg = config_from_args(argv)
        docs = run(cfg)
        status = EXIT_OK
        batch = len(cfg.inputs) + (cfg.count if cfg.generate else 0) > 1
        for doc in docs:
            if cfg.json:
                print(json.dumps(doc, indent=None if batch else 2), flush=True)
            else:
                print(format_text(doc), flush=True)
            status = max(status, doc["exit"], key=_severity)
        return status
    except InputError as exc:
        print(f"poeq: {exc}", file=sys.stderr)
        return EXIT_USAGE


def _severity(code: int) -> int:
    return {EXIT_OK: 0, EXIT_MISMATCH: 1, EXIT_SOLVER: 2, EXIT_USAGE: 3}[code]


if __name__ == "__main__":
    sys.exit(main())
