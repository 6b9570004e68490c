"""JSON reading and writing of instances and solve reports.

Exact numbers travel as fraction strings such as ``"60/107"``.  Where a
decimal is shown alongside it is rounded to six places and flagged as
approximate.
"""

from __future__ import annotations

import json
from fractions import Fraction
from typing import Any, Dict, List, Optional

from .core import PLAYER_NAMES, PLAYERS, Instance, InstanceError, parse_instance
from .descent import SolveReport
from .graph import FaceVertex, RnsGraph


class InputError(ValueError):
    pass


def frac(x: Fraction) -> str:
    return str(Fraction(x))


def exact(x: Fraction) -> Dict[str, Any]:
    return {"exact": frac(x), "decimal": round(float(x), 6), "decimal_is_approximate": True}


def instance_to_dict(inst: Instance) -> Dict[str, Any]:
    return {
        "values": [[frac(a) for a in row] for row in inst.values],
        "players": list(inst.player_labels),
        "items": list(inst.item_labels),
    }


def instance_from_obj(obj: Any, normalize: bool = False) -> Instance:
    """Accept ``{"values": [...], ...}`` or a bare 3 x m list of numbers."""
    if isinstance(obj, dict):
        if "values" not in obj:
            raise InputError('instance object needs a "values" field')
        return parse_instance(obj["values"], normalize=normalize,
                              player_labels=obj.get("players"), item_labels=obj.get("items"))
    if isinstance(obj, list):
        return parse_instance(obj, normalize=normalize)
    raise InputError("instance must be an object or a list of rows")


def loads_instance(text: str, normalize: bool = False, source: str = "<input>") -> Instance:
    try:
        obj = json.loads(text, parse_float=Fraction, parse_int=Fraction)
    except json.JSONDecodeError as exc:
        line = text.splitlines()[exc.lineno - 1] if text.splitlines() else ""
        raise InputError(f"{source}:{exc.lineno}:{exc.colno}: {exc.msg}\n  {line}") from None
    try:
        return instance_from_obj(obj, normalize=normalize)
    except (InstanceError, ValueError) as exc:
        raise InputError(f"{source}: {exc}") from None


def load_instance(path: str, normalize: bool = False) -> Instance:
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise InputError(f"{path}: {exc.strerror}") from None
    return loads_instance(text, normalize=normalize, source=path)


def dumps_instance(inst: Instance) -> str:
    return json.dumps(instance_to_dict(inst), indent=2)


def point(p) -> List[str]:
    return [frac(x) for x in p]


def vertex_to_dict(v: FaceVertex) -> Dict[str, Any]:
    return {
        "index": v.index,
        "location": point(v.location),
        "class": str(v.face_class),
        "items_here": [j + 1 for j in v.items_here],
        "disputes": [{"item": d.item + 1, "players": [PLAYER_NAMES[i] for i in d.disputants]}
                     for d in v.dispute_set],
    }


def graph_summary(graph: RnsGraph) -> Dict[str, Any]:
    return {
        "vertices": len(graph.vertices),
        "arcs": len(graph.arcs),
        "class_histogram": graph.class_histogram(),
    }


def report_to_dict(report: SolveReport) -> Dict[str, Any]:
    alloc = report.allocation
    return {
        "algorithm": report.algorithm,
        "path": [dict(vertex_to_dict(v), g_tilde=frac(g))
                 for v, g in zip(report.path, report.path_values)],
        "iterations": report.iterations,
        "optimal_vertex": vertex_to_dict(report.optimal_vertex),
        "gamma_star": point(report.gamma_star),
        "value": exact(report.value) if report.value is not None else None,
        "allocation": [[frac(x) for x in row] for row in alloc.shares] if alloc else None,
        "split_pattern": str(report.split_pattern) if report.split_pattern else None,
        "splits": [{"item": j + 1, "shares": {PLAYER_NAMES[i]: frac(x) for i, x in shares.items()}}
                   for j, shares in report.splits],
    }


def allocation_from_rows(rows) -> List[List[Fraction]]:
    return [[Fraction(x) for x in row] for row in rows]


def owners_of(report: SolveReport) -> Optional[List[str]]:
    """Whole-item owner per item, or None if anything is split."""
    if report.allocation is None or report.splits:
        return None
    return [next(PLAYER_NAMES[i] for i in PLAYERS if report.allocation.shares[i][j] == 1)
            for j in range(report.allocation.m)]
