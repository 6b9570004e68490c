"""Exact equitable Pareto-optimal division of divisible goods among three players.

The solver plots every item in the simplex of normalized valuations, builds
the graph of crossings of the segments joining items to the corners, and
descends a convex support function over that graph.  The minimizing
vertex names the Pareto face met by the egalitarian ray, and a small exact
linear solve inside that face gives the equal-value allocation.
"""

from .core import E1, E3F, E5, AllocationMatrix, Instance, allocation_value, parse_instance
from .descent import SolveReport, SplitPattern, extract_equitable, g_tilde, g_value, solve
from .geometry import SimplexPoint, rd_map
from .graph import FaceClass, RnsGraph, build_graph, face_allocation_census
from .oracles import grid_min_g, hyperplane_support_check, instance_from_rns_points, maxmin_lp

__all__ = [
    "E1", "E3F", "E5", "AllocationMatrix", "Instance", "allocation_value", "parse_instance",
    "SolveReport", "SplitPattern", "extract_equitable", "g_tilde", "g_value", "solve",
    "SimplexPoint", "rd_map", "FaceClass", "RnsGraph", "build_graph", "face_allocation_census",
    "grid_min_g", "hyperplane_support_check", "instance_from_rns_points", "maxmin_lp",
]

__version__ = "0.1.0"
