"""Grid diagrams, cube diagrams, lifting obstructions and cube-number searches."""

from .cube import CubeDiagram, NotLiftable, lift, lift_exists, project, validate_cube
from .grid import GridDiagram, bend_order, crossings, mirror, new_grid, parse_grid, format_grid, writhe
from .invariants import StandardDiagramParams, jones, kauffman_bracket, legendrian_data, standard_diagram
from .knots import identify, load_table
from .moves import Move, apply_move, cyclic_orbit, reachability_class
from .obstructions import filter_grid
from .polynomial import LaurentPolynomial

__version__ = "0.1.0"

__all__ = [
    "CubeDiagram",
    "GridDiagram",
    "LaurentPolynomial",
    "Move",
    "NotLiftable",
    "StandardDiagramParams",
    "apply_move",
    "bend_order",
    "crossings",
    "cyclic_orbit",
    "filter_grid",
    "format_grid",
    "identify",
    "jones",
    "kauffman_bracket",
    "legendrian_data",
    "lift",
    "lift_exists",
    "load_table",
    "mirror",
    "new_grid",
    "parse_grid",
    "project",
    "reachability_class",
    "standard_diagram",
    "validate_cube",
    "writhe",
]
