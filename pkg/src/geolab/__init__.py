"""Generalized Geography: rule variants, exact solvers, hardness
reductions and the harness that checks them."""
from .engine import Move, Player, Position, Variant, apply_move, legal_moves
from .graph import GameGraph
from .solver import best_move, solve, solve_brute, solve_by_matching

__version__ = "0.1.0"

__all__ = [
    "GameGraph",
    "Move",
    "Player",
    "Position",
    "Variant",
    "apply_move",
    "best_move",
    "legal_moves",
    "solve",
    "solve_brute",
    "solve_by_matching",
]
