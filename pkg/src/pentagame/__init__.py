"""Achievement-game toolkit: hypergraph win-type solver and the planar
irrational-pentagon drawing engine."""

from .hypergraph import (
    Hypergraph,
    Occupancy,
    Transcript,
    apply_move,
    build_clique_game,
    build_fn,
    build_ht,
    completed_edges,
    make_hypergraph,
    near_miss_edges,
)
from .solver import WinCriterion, WinReport, classify, play_outcome, solve
from .geometry import (
    ExactAngle,
    GoalSet,
    PlanarPoint,
    find_copies,
    find_threats,
    unit_circles_through,
)
from .bot import BotState, adversary_move, bot_move, simulate
from .triple_circles import lemma_search, triple_config_angles

__all__ = [
    "Hypergraph",
    "Occupancy",
    "Transcript",
    "apply_move",
    "build_clique_game",
    "build_fn",
    "build_ht",
    "completed_edges",
    "make_hypergraph",
    "near_miss_edges",
    "WinCriterion",
    "WinReport",
    "classify",
    "play_outcome",
    "solve",
    "ExactAngle",
    "GoalSet",
    "PlanarPoint",
    "find_copies",
    "find_threats",
    "unit_circles_through",
    "BotState",
    "adversary_move",
    "bot_move",
    "simulate",
    "lemma_search",
    "triple_config_angles",
]
