"""Construction pipelines; each returns a :class:`ConstructionDossier`."""

from .bridges import BridgePlan, bridge_moves, intersection_count
from .dossier import FAIL, PASS, UNCHECKED, Claim, ConstructionDossier
from .freegroup import build_Xg, build_Yg
from .rbd import RECIPES, build_rbd_example
from .xg import build_XG, build_XG_moregen
from .xplus import build_XplusG, yn_relators
from .xpq import build_Xpq_c1, build_Xpq_c23, solve_gluing

__all__ = [
    "BridgePlan",
    "Claim",
    "ConstructionDossier",
    "FAIL",
    "PASS",
    "RECIPES",
    "UNCHECKED",
    "bridge_moves",
    "build_Xg",
    "build_XG",
    "build_XG_moregen",
    "build_XplusG",
    "build_Xpq_c1",
    "build_Xpq_c23",
    "build_Yg",
    "build_rbd_example",
    "intersection_count",
    "solve_gluing",
    "yn_relators",
]
