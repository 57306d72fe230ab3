"""Exact rank-metric code laboratory over finite field towers."""

__version__ = "0.1.0"

from ._core import BACKEND
from .errors import RmlabError
from .ffield import FieldTower, gf, tower_create
from .fqspace import FqSubspace, span_of
from .gabidulin import GabidulinCode, LinearCode, dual_code, encode, is_mrd, min_rank_distance
from .highermrd import is_gkp_ell, is_ld_mrd, is_ld_mrd_via_dual, is_mrd_ell
from .patterns import KernelPattern
from .qlinpoly import QLinPoly, annihilator

__all__ = [
    "BACKEND",
    "FieldTower",
    "FqSubspace",
    "GabidulinCode",
    "KernelPattern",
    "LinearCode",
    "QLinPoly",
    "RmlabError",
    "annihilator",
    "dual_code",
    "encode",
    "gf",
    "is_gkp_ell",
    "is_ld_mrd",
    "is_ld_mrd_via_dual",
    "is_mrd",
    "is_mrd_ell",
    "min_rank_distance",
    "span_of",
    "tower_create",
]
