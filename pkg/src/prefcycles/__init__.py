"""Preference cycles, social welfare functions and the surfaces that model them."""

from .complex import DeltaComplex, SurfaceTag, SurfaceType, classify, orientation_double_cover
from .errors import PrefCyclesError
from .models import ModelKind, arrow_check, build_model, punctured_variant, table1_report
from .nerve import cover_U, cover_V, nerve
from .preferences import PreferenceCycle, TernaryCode, WeakOrder, decode, encode, restrict
from .social_choice import Dictator, LookupTable, PairwiseMajority, audit, image_of_psi

__all__ = [
    "DeltaComplex", "SurfaceTag", "SurfaceType", "classify", "orientation_double_cover",
    "PrefCyclesError",
    "ModelKind", "arrow_check", "build_model", "punctured_variant", "table1_report",
    "cover_U", "cover_V", "nerve",
    "PreferenceCycle", "TernaryCode", "WeakOrder", "decode", "encode", "restrict",
    "Dictator", "LookupTable", "PairwiseMajority", "audit", "image_of_psi",
]
