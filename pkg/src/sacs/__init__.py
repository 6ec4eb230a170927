"""Stable almost complex structures on 10-manifolds with H_1 = 0 and no 2-torsion in H_2."""

from . import catalog
from .charclass import BundleCharData, ManifoldCharData, ManifoldData, W6Spec, validate_all
from .cohomology import CohClass, CohomologyRing, GradedGroup
from .decide import (compute_D, decide_all, decide_bundle, decide_corollary_h, decide_tangent,
                     decide_w40, membership_w6t)
from .io import parse, serialize

__all__ = [
    "BundleCharData", "CohClass", "CohomologyRing", "GradedGroup", "ManifoldCharData",
    "ManifoldData", "W6Spec", "catalog", "compute_D", "decide_all", "decide_bundle",
    "decide_corollary_h", "decide_tangent", "decide_w40", "membership_w6t", "parse",
    "serialize", "validate_all",
]
