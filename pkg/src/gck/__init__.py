"""Exact checkers for generalized complex structures over polynomial coefficients."""
from .algebroid import IMFormCandidate, PoissonAlgebroid, check_im_form
from .courant import (
    GeneralizedStructure,
    GSection,
    check_C1,
    check_C2,
    check_C3,
    check_C4,
    check_dirac,
    check_gcs,
    check_integrability,
    courant_bracket,
    gauge,
    integrability_defect,
    opposite,
)
from .errors import GCKError
from .hitchin import HitchinPair, check_hitchin_pair, gcs_to_hitchin, hitchin_to_gcs, torsion_identity_defect
from .morphism import GHolMapCandidate, check_gholomorphic
from .ratpoly import RatPoly
from .report import CheckReport, Defect
from .tensorfield import Bivector, Chart, EndoField, KForm, PolyMap, VectorField

__all__ = [
    "Bivector", "Chart", "CheckReport", "Defect", "EndoField", "GCKError", "GHolMapCandidate", "GSection",
    "GeneralizedStructure", "HitchinPair", "IMFormCandidate", "KForm", "PoissonAlgebroid", "PolyMap", "RatPoly",
    "VectorField", "check_C1", "check_C2", "check_C3", "check_C4", "check_dirac", "check_gcs", "check_gholomorphic",
    "check_hitchin_pair", "check_im_form", "check_integrability", "courant_bracket", "gauge", "gcs_to_hitchin",
    "hitchin_to_gcs", "integrability_defect", "opposite", "torsion_identity_defect",
]
