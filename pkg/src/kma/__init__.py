"""Root systems, Weyl-group tessellations and Lorentzian lightcone geometry
of symmetrizable hyperbolic generalized Cartan matrices, with the rank-2
twin-tree model and its asymptote-ray halo."""

from .gcm import (
    GeneralizedCartanMatrix,
    GramMatrices,
    Kind,
    Symmetrizer,
    TypeClassification,
    classify,
    gram_matrices,
    signature,
    symmetrize,
)
from .lorentz import Basis, CartanVector, CausalClass, LorentzGeometry, NullRay
from .roots import PhiLabel, Root, RootClass, RootKind, RootSystem
from .su2flow import HemispherePoint, SliceVector, Su2Flow, hemisphere_point
from .twintree import End, Halo, RayRef, TreeChamber, U2Element
from .weyl import WeylGroup, chamber_action, rank2_compose, rank2_inverse, rank2_word

__version__ = "0.1.0"

__all__ = [
    "GeneralizedCartanMatrix",
    "GramMatrices",
    "Kind",
    "Symmetrizer",
    "TypeClassification",
    "classify",
    "gram_matrices",
    "signature",
    "symmetrize",
    "Basis",
    "CartanVector",
    "CausalClass",
    "LorentzGeometry",
    "NullRay",
    "PhiLabel",
    "Root",
    "RootClass",
    "RootKind",
    "RootSystem",
    "HemispherePoint",
    "SliceVector",
    "Su2Flow",
    "hemisphere_point",
    "End",
    "Halo",
    "RayRef",
    "TreeChamber",
    "U2Element",
    "WeylGroup",
    "chamber_action",
    "rank2_compose",
    "rank2_inverse",
    "rank2_word",
    "__version__",
]
