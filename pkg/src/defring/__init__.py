"""Equivariant deformations of curves with wild automorphisms, computed exactly over finite fields."""

from .ffield import FieldDesc, FieldElement, FieldError, Matrix, make_field
from .addpoly import AdditivePolynomial, RootBasis, additive_from_roots, moore_det, root_space
from .semigroup import NumericalSemigroup, SemigroupError, jump_report, semigroup
from .pseries import (ArtinRing, ArtinScalar, CompatibleTuple, LocalAutomorphism, SeriesError,
                      TruncatedSeries, compose, hensel_solve, is_compatible, lift_automorphism,
                      order_function)
from .ascurve import (ASCurve, CurveAutomorphism, CurveError, GroupTable, ad_f, automorphism_group,
                      local_action, p_f, representation)
from .deform import (DeformError, TangentReport, UnitriangularRep, coboundary_space, cocycle_space,
                     krull_dim_pcyclic, krull_dim_pcyclic_oracle, ordinary_tangent_dim)

__version__ = "0.1.0"

__all__ = [
    "ASCurve",
    "AdditivePolynomial",
    "ArtinRing",
    "ArtinScalar",
    "CompatibleTuple",
    "CurveAutomorphism",
    "CurveError",
    "DeformError",
    "FieldDesc",
    "FieldElement",
    "FieldError",
    "GroupTable",
    "LocalAutomorphism",
    "Matrix",
    "NumericalSemigroup",
    "RootBasis",
    "SemigroupError",
    "SeriesError",
    "TangentReport",
    "TruncatedSeries",
    "UnitriangularRep",
    "ad_f",
    "additive_from_roots",
    "automorphism_group",
    "coboundary_space",
    "cocycle_space",
    "compose",
    "hensel_solve",
    "is_compatible",
    "jump_report",
    "krull_dim_pcyclic",
    "krull_dim_pcyclic_oracle",
    "lift_automorphism",
    "local_action",
    "make_field",
    "moore_det",
    "order_function",
    "ordinary_tangent_dim",
    "p_f",
    "representation",
    "root_space",
    "semigroup",
]
