"""Signed fundamental domains for the totally positive units of a totally
real number field, certified by orbit counting, with Shintani zeta sums for
Hecke L-functions and ray-class partial zeta functions."""

from .domain import (
    SignedCone,
    SignedDomain,
    build_signed_domain,
    cone_contains,
    cone_sign,
    colmez_generators,
    is_true_domain,
    orbit_net_count,
    verify_net_counts,
)
from .field import EmbeddedVector, FieldElement, NumberField, new_field
from .geometry import (
    Simplex,
    barycentric,
    cone_coordinates,
    pierces_cone,
    pierces_simplex,
    project_ell,
)
from .ideals import (
    FractionalIdeal,
    Order,
    coset_enumerate_R,
    enumerate_R_sigma,
    ideal_add,
    ideal_inverse,
    ideal_mul,
    integral_basis,
    principal_ideal,
)
from .zeta import (
    CharacterTable,
    ZetaParams,
    dedekind_zeta_via_domain,
    euler_product_oracle,
    l_function,
    partial_zeta,
    shintani_zeta,
    trivial_character,
)

__all__ = [
    "CharacterTable",
    "EmbeddedVector",
    "FieldElement",
    "FractionalIdeal",
    "NumberField",
    "Order",
    "Simplex",
    "SignedCone",
    "SignedDomain",
    "ZetaParams",
    "barycentric",
    "build_signed_domain",
    "colmez_generators",
    "cone_contains",
    "cone_coordinates",
    "cone_sign",
    "coset_enumerate_R",
    "dedekind_zeta_via_domain",
    "enumerate_R_sigma",
    "euler_product_oracle",
    "ideal_add",
    "ideal_inverse",
    "ideal_mul",
    "integral_basis",
    "is_true_domain",
    "l_function",
    "new_field",
    "orbit_net_count",
    "partial_zeta",
    "pierces_cone",
    "pierces_simplex",
    "principal_ideal",
    "project_ell",
    "shintani_zeta",
    "trivial_character",
    "verify_net_counts",
]
__version__ = "0.1.0"
