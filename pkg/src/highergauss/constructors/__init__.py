"""Builders for premodular data: pointed categories, doubles, Kac-Peterson data."""

from .groups import (
    BUILTIN_GROUPS,
    FiniteGroup,
    InvalidGroup,
    builtin_group,
    cyclic_group,
    dihedral_group_8,
    double_gauss_sum,
    quaternion_group,
    symmetric_group_3,
)
from .liealg import InternalInconsistency, LieDatum, UnsupportedType, kac_peterson
from .metric import (
    IllDefinedInducedForm,
    IllFormedQuadraticForm,
    MetricGroup,
    NotIsotropic,
    abelian_double,
    abelian_double_metric,
    condense_pointed,
    cyclic_metric,
    hyperbolic,
    parse_root,
    pointed,
    smith_normal_form,
    subgroup_closure,
)
from .numtheory import is_prime, jacobi, legendre

__all__ = [
    "BUILTIN_GROUPS",
    "FiniteGroup",
    "IllDefinedInducedForm",
    "IllFormedQuadraticForm",
    "InternalInconsistency",
    "InvalidGroup",
    "LieDatum",
    "MetricGroup",
    "NotIsotropic",
    "UnsupportedType",
    "abelian_double",
    "abelian_double_metric",
    "builtin_group",
    "condense_pointed",
    "cyclic_group",
    "cyclic_metric",
    "dihedral_group_8",
    "double_gauss_sum",
    "hyperbolic",
    "is_prime",
    "jacobi",
    "kac_peterson",
    "legendre",
    "parse_root",
    "pointed",
    "quaternion_group",
    "smith_normal_form",
    "subgroup_closure",
    "symmetric_group_3",
]
