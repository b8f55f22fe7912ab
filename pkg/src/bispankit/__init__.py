"""Exact finite computations with G-sets, spans, bispans and Tambara functors."""

from . import config
from .bispans import (
    Bispan,
    SemiringContext,
    bispan_iso,
    compose_bispans,
    identity_bispan,
    product_bispans,
    pure_norm,
    pure_restriction,
    pure_transfer,
)
from .errors import BispankitError
from .groups import (
    FiniteGroup,
    Subgroup,
    all_subgroups,
    by_name,
    double_cosets,
    group_from_cayley,
    group_from_permutations,
    weyl_group,
)
from .gsets import (
    GMap,
    GSet,
    coproduct,
    decompose,
    dependent_product,
    distributivity_diagram,
    iso,
    orbit,
    product,
    pullback,
)
from .spans import (
    Span,
    SubcategoryDescriptor,
    add_spans,
    compose_spans,
    span_iso,
    validate_subcategory,
)
from .tambara import (
    BurnsideElement,
    BurnsideModel,
    decompose_bispan_to_generators,
    eval_bispan,
    grouplike_check,
    verify_model,
)
from .wreath import norm_vs_dependent_product, twisted_power, wreath_hom

__all__ = [
    "config", "Bispan", "SemiringContext", "bispan_iso", "compose_bispans", "identity_bispan",
    "product_bispans", "pure_norm", "pure_restriction", "pure_transfer", "BispankitError",
    "FiniteGroup", "Subgroup", "all_subgroups", "by_name", "double_cosets", "group_from_cayley",
    "group_from_permutations", "weyl_group", "GMap", "GSet", "coproduct", "decompose",
    "dependent_product", "distributivity_diagram", "iso", "orbit", "product", "pullback", "Span",
    "SubcategoryDescriptor", "add_spans", "compose_spans", "span_iso", "validate_subcategory",
    "BurnsideElement", "BurnsideModel", "decompose_bispan_to_generators", "eval_bispan",
    "grouplike_check", "verify_model", "norm_vs_dependent_product", "twisted_power", "wreath_hom",
]
