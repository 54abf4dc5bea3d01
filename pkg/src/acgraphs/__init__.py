"""Andrews-Curtis and product-replacement graphs over concrete finite
groups: exhaustive graph analysis, randomized sampling walks, and the
statistical reference machinery used to validate them."""

__version__ = "0.1.0"

from .elements import (
    AbelianTuple,
    GroupElement,
    MatrixGF,
    Permutation,
    conj,
    cycle_count,
    format_cycles,
    inv,
    mul,
    parse_cycles,
)
from .errors import (
    GroupSpecError,
    PreconditionError,
    ResourceCapError,
    VerificationError,
)
from .graphs import (
    GraphHandle,
    GraphMode,
    cayley_diameter,
    components,
    cover_check,
    diameter,
    distance,
    soluble_component_check,
)
from .groups import FiniteGroup, SymmetricAmbient, parse_group, random_even_permutation
from .subgroups import (
    AbelianStructure,
    Subgroup,
    abelianization,
    closure,
    covering_numbers,
    derived_subgroup,
    is_soluble,
    mazurov_lift,
    nd_pair,
    normal_closure,
    normal_subgroups,
    psi_k,
    quotient_group,
)
from .walkers import (
    WalkConfig,
    WalkState,
    acr_sample,
    acr_sample_many,
    acr_step,
    cayley_class_walk,
    default_step_budget,
    mixing_diagnostic,
    pra_sample,
    pra_sample_many,
)

__all__ = [
    "AbelianStructure",
    "AbelianTuple",
    "FiniteGroup",
    "GraphHandle",
    "GraphMode",
    "GroupElement",
    "GroupSpecError",
    "MatrixGF",
    "Permutation",
    "PreconditionError",
    "ResourceCapError",
    "Subgroup",
    "SymmetricAmbient",
    "VerificationError",
    "WalkConfig",
    "WalkState",
    "abelianization",
    "acr_sample",
    "acr_sample_many",
    "acr_step",
    "cayley_class_walk",
    "cayley_diameter",
    "closure",
    "components",
    "conj",
    "cover_check",
    "covering_numbers",
    "cycle_count",
    "default_step_budget",
    "derived_subgroup",
    "diameter",
    "distance",
    "format_cycles",
    "inv",
    "is_soluble",
    "mazurov_lift",
    "mixing_diagnostic",
    "mul",
    "nd_pair",
    "normal_closure",
    "normal_subgroups",
    "parse_cycles",
    "parse_group",
    "pra_sample",
    "pra_sample_many",
    "psi_k",
    "quotient_group",
    "random_even_permutation",
    "soluble_component_check",
]
