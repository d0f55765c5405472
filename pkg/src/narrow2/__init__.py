"""2-torsion bounds and certificates for narrow and ray class groups of
multiquadratic fields.

The package computes triple symbols from normalized ternary solutions,
certifies vectors attaining the 2-torsion bound in up to three coordinates,
searches for such vectors constructively, verifies the finite combinatorics
(expansion groups, additive systems) behind the bound, and emits external
cross-check scripts.
"""

from .additive import (
    AdditiveSystem,
    density_empty,
    derive_closure,
    equivalence_structure,
    from_json,
    random_bilinear_system,
    to_json,
    validate,
    verify_shrinking,
    zero_system,
)
from .arith import (
    QuadraticUnit,
    TernarySolution,
    factorize,
    fundamental_unit,
    is_prime,
    legendre,
    norm_one_unit,
    primes_one_mod_four,
    primes_up_to,
    solve_ternary,
    sqrt_mod,
    sqrt_two_adic,
    squarefree_part,
    ternary_solutions,
)
from .errors import (
    AcceptabilityError,
    ArgumentError,
    ConsistencyError,
    DegenerateContextError,
    IncompleteTableError,
    SearchExhaustedError,
    SystemFormatError,
    UnsupportedDimensionError,
)
from .expansion import (
    AlgebraElement,
    CochainTable,
    GroupElement,
    central_element,
    check_cochain_recursion,
    project_characters,
    subset_masks,
    vector_character,
)
from .maximality import (
    AcceptableVector,
    MaximalityReport,
    is_maximal,
    is_strongly_quadratically_consistent,
    parse_acceptable,
    ray_class_bound,
    torsion_bound,
)
from .rayclass import (
    RayClassPrediction,
    UnitReductionReport,
    emit_gp_script,
    predicted_ray_dimension,
    ray_class_report,
    verify_unit_reduction,
)
from .redei import (
    RedeiContext,
    acceptable_prime_factors,
    context_stream,
    emit_quartic,
    reciprocity_check,
    redei_context,
    redei_symbol,
    symbol_from_context,
)
from .search import (
    OmegaProfile,
    RedeiSpace,
    build_space,
    empty_space,
    enumerate_maximal_vectors,
    extend_space,
    find_ray_class_vector,
    verify_space,
)

__version__ = "0.1.0"

__all__ = [
    "AcceptabilityError",
    "AcceptableVector",
    "AdditiveSystem",
    "AlgebraElement",
    "ArgumentError",
    "CochainTable",
    "ConsistencyError",
    "DegenerateContextError",
    "GroupElement",
    "IncompleteTableError",
    "MaximalityReport",
    "OmegaProfile",
    "QuadraticUnit",
    "RayClassPrediction",
    "RedeiContext",
    "RedeiSpace",
    "SearchExhaustedError",
    "SystemFormatError",
    "TernarySolution",
    "UnitReductionReport",
    "UnsupportedDimensionError",
    "acceptable_prime_factors",
    "build_space",
    "central_element",
    "check_cochain_recursion",
    "context_stream",
    "density_empty",
    "derive_closure",
    "emit_gp_script",
    "emit_quartic",
    "empty_space",
    "enumerate_maximal_vectors",
    "equivalence_structure",
    "extend_space",
    "factorize",
    "find_ray_class_vector",
    "from_json",
    "fundamental_unit",
    "is_maximal",
    "is_prime",
    "is_strongly_quadratically_consistent",
    "legendre",
    "norm_one_unit",
    "parse_acceptable",
    "predicted_ray_dimension",
    "primes_one_mod_four",
    "primes_up_to",
    "project_characters",
    "random_bilinear_system",
    "ray_class_bound",
    "ray_class_report",
    "reciprocity_check",
    "redei_context",
    "redei_symbol",
    "solve_ternary",
    "sqrt_mod",
    "sqrt_two_adic",
    "squarefree_part",
    "subset_masks",
    "symbol_from_context",
    "ternary_solutions",
    "to_json",
    "torsion_bound",
    "validate",
    "vector_character",
    "verify_shrinking",
    "verify_space",
    "verify_unit_reduction",
    "zero_system",
]
