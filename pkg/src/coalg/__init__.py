"""Exact linear algebra over Q and F_p for finite-dimensional coalgebras and comodules."""

from .exactlin import (
    QQ,
    Echelon,
    Field,
    FieldMismatchError,
    Fp,
    Matrix,
    PrimeField,
    Rationals,
    ShapeError,
    SubspaceBasis,
    kernel_basis,
    parse_field,
    rref,
    solve_linear,
    subspace_ops,
)
from .coalgebra import (
    Coalgebra,
    CoalgebraError,
    IdempotentDataError,
    NotAlmostIdempotentError,
    UnsupportedFieldError,
    convolve,
    coradical,
    dual_radical,
    grouplike_coalgebra,
    injective_block_decomposition,
    lift_idempotent,
    lift_idempotent_with_count,
    matrix_coalgebra,
    matrix_coalgebra_idempotents,
    validate,
)
from .comodule import (
    Comodule,
    ComoduleError,
    ComoduleMorphism,
    coefficient_support,
    direct_sum,
    dual_action,
    gamma_iso_check,
    hom_space,
    injective_envelope,
    integrals,
    left_integrals,
    radical_and_top,
    right_integrals,
    socle,
    validate_comodule,
)
from .incidence import (
    FinitePoset,
    PosetError,
    antichain,
    build_incidence,
    chain,
    closed_form_hom_dim,
    construct_integral,
    diamond,
    e_l_injective,
    e_r_injective,
    n_poset,
    parse_poset,
    realizability_poset,
    simple_comodule,
)
from .frobenius import (
    HypothesisError,
    dual_projective_cover_check,
    is_left_co_frobenius,
    is_right_co_frobenius,
    phi_matching,
    unique_maximal_in_left_injectives,
    verify_integral_bounds,
)

__version__ = "0.1.0"
