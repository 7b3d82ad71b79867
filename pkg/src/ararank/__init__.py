"""Arithmetical-rank witnesses for squarefree monomial ideals.

The library computes short polynomial generating sets up to radical — in
particular a two-element set for any height-2 ideal with Cohen-Macaulay
quotient — and certifies every output with exact Groebner-basis radical
membership checks.
"""

from .monomials import (
    MonomialIdeal,
    ParseError,
    PrimeComponent,
    SquarefreeMonomial,
    VarSet,
    alexander_dual_ideal,
    format_ideal,
    height,
    indeg,
    intersect,
    minimal_transversals,
    minimalize,
    parse_ideal,
    prime_decomposition,
)
from .simplicial import (
    BettiTable,
    PeelSequence,
    PeelStep,
    SimplicialComplex,
    alexander_dual,
    betti_table,
    complex_of_ideal,
    cone_extension,
    dual_complex_of_ideal,
    dual_ideal_of_complex,
    format_complex,
    has_linear_resolution,
    hochster_betti,
    is_cohen_macaulay,
    parse_complex,
    pd,
    peel,
    reg,
    stanley_reisner_ideal,
)
from .polyalg import (
    DEGREVLEX,
    LEX,
    MembershipCertificate,
    MonomialOrder,
    Polynomial,
    PowerCertificate,
    Term,
    buchberger,
    divide_with_cofactors,
    format_polynomial,
    is_groebner_basis,
    membership,
    parse_polynomial,
    power_membership,
    radical_membership,
)
from .constructions import (
    BTData,
    ConeData,
    ConstructionError,
    GeneratorWitness,
    SVPartition,
    adual_line_family,
    ara_plus_one,
    base_case_generators,
    bt_cone_elements,
    bt_step1_normalize,
    cone_lift,
    construct_h2cm,
    sv_elements,
)
from .verifier import (
    Counterexample,
    RadicalReport,
    check_family_identity,
    fast_negative_check,
    polynomial_in_monomial_ideal,
    verify_up_to_radical,
)

__version__ = "0.1.0"
