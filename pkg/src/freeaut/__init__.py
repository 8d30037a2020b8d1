"""Exact recognition of tame and wild linear automorphisms of free
associative algebras fixing a distinguished variable, with verifiable
certificates."""

from .autgroup import (
    AutoFactor,
    ElemAuto,
    ScaleAuto,
    SwapAuto,
    TameVerdict,
    abelianized_tame_decomposition,
    builtin,
    factors_to_endo,
    invert_linear,
    is_automorphism_linear,
    is_tame,
    matrix_to_endo,
    stable_tame,
    transcript_to_autofactors,
)
from .commpoly import (
    CommPoly,
    MonomialOrder,
    PolyRing,
    poly_divmod,
    poly_sqrt,
    term_divide,
)
from .errors import (
    ContextError,
    DomainError,
    FreeautError,
    NotInvertibleError,
    NotXLinearError,
    ParseError,
)
from .freealg import (
    FreeAlgebra,
    KzEndo,
    NCPoly,
    XDegreeSplit,
    default_xnames,
    linear_profile,
    profile_to_endo,
    x_split,
)
from .jacobian import (
    TensorElem,
    abelianize_endo,
    jacobian_full,
    jacobian_linear,
    partial_derivative,
    specialize_pair_matrix,
    tensor_to_pair_poly,
)
from .matgroup import (
    Diag,
    Elem,
    Factor,
    PolyMatrix,
    Swap,
    Tame,
    Transcript,
    Wild,
    cohn_family,
    cohn_matrix,
    det,
    ge2_decide,
    gl2_univariate_decompose,
    is_gl,
    mennicke_factors,
    stabilize3,
    verify_transcript,
)
from .parser import (
    format_autofactor,
    format_autofactors,
    format_comm_poly,
    format_endo,
    format_endo_file,
    format_factor,
    format_matrix,
    format_monomial,
    format_nc_poly,
    format_scalar,
    format_transcript,
    format_word,
    parse_autofactors,
    parse_comm_poly,
    parse_endo_file,
    parse_nc_poly,
    parse_transcript,
)
from .scalars import QQ, Field, FpElement, PrimeField, RationalField, Scalar, field_from_name

__version__ = "0.1.0"

__all__ = [
    "AutoFactor",
    "CommPoly",
    "ContextError",
    "Diag",
    "DomainError",
    "Elem",
    "ElemAuto",
    "Factor",
    "Field",
    "FpElement",
    "FreeAlgebra",
    "FreeautError",
    "KzEndo",
    "MonomialOrder",
    "NCPoly",
    "NotInvertibleError",
    "NotXLinearError",
    "ParseError",
    "PolyMatrix",
    "PolyRing",
    "PrimeField",
    "QQ",
    "RationalField",
    "Scalar",
    "ScaleAuto",
    "Swap",
    "SwapAuto",
    "Tame",
    "TameVerdict",
    "TensorElem",
    "Transcript",
    "Wild",
    "XDegreeSplit",
    "abelianize_endo",
    "abelianized_tame_decomposition",
    "builtin",
    "cohn_family",
    "cohn_matrix",
    "default_xnames",
    "det",
    "factors_to_endo",
    "field_from_name",
    "format_autofactor",
    "format_autofactors",
    "format_comm_poly",
    "format_endo",
    "format_endo_file",
    "format_factor",
    "format_matrix",
    "format_monomial",
    "format_nc_poly",
    "format_scalar",
    "format_transcript",
    "format_word",
    "ge2_decide",
    "gl2_univariate_decompose",
    "invert_linear",
    "is_automorphism_linear",
    "is_gl",
    "is_tame",
    "jacobian_full",
    "jacobian_linear",
    "linear_profile",
    "matrix_to_endo",
    "mennicke_factors",
    "parse_autofactors",
    "parse_comm_poly",
    "parse_endo_file",
    "parse_nc_poly",
    "parse_transcript",
    "partial_derivative",
    "poly_divmod",
    "poly_sqrt",
    "profile_to_endo",
    "specialize_pair_matrix",
    "stable_tame",
    "stabilize3",
    "tensor_to_pair_poly",
    "term_divide",
    "transcript_to_autofactors",
    "verify_transcript",
    "x_split",
]
