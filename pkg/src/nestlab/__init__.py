"""Exact workbench for subspace nests, operator bimodules, and abstract chains.

Everything is computed over the rationals with fractions.Fraction, so results
are exact: equal subspaces compare equal, and no tolerance appears anywhere.
"""

from .chaincalc import (
    ATTAINED,
    COUNTABLE,
    INFINITE,
    LIMIT,
    UNCOUNTABLE,
    AbstractNest,
    AbstractSupportFn,
    ChainNode,
    SupportPair,
    check_essential,
    check_left_continuous,
    check_p_infinity,
    check_p_property,
    check_pair,
    lower_regularization,
    predict_m0,
    predict_m0_pair,
    predict_max_pair,
    predict_me_support,
    validate_chain,
)
from .documents import WorkbenchDoc, document_payload, parse_document, serialize_document
from .errors import (
    AmbientMismatchError,
    ChainError,
    ContainmentError,
    DimensionMismatchError,
    DocumentError,
    IncomparableError,
    JoinNotRepresentedError,
    LimitGapError,
    MissingEndpointError,
    NestlabError,
    NonzeroAtZeroError,
    NotABimoduleError,
    NotAMemberError,
    NotAnElementError,
    NotEssentialError,
    NotInNestError,
    PairAdmissibilityError,
    PInfinityError,
    PPropertyError,
    SupportFunctionError,
    UnknownCommandError,
    UnknownSuiteError,
    ZeroSubspaceError,
    ZeroVectorError,
)
from .nest import (
    Nest,
    adjacent,
    perp_span_check,
    smallest_intersecting,
    validate_nest,
)
from .opspace import (
    OperatorSpace,
    RankOne,
    SupportFn,
    absorption_check,
    decompose,
    essential_support_of,
    generate_bimodule,
    is_bimodule,
    is_reflexive,
    m_of,
    nest_algebra,
    rank_one_in_alg,
    rank_one_in_m,
    span_of_rank_ones,
    support_of,
)
from .ratlin import (
    Matrix,
    Subspace,
    Vector,
    annihilator,
    as_fraction,
    as_vector,
    join,
    meet,
    outer,
    quotient_dim,
    rank,
    rref,
    span,
)

__version__ = "0.1.0"

__all__ = [
    "ATTAINED",
    "COUNTABLE",
    "INFINITE",
    "LIMIT",
    "UNCOUNTABLE",
    "AbstractNest",
    "AbstractSupportFn",
    "AmbientMismatchError",
    "ChainError",
    "ChainNode",
    "ContainmentError",
    "DimensionMismatchError",
    "DocumentError",
    "IncomparableError",
    "JoinNotRepresentedError",
    "LimitGapError",
    "Matrix",
    "MissingEndpointError",
    "Nest",
    "NestlabError",
    "NonzeroAtZeroError",
    "NotABimoduleError",
    "NotAMemberError",
    "NotAnElementError",
    "NotEssentialError",
    "NotInNestError",
    "OperatorSpace",
    "PairAdmissibilityError",
    "PInfinityError",
    "PPropertyError",
    "RankOne",
    "Subspace",
    "SupportFn",
    "SupportFunctionError",
    "SupportPair",
    "UnknownCommandError",
    "UnknownSuiteError",
    "Vector",
    "WorkbenchDoc",
    "ZeroSubspaceError",
    "ZeroVectorError",
    "absorption_check",
    "adjacent",
    "annihilator",
    "as_fraction",
    "as_vector",
    "check_essential",
    "check_left_continuous",
    "check_p_infinity",
    "check_p_property",
    "check_pair",
    "decompose",
    "document_payload",
    "essential_support_of",
    "generate_bimodule",
    "is_bimodule",
    "is_reflexive",
    "join",
    "lower_regularization",
    "m_of",
    "meet",
    "nest_algebra",
    "outer",
    "parse_document",
    "perp_span_check",
    "predict_m0",
    "predict_m0_pair",
    "predict_max_pair",
    "predict_me_support",
    "quotient_dim",
    "rank",
    "rank_one_in_alg",
    "rank_one_in_m",
    "rref",
    "serialize_document",
    "smallest_intersecting",
    "span",
    "span_of_rank_ones",
    "support_of",
    "validate_chain",
    "validate_nest",
]
