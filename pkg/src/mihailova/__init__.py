"""Pair subgroups of direct products of free groups.

The package builds, for a finitely presented group H given by a concise
presentation, the subgroup of F_n x F_n of pairs with equal images in H:
its generators and an explicit recursive relator family, the projection
from a free group over d- and t-letters, Peiffer moves on identities among
relators with certificate-producing reduction, and the realization of the
subgroup inside the automorphism group of a rank-3 free group.
"""

from .automorphisms import (
    EmbeddingTable,
    Endomorphism3,
    compose,
    f2xf2_generators,
    fn_into_f2,
    format_endomorphism,
    orbit_undecidable_subgroup,
    pair_automorphism,
    parse_endomorphism,
    sandwich_automorphism,
)
from .pairs import (
    MixedWord,
    PairWord,
    SyllableForm,
    capitalize,
    decapitalize,
    decompose,
    exchange_relator,
    format_mixed_word,
    format_pair_word,
    in_mihailova,
    in_pair_kernel,
    mihailova_generators,
    pair_image,
    parse_mixed_word,
    parse_pair_word,
    recompose,
    relator_family,
    relator_word,
    root_relator,
)
from .peiffer import (
    IdentitySequence,
    IdentityTerm,
    InapplicableMoveError,
    InconsistencyError,
    InsertionData,
    Move,
    ReductionBudget,
    ReductionCertificate,
    TransformResult,
    associated_identity,
    deletion_transform,
    exchange_transform,
    format_certificate,
    insertion_transform,
    inverse_exchange_transform,
    is_identity,
    parse_certificate,
    peiffer_delete,
    peiffer_exchange,
    peiffer_insert,
    peiffer_inverse_exchange,
    reduce_to_empty,
    step_in_relator_normal_closure,
    verify_certificate,
)
from .presentations import (
    CertificateFactor,
    ClosureBudget,
    Outcome,
    Presentation,
    Verdict,
    certificate_product,
    check_strengthened_conciseness,
    concise_refinement,
    equal_in_group,
    format_presentation,
    in_integer_span,
    is_concise,
    normal_closure_contains,
    parse_presentation,
)
from .words import (
    Alphabet,
    AlphabetError,
    ParseError,
    RootDecomposition,
    Word,
    abelianize,
    are_conjugate,
    ball_size,
    commutator,
    conjugate,
    cyclic_reduce,
    iter_reduced_words,
    root,
)

__version__ = "0.1.0"

__all__ = [
    "Alphabet",
    "AlphabetError",
    "CertificateFactor",
    "ClosureBudget",
    "EmbeddingTable",
    "Endomorphism3",
    "IdentitySequence",
    "IdentityTerm",
    "InapplicableMoveError",
    "InconsistencyError",
    "InsertionData",
    "MixedWord",
    "Move",
    "Outcome",
    "PairWord",
    "ParseError",
    "Presentation",
    "ReductionBudget",
    "ReductionCertificate",
    "RootDecomposition",
    "SyllableForm",
    "TransformResult",
    "Verdict",
    "Word",
    "abelianize",
    "are_conjugate",
    "associated_identity",
    "ball_size",
    "capitalize",
    "certificate_product",
    "check_strengthened_conciseness",
    "commutator",
    "compose",
    "concise_refinement",
    "conjugate",
    "cyclic_reduce",
    "decapitalize",
    "decompose",
    "deletion_transform",
    "equal_in_group",
    "exchange_relator",
    "exchange_transform",
    "f2xf2_generators",
    "fn_into_f2",
    "format_certificate",
    "format_endomorphism",
    "format_mixed_word",
    "format_pair_word",
    "format_presentation",
    "in_integer_span",
    "in_mihailova",
    "in_pair_kernel",
    "insertion_transform",
    "inverse_exchange_transform",
    "is_concise",
    "is_identity",
    "iter_reduced_words",
    "mihailova_generators",
    "normal_closure_contains",
    "orbit_undecidable_subgroup",
    "pair_automorphism",
    "pair_image",
    "parse_certificate",
    "parse_endomorphism",
    "parse_mixed_word",
    "parse_pair_word",
    "parse_presentation",
    "peiffer_delete",
    "peiffer_exchange",
    "peiffer_insert",
    "peiffer_inverse_exchange",
    "recompose",
    "reduce_to_empty",
    "relator_family",
    "relator_word",
    "root",
    "root_relator",
    "sandwich_automorphism",
    "step_in_relator_normal_closure",
    "verify_certificate",
]
