"""Exact calculator for elementary and transvection matrix groups.

The package builds matrices over explicit commutative rings (integers
mod m, polynomial extensions, localizations), tracks ideal membership
through certificates, and exposes the group-theoretic toolbox on top:
generator words and their defining relations, conjugation rewriting
with square-ideal output, decomposition of conjugated generators, and
the dictionaries between elementary words and transvection words.

Every nontrivial construction re-verifies its own defining identity by
exact matrix arithmetic before returning.
"""

from .errors import (
    BadIndices,
    CertificateInvalid,
    DescriptorMismatch,
    DimensionTooSmall,
    ElemcalcError,
    FormMismatch,
    FormRelationFails,
    IdealMismatch,
    LengthMismatch,
    NotAUnit,
    NotAlternating,
    NotCertified,
    NotCongruentToStandard,
    NotInKernel,
    NotLocalRing,
    NonstandardForm,
    OddDimension,
    PairNotZero,
    PairingNonzero,
    PfaffianNotOne,
    SideConditionViolated,
    SupportOverlap,
    TwoNotInvertible,
    UnknownSuite,
    UnknownVariable,
    VerificationFailed,
)
from .rings import (
    CertifiedElement,
    IdealPresentation,
    LocRing,
    PairwiseSquare,
    PolyRing,
    RingElement,
    ZmodRing,
    certify,
    half,
    invert_unit,
    lift_certificate,
    lift_ideal,
    product_certificate,
    substitute,
)
from .matrices import (
    ColumnVector,
    ExactMatrix,
    adjugate_inverse,
    basis_vector,
    det,
    from_rows,
    identity,
    is_alternating,
    is_symplectic,
    kernel_decomposition,
    pfaffian,
    sigma_index,
    standard_symplectic_form,
    tilde,
    tilde_pair,
    zero_matrix,
    zero_vector,
)
from .words import (
    LinLetter,
    MuLetter,
    RELATION_TAGS,
    RhoLetter,
    SympLetter,
    Word,
    check_relation,
    commutator_word,
    conjugate_word,
    evaluate,
    expand_mu,
    expand_rho,
    invert_word,
    make_linear_generator,
    make_symplectic_generator,
    normalize_symplectic_indices,
    symplectic_entry_pattern,
    word,
    word_certified,
    word_in_E1,
    word_in_ESp1,
)
from .decompose import (
    DecompositionResult,
    decompose_conjugate,
    long_root_pair,
    long_root_reduce,
    long_root_unimodular,
    short_root_pair,
    short_root_split,
    sum_to_product,
)
from .rewrite import (
    REWRITE_CASES,
    RewriteResult,
    include_I2_linear,
    include_I2_symplectic,
    rewrite_conjugation_linear,
    rewrite_conjugation_symplectic,
    specialize_and_check,
)
from .bridge import (
    AlternatingForm,
    E1_to_etrans,
    ESp1_to_etranssp,
    LowerTransLetter,
    StandardizationResult,
    UpperTransLetter,
    etrans_word_to_E1,
    etranssp_word_to_ESp1,
    linear_transvection_matrix,
    mu_matrix,
    rho_matrix,
    standard_form,
    standardize_alternating,
    transport_conjugation,
)

__version__ = "0.1.0"

__all__ = [n for n in dir() if not n.startswith("_")]
