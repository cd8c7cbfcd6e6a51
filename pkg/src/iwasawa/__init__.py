"""Exact Iwasawa decompositions of SL(n) matrices over Q_p and R."""

from .errors import (
    DimensionMismatch,
    IndexOutOfRange,
    InvalidFamilyParams,
    IwasawaError,
    NonPrime,
    NotSpecialLinear,
    PrecisionLoss,
    SingularMatrix,
    ZeroPivot,
    ZeroVector,
)
from .exact_arith import INF, Place, classify_padic, padic_norm, padic_valuation
from .identities import lemma1_check, lemma2_check, speciallemma1_check, telescope_check
from .lu_ul import find_anti_leading_permutation, lu_decompose, strong_ul_decompose
from .matrix import RatMatrix, SignedPermutation, anti_leading_minors, epsilon_product, minor
from .padic import (
    FamilyParams,
    PadicIwasawa,
    apply_family,
    decompose_padic,
    dilaton_valuations,
    verify_membership,
)
from .pluecker import dilaton_norm_unified, place_norm, pluecker
from .real import RealIwasawa, real_axions_dilatons, real_decompose

__version__ = "0.1.0"
