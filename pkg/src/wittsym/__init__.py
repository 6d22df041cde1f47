"""Truncated p-typical Witt vectors, the Artin-Schreier-Witt symbol and its pairings."""

from .config import BudgetExceeded, budget, check_budget, max_n
from .covectors import Covector, cov_add, cov_F, cov_neg, cov_V, psi, teich_at, zero_covector
from .forms import (
    CovectorTensor,
    FormalTensor,
    alpha_eval,
    alpha_inf,
    dlog_term,
    gn_equal,
    mn_generators,
    reduce_to_teich,
)
from .polys import IntegralityError, universal_polys
from .rings import (
    RingDescriptor,
    RingElement,
    finite_field,
    integers,
    laurent,
    lift_ring,
    prime_field,
    rationals,
)
from .symbols import (
    PrecisionPolicy,
    RouteDisagreement,
    SymbolValue,
    asw_symbol,
    asw_symbol_inf,
    classical_residue_symbol,
    pairing_inf,
    pairing_mn,
    pairing_n,
    wp_solve,
)
from .witt import (
    V_ext,
    V_trunc,
    WittVector,
    artin_schreier,
    from_ghost,
    frobenius_W,
    ghost,
    int_to_witt,
    teich_decompose,
    teichmuller,
    verschiebung,
    witt_to_int,
)

__all__ = [name for name in dir() if not name.startswith("_")]
