"""Exact-arithmetic q-series correlation functions and q-dimensions for the
half-integral-level type-D construction, with a brute-force fermionic
Fock-space oracle verifying every closed formula."""

from .laurent import (
    EvaluationPointError,
    InternalInvariantError,
    LaurentPoly,
    UsageError,
    VarTable,
    lp_mul,
    lp_tddt,
    poly_divexact,
    poly_gcd,
)
from .ratfunc import RatFunc, rf_reduce
from .series import HalfSeries, hs_eval, hs_inv, hs_mul, hs_subst_monomial
from .special import f_bo, pochhammer_inf, qq_inf, theta, theta_deriv
from .weylb import (
    BLabel,
    SignedPerm,
    act,
    char_B,
    enumerate_WB,
    norm_sq,
    rho_B,
    sign_vectors,
    weyl_denominator_B,
    weyl_denominator_det,
)
from .correlation import (
    CorrSpec,
    d_half_vacuum,
    d_sum_function,
    d_twisted_function,
    fock_trace_at_sign,
    fock_trace_closed,
    gl_function,
    irreducible_function,
    pair_block,
    vacuum_one_point_series,
)
from .qdim import QDimForm, q_minus, q_plus, qdim_irreducible
from .fock import (
    FockSpace,
    FockState,
    Gradings,
    annihilate,
    apply_D,
    apply_field,
    create,
    enumerate_states,
    extract_module_function,
    irreducible_from_projected,
    irreducible_from_traces,
    oracle_trace,
)

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"
