"""Exact Fourier-analytic constants for linear threshold functions.

Thin wrapper over the compiled extension; see the package README for the
full C++ library and CLI.
"""

from bfc._bfc import (  # noqa: F401
    __version__,
    balanced_lift_weights,
    chow,
    critical_index,
    degree1_weight,
    dist_to_extremal,
    ell_moments,
    enumerate_counts,
    gamma_search,
    hamming_dist,
    influence,
    inverse_wht,
    khintchine,
    khintchine_exact,
    make_proper,
    mean_sign,
    mean_sign_inv,
    min_norm,
    mixed_degree1,
    reduce_t,
    reduce_w1,
    robust_scan,
    t_exact,
    t_of_w,
    t_sphere,
    to_table,
    verify,
    w1,
    wht,
)

__all__ = [k for k in dir() if not k.startswith("_")]
