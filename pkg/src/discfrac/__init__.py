"""Generalized discrete fractional sums and differences on shifted grids."""

from discfrac.kernels import (
    Family,
    Kernel,
    KernelSpec,
    PairReport,
    build_kernel,
    invert_kernel,
    verify_inverse_pair,
)
from discfrac.operators import (
    caputo_diff,
    delta_fractional_diff,
    delta_fractional_sum,
    gfs,
    nabla_fractional_diff,
    nabla_fractional_sum,
    rl_diff,
)
from discfrac.sequence_core import GridFunction, convolve, delta, nabla
from discfrac.special_fns import falling, rising, signed_log_gamma
from discfrac.theorems import FtcReport, check_ftc

__all__ = [
    "Family",
    "FtcReport",
    "GridFunction",
    "Kernel",
    "KernelSpec",
    "PairReport",
    "build_kernel",
    "caputo_diff",
    "check_ftc",
    "convolve",
    "delta",
    "delta_fractional_diff",
    "delta_fractional_sum",
    "falling",
    "gfs",
    "invert_kernel",
    "nabla",
    "nabla_fractional_diff",
    "nabla_fractional_sum",
    "rising",
    "rl_diff",
    "signed_log_gamma",
    "verify_inverse_pair",
]
