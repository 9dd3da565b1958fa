r"""Generalized fractional sums and differences, and the classical operators.

Generalized operators take a kernel's raw samples and a function on
``{a, a+1, ...}``:

* ``gfs(p, f)(t)      = sum_{tau=a}^{t-1} p(t - tau - 1 + a) f(tau)``, on ``N_a``
* ``rl_diff(q, f)(t)  = Delta sum_{tau=a}^{t-1} q(t - tau - 1 + a) f(tau)``, on ``N_{a+1}``
* ``caputo_diff(q, f)(t) = sum_{tau=a}^{t-1} q(t - tau - 1 + a) Delta f(tau)``, on ``N_{a+1}``

The kernel's own base is metadata only; sample ``j`` is used as the value at
lag ``j``. Sums map ``N`` samples to ``N`` samples (the first is the empty
sum); differences map ``N`` samples to ``N - 1``.

The classical delta/nabla fractional sums are evaluated straight from their
defining sums over real grid points, independently of the kernel machinery,
so the ``reduce_*`` helpers compare two separate code paths.
"""

from __future__ import annotations

import math

import numpy as np

from discfrac.errors import DomainError, IncompatibleGridError
from discfrac.kernels import Family, Kernel, KernelSpec, build_kernel
from discfrac.sequence_core import GridFunction, convolve_samples, delta, nabla
from discfrac.special_fns import EPS_INT, falling, gamma, rising


def _need_kernel(k: Kernel, n: int, what: str) -> None:
    if len(k) < n:
        raise IncompatibleGridError(f"{what} needs a kernel of length >= {n}, got {len(k)}")


def gfs(p: Kernel, f: GridFunction) -> GridFunction:
    """Generalized fractional sum of *f* with kernel *p*."""
    if len(f) < 1:
        raise IncompatibleGridError("gfs needs at least one sample")
    _need_kernel(p, len(f), "gfs")
    return GridFunction(f.base, convolve_samples(p.samples, f.values))


def _delta_conv(q: Kernel, f: GridFunction) -> np.ndarray:
    # Delta(q*f) at every point a, a+1, ..., a+N-1; uses (q*f) up to a+N.
    n = len(f)
    _need_kernel(q, n, "difference")
    return np.diff(convolve_samples(q.samples, f.values, n + 1))


def rl_diff(q: Kernel, f: GridFunction) -> GridFunction:
    """Riemann-Liouville-type generalized difference, sampled on ``N_{a+1}``.

    ``out[k]`` is the value at ``a + 1 + k``.
    """
    if len(f) < 2:
        raise IncompatibleGridError("rl_diff needs at least two samples")
    return GridFunction(f.base + 1, _delta_conv(q, f)[1:])


def rl_diff_from_anchor(q: Kernel, f: GridFunction) -> GridFunction:
    """:func:`rl_diff` extended to the anchor point ``a`` itself.

    The extra leading value is ``Delta(q*f)(a) = q[0] f[0]``. This is the
    form the generalized sum must be applied to when composing on ``N_a``.
    """
    if len(f) < 1:
        raise IncompatibleGridError("need at least one sample")
    return GridFunction(f.base, _delta_conv(q, f))


def caputo_diff(q: Kernel, f: GridFunction) -> GridFunction:
    """Caputo-type generalized difference, sampled on ``N_{a+1}``.

    ``out[k] = sum_{m=0}^{k} q[k-m] (f[m+1] - f[m])`` is the value at ``a + 1 + k``.
    """
    n = len(f)
    if n < 2:
        raise IncompatibleGridError("caputo_diff needs at least two samples")
    _need_kernel(q, n - 1, "caputo_diff")
    d = np.diff(f.values)
    return GridFunction(f.base + 1, convolve_samples(q.samples, d, n)[1:])


def caputo_diff_from_anchor(q: Kernel, f: GridFunction) -> GridFunction:
    """:func:`caputo_diff` with the (empty-sum) value 0 prepended at ``a``."""
    out = caputo_diff(q, f)
    return GridFunction(f.base, np.concatenate(([0.0], out.values)))


# -- classical operators -----------------------------------------------------


def _check_order(nu: float) -> None:
    if not (math.isfinite(nu) and nu > 0):
        raise DomainError(f"order must be positive, got {nu!r}")


def _delta_sum_values(f: GridFunction, nu: float, n_out: int) -> np.ndarray:
    # sum_{s=a}^{t-nu} (t - (s+1))^{(nu-1)} f(s) / Gamma(nu),  t = a + nu - 1 + n
    a = f.base
    scale = 1.0 / gamma(nu)
    out = np.zeros(n_out)
    for n in range(1, n_out):
        t = a + nu - 1 + n
        total = 0.0
        for m in range(n):
            s = a + m
            total += falling(t - (s + 1), nu - 1) * f.values[m]
        out[n] = total * scale
    return out


def delta_fractional_sum(f: GridFunction, nu: float) -> GridFunction:
    """Delta Riemann-Liouville fractional sum of order *nu*.

    Lives on ``N_{a+nu-1}``; sample 0 (at ``a + nu - 1``) is the empty sum.
    """
    _check_order(nu)
    return GridFunction(f.base + nu - 1, _delta_sum_values(f, nu, len(f)))


def nabla_fractional_sum(f: GridFunction, nu: float) -> GridFunction:
    """Nabla Riemann-Liouville fractional sum of order *nu*, on ``N_a``.

    The sum starts at ``a + 1``, so ``f[0]`` is never read.
    """
    _check_order(nu)
    a = f.base
    scale = 1.0 / gamma(nu)
    out = np.zeros(len(f))
    for n in range(1, len(f)):
        t = a + n
        total = 0.0
        for m in range(1, n + 1):
            s = a + m
            total += rising(t - (s - 1), nu - 1) * f.values[m]
        out[n] = total * scale
    return GridFunction(a, out)


def _check_diff_order(alpha: float) -> bool:
    """Validate ``0 < alpha <= 1``; return True for the integer case."""
    if not (math.isfinite(alpha) and 0 < alpha <= 1 + EPS_INT):
        raise DomainError(f"difference order must lie in (0, 1], got {alpha!r}")
    return abs(alpha - 1) <= EPS_INT


def delta_fractional_diff(f: GridFunction, alpha: float) -> GridFunction:
    """Delta Riemann-Liouville fractional difference, on ``N_{a+1-alpha}``.

    Order 1 is the plain forward difference.
    """
    if _check_diff_order(alpha):
        return delta(f)
    if len(f) < 2:
        raise IncompatibleGridError("need at least two samples")
    nu = 1 - alpha
    g = _delta_sum_values(f, nu, len(f) + 1)
    return GridFunction(f.base + 1 - alpha, np.diff(g)[1:])


def nabla_fractional_diff(f: GridFunction, alpha: float) -> GridFunction:
    """Nabla Riemann-Liouville fractional difference, on ``N_{a+1}``."""
    if _check_diff_order(alpha):
        return nabla(f)
    if len(f) < 2:
        raise IncompatibleGridError("need at least two samples")
    return nabla(nabla_fractional_sum(f, 1 - alpha))


# -- generalized vs classical ------------------------------------------------


def reduce_gfs_to_delta_sum(f: GridFunction, alpha: float) -> tuple[GridFunction, GridFunction]:
    """Generalized sum with the delta kernel vs the delta fractional sum.

    Substituting ``f(tau + 1 - alpha)`` only relabels the grid, so the
    generalized side runs on the same samples anchored at ``a + alpha - 1``.
    """
    p = build_kernel(KernelSpec(Family.DELTA_SUM, alpha, f.base), len(f))
    general = gfs(p, f.rebase(f.base + alpha - 1))
    return general, delta_fractional_sum(f, alpha)


def reduce_rl_to_delta_diff(f: GridFunction, alpha: float) -> tuple[GridFunction, GridFunction]:
    """RL-type difference with the delta kernel vs the delta fractional difference.

    The generalized side is anchored at ``a - alpha`` (the start of the
    expanded sum), which is where ``f(tau + alpha)`` lives.
    """
    if not 0 < alpha < 1:
        raise DomainError(f"alpha must lie in (0, 1), got {alpha!r}")
    q = build_kernel(KernelSpec(Family.DELTA_DIFF, alpha, f.base), len(f))
    general = rl_diff(q, f.rebase(f.base - alpha))
    return general, delta_fractional_diff(f, alpha)


def reduce_nabla(
    f: GridFunction, alpha: float
) -> tuple[tuple[GridFunction, GridFunction], tuple[GridFunction, GridFunction]]:
    """Both nabla reductions: ``(sum pair, difference pair)``.

    *f* is given on ``N_a``; only the samples from ``a + 1`` on are used.

    * sum: ``gfs(p_hat, f(tau + 1))`` on ``N_a`` against the nabla sum. The
      shifted input has ``N - 1`` samples, so the comparison covers the
      first ``N - 1`` outputs.
    * difference: the RL-type difference of ``f`` restricted to ``N_{a+1}``,
      evaluated from its own anchor ``a + 1`` onwards, against the nabla
      fractional difference on ``N_{a+1}``.
    """
    if not 0 < alpha < 1:
        raise DomainError(f"alpha must lie in (0, 1), got {alpha!r}")
    n = len(f)
    if n < 2:
        raise IncompatibleGridError("need at least two samples")
    tail = f.values[1:]

    p_hat = build_kernel(KernelSpec(Family.NABLA_SUM, alpha, f.base), n - 1)
    general_sum = gfs(p_hat, GridFunction(f.base, tail))
    classical_sum = nabla_fractional_sum(f, alpha)
    classical_sum = GridFunction(classical_sum.base, classical_sum.values[: n - 1])

    q_hat = build_kernel(KernelSpec(Family.NABLA_DIFF, alpha, f.base), n - 1)
    general_diff = rl_diff_from_anchor(q_hat, GridFunction(f.base + 1, tail))
    classical_diff = nabla_fractional_diff(f, alpha)

    return (general_sum, classical_sum), (general_diff, classical_diff)
