"""Numerical checks of the power rule, the Leibniz rule and the
fundamental-theorem identities for generalized sums and differences.

Every check returns residuals; a pass/fail verdict is only formed against an
explicit tolerance at the top level.

The fundamental-theorem check reports two alignments. The *literal* residuals
compare each composite against ``f`` at the same grid point ``t``. Because
``(p*q)_a`` vanishes at ``t = a``, the composites actually reproduce ``f``
one step late: for any pair in the class,

* ``RL(q) S(p) f (t) = C(q) S(p) f (t) = f(t - 1)`` on ``N_{a+1}``
* ``S(p) RL(q) f (t) = f(t - 1)`` and ``S(p) C(q) f (t) = f(t - 1) - f(a)`` on ``N_{a+1}``

and the *lagged* residuals measure exactly these. ``FtcReport.passed`` uses
the literal residuals.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from discfrac.errors import DomainError, IncompatibleGridError, InputError
from discfrac.kernels import Kernel, PairReport, verify_inverse_pair
from discfrac.operators import (
    caputo_diff,
    caputo_diff_from_anchor,
    delta_fractional_sum,
    gfs,
    rl_diff,
    rl_diff_from_anchor,
)
from discfrac.sequence_core import GridFunction
from discfrac.special_fns import falling, gamma_ratio, is_negative_integer

#: Default seed for random test functions.
DEFAULT_SEED = 11


def random_grid_function(n: int, seed: int = DEFAULT_SEED, base: float = 0.0) -> GridFunction:
    """Samples uniform in [-1, 1] from ``numpy.random.default_rng(seed)``."""
    rng = np.random.default_rng(seed)
    return GridFunction(base, rng.uniform(-1.0, 1.0, n))


def check_leibniz(table: np.ndarray) -> float:
    """Largest defect of the discrete Leibniz rule on a sampled kernel ``F``.

    ``table[n, s]`` holds ``F(a + 1 + n, a + s)`` with shape ``(M + 1, M)``.
    For every ``n < M`` compares ``Delta_t sum_{s<n} F[n, s]`` with
    ``sum_{s<n} Delta_t F[n, s] + F[n + 1, n]``.
    """
    F = np.asarray(table, dtype=np.float64)
    if F.ndim != 2:
        raise InputError("Leibniz table must be two-dimensional")
    m = F.shape[1]
    if m < 1 or F.shape[0] != m + 1:
        raise InputError(f"Leibniz table must have shape (M+1, M) with M >= 1, got {F.shape}")

    worst = 0.0
    for n in range(m):
        lhs = F[n + 1, : n + 1].sum() - F[n, :n].sum()
        rhs = (F[n + 1, :n] - F[n, :n]).sum() + F[n + 1, n]
        worst = max(worst, abs(lhs - rhs))
    return worst


def _check_power_args(mu: float, nu: float) -> None:
    if is_negative_integer(mu):
        raise DomainError(f"mu must not be a negative integer, got {mu!r}")
    if not nu > 0:
        raise DomainError(f"nu must be positive, got {nu!r}")
    if is_negative_integer(mu + nu):
        raise DomainError(f"mu + nu must not be a negative integer, got {mu + nu!r}")


def power_rule_rhs(mu: float, nu: float, x: float) -> float:
    """``Gamma(mu+1) / Gamma(mu+nu+1) * falling(x, mu+nu)`` with ``x = t - a``."""
    _check_power_args(mu, nu)
    power = falling(x, mu + nu)
    if power is None:
        raise DomainError(f"falling({x!r}, {mu + nu!r}) is undefined")
    return gamma_ratio(mu + 1, mu + nu + 1) * power


def check_power_rule(mu: float, nu: float, horizon: int = 32, anchor: float = 0.0) -> float:
    """Max relative error of the delta sum of ``(s - a)^(mu)`` against the power rule.

    The monomial is sampled on ``N_{a+mu}`` and summed with order *nu*;
    each of the *horizon* output samples is compared with
    :func:`power_rule_rhs` at ``x = mu + nu - 1 + n``. Where the exact value
    is zero the absolute error is used.
    """
    _check_power_args(mu, nu)
    values = [falling(m + mu, mu) for m in range(horizon)]
    f = GridFunction(anchor + mu, values)
    lhs = delta_fractional_sum(f, nu).values

    worst = 0.0
    for n in range(horizon):
        rhs = power_rule_rhs(mu, nu, mu + nu - 1 + n)
        err = abs(lhs[n] - rhs)
        if rhs != 0.0:
            err /= abs(rhs)
        worst = max(worst, err)
    return worst


def check_rl_caputo_relation(q: Kernel, f: GridFunction) -> float:
    """Largest defect of ``RL(q) f (t) = C(q) f (t) + f(a) q(t)`` on ``N_{a+1}``.

    ``q(t)`` at ``t = a + 1 + k`` is sample ``k + 1`` of the kernel.
    """
    n = len(f)
    rl = rl_diff(q, f).values
    cap = caputo_diff(q, f).values
    boundary = f.values[0] * q.samples[1:n]
    return float(np.max(np.abs(rl - cap - boundary)))


@dataclass(frozen=True)
class FtcReport:
    """Residuals of the fundamental-theorem identities for one pair and one ``f``."""

    residual_proof1_rl: float
    residual_proof1_caputo: float
    residual_d1: float
    residual_d2: float
    residual_d1_at_anchor: float
    lagged_proof1_rl: float
    lagged_proof1_caputo: float
    lagged_d1: float
    lagged_d2: float
    pair_residual: float
    pair_ok: bool
    horizon: int
    tol: float

    @property
    def residuals(self) -> dict[str, float]:
        return {
            "proof1_rl": self.residual_proof1_rl,
            "proof1_caputo": self.residual_proof1_caputo,
            "d1": self.residual_d1,
            "d2": self.residual_d2,
        }

    @property
    def lagged(self) -> dict[str, float]:
        return {
            "proof1_rl": self.lagged_proof1_rl,
            "proof1_caputo": self.lagged_proof1_caputo,
            "d1": self.lagged_d1,
            "d2": self.lagged_d2,
        }

    @property
    def passed(self) -> bool:
        return all(r <= self.tol for r in self.residuals.values())

    @property
    def passed_lagged(self) -> bool:
        return all(r <= self.tol for r in self.lagged.values())

    def to_dict(self) -> dict:
        return {
            "horizon": self.horizon,
            "tol": self.tol,
            "pair_residual": self.pair_residual,
            "pair_ok": self.pair_ok,
            "residuals": self.residuals,
            "residual_d1_at_anchor": self.residual_d1_at_anchor,
            "lagged_residuals": self.lagged,
            "pass": self.passed,
            "pass_lagged": self.passed_lagged,
        }


def _maxabs(x: np.ndarray) -> float:
    return float(np.max(np.abs(x))) if x.size else 0.0


def check_ftc(p: Kernel, q: Kernel, f: GridFunction, tol: float = 1e-8) -> FtcReport:
    """Evaluate the fundamental-theorem identities for ``(p, q)`` on ``f``.

    Kernels must have at least ``len(f)`` samples; the pair is verified on
    exactly ``len(f)`` samples and its residual is reported (a failing pair
    does not stop the other residuals from being computed).
    """
    n = len(f)
    if n < 2:
        raise InputError("need at least two samples of f")
    if len(p) < n or len(q) < n:
        raise IncompatibleGridError(f"kernels need at least {n} samples")
    pair: PairReport = verify_inverse_pair(
        Kernel(p.base, p.samples[:n], p.spec), Kernel(q.base, q.samples[:n], q.spec), tol
    )
    fv = f.values

    s = gfs(p, f)
    proof1_rl = rl_diff(q, s).values        # points a+1 .. a+N-1
    proof1_cap = caputo_diff(q, s).values
    d1 = gfs(p, rl_diff_from_anchor(q, f)).values      # points a .. a+N-1
    d2 = gfs(p, caputo_diff_from_anchor(q, f)).values

    return FtcReport(
        residual_proof1_rl=_maxabs(proof1_rl - fv[1:]),
        residual_proof1_caputo=_maxabs(proof1_cap - fv[1:]),
        residual_d1=_maxabs(d1[1:] - fv[1:]),
        residual_d2=_maxabs(d2 - (fv - fv[0])),
        residual_d1_at_anchor=abs(d1[0] - fv[0]),
        lagged_proof1_rl=_maxabs(proof1_rl - fv[:-1]),
        lagged_proof1_caputo=_maxabs(proof1_cap - fv[:-1]),
        lagged_d1=_maxabs(d1[1:] - fv[:-1]),
        lagged_d2=_maxabs(d2[1:] - (fv[:-1] - fv[0])),
        pair_residual=pair.max_residual,
        pair_ok=pair.is_member,
        horizon=n,
        tol=tol,
    )
