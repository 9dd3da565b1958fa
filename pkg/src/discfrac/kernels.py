r"""Kernel families and the class of convolution-inverse pairs.

A pair of kernels ``(p, q)`` on a common grid belongs to the class
:math:`\mathcal{C}_a` when :math:`(p * q)_a(t) = 1` for every
:math:`t \ge a + 1`. Four classical families are provided, each sampled in
index space (sample ``j`` sits at ``base + j``):

=============  ==================  =================================================
family         base                sample ``j``
=============  ==================  =================================================
``delta_sum``  ``a + alpha - 1``   ``falling(j + alpha - 1, alpha - 1) / Gamma(alpha)``
``delta_diff`` ``a + alpha - 1``   ``falling(j - alpha, -alpha) / Gamma(1 - alpha)``
``nabla_sum``  ``a``               ``rising(j + 1, alpha - 1) / Gamma(alpha)``
``nabla_diff`` ``a``               ``rising(j + 1, -alpha) / Gamma(1 - alpha)``
=============  ==================  =================================================

plus ``table`` kernels that echo user-supplied samples.
"""

from __future__ import annotations

import enum
import json
import math
from dataclasses import dataclass, field
from typing import Any

import numpy as np

from discfrac.errors import (
    IncompatibleGridError,
    InputError,
    KernelConstructionError,
    NonInvertibleKernelError,
)
from discfrac.sequence_core import GridFunction, convolve_samples
from discfrac.special_fns import EPS_INT, falling, gamma, rising

#: Leading samples at or below this magnitude are treated as zero.
ZERO_PIVOT = 1e-300


class Family(str, enum.Enum):
    DELTA_SUM = "delta_sum"
    DELTA_DIFF = "delta_diff"
    NABLA_SUM = "nabla_sum"
    NABLA_DIFF = "nabla_diff"
    TABLE = "table"


_SPEC_FIELDS = {"family", "alpha", "anchor", "table"}


@dataclass(frozen=True)
class KernelSpec:
    """Symbolic description of a kernel: family, order and anchor."""

    family: Family
    alpha: float | None = None
    anchor: float = 0.0
    table: tuple[float, ...] | None = None

    def __post_init__(self) -> None:
        try:
            family = Family(self.family)
        except ValueError:
            raise InputError(f"unknown kernel family {self.family!r}") from None
        object.__setattr__(self, "family", family)
        object.__setattr__(self, "anchor", float(self.anchor))
        if not math.isfinite(self.anchor):
            raise InputError("anchor must be finite")

        if family is Family.TABLE:
            if self.table is None:
                raise InputError("table kernels need a 'table' entry")
            table = tuple(float(v) for v in self.table)
            if not all(math.isfinite(v) for v in table):
                raise InputError("table entries must be finite")
            object.__setattr__(self, "table", table)
            return

        if self.table is not None:
            raise InputError(f"'table' is only allowed for the table family, not {family.value}")
        if self.alpha is None:
            raise InputError(f"{family.value} kernels need an 'alpha' entry")
        alpha = float(self.alpha)
        object.__setattr__(self, "alpha", alpha)
        if not (math.isfinite(alpha) and alpha > 0):
            raise InputError(f"alpha must be a positive real, got {alpha!r}")
        if abs(alpha - round(alpha)) <= EPS_INT:
            raise InputError(f"alpha must not be a positive integer, got {alpha!r}")

    @property
    def base(self) -> float:
        """Grid point carried by sample 0 of the built kernel."""
        if self.family in (Family.DELTA_SUM, Family.DELTA_DIFF):
            return self.anchor + self.alpha - 1
        return self.anchor

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> KernelSpec:
        if not isinstance(data, dict):
            raise InputError("kernel spec must be a JSON object")
        unknown = set(data) - _SPEC_FIELDS
        if unknown:
            raise InputError(f"unknown kernel spec field(s): {', '.join(sorted(unknown))}")
        if "family" not in data:
            raise InputError("kernel spec is missing 'family'")
        for key in ("alpha", "anchor"):
            value = data.get(key)
            if value is not None and (isinstance(value, bool) or not isinstance(value, (int, float))):
                raise InputError(f"kernel spec field {key!r} must be a number")
        table = data.get("table")
        if table is not None:
            if not isinstance(table, list) or not all(
                isinstance(v, (int, float)) and not isinstance(v, bool) for v in table
            ):
                raise InputError("kernel spec field 'table' must be a list of numbers")
        return cls(
            family=data["family"],
            alpha=data.get("alpha"),
            anchor=data.get("anchor", 0.0),
            table=None if table is None else tuple(table),
        )

    @classmethod
    def from_json(cls, text: str) -> KernelSpec:
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise InputError(f"kernel spec is not valid JSON: {exc}") from None
        return cls.from_dict(data)

    def to_dict(self) -> dict[str, Any]:
        out: dict[str, Any] = {"family": self.family.value}
        if self.alpha is not None:
            out["alpha"] = self.alpha
        out["anchor"] = self.anchor
        if self.table is not None:
            out["table"] = list(self.table)
        return out


@dataclass(frozen=True, eq=False)
class Kernel:
    """A sampled kernel: ``samples[j]`` is the kernel at ``base + j``."""

    base: float
    samples: np.ndarray = field(repr=False)
    spec: KernelSpec

    def __post_init__(self) -> None:
        samples = np.array(self.samples, dtype=np.float64).reshape(-1)
        samples.setflags(write=False)
        object.__setattr__(self, "samples", samples)

    def __len__(self) -> int:
        return self.samples.size

    def as_grid(self) -> GridFunction:
        return GridFunction(self.base, self.samples)


def _sample(spec: KernelSpec, j: int) -> float | None:
    a = spec.alpha
    if spec.family is Family.DELTA_SUM:
        v = falling(j + a - 1, a - 1)
        return None if v is None else v / gamma(a)
    if spec.family is Family.DELTA_DIFF:
        v = falling(j - a, -a)
        return None if v is None else v / gamma(1 - a)
    if spec.family is Family.NABLA_SUM:
        v = rising(j + 1, a - 1)
        return None if v is None else v / gamma(a)
    if spec.family is Family.NABLA_DIFF:
        v = rising(j + 1, -a)
        return None if v is None else v / gamma(1 - a)
    raise AssertionError(spec.family)


def build_kernel(spec: KernelSpec, n: int) -> Kernel:
    """Sample the kernel described by *spec* at ``n`` consecutive points.

    Every sample is evaluated on its own from the factorial formulas.
    Table kernels are truncated or zero-padded to length *n*.
    """
    if n < 1:
        raise InputError(f"kernel length must be at least 1, got {n}")

    if spec.family is Family.TABLE:
        samples = np.zeros(n)
        m = min(n, len(spec.table))
        samples[:m] = spec.table[:m]
        return Kernel(spec.base, samples, spec)

    samples = np.empty(n)
    for j in range(n):
        v = _sample(spec, j)
        if v is None or not math.isfinite(v):
            raise KernelConstructionError(
                f"{spec.family.value} kernel (alpha={spec.alpha!r}) "
                f"is not finite at index {j}"
            )
        samples[j] = v
    return Kernel(spec.base, samples, spec)


@dataclass(frozen=True, eq=False)
class PairReport:
    """Residuals ``|(p*q)[n] - 1|`` for ``n = 1 .. N-1``.

    ``residuals[i]`` belongs to index ``n = i + 1``; index 0 is left out
    because the convolution vanishes there by construction.
    """

    residuals: np.ndarray = field(repr=False)
    max_residual: float
    tol: float
    is_member: bool

    @property
    def first_failure(self) -> int | None:
        """Convolution index of the first residual above ``tol``, if any."""
        bad = np.flatnonzero(~(self.residuals <= self.tol))
        return int(bad[0]) + 1 if bad.size else None


def verify_inverse_pair(p: Kernel, q: Kernel, tol: float = 1e-9) -> PairReport:
    """Check numerically that ``(p, q)`` is a convolution-inverse pair."""
    if len(p) != len(q):
        raise IncompatibleGridError(f"kernel lengths differ: {len(p)} vs {len(q)}")
    if len(p) < 2:
        raise InputError("need at least two samples to check a pair")
    conv = convolve_samples(p.samples, q.samples)
    residuals = np.abs(conv[1:] - 1.0)
    max_residual = float(np.max(residuals))
    return PairReport(residuals, max_residual, tol, bool(max_residual <= tol))


def invert_kernel(p: Kernel, n: int | None = None) -> Kernel:
    """Return the table kernel ``q`` with ``(p*q)[m] = 1`` for ``1 <= m < n``.

    Solved by forward substitution on the lower-triangular Toeplitz system::

        q[0] = 1 / p[0]
        q[m] = (1 - sum_{j<m} p[m-j] q[j]) / p[0]

    The result shares ``p``'s base.
    """
    if n is None:
        n = len(p)
    if not 1 <= n <= len(p):
        raise InputError(f"n must lie in [1, {len(p)}], got {n}")
    pk = p.samples
    p0 = pk[0]
    if abs(p0) <= ZERO_PIVOT:
        raise NonInvertibleKernelError("leading kernel sample is zero")

    q = np.empty(n)
    q[0] = 1.0 / p0
    for m in range(1, n):
        q[m] = (1.0 - np.dot(pk[m:0:-1], q[:m])) / p0

    spec = KernelSpec(Family.TABLE, anchor=p.base, table=tuple(q))
    return Kernel(p.base, q, spec)


def random_kernel(n: int, seed: int, *, min_lead: float = 0.1, base: float = 0.0) -> Kernel:
    """Random table kernel, entries uniform in [-1, 1] and ``|p[0]| >= min_lead``."""
    rng = np.random.default_rng(seed)
    samples = rng.uniform(-1.0, 1.0, n)
    samples[0] = rng.choice([-1.0, 1.0]) * rng.uniform(min_lead, 1.0)
    spec = KernelSpec(Family.TABLE, anchor=base, table=tuple(samples))
    return Kernel(base, samples, spec)
