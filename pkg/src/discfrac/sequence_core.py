"""Functions on shifted grids ``{a, a+1, a+2, ...}`` and their convolution.

Everything is done in index space: sample ``k`` of a :class:`GridFunction`
with base ``a`` is the value at the point ``a + k``. The base is carried
along as metadata and never enters the arithmetic.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from discfrac.errors import IncompatibleGridError, InputError
from discfrac.special_fns import EPS_INT


@dataclass(frozen=True, eq=False)
class GridFunction:
    """A finite real sequence ``values[k] = f(base + k)``."""

    base: float
    values: np.ndarray = field(repr=False)

    def __post_init__(self) -> None:
        values = np.array(self.values, dtype=np.float64).reshape(-1)
        if not np.all(np.isfinite(values)):
            raise InputError("grid function values must be finite")
        values.setflags(write=False)
        object.__setattr__(self, "values", values)
        object.__setattr__(self, "base", float(self.base))

    def __len__(self) -> int:
        return self.values.size

    def __repr__(self) -> str:
        return f"GridFunction(base={self.base!r}, n={len(self)})"

    @property
    def points(self) -> np.ndarray:
        """Grid points ``base + k``, each computed from the base directly."""
        return self.base + np.arange(len(self), dtype=np.float64)

    def point(self, k: int) -> float:
        return self.base + k

    def rebase(self, base: float) -> GridFunction:
        """Same samples, relabelled to start at *base*."""
        return GridFunction(base, self.values)

    @classmethod
    def constant(cls, base: float, n: int, c: float = 1.0) -> GridFunction:
        return cls(base, np.full(n, float(c)))


def delta(f: GridFunction) -> GridFunction:
    """Forward difference ``f(t+1) - f(t)``; result starts at ``f.base``."""
    return GridFunction(f.base, np.diff(f.values))


def nabla(f: GridFunction) -> GridFunction:
    """Backward difference ``f(t) - f(t-1)``; result starts at ``f.base + 1``."""
    return GridFunction(f.base + 1, np.diff(f.values))


def convolve_samples(k: np.ndarray, f: np.ndarray, n_out: int | None = None) -> np.ndarray:
    """Index-space convolution ``h[n] = sum_{m<n} k[n-1-m] * f[m]``.

    ``h[0]`` is the empty sum. Produces *n_out* samples (default ``len(f)``);
    the last one needs ``k`` and ``f`` to have at least ``n_out - 1`` entries.
    """
    k = np.asarray(k, dtype=np.float64)
    f = np.asarray(f, dtype=np.float64)
    if n_out is None:
        n_out = f.size
    if n_out > 1 and (k.size < n_out - 1 or f.size < n_out - 1):
        raise IncompatibleGridError(
            f"need at least {n_out - 1} samples of each factor, "
            f"got {k.size} and {f.size}"
        )

    out = np.zeros(n_out)
    for n in range(1, n_out):
        out[n] = np.dot(k[n - 1 :: -1], f[:n])
    return out


def convolve(f: GridFunction, g: GridFunction) -> GridFunction:
    """Discrete convolution ``(f*g)_a`` of two functions on the same grid."""
    if abs(f.base - g.base) > EPS_INT:
        raise IncompatibleGridError(f"bases differ: {f.base!r} vs {g.base!r}")
    if len(f) != len(g):
        raise IncompatibleGridError(f"lengths differ: {len(f)} vs {len(g)}")
    return GridFunction(f.base, convolve_samples(f.values, g.values))
