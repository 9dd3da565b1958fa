r"""Real-argument falling and rising factorials.

The falling factorial follows the four-case definition

.. math::

    x^{\underline{y}} =
    \begin{cases}
        x (x - 1) \cdots (x - y + 1), & y \in \{1, 2, \dots\}, \\
        1, & y = 0, \\
        \Gamma(x + 1) / \Gamma(x + 1 - y), & x, x - y \notin \{-1, -2, \dots\}, \\
        0, & x \notin \{-1, -2, \dots\},\ x - y \in \{-1, -2, \dots\},
    \end{cases}

checked in that order. The remaining case (``x`` a negative integer and ``y``
not a nonnegative integer) has no value and is reported as ``None``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from discfrac.errors import DomainError

#: Absolute tolerance used for every "is this an integer?" decision.
EPS_INT = 1e-9


@dataclass(frozen=True)
class SignedLogGamma:
    """:math:`\\log|\\Gamma(z)|` together with the sign of :math:`\\Gamma(z)`.

    When ``is_pole`` is true the other two fields carry no information.
    """

    log_abs: float
    sign: int
    is_pole: bool = False

    def value(self) -> float:
        if self.is_pole:
            raise DomainError("Gamma has a pole here")
        return self.sign * math.exp(self.log_abs)


def _nearest_int(x: float) -> int | None:
    n = round(x)
    if abs(x - n) <= EPS_INT:
        return int(n)
    return None


def is_negative_integer(x: float) -> bool:
    """True iff *x* is within :data:`EPS_INT` of one of -1, -2, -3, ..."""
    n = _nearest_int(x)
    return n is not None and n <= -1


def signed_log_gamma(z: float) -> SignedLogGamma:
    """Evaluate ``log|Gamma(z)|`` and ``sign(Gamma(z))`` for real *z*.

    Nonpositive integers (within :data:`EPS_INT`) are poles and are returned
    as such rather than raising.
    """
    n = _nearest_int(z)
    if n is not None and n <= 0:
        return SignedLogGamma(math.nan, 1, is_pole=True)

    if z > 0:
        sign = 1
    else:
        # Gamma alternates sign on (-k, -k + 1): negative for odd k.
        k = math.floor(-z) + 1
        sign = -1 if k % 2 else 1
    return SignedLogGamma(math.lgamma(z), sign)


def gamma(z: float) -> float:
    """Gamma function via :func:`signed_log_gamma`; raises at poles."""
    return signed_log_gamma(z).value()


def gamma_ratio(num: float, den: float) -> float:
    """``Gamma(num) / Gamma(den)`` as ``sign * exp(difference of logs)``.

    A pole in the denominator gives 0; a pole in the numerator is an error.
    """
    top = signed_log_gamma(num)
    if top.is_pole:
        raise DomainError(f"Gamma({num!r}) is a pole")
    bottom = signed_log_gamma(den)
    if bottom.is_pole:
        return 0.0
    return top.sign * bottom.sign * math.exp(top.log_abs - bottom.log_abs)


def falling(x: float, y: float) -> float | None:
    """Falling factorial ``x`` to the ``y``; ``None`` where it is undefined.

    Examples
    --------
    >>> falling(5, 3)
    60.0
    >>> falling(0.5, 1.5)
    0.0
    >>> falling(-2, 0.5) is None
    True
    """
    yi = _nearest_int(y)
    if yi is not None and yi >= 1:
        return float(math.prod(x - i for i in range(yi)))
    if yi == 0:
        return 1.0

    if is_negative_integer(x):
        return None
    if is_negative_integer(x - y):
        return 0.0
    return gamma_ratio(x + 1, x + 1 - y)


def rising(x: float, y: float) -> float | None:
    """Rising factorial, defined as ``falling(x + y - 1, y)``."""
    return falling(x + y - 1, y)
