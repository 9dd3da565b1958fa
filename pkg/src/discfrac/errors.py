"""Exception hierarchy shared by the library and the command line."""

from __future__ import annotations


class DiscFracError(Exception):
    """Base class for all errors raised by :mod:`discfrac`."""


class InputError(DiscFracError, ValueError):
    """Malformed input: bad table rows, unknown kernel-spec fields, etc."""


class DomainError(DiscFracError, ValueError):
    """A mathematical precondition does not hold (e.g. a nonpositive order)."""


class IncompatibleGridError(DiscFracError, ValueError):
    """Two grid functions cannot be combined (base or length mismatch)."""


class KernelConstructionError(DomainError):
    """A kernel sample could not be evaluated to a finite real."""


class NonInvertibleKernelError(DomainError):
    """The leading kernel sample is zero, so no convolution inverse exists."""
