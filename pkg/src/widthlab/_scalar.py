"""Scalar handling shared by the exact and inexact code paths.

Exact values are :class:`fractions.Fraction`; inexact values are plain
floats.  Every sign/equality decision goes through :func:`sign`, which is
exact for rationals and uses the global tolerance for floats.
"""
from __future__ import annotations

import contextlib
from fractions import Fraction
from numbers import Rational

_TOL = 1e-9


def get_tolerance():
    return _TOL


def set_tolerance(tol):
    global _TOL
    if tol <= 0:
        raise ValueError("tolerance must be positive")
    _TOL = float(tol)


@contextlib.contextmanager
def tolerance(tol):
    old = _TOL
    set_tolerance(tol)
    try:
        yield
    finally:
        set_tolerance(old)


def is_exact(x):
    return isinstance(x, Rational)


def sign(x):
    if isinstance(x, float):
        if abs(x) <= _TOL:
            return 0
        return 1 if x > 0 else -1
    return (x > 0) - (x < 0)


def is_zero(x):
    return sign(x) == 0


def to_scalar(value, exact=True):
    """Convert user input (int, str "p/q", Fraction, float) to a scalar.

    Floats are read through their shortest repr in exact mode, so ``0.1``
    becomes ``1/10`` rather than the binary expansion.
    """
    if isinstance(value, bool):
        raise TypeError("booleans are not scalars")
    if isinstance(value, str):
        v = Fraction(value.strip())
    elif isinstance(value, float):
        v = Fraction(repr(value)) if exact else value
    elif isinstance(value, Rational):
        v = Fraction(value)
    else:
        # numpy scalars and friends
        return to_scalar(float(value), exact) if exact else float(value)
    return v if exact else float(v)


def to_vector(values, exact=True):
    return tuple(to_scalar(v, exact) for v in values)


def fmt(x):
    """Canonical text form: ``"p/q"`` for rationals, repr for floats."""
    if isinstance(x, Rational):
        x = Fraction(x)
        return f"{x.numerator}/{x.denominator}"
    return repr(float(x))


def fmt_vector(v):
    return [fmt(c) for c in v]


# small vector helpers; vectors are tuples of scalars

def dot(a, b):
    return sum(x * y for x, y in zip(a, b))


def sub(a, b):
    return tuple(x - y for x, y in zip(a, b))


def add(a, b):
    return tuple(x + y for x, y in zip(a, b))


def scale(lam, a):
    return tuple(lam * x for x in a)


def cross(a, b):
    return (a[1] * b[2] - a[2] * b[1],
            a[2] * b[0] - a[0] * b[2],
            a[0] * b[1] - a[1] * b[0])


def as_float(v):
    return tuple(float(c) for c in v)
