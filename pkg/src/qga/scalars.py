"""Coefficient helpers for the dual-mode (exact rational / float64) kernel.

Multivector coefficients may be ints, ``fractions.Fraction``, floats, sympy
expressions, or any object supporting ring arithmetic and truthiness (the
implicit-polynomial oracle uses its own type).  These helpers centralise the
zero / equality decisions so every module agrees on tolerances.
"""

from __future__ import annotations

from fractions import Fraction

import sympy

#: coefficients with |c| below this are dropped after float operations
DEFAULT_EPS_ZERO = 1e-12
#: default tolerance for float comparisons in tests and predicates
DEFAULT_EPS_CMP = 1e-9

_EXACT_TYPES = (int, Fraction)


def is_exact(c) -> bool:
    """True for coefficients carrying exact rational arithmetic."""
    return isinstance(c, _EXACT_TYPES) and not isinstance(c, bool)


def coeff_is_zero(c, eps: float = DEFAULT_EPS_ZERO) -> bool:
    """Decide whether a coefficient should be treated as zero.

    Exact types compare exactly, floats against ``eps``, sympy expressions
    after ``expand`` (sufficient for the polynomial coefficients produced by
    the symbolic inversion pipeline).  Anything else falls back to truthiness.
    """
    if isinstance(c, _EXACT_TYPES):
        return c == 0
    if isinstance(c, float):
        return abs(c) <= eps
    if isinstance(c, sympy.Expr):
        e = sympy.expand(c)
        return e.is_zero is True
    return not c


def coeff_float(c) -> float:
    """Float magnitude-capable view of a numeric coefficient."""
    return float(c)


def coeff_close(a, b, tol: float = DEFAULT_EPS_CMP) -> bool:
    """Compare two numeric coefficients, exactly when both sides are exact."""
    if is_exact(a) and is_exact(b):
        return a == b
    fa, fb = float(a), float(b)
    return abs(fa - fb) <= tol * max(1.0, abs(fa), abs(fb))


def as_fraction(c) -> Fraction:
    """Coerce an exact coefficient (or decimal string) to ``Fraction``."""
    if isinstance(c, Fraction):
        return c
    return Fraction(c)
