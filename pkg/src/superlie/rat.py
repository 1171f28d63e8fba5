"""Exact rational arithmetic.

Everything in this package computes over the rationals.  gmpy2's mpq is used
when available (it is much faster on the determinant workloads), otherwise
fractions.Fraction.  Callers treat the type as opaque: build values with
rat(), compare with ==, print with str().  Floats are rejected on purpose.
"""

from fractions import Fraction

try:
    from gmpy2 import mpq as Rat
except ImportError:  # pragma: no cover
    Rat = Fraction

RatType = type(Rat(0))

ZERO = Rat(0)
ONE = Rat(1)


def rat(x):
    """Coerce x to an exact rational.

    Accepts ints, strings like "3" or "-5/7", Fractions, and values that are
    already rationals.  Floats raise TypeError so inexact values can never
    sneak in.
    """
    if isinstance(x, RatType):
        return x
    if isinstance(x, float):
        raise TypeError("floats are not allowed; pass an int, string, or Fraction")
    return Rat(x)
