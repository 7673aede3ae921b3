"""Vectorized double-double arithmetic (about 32 significant digits).

Values are (hi, lo) pairs of float arrays with |lo| <= ulp(hi)/2.  Only the
operations needed by the extended-precision kernel sums are provided.
"""
from fractions import Fraction

import numpy as np

_SPLIT = 134217729.0  # 2^27 + 1


def from_fraction(q):
    q = Fraction(q)
    hi = float(q)
    return hi, float(q - Fraction(hi))


def _two_sum(a, b):
    s = a + b
    bb = s - a
    return s, (a - (s - bb)) + (b - bb)


def _split(a):
    t = _SPLIT * a
    hi = t - (t - a)
    return hi, a - hi


def _two_prod(a, b):
    p = a * b
    ah, al = _split(a)
    bh, bl = _split(b)
    return p, ((ah * bh - p) + ah * bl + al * bh) + al * bl


def add(x, y):
    s, e = _two_sum(x[0], y[0])
    e = e + x[1] + y[1]
    return _two_sum(s, e)


def mul(x, y):
    p, e = _two_prod(x[0], y[0])
    e = e + (x[0] * y[1] + x[1] * y[0])
    return _two_sum(p, e)


def neg(x):
    return -x[0], -x[1]


def to_float(x):
    return x[0] + x[1]
