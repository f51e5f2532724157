"""Dense univariate polynomial helpers over Z and Q.

Polynomials are lists of coefficients, lowest degree first, with no trailing
zeros (the zero polynomial is ``[]``).
"""

from __future__ import annotations

from fractions import Fraction
from functools import reduce
from math import gcd


def trim(f):
    f = list(f)
    while f and f[-1] == 0:
        f.pop()
    return f


def degree(f) -> int:
    return len(f) - 1


def deriv(f):
    return [i * c for i, c in enumerate(f)][1:]


def mul(f, g):
    if not f or not g:
        return []
    out = [0] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        if a:
            for j, b in enumerate(g):
                out[i + j] += a * b
    return out


def sub(f, g):
    n = max(len(f), len(g))
    f = list(f) + [0] * (n - len(f))
    g = list(g) + [0] * (n - len(g))
    return trim(a - b for a, b in zip(f, g))


def content(f) -> int:
    return reduce(gcd, f, 0)


def primitive(f):
    """Integer primitive part with positive leading coefficient."""
    f = trim(f)
    if not f:
        return []
    if any(isinstance(c, Fraction) for c in f):
        den = reduce(lambda a, b: a * b // gcd(a, b), (Fraction(c).denominator for c in f), 1)
        f = [int(c * den) for c in f]
    c = content(f)
    if f[-1] < 0:
        c = -c
    return [a // c for a in f]


def divmod_q(f, g):
    """Division with remainder over Q."""
    f = [Fraction(c) for c in f]
    g = trim(g)
    if not g:
        raise ZeroDivisionError("polynomial division by zero")
    q = [Fraction(0)] * max(len(f) - len(g) + 1, 0)
    lead = Fraction(g[-1])
    while len(f) >= len(g) and f:
        shift = len(f) - len(g)
        c = f[-1] / lead
        q[shift] = c
        for i, b in enumerate(g):
            f[shift + i] -= c * b
        f = trim(f)
    return trim(q), f


def exact_quotient(f, g):
    q, r = divmod_q(f, g)
    if r:
        raise ArithmeticError("inexact polynomial division")
    return q


def gcd_z(f, g):
    """Primitive gcd over Z (equivalently over Q) by a primitive remainder sequence."""
    a, b = primitive(f), primitive(g)
    if not a:
        return b
    if not b:
        return a
    if len(a) < len(b):
        a, b = b, a
    while b:
        _, r = divmod_q(a, b)
        a, b = b, primitive(r)
    return a


def squarefree_decomposition(f):
    """Yun's algorithm: primitive ``[g1, g2, ...]`` with ``f ~ g1 * g2^2 * ...``.

    Constant factors are dropped; ``f`` must have degree >= 1.
    """
    f = primitive(f)
    df = deriv(f)
    a = gcd_z(f, df)
    b = exact_quotient(f, a)
    c = exact_quotient(df, a)
    out = []
    while degree(b) > 0:
        d = sub(c, deriv(b))
        a = gcd_z(b, d)
        out.append(a)
        b = exact_quotient(b, a)
        c = exact_quotient(d, a)
    while out and degree(out[-1]) == 0:
        out.pop()
    return out


def interpolate(xs, ys):
    """Coefficients (lowest first) of the unique polynomial through the points."""
    n = len(xs)
    table = [Fraction(y) for y in ys]
    for j in range(1, n):
        for i in range(n - 1, j - 1, -1):
            table[i] = (table[i] - table[i - 1]) / (xs[i] - xs[i - j])
    poly = [Fraction(0)]
    for i in range(n - 1, -1, -1):
        poly = [Fraction(0)] + poly
        for k in range(len(poly) - 1):
            poly[k] -= xs[i] * poly[k + 1]
        poly[0] += table[i]
    return trim(poly)
