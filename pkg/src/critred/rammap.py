"""Rational self-maps of P^1 over Q and their ramification data."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache, reduce
from math import gcd

from . import _poly
from .forms import BinaryForm, form_gcd, format_poly, resultant, root_multiplicities, squarefree_part


class DegenerateMapError(ValueError):
    """P and Q share a projective root, or are otherwise not a morphism."""


@dataclass(frozen=True)
class RationalMap:
    """``[P : Q]`` with coprime forms of equal degree, jointly primitive, P sign-normalized.

    Build through :func:`make_map`; the constructor does not normalize.
    """

    P: BinaryForm
    Q: BinaryForm

    @property
    def degree(self) -> int:
        return self.P.degree

    @property
    def coefficient_vector(self) -> tuple[int, ...]:
        return self.P.coeffs + self.Q.coeffs

    def __call__(self, x, y=1):
        return self.P(x, y), self.Q(x, y)

    def __str__(self) -> str:
        return f"[{self.P} : {self.Q}]"

    def as_fraction_text(self) -> str:
        """``num / den`` in the single variable x, parseable by the CLI."""
        num = format_poly(self.P.coeffs, "x", None)
        den = format_poly(self.Q.coeffs, "x", None)
        return f"({num}) / ({den})"


def make_map(P: BinaryForm, Q: BinaryForm) -> RationalMap:
    """Validate and normalize a pair of forms into a :class:`RationalMap`."""
    if P.degree != Q.degree:
        raise ValueError(f"P has degree {P.degree} but Q has degree {Q.degree}")
    if P.degree < 1:
        raise DegenerateMapError("constant map: degree 0")
    if P.is_zero or Q.is_zero:
        raise DegenerateMapError("constant map: one of P, Q is zero")
    if resultant(P, Q) == 0:
        raise DegenerateMapError(f"P and Q share the common factor {form_gcd(P, Q)}")
    g = reduce(gcd, P.coeffs + Q.coeffs)
    first = next(a for a in P.coeffs if a)
    if first < 0:
        g = -g
    return RationalMap(P.exact_div(g), Q.exact_div(g))


def map_from_polys(num, den) -> RationalMap:
    """Build ``x -> num(x) / den(x)`` from rational coefficient lists (lowest first)."""
    num, den = _poly.trim(num), _poly.trim(den)
    if not den:
        raise ZeroDivisionError("denominator is zero")
    n = max(len(num), len(den)) - 1
    coeffs = [Fraction(c) for c in num + den]
    lcm = reduce(lambda a, b: a * b // gcd(a, b), (c.denominator for c in coeffs), 1)
    P = BinaryForm.from_poly([int(Fraction(c) * lcm) for c in num], n)
    Q = BinaryForm.from_poly([int(Fraction(c) * lcm) for c in den], n)
    return make_map(P, Q)


def wronskian(phi: RationalMap) -> BinaryForm:
    """``P_x Q_y - P_y Q_x``, of degree 2n-2; not normalized."""
    if phi.degree < 2:
        raise ValueError("ramification is empty for maps of degree 1")
    P, Q = phi.P, phi.Q
    return P.dx() * Q.dy() - P.dy() * Q.dx()


def critical_value_eliminant(phi: RationalMap, W: BinaryForm | None = None) -> BinaryForm:
    """``Res_{x,y}(v P - u Q, W)`` as a form in (u, v) of degree deg W.

    Computed by evaluating at ``(u, v) = (t, 1)`` for deg W + 1 integers t
    and interpolating; every evaluation is an integer Sylvester determinant.
    """
    W = wronskian(phi) if W is None else W
    D = W.degree
    ts = list(range(D + 1))
    values = [resultant(phi.P - t * phi.Q, W) for t in ts]
    poly = _poly.interpolate(ts, values)
    assert all(c.denominator == 1 for c in poly)
    return BinaryForm.from_poly([int(c) for c in poly], D)


@dataclass(frozen=True)
class RamProfile:
    wronskian: BinaryForm
    critical_point_form: BinaryForm
    critical_value_form: BinaryForm
    multiplicity_partition: tuple[int, ...]

    @property
    def support_count(self) -> int:
        return self.critical_point_form.degree

    @property
    def value_count(self) -> int:
        return self.critical_value_form.degree


@lru_cache(maxsize=8192)
def ram_profile(phi: RationalMap) -> RamProfile:
    """Critical points and critical values of ``phi`` as squarefree primitive forms."""
    W = wronskian(phi)
    E = critical_value_eliminant(phi, W)
    return RamProfile(
        wronskian=W,
        critical_point_form=squarefree_part(W),
        critical_value_form=squarefree_part(E),
        multiplicity_partition=root_multiplicities(W),
    )


def ramifies_at_three_or_more(phi: RationalMap) -> bool:
    return ram_profile(phi).support_count >= 3
