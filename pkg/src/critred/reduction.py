"""Decision procedures for simple good reduction and critically good reduction.

A finite point set cut out by a primitive squarefree form F stays pairwise
distinct modulo p exactly when p does not divide the discriminant of F: the
discriminant is the squared product of the 2x2 brackets of the (normalized)
roots, and a bracket is a p-adic unit iff the two points reduce apart.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from math import gcd

from . import _poly
from .arith import FactorConfig, Factorization, factorize, is_prime, valuation
from .forms import BinaryForm, content, discriminant, resultant
from .rammap import RationalMap, ram_profile

SPrimeSet = frozenset


class InvalidPointSetError(ValueError):
    """The form is not primitive and squarefree, so its discriminant says nothing."""


class IncompleteFactorizationError(RuntimeError):
    def __init__(self, factorization: Factorization):
        super().__init__(f"could not fully factor; cofactor {factorization.cofactor}")
        self.factorization = factorization


@dataclass(frozen=True)
class ProjPoint:
    """A point ``[a : b]`` of P^1(Q) with coprime integer coordinates."""

    a: int
    b: int

    def __post_init__(self):
        a, b = self.a, self.b
        if a == 0 and b == 0:
            raise ValueError("[0 : 0] is not a point")
        g = gcd(a, b)
        if b < 0 or (b == 0 and a < 0):
            g = -g
        object.__setattr__(self, "a", a // g)
        object.__setattr__(self, "b", b // g)

    def reduce_mod(self, p: int) -> tuple[int, int]:
        """The reduced point in P^1(F_p), scaled so the last nonzero coordinate is 1."""
        a, b = self.a % p, self.b % p
        if b:
            return a * pow(b, -1, p) % p, 1
        return 1, 0


def pointset_discriminant(F: BinaryForm) -> int:
    """Discriminant of a primitive squarefree form; 1 for fewer than two points."""
    if F.degree <= 1:
        # Empty product: fewer than two points never collide.
        return 1
    if content(F) != 1:
        raise InvalidPointSetError(f"{F} is not primitive")
    d = discriminant(F)
    if d == 0:
        raise InvalidPointSetError(f"{F} has a repeated root")
    return d


def pointset_bad_primes(F: BinaryForm, config: FactorConfig | None = None) -> frozenset[int]:
    """Primes at which two distinct roots of ``F`` reduce to the same point.

    Raises :class:`IncompleteFactorizationError` if the discriminant could not
    be fully factored; use :func:`reduction_report` for graceful degradation.
    """
    fac = factorize(pointset_discriminant(F), config)
    if not fac.complete:
        raise IncompleteFactorizationError(fac)
    return fac.primes


def is_r_distinct_at(F: BinaryForm, p: int) -> bool:
    return valuation(pointset_discriminant(F), p) == 0


def is_s_good(F: BinaryForm, S, config: FactorConfig | None = None) -> bool:
    d = pointset_discriminant(F)
    for p in S:
        while d % p == 0:
            d //= p
    # Whatever is left must be a unit; no factorization needed.
    return abs(d) == 1


def _sgr_resultant(phi: RationalMap) -> int:
    return resultant(phi.P, phi.Q)


def sgr_bad_primes(phi: RationalMap, config: FactorConfig | None = None) -> frozenset[int]:
    """Primes dividing Res(P, Q) of the jointly primitive pair."""
    fac = factorize(_sgr_resultant(phi), config)
    if not fac.complete:
        raise IncompleteFactorizationError(fac)
    return fac.primes


def is_sgr_at(phi: RationalMap, p: int) -> bool:
    return valuation(_sgr_resultant(phi), p) == 0


def cgr_bad_primes(phi: RationalMap, config: FactorConfig | None = None) -> tuple[frozenset[int], frozenset[int]]:
    """``(points, values)``: primes where critical points, resp. critical values, collide."""
    prof = ram_profile(phi)
    return (
        pointset_bad_primes(prof.critical_point_form, config),
        pointset_bad_primes(prof.critical_value_form, config),
    )


def is_cgr_at(phi: RationalMap, p: int) -> bool:
    prof = ram_profile(phi)
    return is_r_distinct_at(prof.critical_point_form, p) and is_r_distinct_at(prof.critical_value_form, p)


@dataclass(frozen=True)
class ReductionReport:
    degree: int
    sgr_bad: frozenset[int]
    cgr_bad_points: frozenset[int]
    cgr_bad_values: frozenset[int]
    provenance: dict[str, Factorization] = field(compare=False)

    @property
    def cgr_bad(self) -> frozenset[int]:
        return self.cgr_bad_points | self.cgr_bad_values

    @property
    def complete(self) -> bool:
        return all(f.complete for f in self.provenance.values())


def reduction_report(phi: RationalMap, config: FactorConfig | None = None) -> ReductionReport:
    """All bad-prime sets of ``phi`` with the factorizations they came from.

    If a factorization is incomplete the sets list only the primes found and
    ``complete`` is False.
    """
    prof = ram_profile(phi)
    provenance = {
        "resultant": factorize(_sgr_resultant(phi), config),
        "critical_point_discriminant": factorize(pointset_discriminant(prof.critical_point_form), config),
        "critical_value_discriminant": factorize(pointset_discriminant(prof.critical_value_form), config),
    }
    return ReductionReport(
        degree=phi.degree,
        sgr_bad=provenance["resultant"].primes,
        cgr_bad_points=provenance["critical_point_discriminant"].primes,
        cgr_bad_values=provenance["critical_value_discriminant"].primes,
        provenance=provenance,
    )


class Prop2Verdict(enum.Enum):
    HYPOTHESES_UNMET = "hypotheses_unmet"
    IMPLICATION_HOLDS = "implication_holds"
    COUNTEREXAMPLE = "COUNTEREXAMPLE"


def prop2_leading_coefficients(phi: RationalMap) -> tuple[int, int, int]:
    """Leading coefficients of P(x), Q(x) and P'(x)Q(x) - P(x)Q'(x) at their actual degrees.

    Note the homogeneous Wronskian at y = 1 is d times P'Q - PQ'.
    """
    P, Q = phi.P.dehomogenize(), phi.Q.dehomogenize()
    W = _poly.sub(_poly.mul(_poly.deriv(P), Q), _poly.mul(P, _poly.deriv(Q)))
    return P[-1], Q[-1], W[-1]


def check_prop2(phi: RationalMap, p: int) -> Prop2Verdict:
    """Test whether critically good reduction forces simple good reduction at ``p``.

    Hypotheses: 2d-2 distinct critical points; leading coefficients of P(x),
    Q(x) and P'Q - PQ' are p-units; critically good reduction at p.
    """
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    prof = ram_profile(phi)
    d = phi.degree
    if prof.support_count != 2 * d - 2:
        return Prop2Verdict.HYPOTHESES_UNMET
    for lc in prop2_leading_coefficients(phi):
        if lc % p == 0:
            return Prop2Verdict.HYPOTHESES_UNMET
    if not is_cgr_at(phi, p):
        return Prop2Verdict.HYPOTHESES_UNMET
    if is_sgr_at(phi, p):
        return Prop2Verdict.IMPLICATION_HOLDS
    return Prop2Verdict.COUNTEREXAMPLE
