"""Elliptic models y^2 = F(x) and their duplication (Lattes) maps."""

from __future__ import annotations

import enum
from dataclasses import dataclass

from . import _poly
from .arith import FactorConfig, factorize
from .forms import BinaryForm, discriminant
from .rammap import RationalMap, make_map
from .reduction import ReductionReport, reduction_report


class SingularModelError(ValueError):
    pass


@dataclass(frozen=True)
class EllipticModel:
    """``y^2 = F(x)`` with F a cubic of nonzero discriminant.

    ``model_bad`` holds 2 and every prime dividing the leading coefficient or
    the discriminant of F: outside it the model has good reduction.
    """

    F: BinaryForm
    disc_F: int
    model_bad: frozenset[int]

    @property
    def lc_F(self) -> int:
        return self.F.coeffs[0]

    @property
    def cubic(self) -> list[int]:
        """F(x) lowest degree first."""
        return list(reversed(self.F.coeffs))


def make_model(coeffs, config: FactorConfig | None = None) -> EllipticModel:
    """Model from cubic coefficients, highest degree first (``[1, 0, -1, 0]`` is x^3 - x)."""
    coeffs = [int(c) for c in coeffs]
    while coeffs and coeffs[0] == 0:
        coeffs.pop(0)
    if len(coeffs) != 4:
        raise ValueError(f"F must be a cubic; got degree {len(coeffs) - 1}")
    F = BinaryForm(coeffs)
    disc = discriminant(F)
    if disc == 0:
        raise SingularModelError(f"{F} has a repeated root")
    fac = factorize(coeffs[0] * disc, config)
    if not fac.complete:
        raise ArithmeticError(f"could not factor lc * disc = {coeffs[0] * disc}")
    return EllipticModel(F, disc, fac.primes | {2})


def lattes_map(E: EllipticModel) -> RationalMap:
    """The x-coordinate of 2*beta in terms of that of beta, as a degree-4 map.

    For F = a x^3 + b x^2 + c x + d this is
    ``(F'(x)^2 - (8 a x + 4 b) F(x)) / (4 a F(x))``, which is
    ``(F'(x)^2 - 8 x F(x)) / (4 F(x))`` when F is monic with no x^2 term.
    """
    f = E.cubic
    a, b = f[3], f[2]
    num = _poly.sub(_poly.mul(_poly.deriv(f), _poly.deriv(f)), _poly.mul([4 * b, 8 * a], f))
    den = [4 * a * c for c in f]
    P = BinaryForm.from_poly(num, 4)
    Q = BinaryForm.from_poly(den, 4)
    # disc(F) != 0 rules out a common factor, so make_map cannot fail here.
    return make_map(P, Q)


def compose(phi: RationalMap, psi: RationalMap) -> RationalMap:
    """``phi o psi``: substitute ``[P_psi : Q_psi]`` into ``phi``."""
    P, Q = psi.P, psi.Q
    n = phi.degree
    p_pows = [BinaryForm.one()]
    q_pows = [BinaryForm.one()]
    for _ in range(n):
        p_pows.append(p_pows[-1] * P)
        q_pows.append(q_pows[-1] * Q)

    def substitute(F: BinaryForm) -> BinaryForm:
        out = None
        for i, a in enumerate(F.coeffs):
            term = a * (p_pows[n - i] * q_pows[i])
            out = term if out is None else out + term
        return out

    out = make_map(substitute(phi.P), substitute(phi.Q))
    assert out.degree == phi.degree * psi.degree
    return out


class Prop1Verdict(enum.Enum):
    HOLDS = "holds"
    COUNTEREXAMPLE = "COUNTEREXAMPLE"


@dataclass(frozen=True)
class Prop1Result:
    verdict: Prop1Verdict
    S: frozenset[int]
    report: ReductionReport

    @property
    def holds(self) -> bool:
        return self.verdict is Prop1Verdict.HOLDS

    @property
    def offending_primes(self) -> frozenset[int]:
        return (self.report.sgr_bad | self.report.cgr_bad) - self.S


def verify_prop1(E: EllipticModel, S=None, config: FactorConfig | None = None) -> Prop1Result:
    """Check the Lattes map of a model is SGR and CGR at every prime outside ``S``.

    ``S`` defaults to ``E.model_bad``; a larger S is allowed, a smaller one is not.
    """
    S = E.model_bad if S is None else frozenset(S)
    if not E.model_bad <= S:
        raise ValueError(f"S must contain the model's bad primes {sorted(E.model_bad)}")
    report = reduction_report(lattes_map(E), config)
    if not report.complete:
        raise ArithmeticError("incomplete factorization in Lattes reduction report")
    ok = (report.sgr_bad | report.cgr_bad) <= S
    return Prop1Result(Prop1Verdict.HOLDS if ok else Prop1Verdict.COUNTEREXAMPLE, S, report)
