import pytest
import sympy
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from critred.arith import FactorConfig
from critred.equiv import apply_pair
from critred.forms import BinaryForm, form_from_points, squarefree_part
from critred.lattes import lattes_map, make_model
from critred.rammap import make_map, ram_profile
from critred.reduction import (
    IncompleteFactorizationError,
    InvalidPointSetError,
    ProjPoint,
    Prop2Verdict,
    cgr_bad_primes,
    check_prop2,
    is_cgr_at,
    is_r_distinct_at,
    is_s_good,
    is_sgr_at,
    pointset_bad_primes,
    pointset_discriminant,
    prop2_leading_coefficients,
    reduction_report,
    sgr_bad_primes,
)
from oracles import common_root_mod_p, repeated_root_mod_p
from strategies import forms, maps, unimodular

B = BinaryForm
CHEB = make_map(B((1, 0, -3, 0)), B((0, 0, 0, 1)))
LATTES = lattes_map(make_model([1, 0, -1, 0]))
FIVE_SQUARE = make_map(B((5, 0, 0)), B((0, 0, 1)))

SMALL_PRIMES = list(sympy.primerange(2, 60))


def test_projpoint_normalizes():
    assert ProjPoint(-4, -6) == ProjPoint(2, 3)
    assert ProjPoint(-3, 0) == ProjPoint(1, 0)
    assert ProjPoint(3, 7).reduce_mod(5) == (4, 1)  # 3/2 = 3 * 3 mod 5
    with pytest.raises(ValueError):
        ProjPoint(0, 0)


def test_projpoint_reduction_to_infinity():
    assert ProjPoint(1, 5).reduce_mod(5) == (1, 0)
    assert ProjPoint(2, 3).reduce_mod(7) == (2 * pow(3, -1, 7) % 7, 1)


@pytest.mark.parametrize(
    "points, expected",
    [
        ([(0, 1), (1, 0)], frozenset()),
        ([(0, 1), (5, 1)], frozenset({5})),
        ([(0, 1), (1, 1), (-1, 1)], frozenset({2})),
        ([(1, 3), (2, 3)], frozenset({3})),  # 1/3, 2/3 both reduce to infinity mod 3
    ],
)
def test_pointset_bad_primes_examples(points, expected):
    F = form_from_points(points)
    assert pointset_bad_primes(F) == expected
    for p in SMALL_PRIMES:
        assert is_r_distinct_at(F, p) == (p not in expected)


def test_pointset_needs_primitive_squarefree():
    with pytest.raises(InvalidPointSetError):
        pointset_discriminant(B((2, 0, -2)))
    with pytest.raises(InvalidPointSetError):
        pointset_discriminant(B((1, 2, 1)))


def test_small_pointsets_are_always_distinct():
    assert pointset_discriminant(B((3, 1))) == 1
    assert pointset_bad_primes(B((1,))) == frozenset()


@pytest.mark.parametrize(
    "F, S, expected",
    [(B((1, 0, -1, 0)), {2}, True), (B((1, 0, -1, 0)), set(), False), (B((1, 0, -25)), {2, 5}, True), (B((1, 0, -25)), {5}, False)],
)
def test_is_s_good_examples(F, S, expected):
    assert is_s_good(F, S) is expected


def test_sgr_examples():
    assert sgr_bad_primes(FIVE_SQUARE) == {5}
    assert not is_sgr_at(FIVE_SQUARE, 5) and is_sgr_at(FIVE_SQUARE, 2)
    assert sgr_bad_primes(CHEB) == frozenset()
    assert sgr_bad_primes(LATTES) == {2}


def test_cgr_examples():
    assert cgr_bad_primes(CHEB) == ({2}, {2})
    assert cgr_bad_primes(FIVE_SQUARE) == (frozenset(), frozenset())
    assert is_cgr_at(FIVE_SQUARE, 5)
    points, values = cgr_bad_primes(LATTES)
    assert values == {2}
    assert points == {2}


def test_report_bundles_everything():
    rep = reduction_report(CHEB)
    assert rep.degree == 3 and rep.complete
    assert (rep.sgr_bad, rep.cgr_bad) == (frozenset(), {2})
    assert rep.provenance["resultant"].value() == 1


def test_report_degrades_on_incomplete_factorization():
    # Res = 5 * q * r for two large primes; a tiny effort budget cannot split q * r
    q, r = 2**61 - 1, 2**89 - 1
    phi = make_map(B((5 * q * r, 0, 0)), B((0, 0, 1)))
    cfg = FactorConfig(trial_bound=10, rho_iterations=5, rho_attempts=1)
    rep = reduction_report(phi, cfg)
    assert not rep.complete
    assert 5 in rep.sgr_bad
    with pytest.raises(IncompleteFactorizationError):
        sgr_bad_primes(phi, cfg)


# -- agreement with brute-force reductions mod p ----------------------------------


@settings(max_examples=80)
@given(maps(max_degree=3, max_coeff=4))
def test_sgr_matches_common_root_oracle(phi):
    for p in SMALL_PRIMES[:10]:
        assert is_sgr_at(phi, p) == (not common_root_mod_p(phi.P, phi.Q, p)), p


@settings(max_examples=60)
@given(maps(max_degree=3, max_coeff=4))
def test_cgr_matches_collision_oracle(phi):
    prof = ram_profile(phi)
    forms_ = [f for f in (prof.critical_point_form, prof.critical_value_form) if f.degree >= 2]
    for p in sympy.primerange(2 * phi.degree, 40):
        want = not any(repeated_root_mod_p(f, p) for f in forms_)
        assert is_cgr_at(phi, p) == want, p


@given(forms(min_degree=2, max_degree=4), st.sampled_from(SMALL_PRIMES))
def test_sets_and_predicates_agree(F, p):
    F = squarefree_part(F)
    assume(F.degree >= 2)
    assert (p in pointset_bad_primes(F)) == (not is_r_distinct_at(F, p))


@given(maps(max_degree=3))
def test_report_agrees_with_predicates(phi):
    rep = reduction_report(phi)
    for p in SMALL_PRIMES[:8]:
        assert (p in rep.sgr_bad) == (not is_sgr_at(phi, p))
        assert (p in rep.cgr_bad) == (not is_cgr_at(phi, p))


@settings(max_examples=60)
@given(maps(max_degree=3), unimodular(3), unimodular(3))
def test_bad_sets_invariant_under_equivalence(phi, sigma, gamma):
    psi = apply_pair(phi, sigma, gamma)
    a, b = reduction_report(phi), reduction_report(psi)
    assert a.sgr_bad == b.sgr_bad
    assert (a.cgr_bad_points, a.cgr_bad_values) == (b.cgr_bad_points, b.cgr_bad_values)


# -- critically good implies simply good ---------------------------------------------


def test_prop2_lattes_example():
    assert prop2_leading_coefficients(LATTES) == (1, 4, 4)
    assert check_prop2(LATTES, 5) is Prop2Verdict.IMPLICATION_HOLDS
    assert check_prop2(LATTES, 2) is Prop2Verdict.HYPOTHESES_UNMET


def test_prop2_unmet_when_points_collide_over_q():
    # x^3 - 3x has a double critical point at infinity
    assert check_prop2(CHEB, 5) is Prop2Verdict.HYPOTHESES_UNMET


def test_prop2_rejects_composite():
    with pytest.raises(ValueError):
        check_prop2(LATTES, 15)


@settings(max_examples=150)
@given(maps(min_degree=2, max_degree=4, max_coeff=3), st.sampled_from(SMALL_PRIMES))
def test_prop2_never_fails(phi, p):
    assert check_prop2(phi, p) is not Prop2Verdict.COUNTEREXAMPLE
