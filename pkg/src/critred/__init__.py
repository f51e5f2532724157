"""Critically good reduction and simple good reduction of rational maps of P^1 over Q."""

from .arith import FactorConfig, Factorization, factorize, is_prime, valuation
from .equiv import (
    EnumReport,
    EquivWitness,
    apply_pair,
    are_equivalent_bounded,
    enumerate_cgr_maps,
)
from .forms import (
    BinaryForm,
    Matrix2,
    apply_gl2,
    content,
    discriminant,
    form_gcd,
    primitive_part,
    resultant,
    squarefree_part,
)
from .lattes import EllipticModel, compose, lattes_map, make_model, verify_prop1
from .parse import parse_form, parse_map
from .rammap import RamProfile, RationalMap, make_map, ram_profile, ramifies_at_three_or_more, wronskian
from .reduction import (
    Prop2Verdict,
    ReductionReport,
    cgr_bad_primes,
    check_prop2,
    is_r_distinct_at,
    is_s_good,
    is_sgr_at,
    pointset_bad_primes,
    reduction_report,
    sgr_bad_primes,
)

__version__ = "0.1.0"
