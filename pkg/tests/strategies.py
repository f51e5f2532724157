"""Shared hypothesis strategies and seeded generators for the test suite."""

import functools
import itertools
import random

from hypothesis import strategies as st

from critred.forms import BinaryForm, Matrix2
from critred.rammap import DegenerateMapError, make_map

B = BinaryForm


@functools.lru_cache(maxsize=None)
def unimodular_matrices(bound):
    r = range(-bound, bound + 1)
    return [Matrix2(*e) for e in itertools.product(r, repeat=4) if Matrix2(*e).det in (1, -1)]


UNIMODULAR_2 = unimodular_matrices(2)


@st.composite
def forms(draw, min_degree=1, max_degree=5, max_coeff=10):
    n = draw(st.integers(min_degree, max_degree))
    coeffs = draw(st.lists(st.integers(-max_coeff, max_coeff), min_size=n + 1, max_size=n + 1))
    if not any(coeffs):
        coeffs[0] = 1
    return B(coeffs)


def unimodular(bound=2):
    return st.sampled_from(unimodular_matrices(bound))


@st.composite
def maps(draw, min_degree=2, max_degree=3, max_coeff=3):
    n = draw(st.integers(min_degree, max_degree))
    ints = st.integers(-max_coeff, max_coeff)
    for _ in range(50):
        P = draw(st.lists(ints, min_size=n + 1, max_size=n + 1))
        Q = draw(st.lists(ints, min_size=n + 1, max_size=n + 1))
        try:
            return make_map(B(P), B(Q))
        except DegenerateMapError:
            continue
    return make_map(B([1] + [0] * n), B([0] * n + [1]))


def random_map(rng: random.Random, degree: int, max_coeff: int):
    while True:
        P = [rng.randint(-max_coeff, max_coeff) for _ in range(degree + 1)]
        Q = [rng.randint(-max_coeff, max_coeff) for _ in range(degree + 1)]
        try:
            return make_map(B(P), B(Q))
        except DegenerateMapError:
            continue


def random_unimodular(rng: random.Random, bound: int) -> Matrix2:
    while True:
        m = Matrix2(*(rng.randint(-bound, bound) for _ in range(4)))
        if m.is_unimodular:
            return m
