"""Sign variation counting and the root bounds built on it.

Coefficient sequences are ascending: (c0, c1, ..., cd) stands for
c0 + c1*T + ... + cd*T^d.
"""

from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from corpus import rooted_poly_corpus
from symreduce.descartes import (
    distinct_real_root_bound_fewnomial,
    negative_root_bound,
    normalize_coeffs,
    positive_root_bound,
    sign_variations,
)


def test_normalize_strips_trailing_zeros():
    assert normalize_coeffs((1, 2, 0, 0)) == (1, 2)
    assert normalize_coeffs((0, 0)) == ()
    assert normalize_coeffs((Fraction(1, 2),)) == (Fraction(1, 2),)


def test_normalize_rejects_floats():
    with pytest.raises(TypeError):
        normalize_coeffs((1.5, 2))


def test_sign_variations_examples():
    assert sign_variations((2, -3, 1)) == 2  # (T-1)(T-2)
    assert sign_variations((1, 0, -1)) == 1  # 1 - T^2
    assert sign_variations((1, 0, 1)) == 0  # T^2 + 1
    assert sign_variations((0, -1, 0, 1)) == 1  # T^3 - T
    assert sign_variations(()) == 0


def test_positive_root_bound_examples():
    assert positive_root_bound((2, -3, 1)) == 2
    assert positive_root_bound((1, 0, -1)) == 1
    assert positive_root_bound((1, 0, 1)) == 0


def test_negative_root_bound_examples():
    # 1 - T^2 has the negative root -1
    assert negative_root_bound((1, 0, -1)) == 1
    # (T-1)(T-2) has none
    assert negative_root_bound((2, -3, 1)) == 0


def test_fewnomial_examples():
    # T^3 - T: degree 3, two terms -> min(3, 3) = 3
    assert distinct_real_root_bound_fewnomial((0, -1, 0, 1)) == 3
    # T^2 + 1: degree 2, two terms -> min(2, 3) = 2, even with no real roots
    assert distinct_real_root_bound_fewnomial((1, 0, 1)) == 2
    # 5*T^4: one term -> min(4, 1) = 1 (the root 0)
    assert distinct_real_root_bound_fewnomial((0, 0, 0, 0, 5)) == 1


def test_soundness_on_rooted_corpus():
    for coeffs, positives, reals in rooted_poly_corpus():
        bound = positive_root_bound(coeffs)
        assert bound >= positives
        assert (bound - positives) % 2 == 0
        nonzero = sum(1 for c in normalize_coeffs(coeffs) if c != 0)
        degree = len(normalize_coeffs(coeffs)) - 1
        few = distinct_real_root_bound_fewnomial(coeffs)
        assert few == min(degree, 2 * (nonzero - 1) + 1)
        assert few >= reals


def test_negative_bound_is_positive_bound_of_reflection():
    for coeffs, _, _ in rooted_poly_corpus(count=30, seed=41):
        reflected = tuple(
            c if i % 2 == 0 else -c for i, c in enumerate(coeffs)
        )
        assert negative_root_bound(coeffs) == positive_root_bound(reflected)


@given(
    st.lists(
        st.fractions(min_value=-9, max_value=9, max_denominator=5),
        min_size=1,
        max_size=8,
    ),
    st.fractions(min_value=-4, max_value=4, max_denominator=3).filter(
        lambda q: q > 0
    ),
)
def test_positive_scaling_invariance(coeffs, scale):
    scaled = [scale * c for c in coeffs]
    assert sign_variations(scaled) == sign_variations(coeffs)
    assert positive_root_bound(scaled) == positive_root_bound(coeffs)


@given(
    st.lists(
        st.fractions(min_value=-9, max_value=9, max_denominator=5),
        min_size=1,
        max_size=8,
    )
)
def test_bounds_within_degree(coeffs):
    normalized = normalize_coeffs(coeffs)
    if not normalized:
        return
    degree = len(normalized) - 1
    assert 0 <= positive_root_bound(coeffs) <= max(degree, 0)
    assert 0 <= negative_root_bound(coeffs) <= max(degree, 0)
