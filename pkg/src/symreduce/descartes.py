"""Sign-based root bounds for univariate polynomials.

Coefficient sequences are ascending: index i holds the coefficient of T^i.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

CoeffSeq = tuple[Fraction, ...]


def normalize_coeffs(coeffs: Sequence) -> CoeffSeq:
    """Coerce to Fractions and strip trailing zeros."""
    out = []
    for c in coeffs:
        if isinstance(c, float):
            raise TypeError("coefficients must be exact rationals")
        out.append(c if isinstance(c, Fraction) else Fraction(c))
    while out and out[-1] == 0:
        out.pop()
    return tuple(out)


def sign_variations(coeffs: Sequence) -> int:
    """Sign changes in the nonzero subsequence of the coefficients."""
    signs = [1 if c > 0 else -1 for c in normalize_coeffs(coeffs) if c != 0]
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def positive_root_bound(coeffs: Sequence) -> int:
    """Descartes bound: positive real roots (with multiplicity) never exceed
    the sign variation count, and the difference is even."""
    normalized = normalize_coeffs(coeffs)
    if not normalized:
        raise ValueError("the zero polynomial has no root bound")
    return sign_variations(normalized)


def negative_root_bound(coeffs: Sequence) -> int:
    """Sign variations of c(-T), bounding the negative real roots."""
    normalized = normalize_coeffs(coeffs)
    if not normalized:
        raise ValueError("the zero polynomial has no root bound")
    flipped = tuple(c if i % 2 == 0 else -c for i, c in enumerate(normalized))
    return sign_variations(flipped)


def distinct_real_root_bound_fewnomial(coeffs: Sequence) -> int:
    """Distinct real roots of an m-term polynomial: min(deg, 2(m-1) + 1).

    Descartes on c(T) and c(-T) gives at most m-1 positive and m-1 negative
    roots, plus possibly one at zero, all capped by the degree.
    """
    normalized = normalize_coeffs(coeffs)
    if not normalized:
        raise ValueError("the zero polynomial has no root bound")
    degree = len(normalized) - 1
    m = sum(1 for c in normalized if c != 0)
    return min(degree, 2 * (m - 1) + 1)
