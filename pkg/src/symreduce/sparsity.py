"""Sparsity of symmetric polynomials in the power-sum basis.

A symmetric f is J-sparse when its unique power-sum form g touches only the
variables Z_j with j in J.  The support can be read off the representation
directly, or probed numerically: with V the Vandermonde matrix of a point
with pairwise-distinct coordinates, the chain rule gives

    grad f(x) = V . diag(1..n) . grad g(p(x)),

so h = V^-1 . grad f(x) has h_j = j * (dg/dZ_j)(p(x)) and the zero pattern
of h matches the support at generic points.  Components outside the support
vanish identically, so the probe never reports false positives.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction

from .polynomial import Poly, gradient
from .powersums import require_symmetric, to_power_sums


@dataclass(frozen=True)
class SparsitySupport:
    """Minimal sorted power-sum support of a symmetric polynomial."""

    nvars: int
    indices: tuple[int, ...]

    def __post_init__(self):
        if list(self.indices) != sorted(set(self.indices)):
            raise ValueError("support indices must be sorted and unique")
        for i in self.indices:
            if not 1 <= i <= self.nvars:
                raise ValueError(f"support index {i} out of range 1..{self.nvars}")

    def __contains__(self, index: int) -> bool:
        return index in self.indices

    def issubset(self, other: "SparsitySupport") -> bool:
        return set(self.indices) <= set(other.indices)


def support(f: Poly) -> SparsitySupport:
    """Exact power-sum support, read from the unique representation."""
    rep = to_power_sums(f)
    return SparsitySupport(f.nvars, rep.g.support_vars())


def _elem_sym_values(values: list[Fraction]) -> list[Fraction]:
    """e_0 .. e_m evaluated at the given numbers (standard DP)."""
    m = len(values)
    out = [Fraction(0)] * (m + 1)
    out[0] = Fraction(1)
    for count, v in enumerate(values, start=1):
        for j in range(count, 0, -1):
            out[j] = out[j] + v * out[j - 1]
    return out


def vandermonde_matrix_at(point) -> list[list[Fraction]]:
    """V with V[i][j] = x_i^j for j = 0 .. n-1 (rows indexed by coordinates)."""
    pts = [_as_fraction(v) for v in point]
    n = len(pts)
    if n < 1:
        raise ValueError("need at least one coordinate")
    return [[pts[i] ** j for j in range(n)] for i in range(n)]


def vandermonde_inverse_at(point) -> list[list[Fraction]]:
    """Exact inverse Vandermonde at a point with pairwise-distinct coordinates.

    Row i, column j (1-based) is

        (-1)^(n+i) * e_{n-i}(x_1, .., x_j omitted, .., x_n) / prod_{l != j} (x_j - x_l)

    which is the coefficient of t^(i-1) in the j-th Lagrange basis polynomial.
    The sign factor is chosen so that V . V^-1 is exactly the identity.
    """
    pts = [_as_fraction(v) for v in point]
    n = len(pts)
    if n < 1:
        raise ValueError("need at least one coordinate")
    for a in range(n):
        for b in range(a + 1, n):
            if pts[a] == pts[b]:
                raise ValueError(
                    f"coordinates {a + 1} and {b + 1} collide (both {pts[a]})"
                )
    inv = [[Fraction(0)] * n for _ in range(n)]
    for j in range(n):
        others = [pts[l] for l in range(n) if l != j]
        esp = _elem_sym_values(others)
        denom = Fraction(1)
        for l in range(n):
            if l != j:
                denom *= pts[j] - pts[l]
        for i in range(1, n + 1):
            sign = 1 if (n + i) % 2 == 0 else -1
            inv[i - 1][j] = sign * esp[n - i] / denom
    return inv


def _as_fraction(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    raise TypeError("Vandermonde points must be exact rationals (int or Fraction)")


@dataclass(frozen=True)
class GradientProbe:
    """Result of the randomized gradient support test.

    ``witnesses`` maps each detected index to the first sample point where
    its component of V^-1 . grad f was nonzero, so any disagreement with the
    exact support is reproducible.
    """

    support: SparsitySupport
    witnesses: dict[int, tuple[Fraction, ...]] = field(compare=False)
    points: tuple[tuple[Fraction, ...], ...] = field(compare=False)


def gradient_support_probe(f: Poly, trials: int = 8, *, seed: int = 0) -> GradientProbe:
    """Probe the power-sum support at random integer points.

    Points have pairwise-distinct coordinates drawn from [-T, T] with
    T = 4 * (deg f + nvars), which keeps the per-component polynomials from
    vanishing by accident at moderate degree.
    """
    require_symmetric(f)
    if trials < 1:
        raise ValueError("trials must be positive")
    n = f.nvars
    d = 0 if f.is_zero else int(f.degree)
    radius = 4 * (d + n)
    rng = random.Random(seed)
    grads = gradient(f)
    found: dict[int, tuple[Fraction, ...]] = {}
    points = []
    for _ in range(trials):
        coords = tuple(Fraction(v) for v in rng.sample(range(-radius, radius + 1), n))
        points.append(coords)
        grad_values = [p.eval(coords) for p in grads]
        inv = vandermonde_inverse_at(coords)
        for i in range(n):
            if i + 1 in found:
                continue
            h_i = sum(inv[i][j] * grad_values[j] for j in range(n))
            if h_i != 0:
                found[i + 1] = coords
        if len(found) == n:
            break
    probe_support = SparsitySupport(n, tuple(sorted(found)))
    return GradientProbe(support=probe_support, witnesses=found, points=tuple(points))


def gradient_support_test(f: Poly, trials: int = 8, *, seed: int = 0) -> SparsitySupport:
    """Randomized support estimate; always a subset of the exact support."""
    return gradient_support_probe(f, trials, seed=seed).support
