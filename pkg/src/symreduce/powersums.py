"""Power-sum representations of symmetric polynomials.

Every symmetric polynomial f in n variables equals g(p_1, ..., p_n) for a
unique polynomial g, where p_i = x1^i + ... + xn^i.  This module computes
that g, inverts the map, and derives the low/high split in which power sums
above half the degree occur at most linearly.

The conversion runs in two exact stages: classical leading-term reduction
into the elementary-symmetric basis (the graded-lex leading exponent of a
symmetric polynomial is weakly decreasing, so each step subtracts a product
of elementary symmetric polynomials that cancels it), then Newton's
identities rewrite each e_j as a polynomial in p_1 .. p_j.  Every coefficient
stays a Fraction throughout.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .polynomial import MINUS_INFINITY, Poly, compose, elem_sym, extend_vars, permute_vars, power_sum


class NotSymmetricError(ValueError):
    """Raised when an operation requires a symmetric polynomial.

    Carries a witness: a permutation (1-based images) and a monomial whose
    coefficient changes under it.
    """

    def __init__(self, permutation: tuple[int, ...], monomial: tuple[int, ...]):
        self.permutation = permutation
        self.monomial = monomial
        super().__init__(
            f"not symmetric: permuting variables by {permutation} changes the "
            f"coefficient of the monomial with exponents {monomial}"
        )


def symmetry_witness(f: Poly):
    """None if ``f`` is symmetric, else ``(permutation, monomial)``.

    Invariance under the adjacent transposition (x1 x2) and the full cycle
    (x1 x2 ... xn) implies invariance under the whole symmetric group, so
    only those two generators are checked.
    """
    n = f.nvars
    if n <= 1:
        return None
    generators = [tuple([1, 0] + list(range(2, n)))]
    if n > 2:
        generators.append(tuple((i + 1) % n for i in range(n)))
    for images in generators:
        permuted = permute_vars(f, images)
        if permuted != f:
            diff = f - permuted
            monomial = diff.leading_term()[0]
            return tuple(i + 1 for i in images), monomial
    return None


def is_symmetric(f: Poly) -> bool:
    return symmetry_witness(f) is None


def require_symmetric(f: Poly) -> None:
    witness = symmetry_witness(f)
    if witness is not None:
        raise NotSymmetricError(*witness)


@dataclass(frozen=True)
class PowerSumRep:
    """The unique g with f = g(p_1, ..., p_nvars).

    ``g`` lives in variables Z_1 .. Z_nvars, where Z_i stands for p_i.
    """

    nvars: int
    g: Poly

    def __post_init__(self):
        if self.g.nvars != self.nvars:
            raise ValueError(
                f"g has {self.g.nvars} variables, expected {self.nvars}"
            )

    def expand(self) -> Poly:
        return from_power_sums(self)


def weighted_degree(g: Poly):
    """max over monomials of sum(i * a_i) with 1-based variable weights."""
    if g.is_zero:
        return MINUS_INFINITY
    return max(
        sum((i + 1) * e for i, e in enumerate(exps)) for exps, _ in g.terms()
    )


@lru_cache(maxsize=None)
def newton_e_to_p(nvars: int, index: int) -> Poly:
    """e_index written as a polynomial q_index(Z_1, ..., Z_index).

    The result has ``nvars`` ambient variables with support inside
    Z_1 .. Z_index.  Newton's identity j*e_j = sum_{i=1..j} (-1)^(i-1)
    e_{j-i} p_i gives the recurrence; denominators are the only source of
    non-integer coefficients.
    """
    if not 1 <= index <= nvars:
        raise ValueError(f"index {index} out of range 1..{nvars}")
    q = [Poly.constant(nvars, 1)]
    for j in range(1, index + 1):
        total = Poly.zero(nvars)
        for i in range(1, j + 1):
            term = q[j - i] * Poly.variable(nvars, i)
            total = total + (term if i % 2 == 1 else -term)
        q.append(total * Fraction(1, j))
    return q[index]


def _to_elementary(f: Poly) -> dict[tuple[int, ...], Fraction]:
    """Rewrite a symmetric ``f`` as a polynomial in e_1 .. e_n.

    Returns a map from exponent tuples over (e_1, ..., e_n) to coefficients.
    Classical reduction: the graded-lex leading exponent a of a symmetric
    polynomial is weakly decreasing, and e_1^(a1-a2) * e_2^(a2-a3) * ... *
    e_n^(an) has the same leading monomial with coefficient 1.
    """
    n = f.nvars
    elems = [None] + [elem_sym(n, j) for j in range(1, n + 1)]
    pow_cache: dict[tuple[int, int], Poly] = {}

    def elem_power(j: int, e: int) -> Poly:
        key = (j, e)
        if key not in pow_cache:
            pow_cache[key] = elems[j] ** e
        return pow_cache[key]

    out: dict[tuple[int, ...], Fraction] = {}
    rem = f
    while not rem.is_zero:
        lead, coeff = rem.leading_term()
        if any(lead[i] < lead[i + 1] for i in range(n - 1)):
            raise AssertionError(
                "leading exponent not weakly decreasing; input was not symmetric"
            )
        b = tuple(
            lead[i] - lead[i + 1] if i < n - 1 else lead[i] for i in range(n)
        )
        out[b] = out.get(b, Fraction(0)) + coeff
        product = Poly.constant(n, 1)
        for j, e in enumerate(b, start=1):
            if e:
                product = product * elem_power(j, e)
        rem = rem - coeff * product
    return {b: c for b, c in out.items() if c}


@lru_cache(maxsize=512)
def _decompose_cached(f: Poly) -> PowerSumRep:
    n = f.nvars
    e_form = _to_elementary(f)
    pow_cache: dict[tuple[int, int], Poly] = {}

    def q_power(j: int, e: int) -> Poly:
        key = (j, e)
        if key not in pow_cache:
            pow_cache[key] = newton_e_to_p(n, j) ** e
        return pow_cache[key]

    g = Poly.zero(n)
    for b, coeff in e_form.items():
        term = Poly.constant(n, coeff)
        for j, e in enumerate(b, start=1):
            if e:
                term = term * q_power(j, e)
        g = g + term
    return PowerSumRep(n, g)


def to_power_sums(f: Poly) -> PowerSumRep:
    """The unique power-sum representation of a symmetric polynomial.

    Raises :class:`NotSymmetricError` (with a witness permutation and
    monomial) if ``f`` is not symmetric.
    """
    if f.nvars < 1:
        raise ValueError("need at least one variable")
    require_symmetric(f)
    return _decompose_cached(f)


def from_power_sums(rep: PowerSumRep) -> Poly:
    """Expand g(p_1, ..., p_n) back into the original variables."""
    n = rep.nvars
    return compose(rep.g, [power_sum(n, i) for i in range(1, n + 1)])


@dataclass(frozen=True)
class CorollarySplit:
    """f = g0(p_1..p_k) + sum_{j=k+1..dprime} tail[j-k-1](p_1..p_k) * p_j.

    ``k`` is half the degree rounded down (floored at 1 so the tail range is
    well defined for constants and linear inputs); ``dprime = min(d, n)``.
    Power sums with index above k can only occur linearly and unmixed, which
    is what makes the split exist.
    """

    nvars: int
    degree: int
    k: int
    dprime: int
    g0: Poly
    tail: tuple[Poly, ...]

    def reconstruct(self) -> Poly:
        n = self.nvars
        low_args = [power_sum(n, i) for i in range(1, self.k + 1)]
        total = compose(self.g0, low_args)
        for offset, gj in enumerate(self.tail):
            j = self.k + 1 + offset
            total = total + compose(gj, low_args) * power_sum(n, j)
        return total


def corollary_split(f: Poly) -> CorollarySplit:
    """Split a symmetric polynomial around half its degree.

    High power sums (index above floor(d/2)) appear at most linearly and
    never multiply each other, so the representation collapses to one head
    polynomial plus one linear coefficient per high index up to min(d, n).
    """
    rep = to_power_sums(f)
    n = rep.nvars
    d = 0 if f.is_zero else int(f.degree)
    k = max(1, d // 2)
    dprime = min(d, n)
    tail_len = max(0, dprime - k)

    def restrict_low(exps: tuple[int, ...]) -> tuple[int, ...]:
        if k <= n:
            if any(exps[i] for i in range(k, n)):
                raise AssertionError("unexpected high variable in low part")
            return exps[:k]
        return exps + (0,) * (k - n)

    g0_terms: dict[tuple[int, ...], Fraction] = {}
    tail_terms: list[dict[tuple[int, ...], Fraction]] = [dict() for _ in range(tail_len)]
    for exps, coeff in rep.g.terms():
        high = [i + 1 for i, e in enumerate(exps) if e and i + 1 > k]
        if not high:
            g0_terms[restrict_low(exps)] = coeff
        else:
            if len(high) != 1 or exps[high[0] - 1] != 1:
                raise AssertionError(
                    "high power sums must appear linearly and unmixed"
                )
            j = high[0]
            if j > dprime:
                raise AssertionError("high index beyond min(degree, nvars)")
            lowered = tuple(0 if i == j - 1 else e for i, e in enumerate(exps))
            tail_terms[j - k - 1][restrict_low(lowered)] = coeff
    return CorollarySplit(
        nvars=n,
        degree=d,
        k=k,
        dprime=dprime,
        g0=Poly(k, g0_terms),
        tail=tuple(Poly(k, t) for t in tail_terms),
    )
