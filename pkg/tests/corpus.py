"""Seeded corpora and brute-force enumerators shared across the test suite.

Everything here is driven by explicit random.Random instances so that any
test run with the same seed sees byte-identical inputs.  The enumerators are
deliberately written with a different algorithm than the library (plain
product-space filtering) so they can serve as independent oracles.
"""

from __future__ import annotations

import itertools
import random
from fractions import Fraction

from symreduce.polynomial import Poly, elem_sym
from symreduce.powersums import PowerSumRep, from_power_sums
from symreduce.reduction import Relation


def rand_coeff(rng: random.Random, span: int = 6, max_den: int = 3) -> Fraction:
    num = rng.randint(-span, span)
    if num == 0:
        num = rng.choice((-1, 1))
    return Fraction(num, rng.randint(1, max_den))


def random_weighted_exponents(
    rng: random.Random, nvars: int, budget: int, indices=None
) -> tuple[int, ...]:
    """Exponent vector a with sum(i * a_i) <= budget, weights 1-based."""
    pool = list(indices) if indices is not None else list(range(1, nvars + 1))
    exps = [0] * nvars
    remaining = budget
    for _ in range(rng.randint(1, budget + 1)):
        affordable = [i for i in pool if i <= remaining]
        if not affordable:
            break
        i = rng.choice(affordable)
        exps[i - 1] += 1
        remaining -= i
    return tuple(exps)


def random_power_sum_g(
    rng: random.Random,
    nvars: int,
    weighted_degree: int,
    indices=None,
    max_terms: int = 5,
) -> Poly:
    terms = {}
    for _ in range(rng.randint(1, max_terms)):
        exps = random_weighted_exponents(rng, nvars, weighted_degree, indices)
        terms[exps] = rand_coeff(rng)
    return Poly(nvars, terms)


def orbit_sum(nvars: int, exps: tuple[int, ...]) -> Poly:
    """Sum of x^sigma(exps) over the distinct permutations of exps."""
    terms = {perm: Fraction(1) for perm in set(itertools.permutations(exps))}
    return Poly(nvars, terms)


def random_symmetric_poly(rng: random.Random, nvars: int, degree: int) -> Poly:
    """Random nonconstant symmetric polynomial of degree <= degree.

    Mixes three families so the corpus is not just the image of the
    library's own expansion code: power-sum composites, orbit sums of
    random monomials, and products of elementary symmetrics.
    """
    family = rng.randrange(3)
    if family == 0:
        g = random_power_sum_g(rng, nvars, degree)
        f = from_power_sums(PowerSumRep(nvars, g))
    elif family == 1:
        f = Poly.zero(nvars)
        for _ in range(rng.randint(1, 3)):
            shape = sorted(
                (rng.randint(0, degree) for _ in range(nvars)), reverse=True
            )
            while sum(shape) > degree:
                for i in range(nvars - 1, -1, -1):
                    if shape[i] > 0 and sum(shape) > degree:
                        shape[i] -= 1
            f = f + rand_coeff(rng) * orbit_sum(nvars, tuple(shape))
    else:
        f = Poly.constant(nvars, rand_coeff(rng))
        total = 0
        while True:
            j = rng.randint(1, nvars)
            if total + j > degree:
                break
            f = f * elem_sym(nvars, j)
            total += j
            if rng.random() < 0.5:
                break
        f = f + rand_coeff(rng) * elem_sym(nvars, 1)
    if f.is_zero or f.degree < 1:
        return random_symmetric_poly(rng, nvars, degree)
    return f


def decomposition_corpus(count: int = 200, seed: int = 20240601):
    rng = random.Random(seed)
    out = []
    for _ in range(count):
        nvars = rng.randint(1, 6)
        degree = rng.randint(1, 6)
        out.append(random_symmetric_poly(rng, nvars, degree))
    return out


def jsparse_corpus(count: int = 100, seed: int = 20240602):
    """(f, J) pairs where f is built from the power sums p_j, j in J."""
    rng = random.Random(seed)
    out = []
    for _ in range(count):
        nvars = rng.randint(3, 5)
        size = rng.randint(1, min(3, nvars))
        J = tuple(sorted(rng.sample(range(1, nvars + 1), size)))
        terms = {}
        # one pure term per index keeps the support exactly J
        for j in J:
            exps = [0] * nvars
            exps[j - 1] = rng.randint(1, 2)
            terms[tuple(exps)] = rand_coeff(rng)
        for _ in range(rng.randint(0, 3)):
            exps = random_weighted_exponents(rng, nvars, 2 * max(J), indices=J)
            if any(exps):
                terms.setdefault(tuple(exps), rand_coeff(rng))
        g = Poly(nvars, terms)
        out.append((from_power_sums(PowerSumRep(nvars, g)), J))
    return out


def half_degree_corpus(count: int = 50, seed: int = 20240603):
    """Degree-4 symmetric polynomials on 4 or 5 variables."""
    rng = random.Random(seed)
    out = []
    while len(out) < count:
        nvars = rng.choice((4, 5))
        g = random_power_sum_g(rng, nvars, 4, indices=range(1, 5), max_terms=4)
        f = from_power_sums(PowerSumRep(nvars, g))
        if f.degree == 4:
            out.append(f)
    return out


_RELATIONS = (Relation.EQ, Relation.GE, Relation.GT, Relation.NE)


def system_corpus(count: int = 50, seed: int = 20240604):
    """Random constraint systems: m <= 3 constraints of degree <= 3, n <= 5."""
    rng = random.Random(seed)
    out = []
    for _ in range(count):
        nvars = rng.randint(2, 5)
        m = rng.randint(1, 3)
        system = []
        for _ in range(m):
            g = random_power_sum_g(
                rng, nvars, 3, indices=range(1, min(3, nvars) + 1), max_terms=3
            )
            shift = Fraction(rng.randint(-4, 4))
            f = from_power_sums(PowerSumRep(nvars, g)) - shift
            if f.is_zero or f.degree < 1:
                f = f + elem_sym(nvars, 1)
            system.append((f, rng.choice(_RELATIONS)))
        out.append(tuple(system))
    return out


def even_system_corpus(count: int = 20, seed: int = 20240605):
    """Systems whose constraints are built from p_2 and p_4 only."""
    rng = random.Random(seed)
    out = []
    for _ in range(count):
        nvars = rng.randint(2, 5)
        m = rng.randint(1, 2)
        system = []
        for _ in range(m):
            terms = {}
            for _ in range(rng.randint(1, 3)):
                a2 = rng.randint(0, 2)
                a4 = rng.randint(0, 1)
                if a2 == 0 and a4 == 0:
                    a2 = 1
                exps = [0] * nvars
                exps[1] = a2
                if nvars >= 4:
                    exps[3] = a4
                terms[tuple(exps)] = rand_coeff(rng, span=3, max_den=1)
            g = Poly(nvars, terms)
            f = from_power_sums(PowerSumRep(nvars, g)) - Fraction(rng.randint(-2, 8))
            system.append((f, rng.choice((Relation.EQ, Relation.GE, Relation.GT))))
        out.append(tuple(system))
    return out


def rooted_poly_corpus(count: int = 100, seed: int = 20240606):
    """(coeffs, distinct positive roots, distinct real roots) triples.

    Built as an exact product of linear factors with known distinct
    rational roots, optionally times a rootless even quadratic.
    """
    rng = random.Random(seed)
    out = []
    for _ in range(count):
        n_roots = rng.randint(1, 5)
        roots = set()
        while len(roots) < n_roots:
            roots.add(Fraction(rng.randint(-8, 8), rng.randint(1, 3)))
        coeffs = [Fraction(1)]
        for r in roots:
            # multiply by (T - r)
            nxt = [Fraction(0)] * (len(coeffs) + 1)
            for i, c in enumerate(coeffs):
                nxt[i] += -r * c
                nxt[i + 1] += c
            coeffs = nxt
        if rng.random() < 0.4:
            c = Fraction(rng.randint(1, 4))
            nxt = [Fraction(0)] * (len(coeffs) + 2)
            for i, cc in enumerate(coeffs):
                nxt[i] += c * cc
                nxt[i + 2] += cc
            coeffs = nxt
        scale = rand_coeff(rng)
        coeffs = [scale * c for c in coeffs]
        positives = sum(1 for r in roots if r > 0)
        reals = len(roots)
        out.append((tuple(coeffs), positives, reals))
    return out


def brute_partitions(n: int, k: int):
    """All weakly decreasing positive tuples summing to n with <= k parts.

    Product-space filter, independent of the library's recursive builder.
    """
    found = set()
    for tup in itertools.product(range(n + 1), repeat=k):
        if sum(tup) != n:
            continue
        if any(tup[i] < tup[i + 1] for i in range(k - 1)):
            continue
        found.add(tuple(v for v in tup if v > 0))
    return sorted(found, reverse=True)


def brute_orthant_cells(n: int, d: int):
    """(parts, zero_block) pairs: positive parts for at most d values."""
    found = set()
    for z in range(n + 1):
        for parts in brute_partitions(n - z, d):
            found.add((parts, z))
    return sorted(found)
