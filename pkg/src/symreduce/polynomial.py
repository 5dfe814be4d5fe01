"""Exact sparse multivariate polynomial arithmetic over the rationals.

A :class:`Poly` is an immutable value.  ``nvars`` fixes the ambient variable
count and every monomial is an exponent tuple of exactly that length, so
polynomials of different arity never mix silently.  Coefficients are
``fractions.Fraction`` and all algebra is exact; floating point enters only
through :meth:`Poly.eval` when the point itself contains floats.

Public signatures index variables 1-based (``x1 .. xn``) to match the usual
mathematical notation.  Exponent tuples are positional: position 0 holds the
exponent of ``x1``.
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Iterator, Mapping, Sequence, Union

Exponent = tuple[int, ...]
Scalar = Union[int, Fraction]

#: Degree reported for the zero polynomial (a distinguished marker, never -1 or 0).
MINUS_INFINITY = float("-inf")


def _grlex_key(exps: Exponent) -> tuple[int, Exponent]:
    # Graded lexicographic: compare total degree first, then exponents
    # lexicographically with x1 heaviest.
    return (sum(exps), exps)


def _coerce_coeff(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    raise TypeError(f"coefficients must be int or Fraction, got {type(value).__name__}")


class Poly:
    """Immutable sparse polynomial with exact rational coefficients.

    Terms are kept in descending graded-lexicographic order, so iteration,
    printing, hashing and equality are all canonical.  The zero polynomial has
    an empty term list and degree ``MINUS_INFINITY``.
    """

    __slots__ = ("_nvars", "_terms")

    def __init__(
        self,
        nvars: int,
        terms: Mapping[Exponent, Scalar] | Iterable[tuple[Exponent, Scalar]] = (),
    ):
        if not isinstance(nvars, int) or nvars < 0:
            raise ValueError(f"nvars must be a nonnegative integer, got {nvars!r}")
        items = terms.items() if isinstance(terms, Mapping) else terms
        acc: dict[Exponent, Fraction] = {}
        for raw_exps, raw_coeff in items:
            exps = tuple(raw_exps)
            if len(exps) != nvars:
                raise ValueError(
                    f"exponent tuple {exps} has length {len(exps)}, expected {nvars}"
                )
            for e in exps:
                if not isinstance(e, int) or e < 0:
                    raise ValueError(f"exponents must be nonnegative integers, got {exps}")
            coeff = _coerce_coeff(raw_coeff)
            if coeff:
                new = acc.get(exps, _FR_ZERO) + coeff
                if new:
                    acc[exps] = new
                elif exps in acc:
                    del acc[exps]
        ordered = tuple(
            sorted(acc.items(), key=lambda item: _grlex_key(item[0]), reverse=True)
        )
        object.__setattr__(self, "_nvars", nvars)
        object.__setattr__(self, "_terms", ordered)

    def __setattr__(self, name, value):
        raise AttributeError("Poly is immutable")

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls, nvars: int) -> "Poly":
        return cls(nvars, ())

    @classmethod
    def constant(cls, nvars: int, value: Scalar) -> "Poly":
        return cls(nvars, {(0,) * nvars: value})

    @classmethod
    def variable(cls, nvars: int, index: int) -> "Poly":
        """The monomial ``x{index}``; ``index`` is 1-based."""
        if not 1 <= index <= nvars:
            raise ValueError(f"variable index {index} out of range 1..{nvars}")
        exps = tuple(1 if i == index - 1 else 0 for i in range(nvars))
        return cls(nvars, {exps: 1})

    # -- basic queries -----------------------------------------------------

    @property
    def nvars(self) -> int:
        return self._nvars

    @property
    def is_zero(self) -> bool:
        return not self._terms

    @property
    def degree(self):
        """Total degree; ``MINUS_INFINITY`` for the zero polynomial."""
        if not self._terms:
            return MINUS_INFINITY
        return sum(self._terms[0][0])

    def terms(self) -> Iterator[tuple[Exponent, Fraction]]:
        """Iterate terms in descending graded-lexicographic order."""
        return iter(self._terms)

    def as_dict(self) -> dict[Exponent, Fraction]:
        return dict(self._terms)

    def leading_term(self) -> tuple[Exponent, Fraction]:
        if not self._terms:
            raise ValueError("the zero polynomial has no leading term")
        return self._terms[0]

    def coefficient(self, exps: Sequence[int]) -> Fraction:
        key = tuple(exps)
        for e, c in self._terms:
            if e == key:
                return c
        return _FR_ZERO

    def support_vars(self) -> tuple[int, ...]:
        """Sorted 1-based indices of variables that actually appear."""
        seen = set()
        for exps, _ in self._terms:
            for i, e in enumerate(exps):
                if e:
                    seen.add(i + 1)
        return tuple(sorted(seen))

    # -- equality / hashing ------------------------------------------------

    def __eq__(self, other):
        if not isinstance(other, Poly):
            return NotImplemented
        return self._nvars == other._nvars and self._terms == other._terms

    def __hash__(self):
        return hash((self._nvars, self._terms))

    def __bool__(self):
        return bool(self._terms)

    def __repr__(self):
        return f'Poly({self._nvars}, "{self.to_text()}")'

    def __str__(self):
        return self.to_text()

    # -- arithmetic --------------------------------------------------------

    def _check_arity(self, other: "Poly"):
        if self._nvars != other._nvars:
            raise ValueError(
                f"variable-count mismatch: {self._nvars} vs {other._nvars}"
            )

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Poly.constant(self._nvars, other)
        if not isinstance(other, Poly):
            return NotImplemented
        self._check_arity(other)
        acc = dict(self._terms)
        for exps, c in other._terms:
            acc[exps] = acc.get(exps, _FR_ZERO) + c
        return Poly(self._nvars, acc)

    __radd__ = __add__

    def __neg__(self):
        return Poly(self._nvars, {e: -c for e, c in self._terms})

    def __sub__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Poly.constant(self._nvars, other)
        if not isinstance(other, Poly):
            return NotImplemented
        return self.__add__(-other)

    def __rsub__(self, other):
        return (-self).__add__(other)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            scale = _coerce_coeff(other)
            if not scale:
                return Poly.zero(self._nvars)
            return Poly(self._nvars, {e: c * scale for e, c in self._terms})
        if not isinstance(other, Poly):
            return NotImplemented
        self._check_arity(other)
        acc: dict[Exponent, Fraction] = {}
        for ea, ca in self._terms:
            for eb, cb in other._terms:
                key = tuple(a + b for a, b in zip(ea, eb))
                acc[key] = acc.get(key, _FR_ZERO) + ca * cb
        return Poly(self._nvars, acc)

    __rmul__ = __mul__

    def __pow__(self, exponent: int):
        if not isinstance(exponent, int) or exponent < 0:
            raise ValueError("polynomial powers must be nonnegative integers")
        result = Poly.constant(self._nvars, 1)
        base = self
        e = exponent
        while e:
            if e & 1:
                result = result * base
            base = base * base if e > 1 else base
            e >>= 1
        return result

    # -- evaluation --------------------------------------------------------

    def eval(self, point: Sequence):
        """Evaluate at ``point``.

        If every coordinate is an int or Fraction the result is an exact
        Fraction; otherwise everything is computed in float.
        """
        if len(point) != self._nvars:
            raise ValueError(
                f"point has {len(point)} coordinates, expected {self._nvars}"
            )
        exact = all(isinstance(v, (int, Fraction)) for v in point)
        total = Fraction(0) if exact else 0.0
        for exps, coeff in self._terms:
            term = coeff if exact else float(coeff)
            for value, e in zip(point, exps):
                if e:
                    term = term * value**e
            total = total + term
        return total

    # -- calculus ----------------------------------------------------------

    def partial(self, index: int) -> "Poly":
        """Partial derivative with respect to ``x{index}`` (1-based)."""
        if not 1 <= index <= self._nvars:
            raise ValueError(f"variable index {index} out of range 1..{self._nvars}")
        pos = index - 1
        acc: dict[Exponent, Fraction] = {}
        for exps, coeff in self._terms:
            e = exps[pos]
            if e:
                key = exps[:pos] + (e - 1,) + exps[pos + 1 :]
                acc[key] = acc.get(key, _FR_ZERO) + coeff * e
        return Poly(self._nvars, acc)

    # -- printing ----------------------------------------------------------

    def to_text(self, var: str = "x") -> str:
        """Canonical text form, re-parseable by the expression grammar.

        No implicit multiplication: ``3/2*x1^2*x2 - x3 + 1``.
        """
        if not self._terms:
            return "0"
        pieces = []
        for pos, (exps, coeff) in enumerate(self._terms):
            factors = [
                f"{var}{i + 1}" + (f"^{e}" if e > 1 else "")
                for i, e in enumerate(exps)
                if e
            ]
            mag = abs(coeff)
            if not factors:
                body = str(mag)
            elif mag == 1:
                body = "*".join(factors)
            else:
                body = str(mag) + "*" + "*".join(factors)
            if pos == 0:
                pieces.append("-" + body if coeff < 0 else body)
            else:
                pieces.append((" - " if coeff < 0 else " + ") + body)
        return "".join(pieces)


_FR_ZERO = Fraction(0)


# -- module-level helpers ----------------------------------------------------


@lru_cache(maxsize=None)
def power_sum(nvars: int, index: int) -> Poly:
    """The power sum ``p_index = x1^index + ... + xn^index``."""
    if nvars < 1:
        raise ValueError("power sums need at least one variable")
    if index < 1:
        raise ValueError("power sum index must be at least 1")
    terms = {}
    for i in range(nvars):
        exps = tuple(index if j == i else 0 for j in range(nvars))
        terms[exps] = 1
    return Poly(nvars, terms)


@lru_cache(maxsize=None)
def elem_sym(nvars: int, index: int) -> Poly:
    """The elementary symmetric polynomial ``e_index`` in ``nvars`` variables."""
    if nvars < 1:
        raise ValueError("elementary symmetric polynomials need at least one variable")
    if not 0 <= index <= nvars:
        raise ValueError(f"elementary symmetric index {index} out of range 0..{nvars}")
    if index == 0:
        return Poly.constant(nvars, 1)
    terms = {}
    for combo in itertools.combinations(range(nvars), index):
        exps = tuple(1 if i in combo else 0 for i in range(nvars))
        terms[exps] = 1
    return Poly(nvars, terms)


def gradient(f: Poly) -> tuple[Poly, ...]:
    return tuple(f.partial(i) for i in range(1, f.nvars + 1))


def compose(f: Poly, args: Sequence[Poly]) -> Poly:
    """Evaluate ``f`` at polynomial arguments (one per variable of ``f``)."""
    if len(args) != f.nvars:
        raise ValueError(f"compose needs {f.nvars} arguments, got {len(args)}")
    if not args:
        return f
    target = args[0].nvars
    for a in args:
        if a.nvars != target:
            raise ValueError("compose arguments must share one variable count")
    pow_cache: dict[tuple[int, int], Poly] = {}

    def arg_power(i: int, e: int) -> Poly:
        key = (i, e)
        if key not in pow_cache:
            pow_cache[key] = args[i] ** e
        return pow_cache[key]

    total = Poly.zero(target)
    for exps, coeff in f.terms():
        term = Poly.constant(target, coeff)
        for i, e in enumerate(exps):
            if e:
                term = term * arg_power(i, e)
        total = total + term
    return total


def permute_vars(f: Poly, images: Sequence[int]) -> Poly:
    """Apply a variable permutation.

    ``images`` lists 0-based target positions: the variable at position ``i``
    moves to position ``images[i]``.
    """
    if sorted(images) != list(range(f.nvars)):
        raise ValueError(f"{tuple(images)} is not a permutation of 0..{f.nvars - 1}")
    acc = {}
    for exps, coeff in f.terms():
        new = [0] * f.nvars
        for i, e in enumerate(exps):
            new[images[i]] = e
        acc[tuple(new)] = coeff
    return Poly(f.nvars, acc)


def extend_vars(f: Poly, nvars: int) -> Poly:
    """Reinterpret ``f`` in a larger ambient variable count (pad exponents)."""
    if nvars < f.nvars:
        raise ValueError(f"cannot shrink variable count {f.nvars} to {nvars}")
    if nvars == f.nvars:
        return f
    pad = (0,) * (nvars - f.nvars)
    return Poly(nvars, {exps + pad: c for exps, c in f.terms()})
