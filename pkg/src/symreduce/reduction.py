"""Reduction of symmetric problems to few distinct coordinate values.

The test sets are A_k (points with at most k distinct coordinates) and
A_k^+ (nonnegative points with at most k distinct positive coordinates).
Cells parameterize them: a cell assigns multiplicities to k unknown values
T_1 .. T_k, plus an optional block of coordinates pinned to zero.  On a cell
the whole problem collapses to len(parts) variables via the power-sum form,
p_i |-> sum_j parts[j] * T_j^i.

Plan builders pick the test set:

* degree_principle: feasibility of a symmetric system, bound max(2, d)
* half_degree: nonnegativity or variety tests, bound max(2, floor(d/2))
  (orthant variant: A_k^+ with bound max(1, floor(d/2)))
* jsparse_even / jsparse_odd: supports J with all indices even reduce to
  orthant cells with at most |J| positive values; otherwise to
  min(max J, 2|J|+1) distinct values
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Optional, Sequence

from .polynomial import Poly, compose
from .powersums import require_symmetric, to_power_sums
from .sparsity import SparsitySupport, support


class Relation(enum.Enum):
    """Constraint sense against zero."""

    EQ = "=0"
    GE = ">=0"
    GT = ">0"
    NE = "!=0"

    @classmethod
    def from_text(cls, text: str) -> "Relation":
        for member in cls:
            if member.value == text:
                return member
        raise ValueError(f"unknown relation {text!r}; expected one of "
                         + ", ".join(m.value for m in cls))


@dataclass(frozen=True)
class Partition:
    """Multiplicity cell: ``parts`` positive values plus ``zero_block`` zeros.

    ``parts`` is weakly decreasing with no zero entries; trailing zeros from
    enumeration are canonicalized away, with ``declared_length`` remembering
    how many slots the cell was drawn with.  sum(parts) + zero_block == n.
    """

    n: int
    parts: tuple[int, ...]
    zero_block: int = 0
    declared_length: int = 0

    def __post_init__(self):
        if self.zero_block < 0:
            raise ValueError("zero_block must be nonnegative")
        for i, p in enumerate(self.parts):
            if p <= 0:
                raise ValueError("parts must be positive (zeros are canonicalized away)")
            if i and self.parts[i - 1] < p:
                raise ValueError("parts must be weakly decreasing")
        if sum(self.parts) + self.zero_block != self.n:
            raise ValueError(
                f"parts {self.parts} plus zero_block {self.zero_block} do not sum to {self.n}"
            )
        if self.declared_length < len(self.parts):
            object.__setattr__(self, "declared_length", len(self.parts))

    @property
    def effective_length(self) -> int:
        return len(self.parts)

    def describe(self) -> str:
        body = "(" + ",".join(str(p) for p in self.parts) + ")"
        if self.zero_block:
            body += f"+0^{self.zero_block}"
        return body

    def expand(self, values: Sequence) -> tuple:
        """Lift cell values to a full n-coordinate point."""
        if len(values) != len(self.parts):
            raise ValueError(
                f"cell has {len(self.parts)} values, got {len(values)}"
            )
        out = []
        for mult, v in zip(self.parts, values):
            out.extend([v] * mult)
        zero = 0.0 if any(isinstance(v, float) for v in values) else Fraction(0)
        out.extend([zero] * self.zero_block)
        return tuple(out)


def _weakly_decreasing_tuples(total: int, slots: int):
    """All weakly decreasing nonnegative ``slots``-tuples summing to ``total``,
    in lexicographically decreasing order."""

    def rec(remaining: int, slots_left: int, cap: int):
        if slots_left == 0:
            if remaining == 0:
                yield ()
            return
        top = min(cap, remaining)
        for v in range(top, -1, -1):
            if v * slots_left < remaining:
                break
            for rest in rec(remaining - v, slots_left - 1, v):
                yield (v,) + rest

    yield from rec(total, slots, total)


def partitions(n: int, k: int) -> tuple[Partition, ...]:
    """All cells with at most k distinct values covering n coordinates."""
    if n < 1:
        raise ValueError("n must be positive")
    if k < 1:
        raise ValueError("k must be positive")
    out = []
    for raw in _weakly_decreasing_tuples(n, k):
        parts = tuple(p for p in raw if p)
        out.append(Partition(n=n, parts=parts, zero_block=0, declared_length=k))
    return tuple(out)


def orthant_cells(n: int, d: int) -> tuple[Partition, ...]:
    """Cells of A_d^+: at most d distinct positive values plus a zero block."""
    if n < 1:
        raise ValueError("n must be positive")
    if d < 1:
        raise ValueError("d must be positive")
    out = []
    seen = set()
    for z in range(n + 1):
        remaining = n - z
        if remaining == 0:
            cell = Partition(n=n, parts=(), zero_block=n, declared_length=d)
            key = (cell.parts, cell.zero_block)
            if key not in seen:
                seen.add(key)
                out.append(cell)
            continue
        for raw in _weakly_decreasing_tuples(remaining, d):
            parts = tuple(p for p in raw if p)
            key = (parts, z)
            if key in seen:
                continue
            seen.add(key)
            out.append(Partition(n=n, parts=parts, zero_block=z, declared_length=d))
    return tuple(out)


@dataclass(frozen=True)
class ReducedInstance:
    """One polynomial restricted to one cell, in variables T_1 .. T_k."""

    partition: Partition
    reduced: Poly
    orthant_restricted: bool = False
    relation: Optional[Relation] = None


@dataclass(frozen=True)
class ReductionPlan:
    """A test set plus the reduced instances to search.

    ``instances`` is cell-major: all constraints of the first cell, then all
    of the second, and so on.  ``source`` keeps the original polynomials (and
    relations) so searches can re-verify witnesses against the unreduced
    problem.
    """

    theorem_tag: str
    bound: int
    orthant_restricted: bool
    nvars: int
    cells: tuple[Partition, ...]
    instances: tuple[ReducedInstance, ...]
    source: tuple[tuple[Poly, Optional[Relation]], ...]
    notes: tuple[str, ...] = ()

    def instances_for(self, cell: Partition) -> tuple[ReducedInstance, ...]:
        return tuple(inst for inst in self.instances if inst.partition == cell)


def substitute(f: Poly, cell: Partition) -> ReducedInstance:
    """Restrict a symmetric f to a cell.

    Works through the power-sum form: p_i evaluates on the cell to
    sum_j parts[j] * T_j^i, so the reduced polynomial is
    g(sigma_1, ..., sigma_n) in len(parts) variables.
    """
    if cell.n != f.nvars:
        raise ValueError(f"cell is for n={cell.n}, polynomial has n={f.nvars}")
    rep = to_power_sums(f)
    k = cell.effective_length
    sigmas = []
    for i in range(1, f.nvars + 1):
        terms = {}
        for j, mult in enumerate(cell.parts):
            exps = tuple(i if pos == j else 0 for pos in range(k))
            terms[exps] = mult
        sigmas.append(Poly(k, terms))
    reduced = compose(rep.g, sigmas)
    return ReducedInstance(partition=cell, reduced=reduced)


def _coerce_system(
    system: Iterable[tuple[Poly, Relation | str]]
) -> tuple[tuple[Poly, Relation], ...]:
    out = []
    for poly, rel in system:
        if isinstance(rel, str):
            rel = Relation.from_text(rel)
        out.append((poly, rel))
    return tuple(out)


def _common_nvars(polys: Sequence[Poly]) -> int:
    n = polys[0].nvars
    for p in polys:
        if p.nvars != n:
            raise ValueError("all polynomials in a system must share one variable count")
    return n


def _build_instances(
    cells: Sequence[Partition],
    constraints: Sequence[tuple[Poly, Optional[Relation]]],
    orthant: bool,
) -> tuple[ReducedInstance, ...]:
    out = []
    for cell in cells:
        for poly, rel in constraints:
            base = substitute(poly, cell)
            out.append(
                ReducedInstance(
                    partition=cell,
                    reduced=base.reduced,
                    orthant_restricted=orthant,
                    relation=rel,
                )
            )
    return tuple(out)


def _max_degree(polys: Sequence[Poly]) -> int:
    degrees = [int(p.degree) for p in polys if not p.is_zero]
    return max(degrees, default=0)


def plan_degree_principle(
    system: Iterable[tuple[Poly, Relation | str]],
    *,
    bound_override: Optional[int] = None,
) -> ReductionPlan:
    """Feasibility test set for a symmetric system: A_k with k = max(2, d)."""
    constraints = _coerce_system(system)
    if not constraints:
        raise ValueError("empty system: nothing to reduce")
    polys = [p for p, _ in constraints]
    n = _common_nvars(polys)
    for p in polys:
        require_symmetric(p)
    d = _max_degree(polys)
    bound = max(2, d)
    notes: tuple[str, ...] = ()
    if bound_override is not None:
        notes = (f"bound overridden: {bound} -> {bound_override}",)
        bound = bound_override
    cells = partitions(n, bound)
    return ReductionPlan(
        theorem_tag="degree_principle",
        bound=bound,
        orthant_restricted=False,
        nvars=n,
        cells=cells,
        instances=_build_instances(cells, constraints, orthant=False),
        source=constraints,
        notes=notes,
    )


HALF_DEGREE_MODES = ("nonneg_global", "nonneg_orthant", "variety")


def plan_half_degree(
    f: Poly,
    mode: str,
    *,
    bound_override: Optional[int] = None,
) -> ReductionPlan:
    """Half-degree test sets for one symmetric polynomial.

    nonneg_global: f >= 0 everywhere iff f >= 0 on A_k, k = max(2, floor(d/2)).
    nonneg_orthant: f >= 0 on the nonnegative orthant iff on A_k^+,
        k = max(1, floor(d/2)); cells carry the orthant restriction.
    variety: {f = 0} is nonempty iff it meets A_k with the same
        k = max(2, floor(d/2)); the looser bound max(2, d) is recorded in the
        notes for reference.
    """
    if mode not in HALF_DEGREE_MODES:
        raise ValueError(f"mode must be one of {HALF_DEGREE_MODES}, got {mode!r}")
    require_symmetric(f)
    n = f.nvars
    d = _max_degree([f])
    notes: list[str] = []
    if mode == "nonneg_orthant":
        bound = max(1, d // 2)
    else:
        bound = max(2, d // 2)
        if mode == "variety":
            notes.append(
                f"variety bound max(2, floor(d/2)) = {bound}; the looser "
                f"max(2, d) = {max(2, d)} is also valid"
            )
    if bound_override is not None:
        notes.append(f"bound overridden: {bound} -> {bound_override}")
        bound = bound_override
    orthant = mode == "nonneg_orthant"
    cells = orthant_cells(n, bound) if orthant else partitions(n, bound)
    relation = Relation.EQ if mode == "variety" else None
    constraints = ((f, relation),)
    return ReductionPlan(
        theorem_tag="half_degree",
        bound=bound,
        orthant_restricted=orthant,
        nvars=n,
        cells=cells,
        instances=_build_instances(cells, constraints, orthant=orthant),
        source=constraints,
        notes=tuple(notes),
    )


def plan_jsparse(
    system: Iterable[tuple[Poly, Relation | str]],
    J: SparsitySupport | Sequence[int],
    *,
    bound_override: Optional[int] = None,
) -> ReductionPlan:
    """Sparse test sets driven by the power-sum support J of the system.

    All indices even: every feasible system meets an orthant cell with at
    most |J| distinct positive values.  Otherwise: it meets A_l with
    l = min(max J, 2|J| + 1).
    """
    constraints = _coerce_system(system)
    if not constraints:
        raise ValueError("empty system: nothing to reduce")
    polys = [p for p, _ in constraints]
    n = _common_nvars(polys)
    if isinstance(J, SparsitySupport):
        if J.nvars != n:
            raise ValueError(f"support is for n={J.nvars}, system has n={n}")
        indices = J.indices
    else:
        indices = tuple(sorted(set(J)))
    if not indices:
        raise ValueError("J must contain at least one index")
    declared = SparsitySupport(n, indices)
    for pos, p in enumerate(polys):
        actual = support(p)
        if not actual.issubset(declared):
            extra = sorted(set(actual.indices) - set(declared.indices))
            raise ValueError(
                f"constraint {pos + 1} uses power sums {extra} outside J={list(indices)}"
            )
    d = len(indices)
    all_even = all(j % 2 == 0 for j in indices)
    notes: list[str] = []
    if all_even:
        tag = "jsparse_even"
        bound = d
        orthant = True
    else:
        tag = "jsparse_odd"
        bound = min(max(indices), 2 * d + 1)
        orthant = False
    if bound_override is not None:
        notes.append(f"bound overridden: {bound} -> {bound_override}")
        bound = bound_override
    cells = orthant_cells(n, bound) if orthant else partitions(n, bound)
    return ReductionPlan(
        theorem_tag=tag,
        bound=bound,
        orthant_restricted=orthant,
        nvars=n,
        cells=cells,
        instances=_build_instances(cells, constraints, orthant=orthant),
        source=constraints,
        notes=tuple(notes),
    )


@dataclass(frozen=True)
class PointProfile:
    """Distinct-value counts of a point, with float coalescing."""

    distinct_count: int
    distinct_positive_count: int
    tolerance: float = 0.0


def point_profile(point: Sequence, tolerance: float = 0.0) -> PointProfile:
    """Count distinct and distinct-positive coordinates.

    Exact inputs with zero tolerance use exact comparison.  Otherwise the
    sorted coordinates are coalesced single-linkage style: a gap above the
    tolerance starts a new group.  A group counts as positive when its
    smallest member exceeds the tolerance.
    """
    if tolerance < 0:
        raise ValueError("tolerance must be nonnegative")
    if len(point) == 0:
        return PointProfile(0, 0, tolerance)
    exact = tolerance == 0 and all(isinstance(v, (int, Fraction)) for v in point)
    if exact:
        values = set(point)
        return PointProfile(
            distinct_count=len(values),
            distinct_positive_count=sum(1 for v in values if v > 0),
            tolerance=0.0,
        )
    coords = sorted(float(v) for v in point)
    groups = [[coords[0]]]
    for v in coords[1:]:
        if v - groups[-1][-1] <= tolerance:
            groups[-1].append(v)
        else:
            groups.append([v])
    positive = sum(1 for grp in groups if grp[0] > tolerance)
    return PointProfile(
        distinct_count=len(groups),
        distinct_positive_count=positive,
        tolerance=tolerance,
    )
