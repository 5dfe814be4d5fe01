"""Seeded numeric search over reduction plans, with brute-force oracles.

The search layer is the only place floating point appears.  Every routine is
deterministic for a fixed :class:`SearchConfig`: grids are fixed, random
starts come from generators seeded by (random_seed, purpose, cell index), and
cells are visited sequentially in plan order, so repeated runs produce
bit-identical reports.

A negative feasibility answer is heuristic, never a certificate; the one
exception is a constraint that is symbolically impossible (for example an
equality on a polynomial that provably stays positive because its power-sum
form has only even-index monomials with positive coefficients), which is
reported with ``proved_infeasible=True``.

Orthant-restricted cells substitute T_j = s_j^2 during the search so
positivity needs no clamping; the searched box [-R, R] in s covers
T in [0, R^2].  Witness zeros always come from the cell's zero block, never
from rounding.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Sequence

import numpy as np

from .polynomial import Poly
from .powersums import require_symmetric, to_power_sums
from .reduction import (
    Partition,
    PointProfile,
    ReductionPlan,
    Relation,
    point_profile,
    substitute,
)


@dataclass(frozen=True)
class SearchConfig:
    """Budget and determinism knobs shared by all searches."""

    box_radius: float = 2.0
    grid_points_per_axis: int = 33
    multistart_count: int = 64
    descent_max_iters: int = 200
    feasibility_tolerance: float = 1e-8
    random_seed: int = 0
    #: sample budget for the full-space oracles when the grid would blow up
    oracle_sample_count: int = 100_000
    #: cap on total grid points per cell; the per-axis count shrinks to fit
    grid_point_budget: int = 40_000

    def __post_init__(self):
        if self.box_radius <= 0:
            raise ValueError("box_radius must be positive")
        if self.grid_points_per_axis < 2:
            raise ValueError("grid_points_per_axis must be at least 2")
        if self.multistart_count < 1:
            raise ValueError("multistart_count must be positive")
        if self.feasibility_tolerance <= 0:
            raise ValueError("feasibility_tolerance must be positive")


@dataclass(frozen=True)
class SearchReport:
    """Outcome of one search over a reduction plan."""

    verdict: str
    witness: Optional[tuple[float, ...]]
    witness_cell: Optional[Partition]
    value: Optional[float]
    cells_examined: int
    profile: Optional[PointProfile]
    proved_infeasible: bool = False
    note: str = ""


VERDICT_WITNESS = "feasible_witness_found"
VERDICT_NO_WITNESS = "no_witness_found"
VERDICT_MIN = "min_estimate"

_HEURISTIC_NOTE = (
    "no witness found within the search budget; heuristic evidence only, "
    "not a certificate of emptiness"
)


# -- float compilation -------------------------------------------------------


class _CompiledPoly:
    """Term-major numpy evaluator for one polynomial."""

    def __init__(self, poly: Poly):
        self.nvars = poly.nvars
        terms = list(poly.terms())
        self.coeffs = np.array([float(c) for _, c in terms], dtype=float)
        if terms:
            self.exps = np.array([e for e, _ in terms], dtype=np.int64)
        else:
            self.exps = np.zeros((0, poly.nvars), dtype=np.int64)

    def values(self, pts: np.ndarray) -> np.ndarray:
        pts = np.asarray(pts, dtype=float)
        if pts.ndim == 1:
            pts = pts.reshape(1, -1)
        count = pts.shape[0]
        out = np.zeros(count)
        if self.coeffs.size == 0:
            return out
        # power tables per variable, built once per batch
        tables = []
        for var in range(self.nvars):
            top = int(self.exps[:, var].max(initial=0))
            col = pts[:, var]
            table = [np.ones(count)]
            for _ in range(top):
                table.append(table[-1] * col)
            tables.append(table)
        for t in range(self.coeffs.size):
            prod = None
            for var in range(self.nvars):
                e = int(self.exps[t, var])
                if e:
                    factor = tables[var][e]
                    prod = factor if prod is None else prod * factor
            if prod is None:
                out += self.coeffs[t]
            else:
                out += self.coeffs[t] * prod
        return out


class _CompiledGradient:
    def __init__(self, poly: Poly):
        self.nvars = poly.nvars
        self.partials = [_CompiledPoly(poly.partial(i)) for i in range(1, poly.nvars + 1)]

    def values(self, pts: np.ndarray) -> np.ndarray:
        pts = np.asarray(pts, dtype=float)
        if pts.ndim == 1:
            pts = pts.reshape(1, -1)
        if self.nvars == 0:
            return np.zeros((pts.shape[0], 0))
        return np.stack([p.values(pts) for p in self.partials], axis=1)


def _double_exponents(poly: Poly) -> Poly:
    """f(T) -> f(s^2), realized exactly by doubling every exponent."""
    return Poly(poly.nvars, {tuple(2 * e for e in exps): c for exps, c in poly.terms()})


# -- deterministic candidate generation --------------------------------------


def _rng(cfg: SearchConfig, *salt: int) -> np.random.Generator:
    entropy = [cfg.random_seed % (2**32)] + [s % (2**32) for s in salt]
    return np.random.default_rng(entropy)


def _axis_count(k: int, cfg: SearchConfig) -> int:
    m = cfg.grid_points_per_axis
    if m**k > cfg.grid_point_budget:
        m = max(3, int(cfg.grid_point_budget ** (1.0 / k)))
        if m % 2 == 0:
            m -= 1
    return m


def _grid_points(k: int, cfg: SearchConfig) -> np.ndarray:
    m = _axis_count(k, cfg)
    axis = np.linspace(-cfg.box_radius, cfg.box_radius, m)
    mesh = np.meshgrid(*([axis] * k), indexing="ij")
    return np.stack([g.ravel() for g in mesh], axis=1)


def _candidate_points(k: int, cfg: SearchConfig, *salt: int) -> np.ndarray:
    grid = _grid_points(k, cfg)
    extras = _rng(cfg, *salt).uniform(
        -cfg.box_radius, cfg.box_radius, (max(1, cfg.multistart_count // 4), k)
    )
    return np.vstack([grid, extras])


# -- batched damped descent ---------------------------------------------------


def _descend_batch(value_fn, grad_fn, starts: np.ndarray, radius: float, max_iters: int):
    """Damped gradient descent with per-start backtracking.

    Each start keeps its own step scale: a step is taken only when it
    improves the value (backtracking by halving otherwise) and the scale
    grows after success.  Iterates stay clipped to the box.
    """
    x = np.array(starts, dtype=float)
    f = value_fn(x)
    if x.shape[1] == 0 or max_iters <= 0:
        return x, f
    alpha = np.full(x.shape[0], 0.25)
    for _ in range(max_iters):
        g = grad_fn(x)
        trial = np.clip(x - alpha[:, None] * g, -radius, radius)
        f_trial = value_fn(trial)
        better = f_trial < f - 1e-15 * (1.0 + np.abs(f))
        x = np.where(better[:, None], trial, x)
        f = np.where(better, f_trial, f)
        alpha = np.where(better, alpha * 1.4, alpha * 0.5)
        if np.all(alpha < 1e-13):
            break
    return x, f


_POLISH_ROUNDS = 600


def _compass_polish(value_fn, point: np.ndarray, radius: float):
    """Axis-step polish of a single point, deterministic, box-clipped.

    Gradient steps crawl on ill-conditioned basins; a coordinate pattern
    with a halving scale recovers the last digits cheaply.
    """
    x = np.array(point, dtype=float)
    f = float(value_fn(x[None, :])[0])
    k = x.shape[0]
    if k == 0:
        return x, f
    directions = np.vstack([np.eye(k), -np.eye(k)])
    step = 0.1 * radius
    for _ in range(_POLISH_ROUNDS):
        trials = np.clip(x[None, :] + step * directions, -radius, radius)
        values = value_fn(trials)
        i = int(np.argmin(values))
        if values[i] < f:
            x = trials[i]
            f = float(values[i])
        else:
            step *= 0.5
            if step < 1e-12 * radius:
                break
    return x, f


# -- penalties for constraint systems -----------------------------------------


def _penalty_values(residuals: np.ndarray, relation: Relation, tol: float) -> np.ndarray:
    if relation is Relation.EQ:
        return residuals**2
    if relation is Relation.GE:
        return np.minimum(residuals, 0.0) ** 2
    if relation is Relation.GT:
        return np.minimum(residuals - 2.0 * tol, 0.0) ** 2
    return np.maximum(2.0 * tol - np.abs(residuals), 0.0) ** 2


def _penalty_weights(residuals: np.ndarray, relation: Relation, tol: float) -> np.ndarray:
    if relation is Relation.EQ:
        return 2.0 * residuals
    if relation is Relation.GE:
        return 2.0 * np.minimum(residuals, 0.0)
    if relation is Relation.GT:
        return 2.0 * np.minimum(residuals - 2.0 * tol, 0.0)
    hinge = np.maximum(2.0 * tol - np.abs(residuals), 0.0)
    return -2.0 * hinge * np.sign(residuals)


def _residual_satisfied(residuals: np.ndarray, relation: Relation, tol: float) -> np.ndarray:
    if relation is Relation.EQ:
        return np.abs(residuals) <= tol
    if relation is Relation.GE:
        return residuals >= -tol
    if relation is Relation.GT:
        return residuals > tol
    return np.abs(residuals) > tol


class _PenaltyProblem:
    def __init__(self, constraints: Sequence[tuple[Poly, Relation]], tol: float):
        self.tol = tol
        self.items = [
            (_CompiledPoly(p), _CompiledGradient(p), rel) for p, rel in constraints
        ]

    def values(self, pts: np.ndarray) -> np.ndarray:
        pts = np.atleast_2d(np.asarray(pts, dtype=float))
        total = np.zeros(pts.shape[0])
        for comp, _, rel in self.items:
            total += _penalty_values(comp.values(pts), rel, self.tol)
        return total

    def grads(self, pts: np.ndarray) -> np.ndarray:
        pts = np.atleast_2d(np.asarray(pts, dtype=float))
        total = np.zeros_like(pts)
        for comp, grad, rel in self.items:
            w = _penalty_weights(comp.values(pts), rel, self.tol)
            total += w[:, None] * grad.values(pts)
        return total

    def satisfied(self, pts: np.ndarray) -> np.ndarray:
        pts = np.atleast_2d(np.asarray(pts, dtype=float))
        mask = np.ones(pts.shape[0], dtype=bool)
        for comp, _, rel in self.items:
            mask &= _residual_satisfied(comp.values(pts), rel, self.tol)
        return mask


# -- symbolic impossibility ----------------------------------------------------


def provable_bounds(f: Poly) -> tuple[Optional[Fraction], Optional[Fraction]]:
    """(lower, upper) bounds valid on all of R^n, when visible symbolically.

    A monomial of the power-sum form evaluates to a nonnegative number
    whenever every odd-index power sum in it carries an even exponent.  If
    every non-constant monomial is of that shape and all their coefficients
    share a sign, the constant term bounds f from one side.
    """
    rep = to_power_sums(f)
    const = rep.g.coefficient((0,) * f.nvars)
    lower_ok = True
    upper_ok = True
    for exps, coeff in rep.g.terms():
        if not any(exps):
            continue
        nonneg_monomial = all(
            e % 2 == 0 for i, e in enumerate(exps) if (i + 1) % 2 == 1 and e
        )
        if not nonneg_monomial:
            return None, None
        if coeff > 0:
            upper_ok = False
        else:
            lower_ok = False
    return (const if lower_ok else None, const if upper_ok else None)


def _impossibility_reason(poly: Poly, relation: Relation) -> Optional[str]:
    if relation is Relation.NE:
        if poly.is_zero:
            return "the zero polynomial can never be nonzero"
        return None
    lower, upper = provable_bounds(poly)
    if relation is Relation.EQ:
        if lower is not None and lower > 0:
            return f"the polynomial is at least {lower} everywhere, never 0"
        if upper is not None and upper < 0:
            return f"the polynomial is at most {upper} everywhere, never 0"
    elif relation is Relation.GE:
        if upper is not None and upper < 0:
            return f"the polynomial is at most {upper} everywhere, never >= 0"
    elif relation is Relation.GT:
        if upper is not None and upper <= 0:
            return f"the polynomial is at most {upper} everywhere, never > 0"
    return None


# -- witness helpers ------------------------------------------------------------


def _expand_witness(cell: Partition, values: np.ndarray) -> tuple[float, ...]:
    expanded = cell.expand(tuple(float(v) for v in values))
    return tuple(float(v) for v in expanded)


def verify_witness(
    constraints: Iterable[tuple[Poly, Optional[Relation]]],
    point: Sequence[float],
    tol: float,
) -> tuple[bool, tuple[float, ...]]:
    """Exact re-evaluation of the original constraints at a float witness.

    Floats convert to Fractions without rounding, so the residuals are exact;
    the comparison allows 10x the feasibility tolerance.
    """
    exact_point = [Fraction(float(v)) for v in point]
    residuals = []
    ok = True
    slack = 10.0 * tol
    for poly, rel in constraints:
        r = float(poly.eval(exact_point))
        residuals.append(r)
        if rel is None:
            continue
        if not bool(_residual_satisfied(np.array([r]), rel, slack)[0]):
            ok = False
    return ok, tuple(residuals)


# -- public searches -------------------------------------------------------------


_SALT_MIN = 11
_SALT_FEAS = 23
_SALT_ORACLE_MIN = 101
_SALT_ORACLE_FEAS = 102


def minimize_reduced(
    plan: ReductionPlan, objective: Poly, cfg: SearchConfig = SearchConfig()
) -> SearchReport:
    """Estimate the minimum of ``objective`` over the plan's test set.

    Every cell is scanned on a grid, then the best points seed a damped
    descent.  The returned witness is the expanded n-coordinate point of the
    best cell; ties keep the earliest cell in plan order.
    """
    if objective.nvars != plan.nvars:
        raise ValueError(
            f"objective has {objective.nvars} variables, plan is for {plan.nvars}"
        )
    require_symmetric(objective)
    best_value = None
    best_cell = None
    best_t: tuple[float, ...] = ()
    for cell_index, cell in enumerate(plan.cells):
        reduced = substitute(objective, cell).reduced
        search_poly = _double_exponents(reduced) if plan.orthant_restricted else reduced
        k = cell.effective_length
        if k == 0:
            value = float(search_poly.eval(()))
            t_values: tuple[float, ...] = ()
        else:
            comp = _CompiledPoly(search_poly)
            grad = _CompiledGradient(search_poly)
            candidates = _candidate_points(k, cfg, _SALT_MIN, cell_index)
            cand_values = comp.values(candidates)
            order = np.argsort(cand_values, kind="stable")
            starts = candidates[order[: cfg.multistart_count]]
            ended, end_values = _descend_batch(
                comp.values, grad.values, starts, cfg.box_radius, cfg.descent_max_iters
            )
            i_cand = int(np.argmin(cand_values))
            i_desc = int(np.argmin(end_values))
            if end_values[i_desc] <= cand_values[i_cand]:
                chosen = ended[i_desc]
            else:
                chosen = candidates[i_cand]
            chosen, value = _compass_polish(comp.values, chosen, cfg.box_radius)
            if plan.orthant_restricted:
                chosen = chosen**2
            t_values = tuple(float(v) for v in chosen)
        if best_value is None or value < best_value:
            best_value = value
            best_cell = cell
            best_t = t_values
    witness = _expand_witness(best_cell, np.array(best_t, dtype=float))
    profile = point_profile(witness, cfg.feasibility_tolerance)
    return SearchReport(
        verdict=VERDICT_MIN,
        witness=witness,
        witness_cell=best_cell,
        value=best_value,
        cells_examined=len(plan.cells),
        profile=profile,
    )


def check_feasible(plan: ReductionPlan, cfg: SearchConfig = SearchConfig()) -> SearchReport:
    """Search the plan's cells for a point satisfying all reduced relations.

    Cells are tried in plan order and the first witness wins.  The penalty
    is the sum of squared equality residuals plus hinge terms for the
    inequalities; acceptance re-checks every relation at the candidate.
    """
    for inst in plan.instances:
        if inst.relation is None:
            raise ValueError("feasibility needs relations on every plan instance")
    for idx, (poly, rel) in enumerate(plan.source):
        if rel is None:
            continue
        reason = _impossibility_reason(poly, rel)
        if reason is not None:
            return SearchReport(
                verdict=VERDICT_NO_WITNESS,
                witness=None,
                witness_cell=None,
                value=None,
                cells_examined=0,
                profile=None,
                proved_infeasible=True,
                note=f"constraint {idx + 1} can never hold: {reason}",
            )
    tol = cfg.feasibility_tolerance
    cells_examined = 0
    for cell_index, cell in enumerate(plan.cells):
        cells_examined += 1
        instances = plan.instances_for(cell)
        constraints = []
        for inst in instances:
            poly = (
                _double_exponents(inst.reduced)
                if plan.orthant_restricted
                else inst.reduced
            )
            constraints.append((poly, inst.relation))
        k = cell.effective_length
        if k == 0:
            values = np.array(
                [float(p.eval(())) for p, _ in constraints], dtype=float
            )
            fine = all(
                bool(_residual_satisfied(np.array([v]), rel, tol)[0])
                for v, (_, rel) in zip(values, constraints)
            )
            if not fine:
                continue
            chosen = np.zeros(0)
        else:
            problem = _PenaltyProblem(constraints, tol)
            candidates = _candidate_points(k, cfg, _SALT_FEAS, cell_index)
            penalties = problem.values(candidates)
            order = np.argsort(penalties, kind="stable")
            direct = problem.satisfied(candidates)
            chosen = None
            for idx in order:
                if direct[idx]:
                    chosen = candidates[idx]
                    break
            if chosen is None:
                starts = candidates[order[: cfg.multistart_count]]
                ended, _ = _descend_batch(
                    problem.values,
                    problem.grads,
                    starts,
                    cfg.box_radius,
                    cfg.descent_max_iters,
                )
                landed = problem.satisfied(ended)
                for row in range(ended.shape[0]):
                    if landed[row]:
                        chosen = ended[row]
                        break
            if chosen is None:
                continue
        t_values = chosen**2 if plan.orthant_restricted else chosen
        witness = _expand_witness(cell, np.asarray(t_values, dtype=float))
        verified, _ = verify_witness(plan.source, witness, tol)
        note = "" if verified else "witness exceeded 10x tolerance on exact recheck"
        profile = point_profile(witness, tol)
        return SearchReport(
            verdict=VERDICT_WITNESS,
            witness=witness,
            witness_cell=cell,
            value=None,
            cells_examined=cells_examined,
            profile=profile,
            note=note,
        )
    return SearchReport(
        verdict=VERDICT_NO_WITNESS,
        witness=None,
        witness_cell=None,
        value=None,
        cells_examined=cells_examined,
        profile=None,
        note=_HEURISTIC_NOTE,
    )


def _full_space_candidates(n: int, cfg: SearchConfig, salt: int) -> np.ndarray:
    if n <= 3:
        return _grid_points(n, cfg)
    rng = _rng(cfg, salt)
    return rng.uniform(-cfg.box_radius, cfg.box_radius, (cfg.oracle_sample_count, n))


def oracle_min(f: Poly, cfg: SearchConfig = SearchConfig()) -> float:
    """Brute-force minimum estimate over the full box, no reduction.

    Full grid for n <= 3, seeded uniform samples otherwise, then descent
    from the best starts.  Only an upper bound on the true minimum.
    """
    n = f.nvars
    comp = _CompiledPoly(f)
    grad = _CompiledGradient(f)
    candidates = _full_space_candidates(n, cfg, _SALT_ORACLE_MIN)
    values = comp.values(candidates)
    order = np.argsort(values, kind="stable")
    starts = candidates[order[: cfg.multistart_count]]
    ended, end_values = _descend_batch(
        comp.values, grad.values, starts, cfg.box_radius, cfg.descent_max_iters
    )
    i_desc = int(np.argmin(end_values))
    i_cand = int(np.argmin(values))
    if end_values[i_desc] <= values[i_cand]:
        best = ended[i_desc]
    else:
        best = candidates[i_cand]
    _, polished = _compass_polish(comp.values, best, cfg.box_radius)
    return float(min(values.min(), end_values.min(), polished))


def oracle_feasible(
    system: Iterable[tuple[Poly, Relation | str]],
    cfg: SearchConfig = SearchConfig(),
) -> Optional[tuple[float, ...]]:
    """Brute-force feasibility search over the full box, no reduction."""
    constraints = []
    for poly, rel in system:
        if isinstance(rel, str):
            rel = Relation.from_text(rel)
        constraints.append((poly, rel))
    if not constraints:
        raise ValueError("empty system: nothing to check")
    n = constraints[0][0].nvars
    for poly, _ in constraints:
        if poly.nvars != n:
            raise ValueError("all polynomials in a system must share one variable count")
    tol = cfg.feasibility_tolerance
    problem = _PenaltyProblem(constraints, tol)
    candidates = _full_space_candidates(n, cfg, _SALT_ORACLE_FEAS)
    penalties = problem.values(candidates)
    order = np.argsort(penalties, kind="stable")
    direct = problem.satisfied(candidates)
    for idx in order:
        if direct[idx]:
            return tuple(float(v) for v in candidates[idx])
    starts = candidates[order[: cfg.multistart_count]]
    ended, _ = _descend_batch(
        problem.values, problem.grads, starts, cfg.box_radius, cfg.descent_max_iters
    )
    landed = problem.satisfied(ended)
    for row in range(ended.shape[0]):
        if landed[row]:
            return tuple(float(v) for v in ended[row])
    return None
