"""Optimal matchings between diagrams under the augmented assignment model.

Every distance query is phrased on a square (n_x + n_y) assignment problem:
left slots are the points of X followed by one diagonal copy per point of Y,
right slots are the points of Y followed by one diagonal copy per point of X.
A real pair costs the l^q norm of the coordinate difference, a real point
paired with a diagonal copy costs its perpendicular distance to the diagonal,
and two diagonal copies pair for free.

For finite p the solver minimizes the sum of p-th powers (a Hungarian-style
O(n^3) method); for p = inf it minimizes the largest selected entry by
binary-searching the sorted entry values with an augmenting-path perfect
matching feasibility check, so the reported bottleneck value is always an
exact matrix entry.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from scipy.optimize import linear_sum_assignment

from .diagram import Diagram, MetricParams, _qnorm, diagonal_distance
from .errors import SizeGuardError, StructuralError, WrongSolverError

#: Largest augmented problem size the factorial (enumeration) paths accept.
FACTORIAL_GUARD = 9


@dataclass(frozen=True)
class Matching:
    """A bijection between augmented slots together with its cost breakdown.

    ``assignment[i] = j`` pairs left slot i with right slot j.  For finite p
    the pair costs are the p-th powers of the ground costs and the total is
    (sum pair_costs)^(1/p); for p = inf the pair costs are the ground costs
    themselves and the total is their maximum.
    """

    assignment: tuple[int, ...]
    pair_costs: tuple[float, ...]
    total: float

    def pairs(self) -> list[tuple[int, int]]:
        return [(i, j) for i, j in enumerate(self.assignment)]

    def inverse(self) -> "Matching":
        """The same matching viewed from the other diagram's side."""
        n = len(self.assignment)
        inv = [0] * n
        costs = [0.0] * n
        for i, j in enumerate(self.assignment):
            inv[j] = i
            costs[j] = self.pair_costs[i]
        return Matching(tuple(inv), tuple(costs), self.total)


@dataclass(frozen=True, eq=False)
class AugmentedProblem:
    """The square cost model for one ordered pair of diagrams.

    ``ground`` holds raw l^q pair costs.  ``cost`` holds the solver objective:
    (ground / scale)^p for finite p (scale is the largest ground entry, which
    keeps powers bounded by one) and ground itself for p = inf.
    """

    x: Diagram
    y: Diagram
    params: MetricParams
    ground: np.ndarray
    cost: np.ndarray
    scale: float

    @property
    def n(self) -> int:
        return self.ground.shape[0]

    @property
    def n_left_real(self) -> int:
        return len(self.x)

    @property
    def n_right_real(self) -> int:
        return len(self.y)


def _slot_ground_cost(x: Diagram, y: Diagram, i: int, j: int, q: float) -> float:
    nx = len(x)
    ny = len(y)
    left_real = i < nx
    right_real = j < ny
    if left_real and right_real:
        a = x.points[i]
        b = y.points[j]
        return _qnorm(a.birth - b.birth, a.death - b.death, q)
    if left_real:
        return diagonal_distance(x.points[i], q)
    if right_real:
        return diagonal_distance(y.points[j], q)
    return 0.0


def build_augmented_problem(x: Diagram, y: Diagram, params: MetricParams) -> AugmentedProblem:
    n = len(x) + len(y)
    ground = np.zeros((n, n), dtype=float)
    for i in range(n):
        for j in range(n):
            ground[i, j] = _slot_ground_cost(x, y, i, j, params.q)
    if params.p == math.inf:
        return AugmentedProblem(x, y, params, ground, ground, 1.0)
    scale = float(ground.max()) if n else 0.0
    if scale == 0.0:
        scale = 1.0
    cost = (ground / scale) ** params.p
    return AugmentedProblem(x, y, params, ground, cost, scale)


def _check_assignment(x: Diagram, y: Diagram, assignment) -> None:
    n = len(x) + len(y)
    if len(assignment) != n:
        raise StructuralError(
            f"assignment covers {len(assignment)} slots but the diagrams define {n}"
        )
    if sorted(assignment) != list(range(n)):
        raise StructuralError("assignment is not a permutation of the right slots")


def _assignment_grounds(x: Diagram, y: Diagram, assignment, q: float) -> list[float]:
    _check_assignment(x, y, assignment)
    return [_slot_ground_cost(x, y, i, j, q) for i, j in enumerate(assignment)]


def _aggregate(grounds, p: float) -> float:
    if not grounds:
        return 0.0
    if p == math.inf:
        return max(grounds)
    if p == 1.0:
        return math.fsum(grounds)
    scale = max(grounds)
    if scale == 0.0:
        return 0.0
    return scale * math.fsum((g / scale) ** p for g in grounds) ** (1.0 / p)


def matching_cost(x: Diagram, y: Diagram, m: Matching, params: MetricParams) -> float:
    """Cost of a given matching, recomputed from the diagrams."""
    grounds = _assignment_grounds(x, y, m.assignment, params.q)
    return _aggregate(grounds, params.p)


def matching_from_assignment(x: Diagram, y: Diagram, assignment, params: MetricParams) -> Matching:
    """Materialize a Matching (with costs) from a bare slot permutation."""
    grounds = _assignment_grounds(x, y, assignment, params.q)
    total = _aggregate(grounds, params.p)
    if params.p == math.inf:
        pair_costs = tuple(grounds)
    else:
        pair_costs = tuple(g ** params.p for g in grounds)
    return Matching(tuple(int(j) for j in assignment), pair_costs, total)


def solve_assignment_sum(prob: AugmentedProblem) -> Matching:
    """Minimum-sum assignment for finite p."""
    if prob.params.p == math.inf:
        raise WrongSolverError("p = inf requires solve_assignment_bottleneck")
    if prob.n == 0:
        return Matching((), (), 0.0)
    _, cols = linear_sum_assignment(prob.cost)
    return matching_from_assignment(prob.x, prob.y, tuple(int(c) for c in cols), prob.params)


def _perfect_matching_under(ground: np.ndarray, tau: float):
    """Perfect matching using only entries <= tau, or None."""
    n = ground.shape[0]
    adj = [np.flatnonzero(ground[i] <= tau) for i in range(n)]
    match_right = [-1] * n

    def try_augment(i: int, visited: list[bool]) -> bool:
        for j in adj[i]:
            if not visited[j]:
                visited[j] = True
                if match_right[j] < 0 or try_augment(match_right[j], visited):
                    match_right[j] = i
                    return True
        return False

    for i in range(n):
        if not try_augment(i, [False] * n):
            return None
    assignment = [-1] * n
    for j, i in enumerate(match_right):
        assignment[i] = j
    return tuple(assignment)


def solve_assignment_bottleneck(prob: AugmentedProblem) -> Matching:
    """Minimum-bottleneck assignment for p = inf.

    Binary search over the sorted distinct ground entries; the optimum is the
    smallest entry value admitting a perfect matching, hence the returned
    total is exactly one of the matrix entries.
    """
    if prob.params.p != math.inf:
        raise WrongSolverError("finite p requires solve_assignment_sum")
    if prob.n == 0:
        return Matching((), (), 0.0)
    entries = np.unique(prob.ground)
    lo, hi = 0, len(entries) - 1
    while lo < hi:
        mid = (lo + hi) // 2
        if _perfect_matching_under(prob.ground, float(entries[mid])) is not None:
            hi = mid
        else:
            lo = mid + 1
    assignment = _perfect_matching_under(prob.ground, float(entries[lo]))
    return matching_from_assignment(prob.x, prob.y, assignment, prob.params)


def distance(x: Diagram, y: Diagram, params: MetricParams) -> tuple[float, Matching]:
    """Exact diagram distance and an optimal witness matching.

    The solve always runs on a canonical orientation of the pair, so the
    value is symmetric in its arguments down to the last bit.
    """
    if y.multiset_key() < x.multiset_key():
        value, witness = distance(y, x, params)
        return value, witness.inverse()
    prob = build_augmented_problem(x, y, params)
    if params.p == math.inf:
        m = solve_assignment_bottleneck(prob)
    else:
        m = solve_assignment_sum(prob)
    return m.total, m


@lru_cache(maxsize=None)
def _all_permutations(n: int) -> np.ndarray:
    if n == 0:
        return np.zeros((1, 0), dtype=np.int64)
    return np.array(list(itertools.permutations(range(n))), dtype=np.int64)


def _guard(n: int, what: str) -> None:
    if n > FACTORIAL_GUARD:
        raise SizeGuardError(
            f"{what} enumerates all {n}! slot permutations and accepts at most "
            f"{FACTORIAL_GUARD} combined points (got {n})"
        )


def brute_force_distance(x: Diagram, y: Diagram, params: MetricParams) -> float:
    """Ground-truth distance by exhausting every slot permutation."""
    n = len(x) + len(y)
    _guard(n, "brute_force_distance")
    if n == 0:
        return 0.0
    prob = build_augmented_problem(x, y, params)
    perms = _all_permutations(n)
    selected = prob.cost[np.arange(n)[None, :], perms]
    if params.p == math.inf:
        totals = selected.max(axis=1)
    else:
        totals = selected.sum(axis=1)
    best = perms[int(np.argmin(totals))]
    grounds = _assignment_grounds(x, y, tuple(int(j) for j in best), params.q)
    return _aggregate(grounds, params.p)


def enumerate_optimal_matchings(x: Diagram, y: Diagram, params: MetricParams) -> list[Matching]:
    """All optimal matchings up to params.tol, deduplicated by geometric action.

    Permutations that differ only in how interchangeable diagonal copies are
    shuffled among themselves describe the same geometric transport and are
    reported once.
    """
    nx = len(x)
    ny = len(y)
    n = nx + ny
    _guard(n, "enumerate_optimal_matchings")
    if n == 0:
        return [Matching((), (), 0.0)]
    prob = build_augmented_problem(x, y, params)
    perms = _all_permutations(n)
    selected = prob.cost[np.arange(n)[None, :], perms]
    if params.p == math.inf:
        values = selected.max(axis=1)
    else:
        values = prob.scale * selected.sum(axis=1) ** (1.0 / params.p)
    cutoff = float(values.min()) + params.tol
    out: list[Matching] = []
    seen: set[tuple[int, ...]] = set()
    for k in np.flatnonzero(values <= cutoff):
        perm = perms[k]
        action = tuple(int(perm[i]) if perm[i] < ny else -1 for i in range(nx))
        if action in seen:
            continue
        seen.add(action)
        out.append(matching_from_assignment(x, y, tuple(int(j) for j in perm), params))
    return out
