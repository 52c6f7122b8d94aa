"""Deletion numbers: exact minimum hitting sets of the triangle hypergraph,
the matching-to-removal converse check, and (delta, epsilon) experiments.

Deletions are typed by class: the same residue sitting in both X and Z is
two distinct deletable items.  Throughout, epsilon normalizes the deletion
number by N (not 3N).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Optional, Sequence

from .errors import ArlError, UnverifiedFamilyError
from .group import IndexedTripleFamily, TripleSystem
from .matching import verify_matching
from .triangles import (DEFAULT_ENUMERATION_CAP, count_triangles_convolution,
                        list_triangles)

CLASS_LABELS = ("x", "y", "z")


@dataclass(frozen=True)
class RemovalResult:
    """deletion_number is exact when `exact`, otherwise the best upper bound
    found before the budget ran out; lower_bound always comes from a maximal
    disjoint triangle family, so deletion_number <= 3 * lower_bound."""

    deletion_number: int
    deleted: tuple  # ((class_label, element), ...) sorted
    lower_bound: int
    exact: bool
    nodes: int = 0

    def to_json_dict(self) -> dict:
        return {"deletion_number": self.deletion_number,
                "deleted": [list(v) for v in self.deleted],
                "lower_bound": self.lower_bound,
                "exact": self.exact,
                "nodes": self.nodes}


class _Budget(Exception):
    pass


def _greedy_disjoint_size(mask: int, vertex_lists: Sequence) -> int:
    """Greedy disjoint subfamily of the remaining triangles, by index order."""
    used = set()
    size = 0
    while mask:
        low = mask & -mask
        idx = low.bit_length() - 1
        mask ^= low
        verts = vertex_lists[idx]
        if used.isdisjoint(verts):
            used.update(verts)
            size += 1
    return size


def min_deletion_exact(system: TripleSystem, budget: Optional[int] = 2_000_000,
                       cap: int = DEFAULT_ENUMERATION_CAP) -> RemovalResult:
    """Minimum number of typed element deletions destroying every triangle.

    Branch and bound: branch on the three vertices of the uncovered triangle
    with the smallest total remaining degree (fail-first), prune with a
    greedy disjoint family lower bound, seed the incumbent with a greedy
    cover.  Budget exhaustion degrades to (lower_bound, upper bound) with
    exact = False.
    """
    family = list_triangles(system, cap)
    m = len(family)
    if m == 0:
        return RemovalResult(0, (), 0, True, 0)
    vertex_lists = [((0, t[0]), (1, t[1]), (2, t[2])) for t in family]
    triangle_masks_of: dict = {}
    for idx, verts in enumerate(vertex_lists):
        for v in verts:
            triangle_masks_of[v] = triangle_masks_of.get(v, 0) | (1 << idx)
    full_mask = (1 << m) - 1

    def greedy_cover(mask: int) -> list:
        chosen = []
        while mask:
            best_v, best_gain = None, -1
            for v, vm in triangle_masks_of.items():
                gain = (vm & mask).bit_count()
                if gain > best_gain or (gain == best_gain and v < best_v):
                    best_v, best_gain = v, gain
            chosen.append(best_v)
            mask &= ~triangle_masks_of[best_v]
        return chosen

    def greedy_disjoint(mask: int) -> list:
        used: set = set()
        members = []
        while mask:
            low = mask & -mask
            idx = low.bit_length() - 1
            mask ^= low
            verts = vertex_lists[idx]
            if used.isdisjoint(verts):
                used.update(verts)
                members.append(idx)
        return members

    disjoint_root = greedy_disjoint(full_mask)
    root_lb = len(disjoint_root)
    # Deleting every coordinate of a maximal disjoint family is a cover, so
    # the incumbent never exceeds 3 * lower_bound even on budget exhaustion.
    fallback_cover = sorted({v for idx in disjoint_root for v in vertex_lists[idx]})
    incumbent = min(greedy_cover(full_mask), fallback_cover, key=len)
    best = {"size": len(incumbent), "set": sorted(incumbent)}
    nodes = 0

    def pick_triangle(mask: int) -> int:
        best_idx, best_score = -1, None
        scan = mask
        while scan:
            low = scan & -scan
            idx = low.bit_length() - 1
            scan ^= low
            score = sum((triangle_masks_of[v] & mask).bit_count()
                        for v in vertex_lists[idx])
            if best_score is None or score < best_score:
                best_idx, best_score = idx, score
        return best_idx

    def dfs(mask: int, deleted: list):
        nonlocal nodes
        nodes += 1
        if budget is not None and nodes > budget:
            raise _Budget
        if mask == 0:
            if len(deleted) < best["size"]:
                best["size"] = len(deleted)
                best["set"] = sorted(deleted)
            return
        if len(deleted) + _greedy_disjoint_size(mask, vertex_lists) >= best["size"]:
            return
        idx = pick_triangle(mask)
        for v in vertex_lists[idx]:
            deleted.append(v)
            dfs(mask & ~triangle_masks_of[v], deleted)
            deleted.pop()

    exact = True
    try:
        dfs(full_mask, [])
    except _Budget:
        exact = False
    deleted = tuple((CLASS_LABELS[c], val) for c, val in best["set"])
    return RemovalResult(best["size"], deleted, root_lb, exact, nodes)


@dataclass(frozen=True)
class ConverseReport:
    """A verified matching of size m, embedded as a system, yields exactly m
    triangles and deletion number exactly m."""

    size: int
    n: int
    triangle_count: int
    deletion_number: int
    theta: Fraction
    delta: Fraction
    epsilon: Fraction

    def to_json_dict(self) -> dict:
        return {"size": self.size, "n": self.n,
                "triangle_count": self.triangle_count,
                "deletion_number": self.deletion_number,
                "theta": str(self.theta), "delta": str(self.delta),
                "epsilon": str(self.epsilon)}


def remark_converse_check(family: IndexedTripleFamily) -> ConverseReport:
    certificate = verify_matching(family)
    if not certificate.verified:
        raise UnverifiedFamilyError(
            "family fails the matching check",
            violation=list(certificate.violation) if certificate.violation else None)
    system = family.as_system()
    count = count_triangles_convolution(system)
    size = len(family)
    if count != size:
        raise ArlError(f"embedded matching has {count} triangles, expected {size}")
    removal = min_deletion_exact(system, budget=None)
    if removal.deletion_number != size:
        raise ArlError(
            f"embedded matching has deletion number {removal.deletion_number},"
            f" expected {size}")
    n = family.n
    return ConverseReport(size, n, count, removal.deletion_number,
                          Fraction(size, n), Fraction(size, n * n), Fraction(size, n))


@dataclass(frozen=True)
class RegularityHypotheses:
    """Quantitative output conditions of the regularization step that this
    toolkit checks rather than reconstructs: a per-element degree window, a
    triangle-count floor and a class-size floor."""

    epsilon: Fraction
    delta_prime: Fraction
    degree_low: float
    degree_high: float
    count_floor: float
    size_floor: float

    def __post_init__(self):
        if self.degree_low > self.degree_high:
            raise ArlError("degree window is empty",
                           low=self.degree_low, high=self.degree_high)
        for name in ("degree_low", "degree_high", "count_floor", "size_floor"):
            if getattr(self, name) < 0:
                raise ArlError(f"{name} must be nonnegative")

    @classmethod
    def from_parameters(cls, epsilon, delta_prime, g_value: float,
                        n: int) -> "RegularityHypotheses":
        eps = Fraction(epsilon)
        dp = Fraction(delta_prime)
        return cls(eps, dp,
                   degree_low=float(dp / (6 * eps)) * n,
                   degree_high=float(g_value) * float(dp / eps) * n,
                   count_floor=float(dp / 2) * n * n,
                   size_floor=float(eps) * n / (2 * float(g_value)))


@dataclass(frozen=True)
class ConditionCheck:
    name: str
    observed: float
    required: str
    ok: bool


@dataclass(frozen=True)
class RegularityReport:
    passed: bool
    conditions: tuple
    chain: tuple = ()

    def to_json_dict(self) -> dict:
        return {"passed": self.passed,
                "conditions": [{"name": c.name, "observed": c.observed,
                                "required": c.required, "ok": c.ok}
                               for c in self.conditions],
                "chain": [{"label": lhs_label, "lhs": lhs, "rhs": rhs}
                          for lhs_label, lhs, rhs in self.chain]}


def check_regularity_hypotheses(system: TripleSystem, hyp: RegularityHypotheses,
                                f_value: Optional[Callable[[float], float]] = None,
                                g_value: Optional[Callable[[float], float]] = None,
                                delta=None) -> RegularityReport:
    """Does the system meet the degree window, the count floor and the size
    floor?  When profile callables are supplied, the report also instantiates
    the three-step inference chain ending in
    epsilon^2 <= g(delta)^2 f(1/(g(delta) delta)), implicit constants 1.
    """
    from .triangles import degree_profile  # local import to avoid cycle noise

    profile = degree_profile(system)
    bounds = profile.overall_bounds()
    observed_low = float(bounds[0]) if bounds else 0.0
    observed_high = float(bounds[1]) if bounds else 0.0
    conditions = [
        ConditionCheck("degree_window_low", observed_low, f">= {hyp.degree_low}",
                       bounds is not None and observed_low >= hyp.degree_low),
        ConditionCheck("degree_window_high", observed_high, f"<= {hyp.degree_high}",
                       observed_high <= hyp.degree_high),
    ]
    count = count_triangles_convolution(system)
    conditions.append(ConditionCheck("triangle_count", float(count),
                                     f">= {hyp.count_floor}", count >= hyp.count_floor))
    min_size = min(system.sizes())
    conditions.append(ConditionCheck("class_sizes", float(min_size),
                                     f">= {hyp.size_floor}", min_size >= hyp.size_floor))
    passed = all(c.ok for c in conditions)
    chain = ()
    if passed and f_value is not None and g_value is not None:
        eps = float(hyp.epsilon)
        dp = float(hyp.delta_prime)
        dl = float(delta) if delta is not None else dp
        g_dp = g_value(dp)
        g_dl = g_value(dl)
        chain = (
            ("size vs extraction bound", eps / (2 * g_dp),
             6 * g_dp * f_value(eps / (g_dp * dp))),
            ("epsilon vs rescaled bound", eps,
             g_dp ** 2 / eps * f_value(1 / (g_dp * dp))),
            ("epsilon^2 vs profile bound", eps ** 2,
             g_dl ** 2 * f_value(1 / (g_dl * dl))),
        )
    return RegularityReport(passed, tuple(conditions), chain)


@dataclass(frozen=True)
class ExperimentRow:
    n: int
    delta: Optional[Fraction]
    epsilon: Optional[Fraction]
    predicted_bound: Optional[float]
    exact: Optional[bool]
    status: str
    triangle_count: Optional[int] = None
    deletion_number: Optional[int] = None

    def to_json_dict(self) -> dict:
        return {"n": self.n,
                "delta": None if self.delta is None else float(self.delta),
                "epsilon": None if self.epsilon is None else float(self.epsilon),
                "predicted_bound": self.predicted_bound,
                "exact": self.exact, "status": self.status,
                "triangle_count": self.triangle_count,
                "deletion_number": self.deletion_number}


def epsilon_delta_experiment(make_instance: Callable[[int], TripleSystem],
                             sizes: Sequence[int],
                             bound_fn: Optional[Callable[[float], float]] = None,
                             budget: Optional[int] = 2_000_000,
                             cap: int = DEFAULT_ENUMERATION_CAP) -> list:
    """Measured (delta, epsilon) per generated instance, next to the
    predicted bound under a chosen profile.  Purely observational; failures
    mark the row instead of aborting the table."""
    rows = []
    for n in sizes:
        try:
            system = make_instance(n)
            count = count_triangles_convolution(system)
            result = min_deletion_exact(system, budget=budget, cap=cap)
            delta = Fraction(count, n * n)
            epsilon = Fraction(result.deletion_number, n)
            predicted = None
            status = "ok" if result.exact else "budget-exhausted"
            if bound_fn is not None and delta > 0:
                try:
                    predicted = bound_fn(float(delta))
                except ArlError as exc:
                    status = f"bound-error: {exc.message}"
            rows.append(ExperimentRow(n, delta, epsilon, predicted, result.exact,
                                      status, count, result.deletion_number))
        except ArlError as exc:
            rows.append(ExperimentRow(n, None, None, None, None,
                                      f"error: {exc.message}"))
    return rows
