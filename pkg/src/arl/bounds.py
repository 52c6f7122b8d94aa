"""Numeric calculus for density-bound profiles f and companion functions g.

All logarithms are natural.  This matters: the side condition
sum_i 1/g(2^-i) <= 1/4 pins the minimal admissible k, and that constant
changes with the log base.

Profiles are hypotheses about the extremal matching density, never facts:
the functions here evaluate and check configured curves, they do not
assert anything asymptotic.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Sequence

from .errors import EvaluationDomainError, ParameterRangeError

DEFAULT_ALPHA = 2.0 ** -8
MONOTONE_RELATIVE_TOLERANCE = 1e-12
SERIES_CEILING = 0.25


@dataclass(frozen=True)
class DensityBoundProfile:
    """Hypothesized upper bound f(M) on matching density in Z/MZ.

    Forms: exponential-sqrt decay exp(-c sqrt(ln M)), polylogarithmic decay
    (ln M)^(-2-gamma), or a table interpolated log-linearly.
    """

    form: str                      # "behrend" | "poly_log" | "tabulated"
    c: Optional[float] = None
    gamma: Optional[float] = None
    table: Optional[tuple] = None  # ((M, f(M)), ...) sorted by M
    alpha: float = DEFAULT_ALPHA

    def __post_init__(self):
        if self.form == "behrend":
            if self.c is None or self.c <= 0:
                raise ParameterRangeError("behrend profile needs c > 0", c=self.c)
        elif self.form == "poly_log":
            if self.gamma is None or self.gamma <= 0:
                raise ParameterRangeError("poly_log profile needs gamma > 0",
                                          gamma=self.gamma)
        elif self.form == "tabulated":
            if not self.table or len(self.table) < 2:
                raise ParameterRangeError("tabulated profile needs >= 2 points")
            object.__setattr__(self, "table",
                               tuple(sorted((float(m), float(v)) for m, v in self.table)))
        else:
            raise ParameterRangeError(f"unknown profile form {self.form!r}")
        if not (0 < self.alpha < 1):
            raise ParameterRangeError("alpha must lie in (0, 1)", alpha=self.alpha)

    @classmethod
    def behrend(cls, c: float = 1.0, alpha: float = DEFAULT_ALPHA):
        return cls("behrend", c=c, alpha=alpha)

    @classmethod
    def poly_log(cls, gamma: float, alpha: float = DEFAULT_ALPHA):
        return cls("poly_log", gamma=gamma, alpha=alpha)

    @classmethod
    def tabulated(cls, points, alpha: float = DEFAULT_ALPHA):
        return cls("tabulated", table=tuple(points), alpha=alpha)

    def value(self, m: float) -> float:
        if self.form == "behrend":
            if m < 1:
                raise EvaluationDomainError(f"behrend profile needs M >= 1, got {m}", m=m)
            return math.exp(-self.c * math.sqrt(math.log(m)))
        if self.form == "poly_log":
            if m <= 1:
                raise EvaluationDomainError(f"poly_log profile needs M > 1, got {m}", m=m)
            return math.log(m) ** (-2 - self.gamma)
        points = self.table
        if m <= points[0][0]:
            return points[0][1]
        if m >= points[-1][0]:
            return points[-1][1]
        for (m0, v0), (m1, v1) in zip(points, points[1:]):
            if m0 <= m <= m1:
                w = (math.log(m) - math.log(m0)) / (math.log(m1) - math.log(m0))
                return math.exp((1 - w) * math.log(v0) + w * math.log(v1))
        raise EvaluationDomainError(f"tabulated lookup failed for {m}", m=m)

    def shape_report(self, m_grid: Sequence[float]) -> dict:
        """Is f decreasing and M*f(M) increasing on the grid?  Reported, not
        assumed: these are the modeling conditions a usable profile obeys."""
        ms = sorted(m_grid)
        values = [self.value(m) for m in ms]
        decreasing = all(b <= a * (1 + MONOTONE_RELATIVE_TOLERANCE)
                         for a, b in zip(values, values[1:]))
        mass = [m * v for m, v in zip(ms, values)]
        increasing = all(b >= a * (1 - MONOTONE_RELATIVE_TOLERANCE)
                         for a, b in zip(mass, mass[1:]))
        return {"f_decreasing": decreasing, "mf_increasing": increasing}


@dataclass(frozen=True)
class CompanionFunction:
    """g(rho) = k * ln(1/rho)^exponent, increasing as rho decreases."""

    k: float
    exponent: float

    def __post_init__(self):
        if self.k <= 0:
            raise ParameterRangeError("companion needs k > 0", k=self.k)
        if self.exponent <= 0:
            raise ParameterRangeError("companion needs a positive exponent",
                                      exponent=self.exponent)

    @classmethod
    def sq_log(cls, k: float) -> "CompanionFunction":
        return cls(k, 2.0)

    @classmethod
    def pow_log(cls, k: float, gamma: float) -> "CompanionFunction":
        if gamma <= 0:
            raise ParameterRangeError("pow_log needs gamma > 0", gamma=gamma)
        return cls(k, 1.0 + gamma / 3.0)

    def value(self, rho: float) -> float:
        if not (0 < rho < 1):
            raise EvaluationDomainError(f"companion needs rho in (0, 1), got {rho}",
                                        rho=rho)
        return self.k * math.log(1 / rho) ** self.exponent


@dataclass(frozen=True)
class SeriesBound:
    total_bound: float     # rigorous upper bound on the infinite sum
    partial_sum: float
    tail_bound: float
    terms: int
    passes: bool
    divergent: bool = False

    def to_json_dict(self) -> dict:
        return {"total_bound": self.total_bound, "partial_sum": self.partial_sum,
                "tail_bound": self.tail_bound, "terms": self.terms,
                "passes": self.passes, "divergent": self.divergent}


def series_condition(g: CompanionFunction, tail_terms: int = 100_000) -> SeriesBound:
    """Rigorous upper bound on sum_{i>=1} 1/g(2^-i) against the 1/4 ceiling.

    Terms are (i ln 2)^(-e) / k, decreasing in i, so the tail beyond the
    partial sum is bounded by the integral from tail_terms to infinity.
    Exponent <= 1 diverges: structurally failing, since the whole approach
    needs the series to converge.
    """
    if tail_terms < 1:
        raise ParameterRangeError("need at least one term", tail_terms=tail_terms)
    e = g.exponent
    if e <= 1:
        return SeriesBound(math.inf, math.inf, math.inf, tail_terms, False, True)
    ln2 = math.log(2)
    partial = sum(1.0 / (g.k * (i * ln2) ** e) for i in range(1, tail_terms + 1))
    tail = (ln2 ** -e) * tail_terms ** (1 - e) / (g.k * (e - 1))
    total = partial + tail
    return SeriesBound(total, partial, tail, tail_terms, total <= SERIES_CEILING)


def minimal_series_k(exponent: float = 2.0, tail_terms: int = 100_000,
                     tolerance: float = 1e-9) -> float:
    """Smallest k for which the series condition passes, by bisection.

    The bound scales as 1/k, so feasibility is monotone in k.
    """
    if exponent <= 1:
        raise ParameterRangeError("series diverges for exponent <= 1",
                                  exponent=exponent)

    def passes(k: float) -> bool:
        return series_condition(CompanionFunction(k, exponent), tail_terms).passes

    lo, hi = 1e-9, 1.0
    while not passes(hi):
        hi *= 2
        if hi > 1e12:
            raise ParameterRangeError("no admissible k below 1e12")
    while hi - lo > tolerance:
        mid = (lo + hi) / 2
        if passes(mid):
            hi = mid
        else:
            lo = mid
    return hi


def joint_h(rho: float, f: DensityBoundProfile, g: CompanionFunction) -> float:
    """h(rho) = g(rho)^2 * f(1/(g(rho) rho)), the quantity whose monotone
    behavior transfers the profile bound through the chain."""
    g_val = g.value(rho)
    argument = 1.0 / (g_val * rho)
    return g_val * g_val * f.value(argument)


@dataclass(frozen=True)
class MonotoneReport:
    grid: tuple
    values: tuple
    passes: bool
    first_violation: Optional[tuple]  # (rho_larger, rho_smaller, h_larger, h_smaller)
    tolerance: float

    def to_json_dict(self) -> dict:
        return {"passes": self.passes, "tolerance": self.tolerance,
                "first_violation": list(self.first_violation) if self.first_violation else None,
                "grid": list(self.grid), "values": list(self.values)}


def monotone_condition(f: DensityBoundProfile, g: CompanionFunction,
                       grid: Sequence[float],
                       tolerance: float = MONOTONE_RELATIVE_TOLERANCE) -> MonotoneReport:
    """Is h nonincreasing as rho decreases along the grid?

    The grid must be sorted descending and lie below the profile's alpha
    threshold.  Tolerance is a pure float-noise guard; admissible profile
    pairs hold the condition with strict margins.
    """
    rhos = list(grid)
    if not rhos:
        raise ParameterRangeError("empty grid")
    if any(b >= a for a, b in zip(rhos, rhos[1:])):
        raise ParameterRangeError("grid must be sorted strictly descending")
    if rhos[0] >= f.alpha:
        raise ParameterRangeError(
            f"grid must lie below alpha = {f.alpha}", rho=rhos[0])
    values = [joint_h(rho, f, g) for rho in rhos]
    violation = None
    for (r0, h0), (r1, h1) in zip(zip(rhos, values), zip(rhos[1:], values[1:])):
        if h1 > h0 * (1 + tolerance):
            violation = (r0, r1, h0, h1)
            break
    return MonotoneReport(tuple(rhos), tuple(values), violation is None,
                          violation, tolerance)


def epsilon_bound(delta: float, f: DensityBoundProfile, g: CompanionFunction) -> float:
    """g(delta) * sqrt(f(1/(g(delta) delta))), implicit constant 1."""
    if not (0 < delta < f.alpha):
        raise ParameterRangeError(
            f"delta must lie in (0, alpha = {f.alpha}), got {delta}", delta=delta)
    g_val = g.value(delta)
    return g_val * math.sqrt(f.value(1.0 / (g_val * delta)))


def dyadic_grid(high_exponent: int, low_exponent: int) -> list:
    """[2^-high, ..., 2^-low] descending in rho (high < low exponents)."""
    if high_exponent >= low_exponent:
        raise ParameterRangeError("need high_exponent < low_exponent",
                                  high=high_exponent, low=low_exponent)
    return [2.0 ** -e for e in range(high_exponent, low_exponent + 1)]


def evaluate_grid(f: DensityBoundProfile, g: CompanionFunction,
                  grid: Sequence[float]) -> list:
    """Rows (rho, g, h, epsilon_bound) for reporting."""
    rows = []
    for rho in grid:
        rows.append({"rho": rho, "g": g.value(rho), "h": joint_h(rho, f, g),
                     "epsilon_bound": epsilon_bound(rho, f, g)})
    return rows


def behrend_lower_envelope(m_grid: Sequence[int]) -> list:
    """Best digit-sphere matching density achievable inside Z/MZ per grid M.

    Admissible (d, n): the induced matching needs modulus >= 2 * span.  The
    fitted per-row c solves density = exp(-c sqrt(ln M)).  Densities are
    reported against the profile shape, never asserted to match it.
    """
    from .matching import behrend_construction, minimal_admissible_modulus

    rows = []
    for m in m_grid:
        if m < 2:
            raise ParameterRangeError(f"grid moduli must be >= 2, got {m}")
        best = None
        d = 2
        while 2 * d <= 4 * m:
            n = 1
            while (2 * d) ** n <= 4 * m:
                pf = behrend_construction(d, n)
                if len(pf) > 0 and minimal_admissible_modulus(pf) <= m:
                    size = len(pf)
                    if best is None or size > best["size"]:
                        best = {"d": d, "digits": n, "size": size}
                n += 1
            d += 1
        if best is None:
            rows.append({"m": m, "d": None, "digits": None, "size": 0,
                         "density": 0.0, "fitted_c": None})
            continue
        density = best["size"] / m
        fitted_c = (math.log(m / best["size"]) / math.sqrt(math.log(m))
                    if m > 1 else None)
        rows.append({"m": m, "d": best["d"], "digits": best["digits"],
                     "size": best["size"], "density": density,
                     "fitted_c": fitted_c})
    return rows
