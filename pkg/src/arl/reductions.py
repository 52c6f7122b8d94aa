"""Transfer maps between integer interval systems and cyclic groups.

Embedding direction: subsets of [-M/2, M/2] reduce mod a prime N in
[2M, 4M]; since |a + b + c| <= 3M/2 < N, zero sums and nonzero sums are
both preserved.  Lifting direction: residues lift to [0, N-1], where a
triangle's lifted sum is 0, N or 2N; shifting one or two classes by -N
turns the majority sum class into genuine integer triangles in [-N, N].
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Iterable, Optional

import numpy as np

from .errors import ArlError, ParameterRangeError, UnverifiedFamilyError
from .group import IndexedTripleFamily, Modulus, TripleSystem, primality


@dataclass(frozen=True)
class IntegerTripleSystem:
    """Three integer sets within [-bound/2, bound/2] (i.e. |2a| <= bound)."""

    bound: int
    a_set: frozenset
    b_set: frozenset
    c_set: frozenset

    def __post_init__(self):
        if self.bound < 1:
            raise ParameterRangeError(f"bound must be >= 1, got {self.bound}")
        for label, values in (("a", self.a_set), ("b", self.b_set), ("c", self.c_set)):
            cleaned = frozenset(int(v) for v in values)
            for v in cleaned:
                if abs(2 * v) > self.bound:
                    raise ParameterRangeError(
                        f"{label} element {v} outside [-{self.bound}/2, {self.bound}/2]",
                        element=v, bound=self.bound)
            object.__setattr__(self, f"{label}_set", cleaned)

    @classmethod
    def of(cls, bound: int, a: Iterable[int], b: Iterable[int], c: Iterable[int]):
        return cls(bound, frozenset(a), frozenset(b), frozenset(c))

    def to_json_dict(self) -> dict:
        return {"bound": self.bound, "a": sorted(self.a_set),
                "b": sorted(self.b_set), "c": sorted(self.c_set)}

    @classmethod
    def from_json_dict(cls, data: dict) -> "IntegerTripleSystem":
        return cls.of(int(data["bound"]), (int(v) for v in data["a"]),
                      (int(v) for v in data["b"]), (int(v) for v in data["c"]))

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict(), sort_keys=True)


def find_prime_in_range(m: int) -> int:
    """Smallest prime in [2m, 4m]; one exists for every m >= 1 by the
    Bertrand-type doubling of the interval."""
    if m < 1:
        raise ParameterRangeError(f"need m >= 1, got {m}")
    for candidate in range(2 * m, 4 * m + 1):
        if primality(candidate):
            return candidate
    raise ArlError(f"no prime in [{2 * m}, {4 * m}]")  # unreachable for m >= 1


def embed_interval(system: IntegerTripleSystem,
                   prime: Optional[int] = None) -> TripleSystem:
    """Reduce an interval system mod the smallest prime N in [2M, 4M].

    Triangle status both ways: a + b + c = 0 over the integers iff the
    reductions sum to 0 mod N, because |a + b + c| <= 3M/2 < 2M <= N.
    """
    n = find_prime_in_range(system.bound) if prime is None else prime
    if n < 2 * system.bound or n > 4 * system.bound or not primality(n):
        raise ParameterRangeError(
            f"prime {n} outside [2M, 4M] for M = {system.bound}", prime=n)
    return TripleSystem.of(n, system.a_set, system.b_set, system.c_set)


@dataclass(frozen=True)
class LiftResult:
    system: IntegerTripleSystem
    retained: tuple             # integer triples with sum 0
    chosen_sum_class: int       # N or 2N (N on ties)
    sum_class_counts: dict      # lifted sum -> count over the input family
    zero_triple_retained: bool

    def to_json_dict(self) -> dict:
        return {"system": self.system.to_json_dict(),
                "retained": [list(t) for t in self.retained],
                "chosen_sum_class": self.chosen_sum_class,
                "sum_class_counts": {str(k): v for k, v in sorted(self.sum_class_counts.items())},
                "zero_triple_retained": self.zero_triple_retained}


def lift_and_split(system: TripleSystem, family: IndexedTripleFamily) -> LiftResult:
    """Lift a disjoint triangle family to [0, N-1] and keep the majority sum
    class as integer triangles.

    Lifted sums of triangles are 0, N or 2N.  Sum class N shifts the z class
    by -N; class 2N shifts y and z.  The only sum-0 triangle is (0, 0, 0),
    which is excluded from the vote and retained as-is.  The retained family
    has size at least ceil(|family| / 2) and stays disjoint, the shifts being
    injective on each class.
    """
    n = system.n
    if family.n != n:
        raise ParameterRangeError("family modulus differs from system modulus",
                                  system=n, family=family.n)
    seen = [set(), set(), set()]
    for x, y, z in family:
        if (x + y + z) % n != 0:
            raise UnverifiedFamilyError(f"({x}, {y}, {z}) is not a triangle",
                                        triple=[x, y, z])
        if x not in system.x_set or y not in system.y_set or z not in system.z_set:
            raise UnverifiedFamilyError(f"({x}, {y}, {z}) is not in the system",
                                        triple=[x, y, z])
        for cls_index, v in enumerate((x, y, z)):
            if v in seen[cls_index]:
                raise UnverifiedFamilyError(
                    "family is not coordinate-disjoint", triple=[x, y, z])
            seen[cls_index].add(v)
    by_sum = {0: [], n: [], 2 * n: []}
    for triple in family:
        by_sum[sum(triple)].append(triple)
    counts = {s: len(v) for s, v in by_sum.items()}
    chosen = n if counts[n] >= counts[2 * n] else 2 * n
    if chosen == n:
        shift = (0, 0, -n)
    else:
        shift = (0, -n, -n)
    lifted = IntegerTripleSystem.of(
        2 * n,
        (v + shift[0] for v in system.x_set),
        (v + shift[1] for v in system.y_set),
        (v + shift[2] for v in system.z_set))
    retained = [tuple(v + s for v, s in zip(triple, shift)) for triple in by_sum[chosen]]
    zero_retained = bool(by_sum[0])
    if zero_retained:
        # Sum class 0 contains only (0, 0, 0), excluded from the vote and
        # retained unshifted: it is already an integer triangle.
        retained.append((0, 0, 0))
    return LiftResult(lifted, tuple(retained), chosen, counts, zero_retained)


@dataclass(frozen=True)
class PreservationReport:
    embed_bounds_checked: int
    embed_counterexamples: tuple
    lift_moduli_checked: int
    lift_counterexamples: tuple

    @property
    def clean(self) -> bool:
        return not self.embed_counterexamples and not self.lift_counterexamples

    def to_json_dict(self) -> dict:
        return {"embed_bounds_checked": self.embed_bounds_checked,
                "embed_counterexamples": [list(t) for t in self.embed_counterexamples],
                "lift_moduli_checked": self.lift_moduli_checked,
                "lift_counterexamples": [list(t) for t in self.lift_counterexamples],
                "clean": self.clean}


def verify_preservation(max_embed_bound: int = 50,
                        max_lift_modulus: int = 50) -> PreservationReport:
    """Exhaustively confirm both transfer laws on small domains.

    Embed: for every M <= cap and every (a, b, c) in [-M/2, M/2]^3, the
    integer sum vanishes iff the mod-N sum does.  Lift: for every N <= cap,
    every triangle of Z/NZ has lifted sum 0, N or 2N.
    """
    embed_bad = []
    for bound in range(1, max_embed_bound + 1):
        n = find_prime_in_range(bound)
        r = bound // 2
        vals = np.arange(-r, r + 1, dtype=np.int64)
        sums = vals[:, None, None] + vals[None, :, None] + vals[None, None, :]
        integer_zero = sums == 0
        modular_zero = sums % n == 0
        mismatch = integer_zero != modular_zero
        if mismatch.any():
            for i, j, k in np.argwhere(mismatch):
                embed_bad.append((bound, int(vals[i]), int(vals[j]), int(vals[k])))
    lift_bad = []
    for n in range(1, max_lift_modulus + 1):
        xs = np.arange(n, dtype=np.int64)
        x_grid, y_grid = np.meshgrid(xs, xs, indexing="ij")
        z_grid = (-x_grid - y_grid) % n
        sums = x_grid + y_grid + z_grid
        valid = (sums == 0) | (sums == n) | (sums == 2 * n)
        if not valid.all():
            for i, j in np.argwhere(~valid):
                lift_bad.append((n, int(x_grid[i, j]), int(y_grid[i, j]),
                                 int(z_grid[i, j])))
    return PreservationReport(max_embed_bound, tuple(embed_bad),
                              max_lift_modulus, tuple(lift_bad))
