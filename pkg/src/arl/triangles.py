"""Triangle counting, enumeration, degree profiling and greedy packing.

Two independent routes to the same count are kept on purpose: the naive
double loop is the reference, the convolution is the fast path, and the
test suite holds them to exact equality.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping

import numpy as np

from .errors import EnumerationCapError
from .group import IndexedTripleFamily, TripleSystem
from .ntt import cyclic_convolution

DEFAULT_ENUMERATION_CAP = 10_000_000


def count_triangles_naive(system: TripleSystem) -> int:
    """#{(x,y,z) in X*Y*Z : x+y+z = 0 mod N} by direct double loop."""
    n = system.n
    zs = system.z_set
    count = 0
    for x in system.x_set:
        for y in system.y_set:
            if (-x - y) % n in zs:
                count += 1
    return count


def count_triangles_convolution(system: TripleSystem) -> int:
    """Same count as the naive loop, via sum_t (1_X * 1_Y)(t) 1_Z(-t)."""
    n = system.n
    conv = cyclic_convolution(system.indicator(0), system.indicator(1))
    z_ind = system.indicator(2)
    return int(np.dot(conv, z_ind[(-np.arange(n)) % n]))


def list_triangles(system: TripleSystem, cap: int = DEFAULT_ENUMERATION_CAP) -> IndexedTripleFamily:
    """Every triangle exactly once, in lexicographic (x, y) order."""
    total = count_triangles_convolution(system)
    if total > cap:
        raise EnumerationCapError(
            f"{total} triangles exceed the enumeration cap {cap}",
            count=total, cap=cap)
    n = system.n
    zs = system.z_set
    triples = []
    for x in sorted(system.x_set):
        for y in sorted(system.y_set):
            z = (-x - y) % n
            if z in zs:
                triples.append((x, y, z))
    return IndexedTripleFamily(system.modulus, tuple(triples))


@dataclass(frozen=True)
class DegreeProfile:
    """Per-element triangle degrees for the three classes.

    deg_x[v] counts pairs (y, z) in Y*Z with v + y + z = 0; the y- and
    z-degrees are defined symmetrically.  Each class sums to the total
    triangle count (three-way double counting).
    """

    deg_x: Mapping[int, int]
    deg_y: Mapping[int, int]
    deg_z: Mapping[int, int]

    def degrees(self, cls_index: int) -> Mapping[int, int]:
        return (self.deg_x, self.deg_y, self.deg_z)[cls_index]

    def bounds(self, cls_index: int):
        """(min, max) degree over the class members, or None if empty."""
        degs = self.degrees(cls_index)
        if not degs:
            return None
        values = degs.values()
        return (min(values), max(values))

    def overall_bounds(self):
        """(min, max) over all three classes, or None if all empty."""
        pairs = [b for b in (self.bounds(0), self.bounds(1), self.bounds(2)) if b]
        if not pairs:
            return None
        return (min(lo for lo, _ in pairs), max(hi for _, hi in pairs))

    def total(self) -> int:
        return sum(self.deg_x.values())


def degree_profile(system: TripleSystem, method: str = "convolution") -> DegreeProfile:
    """Exact triangle degree of every element of X, Y and Z."""
    n = system.n
    if method == "naive":
        zs, ys, xs = system.z_set, system.y_set, system.x_set
        deg_x = {x: sum(1 for y in ys if (-x - y) % n in zs) for x in xs}
        deg_y = {y: sum(1 for x in xs if (-x - y) % n in zs) for y in ys}
        deg_z = {z: sum(1 for x in xs if (-x - z) % n in ys) for z in zs}
        return DegreeProfile(deg_x, deg_y, deg_z)
    if method != "convolution":
        raise ValueError(f"unknown method {method!r}")
    ix, iy, iz = (system.indicator(i) for i in range(3))

    def degs(conv: np.ndarray, members) -> dict:
        return {v: int(conv[(-v) % n]) for v in members}

    return DegreeProfile(
        degs(cyclic_convolution(iy, iz), system.x_set),
        degs(cyclic_convolution(ix, iz), system.y_set),
        degs(cyclic_convolution(ix, iy), system.z_set),
    )


def max_disjoint_triangles_greedy(system: TripleSystem) -> IndexedTripleFamily:
    """Maximal family of pairwise coordinate-disjoint triangles.

    Triangles are scanned in lexicographic (x, y) order, so the result is
    deterministic.  Maximal, not maximum: no remaining triangle is disjoint
    from all selected ones, which bounds the deletion number both ways.
    """
    n = system.n
    zs = system.z_set
    used_x, used_y, used_z = set(), set(), set()
    selected = []
    ys_sorted = sorted(system.y_set)
    for x in sorted(system.x_set):
        if x in used_x:
            continue
        for y in ys_sorted:
            if y in used_y:
                continue
            z = (-x - y) % n
            if z in zs and z not in used_z:
                selected.append((x, y, z))
                used_x.add(x)
                used_y.add(y)
                used_z.add(z)
                break
    return IndexedTripleFamily(system.modulus, tuple(selected))
