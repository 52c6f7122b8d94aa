"""Additive-matching verification, exhaustive search, and the digit-sphere
construction of large progression-free sets.

An additive matching (tricolored sum-free set) is an indexed family of
triples whose cross sums x_i + y_j + z_k vanish exactly on the diagonal
i = j = k.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from .errors import ModulusTooSmallError, SearchBudgetExceededError
from .group import IndexedTripleFamily, Modulus


def has_three_term_progression(values: Sequence[int]) -> Optional[tuple]:
    """First (a, b, c) with a + c = 2b, a != c, over the integers, else None."""
    members = set(values)
    ordered = sorted(members)
    for i, a in enumerate(ordered):
        for b in ordered[i + 1:]:
            c = 2 * b - a
            if c != a and c in members:
                return (a, b, c)
    return None


@dataclass(frozen=True)
class ProgressionFreeSet:
    """Sorted set of nonnegative integers with no nontrivial 3-term AP."""

    elements: tuple

    def __post_init__(self):
        ordered = tuple(sorted(set(int(v) for v in self.elements)))
        if ordered and ordered[0] < 0:
            raise ValueError("elements must be nonnegative")
        witness = has_three_term_progression(ordered)
        if witness is not None:
            raise ValueError(f"3-term progression {witness} present")
        object.__setattr__(self, "elements", ordered)

    @property
    def span(self) -> int:
        """Smallest M with elements contained in [0, M)."""
        return self.elements[-1] + 1 if self.elements else 0

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)


@dataclass(frozen=True)
class MatchingCertificate:
    family: IndexedTripleFamily
    verified: bool
    violation: Optional[tuple]  # 0-based (i, j, k), lexicographically first


def verify_matching(family: IndexedTripleFamily) -> MatchingCertificate:
    """Check x_i + y_j + z_k = 0 iff i = j = k over all index triples.

    Vectorized plane-by-plane scan; equal by construction to the literal
    m^3 loop, returning the lexicographically first violating (i, j, k).
    """
    m = len(family)
    if m == 0:
        return MatchingCertificate(family, True, None)
    n = family.n
    xs = np.fromiter((t[0] for t in family), dtype=np.int64, count=m)
    ys = np.fromiter((t[1] for t in family), dtype=np.int64, count=m)
    zs = np.fromiter((t[2] for t in family), dtype=np.int64, count=m)
    cross = (ys[:, None] + zs[None, :]) % n
    for i in range(m):
        plane = (xs[i] + cross) % n == 0
        diagonal = np.zeros((m, m), dtype=bool)
        diagonal[i, i] = True
        bad = plane != diagonal
        if bad.any():
            j, k = np.argwhere(bad)[0]
            return MatchingCertificate(family, False, (i, int(j), int(k)))
    return MatchingCertificate(family, True, None)


def behrend_construction(d: int, n: int) -> ProgressionFreeSet:
    """Digit-sphere progression-free set: base-(2d) expansions with digits in
    [0, d) and digit-square-sum on the most popular sphere level.

    Digit addition stays carry-free, so an integer 3-term progression forces
    equality on every digit sphere; picking one level kills midpoints.
    Level selection is deterministic: smallest level of maximal cardinality,
    excluding the all-zero level (d >= 2 makes level 1 always available).
    """
    if d < 2:
        raise ValueError("digit bound d must be >= 2")
    if n < 1:
        raise ValueError("digit count n must be >= 1")
    total = d ** n
    codes = np.arange(total, dtype=np.int64)
    levels = np.zeros(total, dtype=np.int64)
    values = np.zeros(total, dtype=np.int64)
    rest = codes
    base_power = 1
    for _ in range(n):
        digit = rest % d
        rest = rest // d
        levels += digit * digit
        values += digit * base_power
        base_power *= 2 * d
    unique_levels, counts = np.unique(levels, return_counts=True)
    keep = unique_levels != 0  # exclude the all-zero vector's level
    unique_levels, counts = unique_levels[keep], counts[keep]
    # unique_levels is sorted, so argmax lands on the smallest level on ties
    chosen = int(unique_levels[np.argmax(counts)])
    return ProgressionFreeSet(tuple(int(v) for v in values[levels == chosen]))


def minimal_admissible_modulus(pf_set: ProgressionFreeSet) -> int:
    """Smallest modulus for which the induced family is a matching: twice the
    span makes every cross sum a_i - 2a_j + a_k vanish mod N only when it
    vanishes over the integers."""
    return 2 * pf_set.span


def matching_from_progression_free(pf_set: ProgressionFreeSet, m: Modulus) -> IndexedTripleFamily:
    """The family (a_i, -2a_i, a_i) over Z/NZ, a verified matching whenever
    N >= 2 * span."""
    if m.n < minimal_admissible_modulus(pf_set):
        raise ModulusTooSmallError(
            f"modulus {m.n} below 2*span = {minimal_admissible_modulus(pf_set)}",
            modulus=m.n, required=minimal_admissible_modulus(pf_set))
    n = m.n
    triples = tuple((a % n, (-2 * a) % n, a % n) for a in pf_set)
    return IndexedTripleFamily.matching_candidate(m, triples) if triples else \
        IndexedTripleFamily(m, ())


def embed_matching_scaled(family: IndexedTripleFamily, n: int) -> IndexedTripleFamily:
    """Inject a matching of Z/N'Z into Z/NZ for N' | N by multiplying every
    coordinate by N/N'.  Cross sums scale bijectively, so matchings map to
    matchings of the same size."""
    n_src = family.n
    if n % n_src != 0:
        raise ValueError(f"{n_src} does not divide {n}")
    factor = n // n_src
    return IndexedTripleFamily(
        Modulus(n),
        tuple((x * factor % n, y * factor % n, z * factor % n) for x, y, z in family))


@dataclass(frozen=True)
class MatchingSearchResult:
    size: int
    witness: IndexedTripleFamily
    exact: bool
    nodes: int


def _compatible(candidate: tuple, chosen: list, n: int) -> bool:
    """May `candidate` join `chosen` while keeping cross sums nonzero off the
    diagonal?  Checks every sum that involves the new index."""
    x2, y2, z2 = candidate
    for x1, y1, z1 in chosen:
        if ((x1 + y1 + z2) % n == 0 or (x1 + y2 + z1) % n == 0
                or (x2 + y1 + z1) % n == 0 or (x2 + y2 + z1) % n == 0
                or (x2 + y1 + z2) % n == 0 or (x1 + y2 + z2) % n == 0):
            return False
    for a in range(len(chosen)):
        xa, ya, za = chosen[a]
        for b in range(len(chosen)):
            if a == b:
                continue
            xb, yb, zb = chosen[b]
            if ((x2 + ya + zb) % n == 0 or (xa + y2 + zb) % n == 0
                    or (xa + yb + z2) % n == 0):
                return False
    return True


def max_matching_exhaustive(m: Modulus, budget: Optional[int] = 5_000_000) -> MatchingSearchResult:
    """Exact maximum additive matching size in Z/nZ, with witness.

    Branch and bound over the n^2 triangles in lexicographic (x, y) order.
    Symmetry reduction: translation lets the lexicographically least triple
    have x = 0, and for prime n dilation further pins it to (0,0,0) or
    (0,1,n-1).  Both symmetries map matchings to matchings, so the optimum
    is unaffected.  Exceeding the node budget raises
    SearchBudgetExceededError carrying the best family found.
    """
    n = m.n
    if n == 1:
        witness = IndexedTripleFamily.matching_candidate(m, ((0, 0, 0),))
        return MatchingSearchResult(1, witness, True, 0)
    triangles = [(x, y, (-x - y) % n) for x in range(n) for y in range(n)]
    if m.is_prime:
        roots = [t for t in triangles if t[0] == 0 and t[1] in (0, 1)]
    else:
        roots = [t for t in triangles if t[0] == 0]
    state = {"nodes": 0, "best_size": 0, "best": []}

    def record(chosen: list):
        if len(chosen) > state["best_size"]:
            state["best_size"] = len(chosen)
            state["best"] = list(chosen)

    def extend(chosen: list, start: int, used_x: set):
        for idx in range(start, len(triangles)):
            if state["best_size"] >= len(chosen) + (n - len(used_x)):
                return  # every further triple needs a fresh x value
            t = triangles[idx]
            if t[0] in used_x:
                continue
            state["nodes"] += 1
            if budget is not None and state["nodes"] > budget:
                raise SearchBudgetExceededError(
                    f"budget {budget} exhausted", state["best_size"],
                    _as_family(m, state["best"]), state["nodes"])
            if not _compatible(t, chosen, n):
                continue
            chosen.append(t)
            used_x.add(t[0])
            record(chosen)
            extend(chosen, idx + 1, used_x)
            used_x.discard(t[0])
            chosen.pop()

    for root in roots:
        state["nodes"] += 1
        chosen = [root]
        record(chosen)
        start = triangles.index(root) + 1
        extend(chosen, start, {root[0]})
    return MatchingSearchResult(
        state["best_size"], _as_family(m, state["best"]), True, state["nodes"])


def _as_family(m: Modulus, triples: list) -> IndexedTripleFamily:
    return IndexedTripleFamily.matching_candidate(m, tuple(triples))
