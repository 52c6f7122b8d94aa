"""Exact arithmetic in Z/NZ and the shared set/triple data model.

Residues are plain ints canonically stored in [0, N).  Signed
representatives in (-N/2, N/2] are produced on demand by
:func:`signed_rep`, since interval arguments are easier to state with
signed offsets.  Sets are kept as frozensets; dense indicator arrays for
the counting routines are built by :meth:`TripleSystem.indicator`.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Sequence

import numpy as np

# Element of Z/NZ: an int reduced into [0, N).
Element = int

_SMALL_PRIMES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def primality(n: int) -> bool:
    """Deterministic primality test, exact for all word-sized n.

    Trial division by the small primes screens most composites; the
    Miller-Rabin rounds with the fixed witness set below are exact for
    every n < 3.3 * 10**24.
    """
    if n < 2:
        return False
    for p in _SMALL_PRIMES:
        if n == p:
            return True
        if n % p == 0:
            return False
    d = n - 1
    r = 0
    while d % 2 == 0:
        d //= 2
        r += 1
    for a in _SMALL_PRIMES:
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(r - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def signed_rep(value: int, n: int) -> int:
    """Representative of ``value`` mod n in (-n/2, n/2]."""
    r = value % n
    return r if r <= n // 2 else r - n


@dataclass(frozen=True)
class Modulus:
    """Order of the ambient cyclic group, with primality precomputed."""

    n: int
    is_prime: bool = field(init=False, compare=False)

    def __post_init__(self):
        if self.n < 1:
            raise ValueError(f"modulus must be >= 1, got {self.n}")
        object.__setattr__(self, "is_prime", primality(self.n))

    def reduce(self, value: int) -> Element:
        return value % self.n


def _as_n(m) -> int:
    return m.n if isinstance(m, Modulus) else int(m)


def is_triangle(m, x: Element, y: Element, z: Element) -> bool:
    """True iff x + y + z = 0 in Z/NZ."""
    return (x + y + z) % _as_n(m) == 0


def _check_reduced(values: Iterable[int], n: int, label: str) -> frozenset:
    out = frozenset(values)
    for v in out:
        if not (0 <= v < n):
            raise ValueError(f"{label} element {v} not reduced mod {n}")
    return out


@dataclass(frozen=True)
class TripleSystem:
    """Three subsets X, Y, Z of Z/NZ, the arena for triangles."""

    modulus: Modulus
    x_set: frozenset
    y_set: frozenset
    z_set: frozenset

    def __post_init__(self):
        n = self.modulus.n
        object.__setattr__(self, "x_set", _check_reduced(self.x_set, n, "x"))
        object.__setattr__(self, "y_set", _check_reduced(self.y_set, n, "y"))
        object.__setattr__(self, "z_set", _check_reduced(self.z_set, n, "z"))

    @classmethod
    def of(cls, n: int, xs: Iterable[int], ys: Iterable[int], zs: Iterable[int]) -> "TripleSystem":
        """Build a system, reducing arbitrary integers mod n."""
        return cls(Modulus(n), frozenset(v % n for v in xs),
                   frozenset(v % n for v in ys), frozenset(v % n for v in zs))

    @classmethod
    def full(cls, n: int) -> "TripleSystem":
        everything = frozenset(range(n))
        return cls(Modulus(n), everything, everything, everything)

    @property
    def n(self) -> int:
        return self.modulus.n

    def class_set(self, cls_index: int) -> frozenset:
        return (self.x_set, self.y_set, self.z_set)[cls_index]

    def sizes(self) -> tuple:
        return (len(self.x_set), len(self.y_set), len(self.z_set))

    def indicator(self, cls_index: int) -> np.ndarray:
        """Dense 0/1 membership array over [0, N) for one class."""
        ind = np.zeros(self.n, dtype=np.int64)
        members = self.class_set(cls_index)
        if members:
            ind[np.fromiter(members, dtype=np.int64, count=len(members))] = 1
        return ind

    def to_json_dict(self) -> dict:
        return {"n": self.n, "x": sorted(self.x_set),
                "y": sorted(self.y_set), "z": sorted(self.z_set)}

    @classmethod
    def from_json_dict(cls, data: dict) -> "TripleSystem":
        return cls(Modulus(int(data["n"])), frozenset(int(v) for v in data["x"]),
                   frozenset(int(v) for v in data["y"]), frozenset(int(v) for v in data["z"]))

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict(), sort_keys=True)

    @classmethod
    def from_json(cls, text: str) -> "TripleSystem":
        return cls.from_json_dict(json.loads(text))


@dataclass(frozen=True)
class IndexedTripleFamily:
    """Ordered list of (x_i, y_i, z_i) triples over a common modulus.

    The plain constructor accepts any reduced triples (raw enumerations may
    repeat coordinates).  Matching candidates must come through
    :meth:`matching_candidate`, which rejects duplicated coordinates within
    a class: a duplicate x_i = x_j already breaks the matching condition
    via x_i + y_j + z_j = 0.
    """

    modulus: Modulus
    triples: tuple

    def __post_init__(self):
        n = self.modulus.n
        clean = []
        for t in self.triples:
            x, y, z = t
            for v in (x, y, z):
                if not (0 <= v < n):
                    raise ValueError(f"triple {t!r} not reduced mod {n}")
            clean.append((int(x), int(y), int(z)))
        object.__setattr__(self, "triples", tuple(clean))

    @classmethod
    def matching_candidate(cls, modulus: Modulus, triples: Sequence) -> "IndexedTripleFamily":
        fam = cls(modulus, tuple(triples))
        for idx, label in ((0, "x"), (1, "y"), (2, "z")):
            seen = {}
            for i, t in enumerate(fam.triples):
                v = t[idx]
                if v in seen:
                    raise ValueError(
                        f"duplicate {label}-coordinate {v} at indices {seen[v]} and {i}")
                seen[v] = i
        return fam

    def __len__(self) -> int:
        return len(self.triples)

    def __iter__(self) -> Iterator:
        return iter(self.triples)

    @property
    def n(self) -> int:
        return self.modulus.n

    def coordinates(self, cls_index: int) -> tuple:
        return tuple(t[cls_index] for t in self.triples)

    def as_system(self) -> TripleSystem:
        """Embed the family as a TripleSystem (X = {x_i}, Y = {y_i}, Z = {z_i})."""
        return TripleSystem(self.modulus,
                            frozenset(self.coordinates(0)),
                            frozenset(self.coordinates(1)),
                            frozenset(self.coordinates(2)))

    def to_json_dict(self) -> dict:
        return {"n": self.n, "triples": [list(t) for t in self.triples]}

    @classmethod
    def from_json_dict(cls, data: dict) -> "IndexedTripleFamily":
        return cls(Modulus(int(data["n"])),
                   tuple(tuple(int(v) for v in t) for t in data["triples"]))
