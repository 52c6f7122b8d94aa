"""Deterministic instance generators for experiments.

Spec strings:

    full
    random_density:beta=0.05
    progression:d=2,digits=3
    matching_embed:file=family.json

Identical (spec, n, seed) always yields the identical system; randomness
comes from a counter-based stream so results do not depend on call order.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .errors import InvalidGeneratorSpecError
from .group import IndexedTripleFamily, Modulus, TripleSystem
from .matching import behrend_construction, matching_from_progression_free

_GENERATOR_STREAM = 2 ** 63  # keeps generator keys clear of per-trial keys


@dataclass(frozen=True)
class GeneratorSpec:
    kind: str
    params: tuple  # sorted ((key, value), ...)

    def get(self, key: str, default=None):
        return dict(self.params).get(key, default)


def parse_generator_spec(text: str) -> GeneratorSpec:
    head, _, tail = text.partition(":")
    kind = head.strip()
    if kind not in {"full", "random_density", "progression", "matching_embed"}:
        raise InvalidGeneratorSpecError(f"unknown generator kind {kind!r}", spec=text)
    params = {}
    if tail:
        for piece in tail.split(","):
            key, sep, value = piece.partition("=")
            if not sep:
                raise InvalidGeneratorSpecError(
                    f"malformed parameter {piece!r}", spec=text)
            params[key.strip()] = value.strip()
    return GeneratorSpec(kind, tuple(sorted(params.items())))


def _rng(seed: int) -> np.random.Generator:
    return np.random.Generator(np.random.Philox(key=[seed % 2 ** 64, _GENERATOR_STREAM]))


def generate_instance(spec, n: int, seed: int = 0) -> TripleSystem:
    if isinstance(spec, str):
        spec = parse_generator_spec(spec)
    if spec.kind == "full":
        return TripleSystem.full(n)
    if spec.kind == "random_density":
        beta = float(spec.get("beta", "0.5"))
        if not (0 <= beta <= 1):
            raise InvalidGeneratorSpecError(f"beta must be in [0, 1], got {beta}",
                                            beta=beta)
        rng = _rng(seed)
        sets = []
        for _ in range(3):
            mask = rng.random(n) < beta
            sets.append(frozenset(int(v) for v in np.nonzero(mask)[0]))
        return TripleSystem(Modulus(n), *sets)
    if spec.kind == "progression":
        d = int(spec.get("d", "2"))
        digits = int(spec.get("digits", "2"))
        pf = behrend_construction(d, digits)
        family = matching_from_progression_free(pf, Modulus(n))
        return family.as_system()
    if spec.kind == "matching_embed":
        path = spec.get("file")
        if not path:
            raise InvalidGeneratorSpecError("matching_embed needs file=PATH",
                                            spec=spec.kind)
        data = json.loads(Path(path).read_text())
        family = IndexedTripleFamily.from_json_dict(data)
        if family.n != n:
            raise InvalidGeneratorSpecError(
                f"family modulus {family.n} differs from requested n = {n}",
                family_n=family.n, n=n)
        return family.as_system()
    raise InvalidGeneratorSpecError(f"unknown generator kind {spec.kind!r}")
