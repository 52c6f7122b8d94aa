import json

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from arl.group import (IndexedTripleFamily, Modulus, TripleSystem, is_triangle,
                       primality, signed_rep)


class TestPrimality:
    def test_small_values(self):
        assert primality(2)
        assert primality(10007)
        assert not primality(10005)  # divisible by 5
        assert not primality(1)
        assert not primality(0)

    def test_exhaustive_against_sieve_to_one_million(self):
        limit = 10 ** 6
        sieve = np.ones(limit + 1, dtype=bool)
        sieve[:2] = False
        for p in range(2, int(limit ** 0.5) + 1):
            if sieve[p]:
                sieve[p * p:: p] = False
        for n in range(limit + 1):
            assert primality(n) == bool(sieve[n]), n

    def test_large_prime(self):
        assert primality(2 ** 61 - 1)
        assert not primality(2 ** 61 + 1)


class TestSignedRep:
    @given(st.integers(-10 ** 9, 10 ** 9), st.integers(1, 10 ** 6))
    def test_range_and_congruence(self, value, n):
        r = signed_rep(value, n)
        assert -n / 2 < r <= n / 2
        assert (r - value) % n == 0

    def test_even_modulus_endpoint(self):
        assert signed_rep(3, 6) == 3
        assert signed_rep(4, 6) == -2


class TestIsTriangle:
    def test_examples(self):
        m = Modulus(5)
        assert is_triangle(m, 0, 0, 0)
        assert is_triangle(m, 1, 3, 1)
        assert not is_triangle(m, 1, 3, 0)

    @settings(max_examples=200)
    @given(st.integers(1, 97), st.data())
    def test_rotation_and_translation_invariance(self, n, data):
        x = data.draw(st.integers(0, n - 1))
        y = data.draw(st.integers(0, n - 1))
        z = data.draw(st.integers(0, n - 1))
        t = data.draw(st.integers(0, n - 1))
        base = is_triangle(n, x, y, z)
        assert is_triangle(n, y, z, x) == base
        assert is_triangle(n, (x + t) % n, (y + t) % n, (z - 2 * t) % n) == base

    @settings(max_examples=100)
    @given(st.sampled_from([3, 5, 7, 11, 13, 101]), st.data())
    def test_dilation_invariance_prime(self, n, data):
        x = data.draw(st.integers(0, n - 1))
        y = data.draw(st.integers(0, n - 1))
        z = data.draw(st.integers(0, n - 1))
        d = data.draw(st.integers(1, n - 1))
        assert is_triangle(n, x, y, z) == \
            is_triangle(n, x * d % n, y * d % n, z * d % n)


class TestTripleSystem:
    def test_reduction_and_validation(self):
        s = TripleSystem.of(5, [7, -1], [0], [3])
        assert s.x_set == frozenset({2, 4})
        with pytest.raises(ValueError):
            TripleSystem(Modulus(5), frozenset({5}), frozenset(), frozenset())

    def test_json_round_trip(self):
        s = TripleSystem.of(6, [1, 2], [3], [1, 2])
        again = TripleSystem.from_json(s.to_json())
        assert again == s
        data = json.loads(s.to_json())
        assert data == {"n": 6, "x": [1, 2], "y": [3], "z": [1, 2]}

    def test_indicator(self):
        s = TripleSystem.of(4, [0, 3], [], [2])
        assert s.indicator(0).tolist() == [1, 0, 0, 1]
        assert s.indicator(1).tolist() == [0, 0, 0, 0]


class TestIndexedTripleFamily:
    def test_raw_allows_duplicates(self):
        fam = IndexedTripleFamily(Modulus(5), ((0, 0, 0), (0, 1, 4)))
        assert len(fam) == 2

    def test_matching_candidate_rejects_duplicates(self):
        with pytest.raises(ValueError, match="duplicate x"):
            IndexedTripleFamily.matching_candidate(
                Modulus(5), ((0, 0, 0), (0, 1, 4)))

    def test_as_system_and_json(self):
        fam = IndexedTripleFamily(Modulus(5), ((0, 0, 0), (1, 3, 1)))
        s = fam.as_system()
        assert s.x_set == frozenset({0, 1})
        assert s.z_set == frozenset({0, 1})
        assert IndexedTripleFamily.from_json_dict(fam.to_json_dict()) == fam
