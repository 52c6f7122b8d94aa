import math

import numpy as np
import pytest

from arl.errors import ParameterRangeError, UnverifiedFamilyError
from arl.group import IndexedTripleFamily, Modulus, TripleSystem
from arl.reductions import (IntegerTripleSystem, embed_interval,
                            find_prime_in_range, lift_and_split,
                            verify_preservation)
from arl.triangles import count_triangles_naive


class TestFindPrime:
    def test_spec_values(self):
        assert find_prime_in_range(1) == 2
        assert find_prime_in_range(10) == 23
        assert find_prime_in_range(50) == 101

    @pytest.mark.parametrize("m", range(1, 200))
    def test_always_in_range(self, m):
        p = find_prime_in_range(m)
        assert 2 * m <= p <= 4 * m


class TestEmbed:
    def test_zero_sum_preserved(self):
        system = IntegerTripleSystem.of(10, [-3], [1], [2])
        embedded = embed_interval(system)
        assert embedded.n == 23
        assert embedded.x_set == frozenset({20})
        assert count_triangles_naive(embedded) == 1

    def test_zero_triple(self):
        embedded = embed_interval(IntegerTripleSystem.of(4, [0], [0], [0]))
        assert count_triangles_naive(embedded) == 1

    def test_nonzero_sum_preserved(self):
        embedded = embed_interval(IntegerTripleSystem.of(10, [5], [5], [5]))
        assert count_triangles_naive(embedded) == 0

    def test_out_of_range_rejected(self):
        with pytest.raises(ParameterRangeError):
            IntegerTripleSystem.of(10, [6], [], [])

    def test_injective(self):
        values = range(-12, 13)
        system = IntegerTripleSystem.of(25, values, values, values)
        embedded = embed_interval(system)
        assert len(embedded.x_set) == len(list(values))

    @pytest.mark.parametrize("seed", range(8))
    def test_counts_match_integer_counts(self, seed):
        rng = np.random.default_rng(seed)
        bound = int(rng.integers(4, 30))
        r = bound // 2
        pick = lambda: frozenset(int(v) for v in
                                 rng.choice(np.arange(-r, r + 1), size=r, replace=False))
        system = IntegerTripleSystem.of(bound, pick(), pick(), pick())
        integer_count = sum(1 for a in system.a_set for b in system.b_set
                            for c in system.c_set if a + b + c == 0)
        assert count_triangles_naive(embed_interval(system)) == integer_count


class TestLiftAndSplit:
    def test_sum_n_class(self):
        system = TripleSystem.of(6, [1], [2], [3])
        fam = IndexedTripleFamily(Modulus(6), ((1, 2, 3),))
        result = lift_and_split(system, fam)
        assert result.chosen_sum_class == 6
        assert result.retained == ((1, 2, -3),)
        assert sum(result.retained[0]) == 0

    def test_sum_2n_class(self):
        system = TripleSystem.of(6, [5], [4], [3])
        fam = IndexedTripleFamily(Modulus(6), ((5, 4, 3),))
        result = lift_and_split(system, fam)
        assert result.chosen_sum_class == 12
        assert result.retained == ((5, -2, -3),)

    def test_zero_triple_retained(self):
        system = TripleSystem.of(6, [0, 1], [0, 2], [0, 3])
        fam = IndexedTripleFamily(Modulus(6), ((0, 0, 0), (1, 2, 3)))
        result = lift_and_split(system, fam)
        assert result.zero_triple_retained
        assert (0, 0, 0) in result.retained
        assert len(result.retained) == 2

    def test_majority_tie_prefers_sum_n(self):
        system = TripleSystem.of(6, [1, 5], [2, 3], [3, 4])
        fam = IndexedTripleFamily(Modulus(6), ((1, 2, 3), (5, 3, 4)))
        result = lift_and_split(system, fam)
        assert result.sum_class_counts == {0: 0, 6: 1, 12: 1}
        assert result.chosen_sum_class == 6
        assert result.retained == ((1, 2, -3),)

    def test_rejects_non_triangle(self):
        system = TripleSystem.full(6)
        fam = IndexedTripleFamily(Modulus(6), ((1, 2, 4),))
        with pytest.raises(UnverifiedFamilyError):
            lift_and_split(system, fam)

    def test_rejects_non_disjoint(self):
        system = TripleSystem.full(6)
        fam = IndexedTripleFamily(Modulus(6), ((1, 2, 3), (1, 5, 0)))
        with pytest.raises(UnverifiedFamilyError):
            lift_and_split(system, fam)

    @pytest.mark.parametrize("seed", range(12))
    def test_retention_floor_and_disjointness(self, seed):
        system, fam = random_disjoint_family(seed)
        result = lift_and_split(system, fam)
        assert len(result.retained) >= math.ceil(len(fam) / 2)
        for idx in range(3):
            coords = [t[idx] for t in result.retained]
            assert len(coords) == len(set(coords))
        assert all(sum(t) == 0 for t in result.retained)

    @pytest.mark.parametrize("seed", range(6))
    def test_round_trip_back_to_group_triangles(self, seed):
        system, fam = random_disjoint_family(seed)
        result = lift_and_split(system, fam)
        re_embedded = embed_interval(result.system)
        n2 = re_embedded.n
        for a, b, c in result.retained:
            assert (a + b + c) % n2 == 0
            assert a % n2 in re_embedded.x_set
            assert b % n2 in re_embedded.y_set
            assert c % n2 in re_embedded.z_set


def random_disjoint_family(seed, with_zero_choice=True):
    rng = np.random.default_rng(seed)
    n = int(rng.integers(5, 60))
    xs = list(rng.permutation(n))
    ys = list(rng.permutation(n))
    triples = []
    used_z = set()
    if with_zero_choice and rng.random() < 0.3 and 0 in xs and 0 in ys:
        triples.append((0, 0, 0))
        used_z.add(0)
        xs.remove(0)
        ys.remove(0)
    target = int(rng.integers(1, max(2, n // 3)))
    for x, y in zip(xs, ys):
        if len(triples) >= target:
            break
        z = int((-x - y) % n)
        if z in used_z:
            continue
        triples.append((int(x), int(y), z))
        used_z.add(z)
    system = TripleSystem.full(n)
    return system, IndexedTripleFamily(Modulus(n), tuple(triples))


class TestVerifyPreservation:
    def test_clean_to_twenty(self):
        report = verify_preservation(20, 20)
        assert report.clean
        assert report.embed_bounds_checked == 20
        assert report.lift_moduli_checked == 20

    def test_lift_sums_classified(self):
        # direct check mirroring the exhaustive lift scan at N = 6 and N = 2
        for n in (2, 6):
            for x in range(n):
                for y in range(n):
                    z = (-x - y) % n
                    assert x + y + z in (0, n, 2 * n)
