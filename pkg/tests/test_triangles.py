import pytest

from arl.errors import EnumerationCapError
from arl.group import TripleSystem
from arl.triangles import (count_triangles_convolution, count_triangles_naive,
                           degree_profile, list_triangles,
                           max_disjoint_triangles_greedy)
from oracles import count_triangles_triple_loop


def small_system():
    return TripleSystem.of(6, [1, 2], [3], [1, 2])


class TestCounting:
    def test_empty(self):
        s = TripleSystem.of(5, [], [], [])
        assert count_triangles_naive(s) == 0
        assert count_triangles_convolution(s) == 0

    def test_full_group(self):
        s = TripleSystem.full(5)
        assert count_triangles_naive(s) == 25
        assert count_triangles_convolution(s) == 25

    def test_small_example(self):
        s = small_system()
        assert count_triangles_naive(s) == 2
        assert count_triangles_convolution(s) == 2
        assert count_triangles_triple_loop(s) == 2

    @pytest.mark.parametrize("seed", range(12))
    def test_routes_agree_on_random_systems(self, seed):
        import numpy as np
        rng = np.random.default_rng(seed)
        n = int(rng.integers(2, 130))
        beta = rng.choice([0.1, 0.3, 0.7, 1.0])
        sets = [frozenset(int(v) for v in np.nonzero(rng.random(n) < beta)[0])
                for _ in range(3)]
        s = TripleSystem.of(n, *sets)
        naive = count_triangles_naive(s)
        assert count_triangles_convolution(s) == naive
        assert len(list_triangles(s)) == naive
        assert count_triangles_triple_loop(s) == naive


class TestListing:
    def test_example(self):
        assert list(list_triangles(small_system())) == [(1, 3, 2), (2, 3, 1)]

    def test_empty(self):
        assert list(list_triangles(TripleSystem.of(5, [], [], []))) == []

    def test_full_tiny(self):
        fam = list_triangles(TripleSystem.full(3))
        assert len(fam) == 9
        assert all((x + y + z) % 3 == 0 for x, y, z in fam)

    def test_cap(self):
        with pytest.raises(EnumerationCapError):
            list_triangles(TripleSystem.full(10), cap=99)


class TestDegreeProfile:
    def test_full_group(self):
        prof = degree_profile(TripleSystem.full(5))
        assert set(prof.deg_x.values()) == {5}
        assert prof.bounds(0) == (5, 5)

    def test_small_example(self):
        prof = degree_profile(small_system())
        assert prof.deg_x == {1: 1, 2: 1}
        assert prof.deg_y == {3: 2}
        assert prof.bounds(1) == (2, 2)

    def test_no_triangles(self):
        prof = degree_profile(TripleSystem.of(7, [1], [1], [1]))
        assert set(prof.deg_x.values()) == {0}

    @pytest.mark.parametrize("seed", range(8))
    def test_row_sums_equal_count_and_naive_route(self, seed):
        import numpy as np
        rng = np.random.default_rng(1000 + seed)
        n = int(rng.integers(2, 80))
        sets = [frozenset(int(v) for v in np.nonzero(rng.random(n) < 0.4)[0])
                for _ in range(3)]
        s = TripleSystem.of(n, *sets)
        prof = degree_profile(s)
        count = count_triangles_naive(s)
        assert sum(prof.deg_x.values()) == count
        assert sum(prof.deg_y.values()) == count
        assert sum(prof.deg_z.values()) == count
        naive = degree_profile(s, method="naive")
        assert naive.deg_x == prof.deg_x
        assert naive.deg_y == prof.deg_y
        assert naive.deg_z == prof.deg_z


class TestGreedyDisjoint:
    def test_no_triangles(self):
        assert len(max_disjoint_triangles_greedy(TripleSystem.of(5, [1], [1], [1]))) == 0

    def test_full_three(self):
        fam = max_disjoint_triangles_greedy(TripleSystem.full(3))
        assert list(fam) == [(0, 0, 0), (1, 1, 1), (2, 2, 2)]

    def test_shared_coordinate(self):
        assert len(max_disjoint_triangles_greedy(small_system())) == 1

    @pytest.mark.parametrize("seed", range(6))
    def test_disjoint_and_maximal(self, seed):
        import numpy as np
        rng = np.random.default_rng(2000 + seed)
        n = int(rng.integers(3, 60))
        sets = [frozenset(int(v) for v in np.nonzero(rng.random(n) < 0.5)[0])
                for _ in range(3)]
        s = TripleSystem.of(n, *sets)
        fam = max_disjoint_triangles_greedy(s)
        for idx in range(3):
            coords = fam.coordinates(idx)
            assert len(coords) == len(set(coords))
        used = [set(fam.coordinates(i)) for i in range(3)]
        for x, y, z in list_triangles(s):
            assert x in used[0] or y in used[1] or z in used[2]
