from fractions import Fraction

import numpy as np
import pytest

from arl.errors import UnverifiedFamilyError
from arl.group import IndexedTripleFamily, Modulus, TripleSystem
from arl.matching import behrend_construction, matching_from_progression_free
from arl.removal import (RegularityHypotheses, check_regularity_hypotheses,
                         epsilon_delta_experiment, min_deletion_exact,
                         remark_converse_check)
from arl.triangles import count_triangles_naive, max_disjoint_triangles_greedy
from oracles import min_deletion_bruteforce


def random_system(seed, n_low=3, n_high=40, beta=0.5):
    rng = np.random.default_rng(seed)
    n = int(rng.integers(n_low, n_high))
    sets = [frozenset(int(v) for v in np.nonzero(rng.random(n) < beta)[0])
            for _ in range(3)]
    return TripleSystem.of(n, *sets)


class TestMinDeletion:
    def test_no_triangles(self):
        result = min_deletion_exact(TripleSystem.of(5, [1], [1], [1]))
        assert result.deletion_number == 0 and result.exact

    def test_full_z3(self):
        result = min_deletion_exact(TripleSystem.full(3))
        assert result.deletion_number == 3
        assert result.exact
        assert result.lower_bound == 3

    @pytest.mark.parametrize("size", [1, 2, 3, 5, 8, 12])
    def test_matching_embedding_deletion_equals_size(self, size):
        pf = behrend_construction(2, 6)  #, size 20, plenty to slice
        subset = type(pf)(pf.elements[:size])
        fam = matching_from_progression_free(subset, Modulus(2 * subset.span))
        system = fam.as_system()
        assert count_triangles_naive(system) == size
        result = min_deletion_exact(system)
        assert result.exact and result.deletion_number == size

    @pytest.mark.parametrize("seed", range(10))
    def test_matches_bruteforce_on_tiny_instances(self, seed):
        system = random_system(seed, n_low=3, n_high=8)
        result = min_deletion_exact(system)
        assert result.exact
        assert result.deletion_number == min_deletion_bruteforce(system)

    @pytest.mark.parametrize("seed", range(10))
    def test_sandwich_and_witness(self, seed):
        system = random_system(100 + seed)
        result = min_deletion_exact(system)
        assert result.exact
        greedy = max_disjoint_triangles_greedy(system)
        assert len(greedy) <= result.deletion_number <= 3 * len(greedy)
        assert result.lower_bound <= result.deletion_number <= 3 * result.lower_bound
        # deleting the witness destroys every triangle
        removed = {("xyz"[c] if isinstance(c, int) else c, v) for c, v in result.deleted}
        keep = [set(), set(), set()]
        for idx, label in enumerate("xyz"):
            keep[idx] = {v for v in system.class_set(idx) if (label, v) not in removed}
        stripped = TripleSystem.of(system.n, *keep)
        assert count_triangles_naive(stripped) == 0

    def test_budget_degrades_to_bounds(self):
        system = TripleSystem.full(12)
        result = min_deletion_exact(system, budget=5)
        assert not result.exact
        assert result.lower_bound <= result.deletion_number <= 3 * result.lower_bound
        exact = min_deletion_exact(system, budget=None)
        assert exact.exact
        assert result.deletion_number >= exact.deletion_number

    def test_greedy_theorem_restatement(self):
        # if deletion_number >= E then any maximal disjoint family has size >= E/3
        for seed in range(6):
            system = random_system(300 + seed)
            result = min_deletion_exact(system)
            greedy = max_disjoint_triangles_greedy(system)
            assert 3 * len(greedy) >= result.deletion_number


class TestRemarkConverse:
    def test_single_triple(self):
        fam = IndexedTripleFamily(Modulus(5), ((0, 0, 0),))
        report = remark_converse_check(fam)
        assert report.triangle_count == 1 and report.deletion_number == 1
        assert report.theta == Fraction(1, 5)

    def test_behrend_pair(self):
        fam = IndexedTripleFamily(Modulus(5), ((0, 0, 0), (1, 3, 1)))
        report = remark_converse_check(fam)
        assert report.triangle_count == 2 and report.deletion_number == 2
        assert report.delta == Fraction(2, 25)
        assert report.epsilon == Fraction(2, 5)

    def test_rejects_unverified(self):
        fam = IndexedTripleFamily(Modulus(2), ((0, 1, 1), (1, 0, 1)))
        with pytest.raises(UnverifiedFamilyError):
            remark_converse_check(fam)


class TestRegularity:
    def test_degenerate_full_pass(self):
        n = 12
        hyp = RegularityHypotheses.from_parameters(1, 1, 1.0, n)
        assert hyp.degree_low == pytest.approx(n / 6)
        assert hyp.degree_high == pytest.approx(n)
        report = check_regularity_hypotheses(TripleSystem.full(n), hyp)
        assert report.passed

    def test_empty_system_fails_count_floor(self):
        hyp = RegularityHypotheses.from_parameters(1, Fraction(1, 2), 1.0, 6)
        report = check_regularity_hypotheses(TripleSystem.of(6, [], [], []), hyp)
        assert not report.passed
        failing = {c.name for c in report.conditions if not c.ok}
        assert "triangle_count" in failing

    def test_fitted_instance_report(self):
        from arl.generators import generate_instance
        from arl.triangles import count_triangles_convolution
        system = generate_instance("random_density:beta=0.05", 10007, seed=42)
        n = system.n
        count = count_triangles_convolution(system)
        delta_prime = Fraction(2 * count, n * n)
        epsilon = Fraction(len(max_disjoint_triangles_greedy(system)), n)
        hyp = RegularityHypotheses.from_parameters(epsilon, delta_prime, 14.0, n)
        report = check_regularity_hypotheses(system, hyp)
        assert isinstance(report.passed, bool)
        assert {c.name for c in report.conditions} == {
            "degree_window_low", "degree_window_high", "triangle_count",
            "class_sizes"}

    def test_chain_reported_on_pass(self):
        n = 12
        hyp = RegularityHypotheses.from_parameters(1, 1, 1.0, n)
        report = check_regularity_hypotheses(
            TripleSystem.full(n), hyp,
            f_value=lambda m: 1.0, g_value=lambda rho: 1.0)
        assert len(report.chain) == 3
        labels = [row[0] for row in report.chain]
        assert labels[-1] == "epsilon^2 vs profile bound"


class TestExperiment:
    def test_matching_embed_rows(self):
        pf = behrend_construction(2, 3)
        fam = matching_from_progression_free(pf, Modulus(2 * pf.span))

        rows = epsilon_delta_experiment(lambda n: fam.as_system(), [fam.n])
        row = rows[0]
        assert row.status == "ok"
        assert row.epsilon == Fraction(len(fam), fam.n)
        assert row.delta == Fraction(len(fam), fam.n ** 2)

    def test_empty_generator(self):
        rows = epsilon_delta_experiment(
            lambda n: TripleSystem.of(n, [], [], []), [7, 11])
        assert all(r.delta == 0 and r.epsilon == 0 for r in rows)

    def test_random_rows_respect_structural_bound(self):
        def gen(n):
            rng = np.random.default_rng(n)
            sets = [frozenset(int(v) for v in np.nonzero(rng.random(n) < 0.3)[0])
                    for _ in range(3)]
            return TripleSystem.of(n, *sets)

        rows = epsilon_delta_experiment(gen, [31, 41, 53])
        for row in rows:
            system = gen(row.n)
            greedy = max_disjoint_triangles_greedy(system)
            assert row.epsilon <= Fraction(3 * len(greedy), row.n)

    def test_error_rows_marked(self):
        def gen(n):
            if n == 5:
                from arl.errors import ArlError
                raise ArlError("generator failed")
            return TripleSystem.full(n)

        rows = epsilon_delta_experiment(gen, [3, 5])
        assert rows[0].status == "ok"
        assert rows[1].status.startswith("error:")
