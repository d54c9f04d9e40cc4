import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hillvallea.hillvalley import hill_valley_test
from hillvallea.orchestrator import (ElitistArchive, RunReport,
                                     archive_insert, initial_population_size,
                                     min_core_population, postprocess_archive,
                                     run_hillvallea)
from hillvallea.problem import BudgetedEvaluator, Solution

from conftest import double_well, sphere, synthetic_spec


def _sol(e, x):
    return e.evaluate(np.atleast_1d(np.asarray(x, float)))


class TestRestartScheme:
    def test_first_round_sizes(self):
        assert initial_population_size(1) == 64
        assert initial_population_size(2) == 128
        assert initial_population_size(5) == 320

    def test_doubles_each_round(self):
        assert initial_population_size(2, 1) == 256
        assert initial_population_size(2, 2) == 512
        assert initial_population_size(3, 4) == 64 * 3 * 16

    def test_min_core_population(self):
        assert min_core_population(1) == 10
        assert min_core_population(4) == 12
        assert min_core_population(9) == 14


class TestArchiveInsert:
    def test_first_insert_appends(self, double_well_eval):
        a = ElitistArchive()
        assert archive_insert(a, _sol(double_well_eval, 1.0), 7,
                              double_well_eval) == "appended"
        assert len(a) == 1
        assert a.gen_cap == 7

    def test_distinct_niche_appends(self, double_well_eval):
        a = ElitistArchive()
        archive_insert(a, _sol(double_well_eval, 1.0), 7, double_well_eval)
        assert archive_insert(a, _sol(double_well_eval, -1.0), 5,
                              double_well_eval) == "appended"
        assert len(a) == 2

    def test_same_niche_improvement_replaces(self, double_well_eval):
        a = ElitistArchive()
        archive_insert(a, _sol(double_well_eval, 0.9), 7, double_well_eval)
        assert archive_insert(a, _sol(double_well_eval, 1.0), 9,
                              double_well_eval) == "replaced"
        assert len(a) == 1
        assert a.elites[0].x[0] == pytest.approx(1.0)
        assert a.gen_cap == 9

    def test_same_niche_worse_discarded(self, double_well_eval):
        a = ElitistArchive()
        archive_insert(a, _sol(double_well_eval, 1.0), 7, double_well_eval)
        assert archive_insert(a, _sol(double_well_eval, 0.9), 2,
                              double_well_eval) == "discarded"
        assert len(a) == 1

    def test_gen_cap_default_when_empty(self):
        assert ElitistArchive().gen_cap == 100

    def test_nearest_elite(self, double_well_eval):
        a = ElitistArchive()
        archive_insert(a, _sol(double_well_eval, 1.0), 1, double_well_eval)
        archive_insert(a, _sol(double_well_eval, -1.0), 1, double_well_eval)
        assert a.nearest(np.array([0.8])).x[0] == pytest.approx(1.0)
        assert a.nearest_index(np.array([-0.4])) == 1


class TestPostprocess:
    def _archive(self, fitnesses):
        a = ElitistArchive()
        for i, f in enumerate(fitnesses):
            a.elites.append(Solution(np.array([float(i)]), f))
            a.insertion_generation.append(1)
        return a

    def test_filters_local_optima(self):
        kept = postprocess_archive(self._archive([0.0, 0.0, 0.3]))
        assert len(kept) == 2
        assert all(s.f == 0.0 for s in kept)

    def test_keeps_all_when_equal(self):
        assert len(postprocess_archive(self._archive([0.5] * 4))) == 4

    def test_tolerance_boundary(self):
        kept = postprocess_archive(self._archive([0.0, 1e-5, 2e-5]))
        assert len(kept) == 2

    def test_empty_archive(self):
        assert postprocess_archive(ElitistArchive()) == []


class TestRunReport:
    def _report(self):
        return RunReport(problem_id=4, seed=11, evaluations=12345,
                         solutions=[Solution(np.array([3.0, 2.0]), 200.0),
                                    Solution(np.array([-2.805118, 3.131312]),
                                             199.99999999)])

    def test_roundtrip_is_exact(self):
        r = self._report()
        back = RunReport.parse(r.serialize())
        assert back.problem_id == r.problem_id
        assert back.seed == r.seed
        assert back.evaluations == r.evaluations
        assert len(back.solutions) == 2
        for a, b in zip(back.solutions, r.solutions):
            assert a.f == b.f  # bitwise via repr
            assert np.array_equal(a.x, b.x)

    def test_empty_text_rejected(self):
        with pytest.raises(ValueError, match="empty"):
            RunReport.parse("")

    def test_malformed_header_names_line(self):
        with pytest.raises(ValueError, match="line 1"):
            RunReport.parse("4 11\n1.0 2.0\n")

    def test_inconsistent_width_names_line(self):
        with pytest.raises(ValueError, match="line 3"):
            RunReport.parse("4 11 100\n1.0 2.0 5.0\n1.0 5.0\n")

    @given(coords=st.lists(
        st.lists(st.floats(allow_nan=False, allow_infinity=False,
                           width=64), min_size=2, max_size=2),
        min_size=0, max_size=5))
    @settings(max_examples=30, deadline=None)
    def test_roundtrip_any_floats(self, coords):
        r = RunReport(1, 0, 9,
                      [Solution(np.array(c[:-1] + [0.0]), c[-1]) for c in coords])
        back = RunReport.parse(r.serialize())
        for a, b in zip(back.solutions, r.solutions):
            assert a.f == b.f
            assert np.array_equal(a.x, b.x)


class TestFullRun:
    def _spec(self, budget=20000):
        return synthetic_spec(double_well, [-2.0], [2.0],
                              [[-1.0], [1.0]], fopt=0.0, budget=budget,
                              radius=0.2)

    def test_finds_both_wells(self):
        report = run_hillvallea(self._spec(), seed=0)
        xs = sorted(s.x[0] for s in report.solutions)
        assert len(xs) == 2
        assert xs[0] == pytest.approx(-1.0, abs=1e-4)
        assert xs[1] == pytest.approx(1.0, abs=1e-4)

    def test_respects_budget(self):
        spec = self._spec(budget=3000)
        report = run_hillvallea(spec, seed=1)
        assert report.evaluations <= spec.budget

    def test_deterministic_per_seed(self):
        a = run_hillvallea(self._spec(), seed=42).serialize()
        b = run_hillvallea(self._spec(), seed=42).serialize()
        assert a == b

    def test_distinct_seeds_explore_differently(self):
        a = run_hillvallea(self._spec(), seed=1).serialize()
        b = run_hillvallea(self._spec(), seed=2).serialize()
        assert a != b

    def test_reported_solutions_span_distinct_niches(self):
        spec = self._spec()
        report = run_hillvallea(spec, seed=3)
        e = BudgetedEvaluator(spec)
        sols = [Solution(s.x, spec.to_internal(s.f)) for s in report.solutions]
        for i in range(len(sols)):
            for j in range(i + 1, len(sols)):
                assert not hill_valley_test(sols[i], sols[j], 5, e).same_niche

    def test_tiny_budget_still_reports(self):
        # not even one full initial sample: best of the partial sample
        spec = self._spec(budget=10)
        report = run_hillvallea(spec, seed=4)
        assert report.evaluations <= 10
        assert len(report.solutions) == 1

    def test_published_orientation(self):
        # synthetic specs minimize, so published fitness equals internal
        spec = self._spec()
        report = run_hillvallea(spec, seed=5)
        for s in report.solutions:
            assert s.f == pytest.approx(0.0, abs=1e-6)
