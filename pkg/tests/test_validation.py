import numpy as np
import pytest

from jcdimer import ModelParams
from jcdimer.validation import (check_embedding_exactness, check_sum_collapse,
                                check_swap_symmetry, check_uncoupled_spectrum,
                                check_variance_identity, run_battery)


def default_point():
    return ModelParams.from_detuning(delta=0.0, j=0.1, a=0.1)


class TestIndividualChecks:
    def test_all_pass_at_default_point(self):
        p = default_point()
        for check in (check_embedding_exactness, check_uncoupled_spectrum,
                      check_variance_identity, check_swap_symmetry,
                      check_sum_collapse):
            result = check(p)
            assert result.passed, result.line()

    def test_corrupted_full_hamiltonian_is_caught(self):
        def corrupt(h):
            bad = h.copy()
            bad[0, 1] += 1e-6
            bad[1, 0] += 1e-6
            return bad

        result = check_embedding_exactness(default_point(), _perturb_full=corrupt)
        assert not result.passed
        assert result.worst > 1e-8
        assert "largest mismatch" in result.detail

    def test_result_line_format(self):
        line = check_uncoupled_spectrum(default_point()).line()
        assert line.startswith("PASS")
        assert "uncoupled-spectrum" in line


class TestBattery:
    def test_twenty_seeded_draws_pass(self):
        results = run_battery(seed=7, draws=20)
        assert len(results) == 5
        assert all(r.passed for r in results), [r.line() for r in results]

    def test_battery_reports_failures(self):
        # rows 0 and 1 both lie inside the embedded subspace, so the
        # perturbation must show up in the pullback
        def corrupt(h):
            bad = h.copy()
            bad[0, 1] += 1e-5
            bad[1, 0] += 1e-5
            return bad

        results = run_battery(seed=0, draws=2, _perturb_full=corrupt)
        embedding = [r for r in results if r.name == "embedding-exactness"][0]
        assert not embedding.passed

    def test_battery_deterministic(self):
        first = run_battery(seed=3, draws=5)
        second = run_battery(seed=3, draws=5)
        assert [(r.name, r.worst) for r in first] == [(r.name, r.worst) for r in second]
