import dataclasses
import math

import numpy as np
import pytest

from jcdimer import (MINUS, PLUS, ModelParams, build_effective_hamiltonian,
                     dressed_energy, dressed_state, energy_gaps,
                     enumerate_effective_basis, gap_curve, mixing_angle,
                     uncoupled_sector_energies)

SQRT2 = math.sqrt(2.0)


def params_at(x, g=1.0, omega_c=0.0, n=2):
    """Parameters with delta + j equal to x (all of it in the detuning)."""
    return ModelParams.from_detuning(delta=x, j=0.0, g=g, omega_c=omega_c,
                                     n_excitations=n)


class TestMixingAngle:
    def test_resonance_gives_right_angle(self):
        for n in (1, 2, 3, 7):
            assert mixing_angle(n, params_at(0.0)) == pytest.approx(math.pi / 2, abs=1e-15)

    def test_large_positive_sum_angle_vanishes(self):
        theta = mixing_angle(1, params_at(1e9))
        assert 0.0 < theta < 1e-8
        half = 0.5 * theta
        assert math.sin(half) == pytest.approx(0.0, abs=1e-8)
        assert math.cos(half) == pytest.approx(1.0, abs=1e-8)

    def test_large_negative_sum_angle_approaches_pi(self):
        theta = mixing_angle(1, params_at(-1e9))
        assert math.pi - 1e-8 < theta < math.pi
        half = 0.5 * theta
        assert math.sin(half) == pytest.approx(1.0, abs=1e-8)
        assert math.cos(half) == pytest.approx(0.0, abs=1e-8)

    def test_continuous_through_resonance(self):
        below = mixing_angle(1, params_at(-1e-12))
        above = mixing_angle(1, params_at(1e-12))
        assert abs(below - above) < 1e-12

    def test_angle_in_open_interval(self, rng):
        for _ in range(100):
            n = int(rng.integers(1, 6))
            theta = mixing_angle(n, params_at(float(rng.uniform(-50, 50))))
            assert 0.0 < theta < math.pi

    def test_requires_excitation(self):
        with pytest.raises(ValueError):
            mixing_angle(0, params_at(0.0))


class TestDressedStates:
    def test_amplitudes_unit_norm(self, rng):
        for _ in range(100):
            n = int(rng.integers(1, 6))
            p = params_at(float(rng.uniform(-20, 20)), g=float(rng.uniform(0.1, 3)))
            for branch in (MINUS, PLUS):
                ce, cg = dressed_state(n, branch, p).amplitudes
                assert abs(ce * ce + cg * cg - 1.0) < 1e-12

    def test_branches_orthogonal(self, rng):
        for _ in range(20):
            p = params_at(float(rng.uniform(-10, 10)))
            minus = np.asarray(dressed_state(1, MINUS, p).amplitudes)
            plus = np.asarray(dressed_state(1, PLUS, p).amplitudes)
            assert abs(minus @ plus) < 1e-12

    def test_resonant_amplitudes_are_inverse_sqrt2(self):
        ce, cg = dressed_state(1, MINUS, params_at(0.0)).amplitudes
        assert ce == pytest.approx(1 / SQRT2, abs=1e-15)
        assert cg == pytest.approx(-1 / SQRT2, abs=1e-15)

    def test_eigen_relation_with_single_cavity_block(self, rng):
        # the 2x2 excitation-n block of one cavity applied to the amplitude
        # pair must reproduce the closed-form branch energy
        for _ in range(50):
            n = int(rng.integers(1, 5))
            p = ModelParams.from_detuning(
                delta=float(rng.uniform(-10, 10)), j=float(rng.uniform(0, 10)),
                g=float(rng.uniform(0.2, 2.0)), omega_c=float(rng.uniform(-1, 1)))
            block = np.array([
                [(n - 1) * p.omega_c + p.omega_a + p.j, SQRT2 * p.g * math.sqrt(n)],
                [SQRT2 * p.g * math.sqrt(n), n * p.omega_c]])
            for branch in (MINUS, PLUS):
                amps = np.asarray(dressed_state(n, branch, p).amplitudes)
                energy = dressed_energy(n, branch, p)
                assert np.abs(block @ amps - energy * amps).max() < 1e-12

    def test_unknown_branch_rejected(self):
        with pytest.raises(ValueError):
            dressed_state(1, "x", params_at(0.0))


class TestDressedEnergies:
    def test_resonant_single_excitation(self):
        p = params_at(0.0)
        assert dressed_energy(1, MINUS, p) == pytest.approx(-SQRT2, abs=1e-15)
        assert dressed_energy(1, PLUS, p) == pytest.approx(SQRT2, abs=1e-15)

    def test_resonant_double_excitation(self):
        p = params_at(0.0)
        assert dressed_energy(2, MINUS, p) == pytest.approx(-2.0, abs=1e-15)
        assert dressed_energy(2, PLUS, p) == pytest.approx(2.0, abs=1e-15)

    def test_empty_cavity_energy_zero(self):
        assert dressed_energy(0, MINUS, params_at(3.0)) == 0.0

    def test_uncoupled_numerical_spectrum_matches_sums(self, rng):
        basis = enumerate_effective_basis(2)
        for _ in range(10):
            p = ModelParams.from_detuning(delta=float(rng.uniform(-10, 10)),
                                          j=float(rng.uniform(0, 10)), a=0.0)
            values = np.linalg.eigvalsh(build_effective_hamiltonian(p, basis))
            assert np.abs(np.sort(values) - uncoupled_sector_energies(p)).max() < 1e-12


class TestEnergyGaps:
    def test_blockade_gap_at_compensated_detuning(self):
        gaps = energy_gaps(params_at(0.0))
        assert abs(gaps.de1 - (2 * SQRT2 - 2)) < 1e-12
        assert gaps.de2 == pytest.approx(2.0, abs=1e-15)
        assert gaps.de3 == pytest.approx(2.0, abs=1e-15)
        assert abs(gaps.de4 - (2 * SQRT2 - 2)) < 1e-12

    def test_large_sum_closes_lowest_gap(self):
        gaps = energy_gaps(params_at(10.0))
        assert abs(gaps.de1 - 0.007140038) < 1e-6
        # numerical cross-check: lowest two uncoupled levels
        levels = uncoupled_sector_energies(params_at(10.0))
        assert abs((levels[1] - levels[0]) - gaps.de1) < 1e-12

    def test_sum_and_difference_identities(self, rng):
        for _ in range(50):
            g = float(rng.uniform(0.2, 3.0))
            x = float(rng.uniform(-20, 20))
            gaps = energy_gaps(params_at(x, g=g))
            assert abs((gaps.de2 + gaps.de3) - math.sqrt(x * x + 16 * g * g)) < 1e-12
            assert abs((gaps.de2 - gaps.de3) - x) < 1e-12
            assert gaps.de2 >= 0.0
            assert gaps.de3 >= 0.0

    def test_mirror_symmetry_of_outer_gaps(self, rng):
        for _ in range(20):
            x = float(rng.uniform(-15, 15))
            assert energy_gaps(params_at(x)).de1 == pytest.approx(
                energy_gaps(params_at(-x)).de4, abs=1e-13)

    @pytest.mark.parametrize("x", [-12.0, -3.0, -0.5, 0.0, 0.5, 3.0, 12.0])
    def test_gaps_equal_adjacent_level_differences(self, x):
        p = params_at(x)
        levels = uncoupled_sector_energies(p)
        distinct = [levels[0]]
        for value in levels[1:]:
            if value - distinct[-1] > 1e-9:
                distinct.append(value)
        if len(distinct) != 5:
            pytest.skip(f"level ordering collapses at delta+j={x}: "
                        f"{len(distinct)} distinct levels")
        diffs = np.diff(distinct)
        assert np.abs(diffs - energy_gaps(p).as_tuple()).max() < 1e-10


class TestGapCurve:
    def test_endpoints(self):
        table = gap_curve(0.0, 10.0, 201, params_at(0.0))
        assert table.shape == (201, 5)
        assert table[0, 0] == 0.0
        assert abs(table[0, 1] - (2 * SQRT2 - 2)) < 1e-12
        assert table[-1, 1] < 0.01

    def test_lowest_gap_monotone_decreasing_at_resonance(self):
        table = gap_curve(0.0, 10.0, 200, ModelParams.from_detuning(delta=0.0))
        de1 = table[:, 1]
        assert np.all(np.diff(de1) <= 0.0)

    def test_curve_uses_params_detuning(self):
        p = ModelParams.from_detuning(delta=-4.0)
        table = gap_curve(4.0, 5.0, 2, p)
        expected = energy_gaps(dataclasses.replace(p, j=4.0))
        assert np.abs(table[0, 1:] - expected.as_tuple()).max() < 1e-15

    def test_invalid_ranges_rejected(self):
        p = params_at(0.0)
        with pytest.raises(ValueError):
            gap_curve(0.0, 10.0, 1, p)
        with pytest.raises(ValueError):
            gap_curve(5.0, 5.0, 10, p)
