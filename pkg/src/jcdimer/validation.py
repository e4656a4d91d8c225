"""Self-validation battery tying the numerical and closed-form layers together.

Each check exercises one structural identity of the model:

* the reduced Hamiltonian equals the four-atom Hamiltonian pulled back
  through the symmetric-truncation embedding, element by element,
* with hopping off, the numerical sector spectrum equals sums of
  single-cavity polariton energies,
* variances computed from bare-basis moments agree with the operator
  quadratic forms,
* the ground state is symmetric under swapping the two cavities,
* observables depend on detuning and dipole coupling only through their sum.

The battery is what the ``validate`` CLI subcommand runs: the default
parameter point plus a seeded batch of random draws.
"""

from __future__ import annotations

import dataclasses
from dataclasses import dataclass

import numpy as np

from .eigen import eigen_decompose, ground_state
from .model import (ModelParams, build_effective_hamiltonian,
                    build_full_hamiltonian, enumerate_effective_basis,
                    enumerate_full_basis, symmetric_truncated_embedding)
from .analytics import uncoupled_sector_energies
from .observables import (atomic_excitation_variance, excitation_distribution,
                          excitation_variance)

EMBEDDING_TOL = 1e-12
SPECTRUM_TOL = 1e-10
VARIANCE_TOL = 1e-12
SYMMETRY_TOL = 1e-10
COLLAPSE_TOL = 1e-10


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    worst: float
    tolerance: float
    detail: str = ""

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        text = f"{status}  {self.name}: worst {self.worst:.3e} (tol {self.tolerance:.0e})"
        if self.detail:
            text += f" -- {self.detail}"
        return text


def check_embedding_exactness(params: ModelParams, tol: float = EMBEDDING_TOL,
                              _perturb_full=None) -> CheckResult:
    """Pull the four-atom matrix back through the embedding and compare."""
    effective_basis = enumerate_effective_basis(params.n_excitations)
    full_basis = enumerate_full_basis(params.n_excitations)
    h_full = build_full_hamiltonian(params, full_basis)
    if _perturb_full is not None:
        h_full = _perturb_full(h_full)
    h_eff = build_effective_hamiltonian(params, effective_basis)
    v = symmetric_truncated_embedding(full_basis, effective_basis)
    diff = np.abs(v.T @ h_full @ v - h_eff)
    worst = float(diff.max())
    detail = ""
    if worst > tol:
        i, k = np.unravel_index(int(diff.argmax()), diff.shape)
        detail = f"largest mismatch {worst:.3e} at element ({i}, {k})"
    return CheckResult("embedding-exactness", worst <= tol, worst, tol, detail)


def check_uncoupled_spectrum(params: ModelParams,
                             tol: float = SPECTRUM_TOL) -> CheckResult:
    """At zero hopping the numerical spectrum must match the closed form."""
    frozen = dataclasses.replace(params, a=0.0)
    basis = enumerate_effective_basis(frozen.n_excitations)
    spectrum = eigen_decompose(build_effective_hamiltonian(frozen, basis))
    expected = uncoupled_sector_energies(frozen)
    worst = float(np.abs(spectrum.eigenvalues - expected).max())
    return CheckResult("uncoupled-spectrum", worst <= tol, worst, tol)


def check_variance_identity(params: ModelParams,
                            tol: float = VARIANCE_TOL) -> CheckResult:
    """Moment-based variances must equal the operator quadratic forms."""
    basis = enumerate_effective_basis(params.n_excitations)
    gs = ground_state(eigen_decompose(build_effective_hamiltonian(params, basis)))
    worst = 0.0
    for key, moment in (
            (lambda st: st.cavity_excitation(1), excitation_variance),
            (lambda st: st.cavity_atomic(1), atomic_excitation_variance)):
        number_op = np.diag([float(key(st)) for st in basis])
        quad = float(gs.vector @ number_op @ number_op @ gs.vector
                     - (gs.vector @ number_op @ gs.vector) ** 2)
        worst = max(worst, abs(moment(gs.vector, basis) - quad))
    return CheckResult("variance-identity", worst <= tol, worst, tol)


def check_swap_symmetry(params: ModelParams,
                        tol: float = SYMMETRY_TOL) -> CheckResult:
    """Cavity 1 and cavity 2 must carry identical marginals in the ground state."""
    basis = enumerate_effective_basis(params.n_excitations)
    gs = ground_state(eigen_decompose(build_effective_hamiltonian(params, basis)))
    worst = abs(excitation_variance(gs.vector, basis, cavity=1)
                - excitation_variance(gs.vector, basis, cavity=2))
    worst = max(worst, abs(atomic_excitation_variance(gs.vector, basis, cavity=1)
                           - atomic_excitation_variance(gs.vector, basis, cavity=2)))
    dist = np.abs(excitation_distribution(gs.vector, basis, cavity=1)
                  - excitation_distribution(gs.vector, basis, cavity=2))
    worst = max(worst, float(dist.max()))
    return CheckResult("swap-symmetry", worst <= tol, worst, tol)


def check_sum_collapse(params: ModelParams, shift: float = 1.0,
                       tol: float = COLLAPSE_TOL) -> CheckResult:
    """Trading detuning for dipole coupling must leave observables unchanged."""
    basis = enumerate_effective_basis(params.n_excitations)
    moved = ModelParams.from_detuning(
        delta=params.delta - shift, j=params.j + shift, a=params.a, g=params.g,
        omega_c=params.omega_c, n_excitations=params.n_excitations)
    worst = 0.0
    pair = []
    for pp in (params, moved):
        gs = ground_state(eigen_decompose(build_effective_hamiltonian(pp, basis)))
        pair.append((excitation_variance(gs.vector, basis),
                     atomic_excitation_variance(gs.vector, basis)))
    worst = max(abs(pair[0][0] - pair[1][0]), abs(pair[0][1] - pair[1][1]))
    return CheckResult("detuning-dipole-collapse", worst <= tol, worst, tol)


def _merge(results) -> CheckResult:
    worst = max(r.worst for r in results)
    failed = [r for r in results if not r.passed]
    first = results[0]
    detail = failed[0].detail if failed and failed[0].detail else ""
    return CheckResult(first.name, not failed, worst, first.tolerance, detail)


def run_battery(seed: int = 0, draws: int = 20, a_max: float = 0.2,
                _perturb_full=None):
    """Run every check on the default point plus seeded random draws.

    Returns one merged :class:`CheckResult` per check, reporting the worst
    deviation across all parameter points.
    """
    rng = np.random.default_rng(seed)
    points = [ModelParams.from_detuning(delta=0.0, j=0.1, a=0.1)]
    for _ in range(draws):
        points.append(ModelParams.from_detuning(
            delta=float(rng.uniform(-10.0, 10.0)),
            j=float(rng.uniform(0.0, 10.0)),
            a=float(rng.uniform(0.0, a_max))))
    grouped = [
        [check_embedding_exactness(p, _perturb_full=_perturb_full) for p in points],
        [check_uncoupled_spectrum(p) for p in points],
        [check_variance_identity(p) for p in points],
        [check_swap_symmetry(p) for p in points],
        [check_sum_collapse(p, shift=float(rng.uniform(-2.0, 2.0))) for p in points],
    ]
    return [_merge(results) for results in grouped]
