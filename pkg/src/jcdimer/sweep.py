"""Phase-diagram sweep over the (detuning, dipole-coupling) plane.

Each grid cell diagonalizes the sector Hamiltonian at its parameter point
and records the two order parameters.  A cell is superfluid-like when the
cavity-1 excitation variance exceeds ``superfluid_eps`` and polaritonic
when the atomic variance exceeds ``polariton_eps``, giving four phases:

====================  ==========  ===========
label                 var_n1      var_na1
====================  ==========  ===========
atomic-insulator      small       small
polaritonic-insulator small       large
polaritonic-superfluid large      large
photonic-superfluid   large       small
====================  ==========  ===========

In the reduced model the detuning and dipole coupling enter only through
their sum, so all observables are constant along anti-diagonals of the
grid.  Cells are independent; the Hamiltonians are stacked and diagonalized
in one batched pass, which produces results identical to evaluating each
cell on its own.
"""

from __future__ import annotations

import dataclasses
from dataclasses import dataclass, field

import numpy as np

from .eigen import (DEFAULT_DEGENERACY_TOL, DEFAULT_MAX_SWEEPS, DEFAULT_TOL,
                    JacobiConvergenceError, Spectrum, eigen_decompose_batch,
                    ground_state)
from .model import (ModelParams, build_effective_hamiltonian,
                    build_full_hamiltonian, enumerate_effective_basis,
                    enumerate_full_basis)
from .observables import atomic_excitation_variance, excitation_variance

PHASE_ATOMIC_INSULATOR = "atomic-insulator"
PHASE_POLARITONIC_INSULATOR = "polaritonic-insulator"
PHASE_POLARITONIC_SUPERFLUID = "polaritonic-superfluid"
PHASE_PHOTONIC_SUPERFLUID = "photonic-superfluid"
PHASE_LABELS = (
    PHASE_ATOMIC_INSULATOR,
    PHASE_POLARITONIC_INSULATOR,
    PHASE_POLARITONIC_SUPERFLUID,
    PHASE_PHOTONIC_SUPERFLUID,
)

DEFAULT_SUPERFLUID_EPS = 0.05
DEFAULT_POLARITON_EPS = 0.05


@dataclass(frozen=True)
class ClassificationThresholds:
    """Variance cutoffs separating the four phases.

    The underlying crossovers are smooth, so the cutoffs are conventions;
    the defaults are chosen to reproduce the four-region layout of the
    default sweep and are CLI-configurable.
    """

    superfluid_eps: float = DEFAULT_SUPERFLUID_EPS
    polariton_eps: float = DEFAULT_POLARITON_EPS

    def __post_init__(self):
        if not self.superfluid_eps > 0 or not self.polariton_eps > 0:
            raise ValueError("classification thresholds must be positive")


@dataclass(frozen=True)
class SweepSpec:
    """Grid specification; all energies are in units of ``g``."""

    delta_min: float = -10.0
    delta_max: float = 10.0
    j_min: float = 0.0
    j_max: float = 10.0
    resolution: int = 81
    a: float = 0.1
    g: float = 1.0
    omega_c: float = 0.0
    n_excitations: int = 2
    full_model: bool = False
    thresholds: ClassificationThresholds = field(default_factory=ClassificationThresholds)

    def __post_init__(self):
        if self.resolution < 2:
            raise ValueError(f"resolution must be >= 2, got {self.resolution}")
        if not self.delta_max > self.delta_min:
            raise ValueError("delta_max must exceed delta_min")
        if not self.j_max > self.j_min:
            raise ValueError("j_max must exceed j_min")

    def deltas(self) -> np.ndarray:
        return np.linspace(self.delta_min, self.delta_max, self.resolution)

    def js(self) -> np.ndarray:
        return np.linspace(self.j_min, self.j_max, self.resolution)

    def cell_params(self, delta: float, j: float) -> ModelParams:
        return ModelParams.from_detuning(
            delta=delta * self.g, j=j * self.g, a=self.a * self.g, g=self.g,
            omega_c=self.omega_c * self.g, n_excitations=self.n_excitations)


@dataclass(frozen=True)
class PhaseGrid:
    """Order parameters and phase labels on the sweep grid.

    Arrays are indexed ``[i_delta, i_j]``; ``deltas`` and ``js`` hold the
    axis values in units of ``g``.
    """

    spec: SweepSpec
    deltas: np.ndarray
    js: np.ndarray
    var_n1: np.ndarray
    var_na1: np.ndarray
    product: np.ndarray
    labels: np.ndarray


def classify(var_n1: float, var_na1: float,
             thresholds: ClassificationThresholds) -> str:
    """Phase label for one pair of order parameters."""
    if var_n1 < 0 or var_na1 < 0:
        raise ValueError(f"variances must be non-negative, got ({var_n1}, {var_na1})")
    superfluid = var_n1 > thresholds.superfluid_eps
    polaritonic = var_na1 > thresholds.polariton_eps
    if superfluid:
        return PHASE_POLARITONIC_SUPERFLUID if polaritonic else PHASE_PHOTONIC_SUPERFLUID
    return PHASE_POLARITONIC_INSULATOR if polaritonic else PHASE_ATOMIC_INSULATOR


def sweep(spec: SweepSpec, tol: float = DEFAULT_TOL,
          max_sweeps: int = DEFAULT_MAX_SWEEPS) -> PhaseGrid:
    """Evaluate the ground-state order parameters on every grid cell."""
    if spec.full_model:
        basis = enumerate_full_basis(spec.n_excitations)
        build = build_full_hamiltonian
    else:
        basis = enumerate_effective_basis(spec.n_excitations)
        build = build_effective_hamiltonian

    deltas = spec.deltas()
    js = spec.js()
    cells = [(d, j) for d in deltas for j in js]
    stack = np.stack([build(spec.cell_params(d, j), basis) for d, j in cells])

    try:
        values, vectors = eigen_decompose_batch(stack, tol=tol, max_sweeps=max_sweeps)
    except JacobiConvergenceError as err:
        bad = err.indices if err.indices is not None else []
        where = ", ".join(f"(delta={cells[i][0]:g}, j={cells[i][1]:g})"
                          for i in bad[:5])
        raise JacobiConvergenceError(
            f"sweep failed to converge at cells {where}: {err}",
            indices=err.indices, off_norms=err.off_norms) from err

    res = spec.resolution
    var_n1 = np.empty((res, res))
    var_na1 = np.empty((res, res))
    labels = np.empty((res, res), dtype=object)
    for c, (d, j) in enumerate(cells):
        matrix = stack[c]
        residual = float(np.linalg.norm(
            matrix @ vectors[c] - vectors[c] * values[c][None, :], axis=0).max())
        spectrum = Spectrum(values[c], vectors[c], residual)
        ground = ground_state(spectrum, degeneracy_tol=DEFAULT_DEGENERACY_TOL)
        i, k = divmod(c, res)
        var_n1[i, k] = excitation_variance(ground.vector, basis)
        var_na1[i, k] = atomic_excitation_variance(ground.vector, basis)
        labels[i, k] = classify(var_n1[i, k], var_na1[i, k], spec.thresholds)

    return PhaseGrid(spec=spec, deltas=deltas, js=js, var_n1=var_n1,
                     var_na1=var_na1, product=var_n1 * var_na1, labels=labels)


def boundary_from_grid(grid: PhaseGrid):
    """Insulator-to-superfluid crossing per detuning column.

    For each column the crossing is the smallest grid ``j`` whose cell is
    superfluid-labeled, provided the column actually starts insulating at
    ``j_min``; columns that are superfluid from the start, or never become
    superfluid, carry a NaN sentinel.
    """
    eps = grid.spec.thresholds.superfluid_eps
    trace = []
    for i, delta in enumerate(grid.deltas):
        superfluid = grid.var_n1[i, :] > eps
        if superfluid.any() and not superfluid[0]:
            j_star = float(grid.js[int(np.argmax(superfluid))])
        else:
            j_star = float("nan")
        trace.append((float(delta), j_star))
    return trace


def boundary_trace(spec: SweepSpec):
    """Run a sweep and extract the insulator/superfluid boundary."""
    return boundary_from_grid(sweep(spec))
