"""Exact diagonalization of two photon-coupled cavities, each holding a
dipole-coupled pair of two-level atoms.

The package builds excitation-conserving Hamiltonians for the reduced
(bright-atom) and full (four-atom) models, diagonalizes them with a
self-contained Jacobi eigensolver, measures polariton-subspace weights,
excitation character and number variances on the ground state, and sweeps
the (detuning, dipole-coupling) plane to map the four ground-state phases.
"""

from .analytics import (BRANCHES, MINUS, PLUS, DressedState, GapSet,
                        dressed_energy, dressed_state, energy_gaps, gap_curve,
                        mixing_angle, uncoupled_sector_energies)
from .eigen import (DEFAULT_DEGENERACY_TOL, DEFAULT_MAX_SWEEPS, DEFAULT_TOL,
                    GroundState, JacobiConvergenceError, Spectrum,
                    eigen_decompose, eigen_decompose_batch, ground_state,
                    offdiagonal_norm)
from .model import (Basis, DipoleGeometry, EffectiveBasisState, FullBasisState,
                    ModelParams, build_effective_hamiltonian,
                    build_full_hamiltonian, dipole_coupling_strength,
                    enumerate_effective_basis, enumerate_full_basis,
                    symmetric_truncated_embedding)
from .observables import (ExcitationCharacter, GroundStateReport,
                          OrderParameters, SubspaceProbabilities,
                          atomic_excitation_variance, dressed_product_vectors,
                          excitation_character, excitation_distribution,
                          excitation_variance, ground_state_report,
                          order_parameters, subspace_probabilities)
from .sweep import (PHASE_ATOMIC_INSULATOR, PHASE_LABELS,
                    PHASE_PHOTONIC_SUPERFLUID, PHASE_POLARITONIC_INSULATOR,
                    PHASE_POLARITONIC_SUPERFLUID, ClassificationThresholds,
                    PhaseGrid, SweepSpec, boundary_from_grid, boundary_trace,
                    classify, sweep)

__version__ = "0.1.0"
