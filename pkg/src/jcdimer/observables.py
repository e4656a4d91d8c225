"""Ground-state diagnostics.

Three families of observables characterize a sector ground state:

* weights of the five polariton product subspaces that organize the
  two-excitation sector (1 + 2 + 2 + 2 + 1 states, resolving the identity),
* the photonic / atomic / mixed character of the bare-basis amplitudes,
* the per-cavity excitation-number variances used as order parameters:
  ``var_n1`` (total excitation of cavity 1) separates number-sharp,
  insulator-like ground states from delocalized, superfluid-like ones, and
  ``var_na1`` (atomic excitation of cavity 1 alone) separates polaritonic
  states from purely photonic or purely atomic ones.

Both number operators are diagonal in the bare product basis, so variances
reduce to moments of the amplitude-squared distribution.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from . import analytics
from .eigen import (DEFAULT_DEGENERACY_TOL, DEFAULT_MAX_SWEEPS, DEFAULT_TOL,
                    eigen_decompose, ground_state)
from .model import (Basis, ModelParams, build_effective_hamiltonian,
                    build_full_hamiltonian, enumerate_effective_basis,
                    enumerate_full_basis, symmetric_truncated_embedding)

NORM_TOL = 1e-8

# The five groups of two-excitation polariton products, ordered by their
# uncoupled energy.  "0" is the empty cavity, "k-"/"k+" the lower/upper
# branch at excitation k.
TWO_EXCITATION_SUBSPACES = (
    (("1-", "1-"),),
    (("2-", "0"), ("0", "2-")),
    (("1-", "1+"), ("1+", "1-")),
    (("2+", "0"), ("0", "2+")),
    (("1+", "1+"),),
)


@dataclass(frozen=True)
class SubspaceProbabilities:
    p1: float
    p2: float
    p3: float
    p4: float
    p5: float

    def as_tuple(self):
        return (self.p1, self.p2, self.p3, self.p4, self.p5)

    @property
    def total(self) -> float:
        return sum(self.as_tuple())


@dataclass(frozen=True)
class ExcitationCharacter:
    p_photonic: float
    p_atomic: float
    p_mixed: float

    def as_tuple(self):
        return (self.p_photonic, self.p_atomic, self.p_mixed)


@dataclass(frozen=True)
class OrderParameters:
    var_n1: float
    var_na1: float
    product: float


@dataclass(frozen=True)
class GroundStateReport:
    """Everything measured on one sector ground state."""

    params: ModelParams
    full_model: bool
    energy: float
    vector: np.ndarray
    degenerate: bool
    probabilities: Optional[SubspaceProbabilities]
    outside: float
    character: ExcitationCharacter
    order: OrderParameters


def _require_unit(vector: np.ndarray, basis: Basis) -> np.ndarray:
    vec = np.asarray(vector, dtype=float)
    if vec.shape != (len(basis),):
        raise ValueError(f"vector shape {vec.shape} does not match basis dim {len(basis)}")
    norm = float(np.linalg.norm(vec))
    if abs(norm - 1.0) > NORM_TOL:
        raise ValueError(f"vector norm {norm} deviates from 1 by more than {NORM_TOL}")
    return vec


def _cavity_amplitudes(label: str, params: ModelParams):
    """Bare (s, n) amplitudes of one cavity factor: '0', 'k-' or 'k+'."""
    if label == "0":
        return (((0, 0), 1.0),)
    n, branch = int(label[:-1]), label[-1]
    dressed = analytics.dressed_state(n, branch, params)
    return (((1, n - 1), dressed.amplitudes[0]), ((0, n), dressed.amplitudes[1]))


def dressed_product_vectors(params: ModelParams, basis: Basis):
    """The 8 orthonormal polariton product vectors of the two-excitation sector.

    Returns a list of (subspace_index, vector) pairs with subspace_index in
    0..4; together the vectors form an orthonormal basis of the sector.
    """
    if basis.kind != "effective" or basis.n_excitations != 2:
        raise ValueError("polariton subspaces are defined on the effective "
                         "two-excitation sector")
    members = []
    for group_index, group in enumerate(TWO_EXCITATION_SUBSPACES):
        for label1, label2 in group:
            vec = np.zeros(len(basis))
            for (s1, n1), amp1 in _cavity_amplitudes(label1, params):
                for (s2, n2), amp2 in _cavity_amplitudes(label2, params):
                    vec[basis.index[(s1, n1, s2, n2)]] = amp1 * amp2
            members.append((group_index, vec))
    return members


def _project_subspaces(coefficients: np.ndarray, params: ModelParams, basis: Basis):
    probs = [0.0] * len(TWO_EXCITATION_SUBSPACES)
    for group_index, member in dressed_product_vectors(params, basis):
        probs[group_index] += float(member @ coefficients) ** 2
    return probs


def subspace_probabilities(vector, params: ModelParams,
                           basis: Basis) -> SubspaceProbabilities:
    """Weights of the five polariton subspaces in a unit-norm sector vector."""
    vec = _require_unit(vector, basis)
    return SubspaceProbabilities(*_project_subspaces(vec, params, basis))


def _classify_state(state) -> int:
    # 0 photonic, 1 atomic, 2 mixed; the empty state counts as photonic
    if state.atomic == 0:
        return 0
    if state.photons == 0:
        return 1
    return 2


def excitation_character(vector, basis: Basis) -> ExcitationCharacter:
    """Photonic / atomic / mixed split of the bare-basis probability.

    A bare state is photonic when every excitation is a photon, atomic when
    every excitation sits in an atom, and mixed otherwise; the three classes
    partition the basis.
    """
    vec = _require_unit(vector, basis)
    sums = [0.0, 0.0, 0.0]
    for amplitude, state in zip(vec, basis):
        sums[_classify_state(state)] += float(amplitude) ** 2
    return ExcitationCharacter(*sums)


def _diagonal_variance(vector, basis: Basis, key) -> float:
    vec = _require_unit(vector, basis)
    values = np.array([key(state) for state in basis], dtype=float)
    weights = vec * vec
    mean = float(weights @ values)
    second = float(weights @ (values * values))
    # exact-zero floor: rounding can leave a tiny negative excess
    return max(0.0, second - mean * mean)


def excitation_variance(vector, basis: Basis, cavity: int = 1) -> float:
    """Variance of the total excitation number of one cavity."""
    return _diagonal_variance(vector, basis, lambda st: st.cavity_excitation(cavity))


def atomic_excitation_variance(vector, basis: Basis, cavity: int = 1) -> float:
    """Variance of the atomic excitation number of one cavity."""
    return _diagonal_variance(vector, basis, lambda st: st.cavity_atomic(cavity))


def excitation_distribution(vector, basis: Basis, cavity: int = 1) -> np.ndarray:
    """Probability of finding k = 0..N excitations in one cavity."""
    vec = _require_unit(vector, basis)
    dist = np.zeros(basis.n_excitations + 1)
    for amplitude, state in zip(vec, basis):
        dist[state.cavity_excitation(cavity)] += float(amplitude) ** 2
    return dist


def order_parameters(vector, basis: Basis) -> OrderParameters:
    var_n1 = excitation_variance(vector, basis, cavity=1)
    var_na1 = atomic_excitation_variance(vector, basis, cavity=1)
    return OrderParameters(var_n1=var_n1, var_na1=var_na1, product=var_n1 * var_na1)


def ground_state_report(params: ModelParams, full_model: bool = False,
                        degeneracy_tol: float = DEFAULT_DEGENERACY_TOL,
                        tol: float = DEFAULT_TOL,
                        max_sweeps: int = DEFAULT_MAX_SWEEPS) -> GroundStateReport:
    """Build, diagonalize and measure the sector ground state.

    With ``full_model`` the four-atom Hamiltonian is used; its polariton
    subspace weights are then measured through the symmetric-truncation
    embedding, and any ground-state weight outside the embedded subspace is
    reported in ``outside``.  Subspace weights are only defined for the
    two-excitation sector; for other sectors ``probabilities`` is None.
    """
    effective_basis = enumerate_effective_basis(params.n_excitations)
    if full_model:
        basis = enumerate_full_basis(params.n_excitations)
        matrix = build_full_hamiltonian(params, basis)
    else:
        basis = effective_basis
        matrix = build_effective_hamiltonian(params, basis)
    spectrum = eigen_decompose(matrix, tol=tol, max_sweeps=max_sweeps)
    ground = ground_state(spectrum, degeneracy_tol=degeneracy_tol)

    probabilities = None
    outside = 0.0
    if params.n_excitations == 2:
        if full_model:
            embedding = symmetric_truncated_embedding(basis, effective_basis)
            coefficients = embedding.T @ ground.vector
        else:
            coefficients = ground.vector
        probs = _project_subspaces(coefficients, params, effective_basis)
        probabilities = SubspaceProbabilities(*probs)
        outside = max(0.0, 1.0 - probabilities.total)

    return GroundStateReport(
        params=params,
        full_model=full_model,
        energy=ground.energy,
        vector=ground.vector,
        degenerate=ground.degenerate,
        probabilities=probabilities,
        outside=outside,
        character=excitation_character(ground.vector, basis),
        order=order_parameters(ground.vector, basis),
    )
