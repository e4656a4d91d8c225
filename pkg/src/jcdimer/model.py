"""Model definition: parameters, excitation-sector bases, Hamiltonian matrices.

The system is a pair of identical single-mode cavities coupled by photon
hopping ``A``.  Each cavity holds two identical two-level atoms that share a
dipole-dipole exchange coupling ``J`` and couple to the cavity mode with
strength ``g``.  Rotating each atom pair into its symmetric/antisymmetric
combinations leaves one "bright" collective atom per cavity at frequency
``omega_a + J`` with enhanced coupling ``sqrt(2)*g``; the antisymmetric
combination and the doubly excited pair state decouple from the mode.  Two
Hamiltonian builders are provided:

* :func:`build_effective_hamiltonian` -- the reduced model with one bright
  two-level atom per cavity, basis states ``|s1 n1 s2 n2>``,
* :func:`build_full_hamiltonian` -- the four-atom model, basis states
  ``|e1 e2 n1 e3 e4 n2>``.

:func:`symmetric_truncated_embedding` maps the reduced basis isometrically
into the four-atom space.  Pulling the full matrix back through it
reproduces the reduced matrix element by element, which is the central
consistency check of this package.

Both Hamiltonians commute with the total excitation number (counting all
four atoms), so every matrix is built inside one fixed-excitation sector
and no photon cutoff is required: ``n_photons <= n_excitations`` follows
automatically.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterator, NamedTuple

import numpy as np

SQRT2 = math.sqrt(2.0)


@dataclass(frozen=True)
class ModelParams:
    """Physical constants of the coupled-cavity system (hbar = 1).

    ``g`` is the single-atom coupling and sets the natural energy unit; it
    must be positive.  ``j`` is the in-cavity dipole-dipole exchange, ``a``
    the inter-cavity photon hopping.  ``omega_c`` defaults to zero: inside a
    fixed-excitation sector it only shifts all eigenvalues by
    ``n_excitations * omega_c``.
    """

    omega_c: float = 0.0
    omega_a: float = 0.0
    g: float = 1.0
    j: float = 0.0
    a: float = 0.0
    n_excitations: int = 2

    def __post_init__(self):
        if not self.g > 0:
            raise ValueError(f"atom-field coupling g must be positive, got {self.g}")
        if self.n_excitations < 0:
            raise ValueError(f"n_excitations must be >= 0, got {self.n_excitations}")

    @property
    def delta(self) -> float:
        """Atom-field detuning omega_a - omega_c."""
        return self.omega_a - self.omega_c

    @classmethod
    def from_detuning(cls, delta=0.0, j=0.0, a=0.0, g=1.0, omega_c=0.0,
                      n_excitations=2) -> "ModelParams":
        """Build parameters from the detuning instead of the bare atomic frequency."""
        return cls(omega_c=omega_c, omega_a=omega_c + delta, g=g, j=j, a=a,
                   n_excitations=n_excitations)


@dataclass(frozen=True)
class DipoleGeometry:
    """Relative geometry of the two dipoles in one cavity.

    ``angle`` is measured between the interatomic axis and the (parallel)
    dipole moments, in radians.
    """

    dipole_moment_sq: float
    separation: float
    angle: float = math.pi / 2

    def __post_init__(self):
        if not self.separation > 0:
            raise ValueError(f"separation must be positive, got {self.separation}")


def dipole_coupling_strength(geom: DipoleGeometry, perpendicular: bool = False) -> float:
    """Dipole-dipole exchange energy ``|d|^2 (1 - 3 cos^2 theta) / r^3``.

    With ``perpendicular`` set, the dipoles are taken orthogonal to the
    interatomic axis and the angular factor drops out, leaving ``|d|^2 / r^3``.
    """
    r3 = geom.separation ** 3
    if perpendicular:
        return geom.dipole_moment_sq / r3
    return geom.dipole_moment_sq * (1.0 - 3.0 * math.cos(geom.angle) ** 2) / r3


class EffectiveBasisState(NamedTuple):
    """Product state |s1 n1> x |s2 n2> of one bright atom plus mode per cavity."""

    s1: int
    n1: int
    s2: int
    n2: int

    @property
    def total(self) -> int:
        return self.s1 + self.n1 + self.s2 + self.n2

    @property
    def photons(self) -> int:
        return self.n1 + self.n2

    @property
    def atomic(self) -> int:
        return self.s1 + self.s2

    def cavity_excitation(self, cavity: int) -> int:
        return self.s1 + self.n1 if cavity == 1 else self.s2 + self.n2

    def cavity_atomic(self, cavity: int) -> int:
        return self.s1 if cavity == 1 else self.s2


class FullBasisState(NamedTuple):
    """Product state |e1 e2 n1> x |e3 e4 n2> of both atom pairs plus modes."""

    e1: int
    e2: int
    n1: int
    e3: int
    e4: int
    n2: int

    @property
    def total(self) -> int:
        return self.e1 + self.e2 + self.n1 + self.e3 + self.e4 + self.n2

    @property
    def photons(self) -> int:
        return self.n1 + self.n2

    @property
    def atomic(self) -> int:
        return self.e1 + self.e2 + self.e3 + self.e4

    def cavity_excitation(self, cavity: int) -> int:
        if cavity == 1:
            return self.e1 + self.e2 + self.n1
        return self.e3 + self.e4 + self.n2

    def cavity_atomic(self, cavity: int) -> int:
        return self.e1 + self.e2 if cavity == 1 else self.e3 + self.e4


class Basis:
    """Canonically ordered basis of one total-excitation sector.

    States are sorted lexicographically by their field tuple, so two
    enumerations of the same sector are always identical.  ``lookup`` is the
    inverse of indexing.
    """

    def __init__(self, kind: str, n_excitations: int, states):
        self.kind = kind
        self.n_excitations = n_excitations
        self.states = tuple(states)
        self.index = {state: i for i, state in enumerate(self.states)}
        if len(self.index) != len(self.states):
            raise ValueError("duplicate states in basis")

    def __len__(self) -> int:
        return len(self.states)

    def __iter__(self) -> Iterator:
        return iter(self.states)

    def __getitem__(self, i: int):
        return self.states[i]

    def lookup(self, state) -> int:
        return self.index[state]

    def __repr__(self) -> str:
        return f"Basis(kind={self.kind!r}, n_excitations={self.n_excitations}, dim={len(self)})"


def enumerate_effective_basis(n_excitations: int) -> Basis:
    """All bright-atom/photon product states with the given total excitation.

    The two-excitation sector has dimension 8: the per-cavity excitation
    splits as (0,2), (1,1) or (2,0) with 1, 2 and 2 states per cavity.
    """
    if n_excitations < 0:
        raise ValueError(f"n_excitations must be >= 0, got {n_excitations}")
    states = []
    for s1 in (0, 1):
        for s2 in (0, 1):
            for n1 in range(n_excitations - s1 - s2 + 1):
                n2 = n_excitations - s1 - s2 - n1
                states.append(EffectiveBasisState(s1, n1, s2, n2))
    states.sort()
    return Basis("effective", n_excitations, states)


def enumerate_full_basis(n_excitations: int) -> Basis:
    """All four-atom/photon product states with the given total excitation.

    The two-excitation sector has dimension 17 (per-cavity multiplicities
    1, 3, 4 for local excitation 0, 1, 2).
    """
    if n_excitations < 0:
        raise ValueError(f"n_excitations must be >= 0, got {n_excitations}")
    states = []
    for e1 in (0, 1):
        for e2 in (0, 1):
            for e3 in (0, 1):
                for e4 in (0, 1):
                    atoms = e1 + e2 + e3 + e4
                    for n1 in range(n_excitations - atoms + 1):
                        n2 = n_excitations - atoms - n1
                        states.append(FullBasisState(e1, e2, n1, e3, e4, n2))
    states.sort()
    return Basis("full", n_excitations, states)


def _require_basis(basis: Basis, kind: str, params: ModelParams):
    if basis.kind != kind:
        raise ValueError(f"expected a {kind} basis, got {basis.kind}")
    if basis.n_excitations != params.n_excitations:
        raise ValueError(
            f"basis sector N={basis.n_excitations} does not match "
            f"params.n_excitations={params.n_excitations}")


def build_effective_hamiltonian(params: ModelParams, basis: Basis) -> np.ndarray:
    """Matrix of the reduced two-cavity model in the given sector basis.

    Diagonal: ``omega_c*(n1+n2) + (omega_a+J)*(s1+s2)``.  Off-diagonal: the
    bright-atom coupling ``sqrt(2)*g*sqrt(n)`` between ``|1, n-1>`` and
    ``|0, n>`` in each cavity, and the photon hopping ``A*sqrt((n1+1)*n2)``
    between ``(n1, n2)`` and ``(n1+1, n2-1)``.  The returned matrix is
    exactly symmetric: both triangles are assigned the same float.
    """
    _require_basis(basis, "effective", params)
    atom_energy = params.omega_a + params.j
    h = np.zeros((len(basis), len(basis)))
    for i, st in enumerate(basis):
        h[i, i] = params.omega_c * st.photons + atom_energy * st.atomic
        if st.s1 == 1:
            k = basis.lookup(EffectiveBasisState(0, st.n1 + 1, st.s2, st.n2))
            val = SQRT2 * params.g * math.sqrt(st.n1 + 1)
            h[i, k] = val
            h[k, i] = val
        if st.s2 == 1:
            k = basis.lookup(EffectiveBasisState(st.s1, st.n1, 0, st.n2 + 1))
            val = SQRT2 * params.g * math.sqrt(st.n2 + 1)
            h[i, k] = val
            h[k, i] = val
        if st.n2 >= 1:
            k = basis.lookup(EffectiveBasisState(st.s1, st.n1 + 1, st.s2, st.n2 - 1))
            val = params.a * math.sqrt((st.n1 + 1) * st.n2)
            h[i, k] = val
            h[k, i] = val
    return h


_CAVITY1_ATOMS = ("e1", "e2")
_CAVITY2_ATOMS = ("e3", "e4")


def build_full_hamiltonian(params: ModelParams, basis: Basis) -> np.ndarray:
    """Matrix of the four-atom model in the given sector basis.

    Every atom couples to its own cavity mode with the bare strength ``g``
    (the sqrt(2) enhancement of the bright combination is not inserted by
    hand; it emerges from diagonalization).  The in-cavity atom pairs
    exchange excitation with amplitude ``J``, and the modes hop with ``A``.
    """
    _require_basis(basis, "full", params)
    h = np.zeros((len(basis), len(basis)))
    for i, st in enumerate(basis):
        h[i, i] = params.omega_c * st.photons + params.omega_a * st.atomic
        for name in _CAVITY1_ATOMS:
            if getattr(st, name) == 1:
                k = basis.lookup(st._replace(**{name: 0}, n1=st.n1 + 1))
                val = params.g * math.sqrt(st.n1 + 1)
                h[i, k] = val
                h[k, i] = val
        for name in _CAVITY2_ATOMS:
            if getattr(st, name) == 1:
                k = basis.lookup(st._replace(**{name: 0}, n2=st.n2 + 1))
                val = params.g * math.sqrt(st.n2 + 1)
                h[i, k] = val
                h[k, i] = val
        if st.e1 == 1 and st.e2 == 0:
            k = basis.lookup(st._replace(e1=0, e2=1))
            h[i, k] = params.j
            h[k, i] = params.j
        if st.e3 == 1 and st.e4 == 0:
            k = basis.lookup(st._replace(e3=0, e4=1))
            h[i, k] = params.j
            h[k, i] = params.j
        if st.n2 >= 1:
            k = basis.lookup(st._replace(n1=st.n1 + 1, n2=st.n2 - 1))
            val = params.a * math.sqrt((st.n1 + 1) * st.n2)
            h[i, k] = val
            h[k, i] = val
    return h


def symmetric_truncated_embedding(full_basis: Basis, effective_basis: Basis) -> np.ndarray:
    """Isometry from the reduced basis into the four-atom space.

    A bright-atom excitation maps to the symmetric pair state
    ``(|eg> + |ge>)/sqrt(2)`` of its cavity; the ground bright atom maps to
    ``|gg>``.  Doubly excited pairs ``|ee>`` and antisymmetric combinations
    lie outside the embedded subspace, so the map is a truncation, not a
    change of basis.  Returns the matrix ``V`` with one column per reduced
    state; ``V.T @ H_full @ V`` equals the reduced Hamiltonian matrix.
    """
    if full_basis.kind != "full":
        raise ValueError(f"expected a full basis, got {full_basis.kind}")
    if effective_basis.kind != "effective":
        raise ValueError(f"expected an effective basis, got {effective_basis.kind}")
    if full_basis.n_excitations != effective_basis.n_excitations:
        raise ValueError("bases belong to different excitation sectors")

    half = 1.0 / SQRT2
    v = np.zeros((len(full_basis), len(effective_basis)))
    for col, st in enumerate(effective_basis):
        pair1 = [((0, 0), 1.0)] if st.s1 == 0 else [((1, 0), half), ((0, 1), half)]
        pair2 = [((0, 0), 1.0)] if st.s2 == 0 else [((1, 0), half), ((0, 1), half)]
        for (e1, e2), amp1 in pair1:
            for (e3, e4), amp2 in pair2:
                row = full_basis.lookup(FullBasisState(e1, e2, st.n1, e3, e4, st.n2))
                v[row, col] = amp1 * amp2
    return v
