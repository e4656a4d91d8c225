"""Closed-form single-cavity polariton quantities.

Within one cavity the bright collective atom hybridizes with the mode.  At
excitation ``n`` the two polariton branches mix with angle
``theta_n = atan2(2*sqrt(2)*g*sqrt(n), delta + j)``.  The two-argument
arctangent keeps ``theta_n`` in (0, pi), so the branch amplitudes vary
continuously through resonance instead of jumping when ``delta + j``
changes sign.  At exact resonance both amplitudes equal ``1/sqrt(2)``.

These expressions double as an independent oracle for the numerical layer:
with the hopping switched off, every sector eigenvalue of the reduced model
is a sum of two single-cavity polariton energies.
"""

from __future__ import annotations

import dataclasses
import math
from dataclasses import dataclass

import numpy as np

from .model import SQRT2, ModelParams

MINUS = "-"
PLUS = "+"
BRANCHES = (MINUS, PLUS)


@dataclass(frozen=True)
class DressedState:
    """One polariton branch at excitation ``n``.

    ``amplitudes`` holds the coefficients on ``|e, n-1>`` and ``|g, n>``;
    they are unit-norm by construction.
    """

    n: int
    branch: str
    mixing_angle: float
    amplitudes: tuple


@dataclass(frozen=True)
class GapSet:
    """The four gaps between adjacent uncoupled two-excitation levels."""

    de1: float
    de2: float
    de3: float
    de4: float

    def as_tuple(self):
        return (self.de1, self.de2, self.de3, self.de4)


def mixing_angle(n: int, params: ModelParams) -> float:
    """Polariton mixing angle theta_n in (0, pi)."""
    if n < 1:
        raise ValueError(f"mixing angle needs n >= 1, got {n}")
    return math.atan2(2.0 * SQRT2 * params.g * math.sqrt(n), params.delta + params.j)


def dressed_state(n: int, branch: str, params: ModelParams) -> DressedState:
    """Amplitudes of the |n-> or |n+> polariton on (|e, n-1>, |g, n>)."""
    theta = mixing_angle(n, params)
    half = 0.5 * theta
    if branch == MINUS:
        amplitudes = (math.sin(half), -math.cos(half))
    elif branch == PLUS:
        amplitudes = (math.cos(half), math.sin(half))
    else:
        raise ValueError(f"branch must be '-' or '+', got {branch!r}")
    return DressedState(n=n, branch=branch, mixing_angle=theta, amplitudes=amplitudes)


def dressed_energy(n: int, branch: str, params: ModelParams) -> float:
    """Single-cavity polariton energy; the empty cavity has energy zero."""
    if n < 0:
        raise ValueError(f"excitation must be >= 0, got {n}")
    if n == 0:
        return 0.0
    if branch not in BRANCHES:
        raise ValueError(f"branch must be '-' or '+', got {branch!r}")
    x = params.delta + params.j
    root = math.sqrt(x * x + 8.0 * params.g ** 2 * n)
    sign = -1.0 if branch == MINUS else 1.0
    return n * params.omega_c + 0.5 * x + 0.5 * sign * root


def uncoupled_sector_energies(params: ModelParams) -> np.ndarray:
    """Sorted eigenenergies of the two-cavity sector at zero hopping.

    Assembled from sums of single-cavity polariton energies over all ways to
    split ``n_excitations`` between the cavities; with hopping off this is
    the exact sector spectrum and serves as the cross-check for the
    numerical diagonalization.
    """
    n = params.n_excitations
    energies = []
    for k1 in range(n + 1):
        k2 = n - k1
        for b1 in (BRANCHES if k1 > 0 else (MINUS,)):
            for b2 in (BRANCHES if k2 > 0 else (MINUS,)):
                energies.append(dressed_energy(k1, b1, params)
                                + dressed_energy(k2, b2, params))
    return np.sort(np.asarray(energies))


def energy_gaps(params: ModelParams) -> GapSet:
    """Gaps between the five uncoupled two-excitation levels.

    All four are positive for every real ``delta + j``; de1 and de4 swap
    roles under a sign flip of ``delta + j``, while de2 + de3 equals
    ``sqrt((delta+j)^2 + 16 g^2)`` and de2 - de3 equals ``delta + j``.
    """
    x = params.delta + params.j
    g2 = params.g ** 2
    r8 = math.sqrt(x * x + 8.0 * g2)
    r16 = math.sqrt(x * x + 16.0 * g2)
    return GapSet(
        de1=r8 - 0.5 * (r16 + x),
        de2=0.5 * (x + r16),
        de3=0.5 * (r16 - x),
        de4=r8 - 0.5 * (r16 - x),
    )


def gap_curve(j_min: float, j_max: float, resolution: int,
              params: ModelParams) -> np.ndarray:
    """Table of the four gaps on a uniform dipole-coupling grid.

    Returns an array of shape ``(resolution, 5)`` with columns
    ``(j, de1, de2, de3, de4)``; the detuning and coupling are taken from
    ``params`` with its ``j`` replaced by each grid value.
    """
    if resolution < 2:
        raise ValueError(f"resolution must be >= 2, got {resolution}")
    if not j_max > j_min:
        raise ValueError(f"empty range: j_max={j_max} must exceed j_min={j_min}")
    rows = np.empty((resolution, 5))
    for i, j_val in enumerate(np.linspace(j_min, j_max, resolution)):
        gaps = energy_gaps(dataclasses.replace(params, j=float(j_val)))
        rows[i] = (j_val, *gaps.as_tuple())
    return rows
