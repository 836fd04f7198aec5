"""Composition of repeated scatterings and the resulting time evolution.

Each scattering applies the same projection map, so the state after l
collisions is the l-th power of a triangular transfer operator acting on the
unit vector at the prepared level.  The operator never re-excites: entries
above the prepared level stay exactly zero under all powers.  Collisions are
treated as statistically independent with no free evolution in between, and
the expected collision count grows linearly, l(t) = sigma * flux * t.

Closed forms for the two leading coefficients after l collisions:

    survival:  exp(-l x0 / 2)
    neighbor:  -l x0 ((n0 - 1)/n0^2) exp(-l x0 / 2)

The neighbor amplitude is *not* exponential in l; the extra factor of l is
the fingerprint that separates this mechanism from plain exponential
decoherence channels.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .projection import AtomSpec, Displacement, RadialSuperposition, \
    single_scatter_coefficients
from .special import laguerre_sequence, log_factorial_ratio


@dataclass(frozen=True)
class TransferMatrix:
    """Single-scatter projection map on the shared-k0 coefficient space.

    entries[i, j] maps level j+1 to level i+1; zero above the diagonal of the
    level ordering (no excitation), and every diagonal entry equals
    exp(-x0/2).
    """

    n0: int
    x0: float
    entries: np.ndarray

    def apply(self, coefficients: np.ndarray) -> np.ndarray:
        return self.entries @ coefficients

    def power_applied(self, count: int, coefficients: np.ndarray) -> np.ndarray:
        if count < 0:
            raise ValueError(f"collision count must be >= 0, got {count}")
        out = np.array(coefficients, dtype=float)
        for _ in range(count):
            out = self.entries @ out
        return out


@dataclass(frozen=True)
class CollisionCount:
    """Expected number of short-range collisions in a time window."""

    l: float
    sigma: float
    flux: float
    t: float


@dataclass(frozen=True)
class EvolutionSeries:
    """Plot-ready time series of the two leading coefficients.

    ``c_n0`` and ``c_n0_minus_1`` are signed amplitudes; ``deficit`` is
    1 - c_n0^2, computed through expm1 so that slow channels keep full
    precision at small times.
    """

    t: np.ndarray
    c_n0: np.ndarray
    c_n0_minus_1: np.ndarray
    deficit: np.ndarray

    def __post_init__(self):
        sizes = {len(self.t), len(self.c_n0), len(self.c_n0_minus_1),
                 len(self.deficit)}
        if len(sizes) != 1:
            raise ValueError("series columns must share one length")


def transfer_matrix(atom: AtomSpec, d: Displacement) -> TransferMatrix:
    """Build the one-scattering map for an atom prepared in any level <= n0.

    Column n' holds the single-scatter coefficients of a state prepared in
    level n', all sharing the x0 of the configured atom; applying the matrix
    to the unit vector at n0 reproduces the closed-form decomposition.
    """
    n0 = atom.n0
    x0 = d.x0
    lag = laguerre_sequence(n0 - 1, -1, x0)
    damp = math.exp(-x0 / 2.0)
    entries = np.zeros((n0, n0))
    for j in range(n0):          # column: source level n' = j + 1
        for i in range(j + 1):   # row: target level n = i + 1
            weight = math.exp(log_factorial_ratio(i + 1, j + 1))
            entries[i, j] = damp * weight * lag[j - i]
    return TransferMatrix(n0=n0, x0=x0, entries=entries)


def coefficients_after_collisions(atom: AtomSpec, d: Displacement,
                                  count: int) -> RadialSuperposition:
    """State coefficients after ``count`` identical collisions, computed by
    repeated triangular matrix-vector products (cost O(count * n0^2))."""
    if count < 0:
        raise ValueError(f"collision count must be >= 0, got {count}")
    if count == 1:
        return single_scatter_coefficients(atom, d)
    unit = np.zeros(atom.n0)
    unit[-1] = 1.0
    matrix = transfer_matrix(atom, d)
    coeffs = matrix.power_applied(count, unit)
    return RadialSuperposition(n0=atom.n0, k0=atom.k0, coefficients=coeffs)


def coefficients_after_sequence(atom: AtomSpec,
                                displacements) -> RadialSuperposition:
    """Same composition with a different displacement per event."""
    coeffs = np.zeros(atom.n0)
    coeffs[-1] = 1.0
    for d in displacements:
        coeffs = transfer_matrix(atom, d).apply(coeffs)
    return RadialSuperposition(n0=atom.n0, k0=atom.k0, coefficients=coeffs)


def survival_after_collisions(atom: AtomSpec, d: Displacement, count: float) -> float:
    """Closed form for the prepared-level coefficient after ``count``
    collisions: exp(-count * x0 / 2).  Accepts non-integer expected counts."""
    if count < 0:
        raise ValueError(f"collision count must be >= 0, got {count}")
    return math.exp(-count * d.x0 / 2.0)


def neighbor_coefficient_after_collisions(atom: AtomSpec, d: Displacement,
                                          count: float) -> float:
    """Closed form for the coefficient one level below after ``count``
    collisions: -count * x0 * ((n0-1)/n0^2) * exp(-count * x0 / 2).

    Linear-times-exponential in the count, never purely exponential; the
    magnitude peaks at count = 2/x0.
    """
    if count < 0:
        raise ValueError(f"collision count must be >= 0, got {count}")
    if atom.n0 < 2:
        raise ValueError("no level below the ground state: need n0 >= 2")
    n0 = atom.n0
    return -count * d.x0 * ((n0 - 1) / n0**2) * math.exp(-count * d.x0 / 2.0)


def collision_count(sigma: float, flux: float, t: float) -> CollisionCount:
    """Expected collisions l = sigma * flux * t for a short-range channel."""
    if sigma < 0 or flux < 0 or t < 0:
        raise ValueError("cross section, flux and time must be >= 0")
    return CollisionCount(l=sigma * flux * t, sigma=sigma, flux=flux, t=t)


def survival_vs_time(atom: AtomSpec, d: Displacement, sigma: float,
                     flux: float, t_grid) -> EvolutionSeries:
    """Coefficient evolution under a steady collision rate.

    Per point: c_n0 = exp(-(x0/2) sigma flux t), the neighbor coefficient from
    its closed form at l = sigma flux t, and deficit = 1 - c_n0^2.  For
    n0 = 1 there is no lower level and the neighbor column is identically 0.
    """
    t = np.asarray(t_grid, dtype=float)
    if t.size == 0:
        raise ValueError("t_grid must be non-empty")
    if np.any(t < 0) or np.any(np.diff(t) < 0):
        raise ValueError("t_grid must be ascending and non-negative")
    l = sigma * flux * t
    c0 = np.exp(-d.x0 * l / 2.0)
    if atom.n0 >= 2:
        c1 = -l * d.x0 * ((atom.n0 - 1) / atom.n0**2) * np.exp(-d.x0 * l / 2.0)
    else:
        c1 = np.zeros_like(t)
    deficit = -np.expm1(-d.x0 * l)
    return EvolutionSeries(t=t, c_n0=c0, c_n0_minus_1=c1, deficit=deficit)
