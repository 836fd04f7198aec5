"""Brute-force verification paths, independent of the production formulas.

Independence rules: factorial weights come from exact big-integer arithmetic,
Laguerre polynomials from the explicit alternating sum (never the production
recurrence), coefficient extraction from Gauss-Laguerre quadrature (never the
closed form), and multi-collision checks from literal double sums.  Oracles
may be slow; they exist to catch transcription errors, which show up as O(1)
residuals against the tolerances used here.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

import mpmath as mp
import numpy as np

from . import evolution, projection
from .constants import CONSTANTS
from .special import adaptive_gauss_laguerre, gauss_laguerre_nodes

EXPANSION_TOLERANCE = 1e-8
QUADRATURE_TOLERANCE = 1e-7
ALGEBRAIC_TOLERANCE = 1e-12
COEFFICIENT_FLOOR = 1e-12


@dataclass(frozen=True)
class VerificationReport:
    """Outcome of one verification sweep; passed iff the measured error is
    within tolerance."""

    check_name: str
    grid_description: str
    max_relative_error: float
    tolerance: float
    passed: bool
    detail_rows: tuple = field(default=())

    @classmethod
    def from_error(cls, check_name: str, grid_description: str,
                   max_relative_error: float, tolerance: float,
                   detail_rows: tuple = ()) -> "VerificationReport":
        return cls(
            check_name=check_name,
            grid_description=grid_description,
            max_relative_error=max_relative_error,
            tolerance=tolerance,
            passed=max_relative_error <= tolerance,
            detail_rows=detail_rows,
        )


def explicit_laguerre(n: int, alpha: int, x):
    """L_n^alpha by the explicit sum over exact binomial coefficients,
    sum_i (-1)^i C(n + alpha, n - i) x^i / i!.

    Cross-check path only.  Every float input is a dyadic rational, so the
    Horner pass runs in exact rational arithmetic and the returned value is
    the true polynomial value up to one final rounding; the alternating sum
    never gets a chance to cancel in floating point.  Slow by construction.
    """
    if n < 0:
        raise ValueError(f"degree must be >= 0, got {n}")
    x = np.asarray(x, dtype=float)
    if n == 0:
        return np.ones_like(x)
    top = n + alpha
    coeffs = [
        Fraction((-1) ** i * (math.comb(top, n - i) if 0 <= n - i <= top else 0),
                 math.factorial(i))
        for i in range(n + 1)
    ]
    out = np.empty_like(x)
    flat = x.reshape(-1)
    flat_out = out.reshape(-1)
    for index, value in enumerate(flat):
        point = Fraction(float(value))
        acc = Fraction(0)
        for c in reversed(coeffs):  # Horner, highest power first
            acc = acc * point + c
        flat_out[index] = float(acc)
    return out


def exact_log_level_weight(n: int) -> float:
    """ln(n * n!) through exact big-integer factorials."""
    if n < 1:
        raise ValueError(f"level must be >= 1, got {n}")
    return math.log(n * math.factorial(n))


@lru_cache(maxsize=128)
def _explicit_laguerre_at_nodes(degree: int, shift: float, count: int) -> tuple:
    """L_degree^1 evaluated by explicit summation at the ``count``-node
    Gauss-Laguerre abscissas, offset by ``shift``.

    The alternating sum loses about half a digit per unit of degree at its
    worst, far beyond double precision by degree ~30, so the Horner pass runs
    in mpmath with one digit of headroom per degree; each value is exact to
    its double rounding.  Returned as a tuple so the cache stays immutable.
    """
    x, _ = gauss_laguerre_nodes(count)
    with mp.workdps(30 + degree):
        coeffs = [mp.mpf((-1) ** i * math.comb(degree + 1, degree - i))
                  / mp.factorial(i) for i in range(degree + 1)]
        offset = mp.mpf(shift)
        out = []
        for node in x:
            arg = mp.mpf(float(node)) + offset
            acc = mp.mpf(0)
            for c in reversed(coeffs):
                acc = acc * arg + c
            out.append(float(acc))
    return tuple(out)


def coefficient_by_quadrature(n0: int, x0: float, n: int,
                              rtol: float = 1e-10) -> float:
    """Level-n coefficient of the displaced state, by numerical integration.

    The shared-k0 family is unit-norm but not orthogonal under r^2 dr, so the
    projection uses its biorthogonal dual: in the substituted variable
    x = k0 r the extraction reads

        C_n = (n!/(n0*n0!)) exp(-x0/2)
              * integral_0^inf x e^{-x} L_{n-1}^1(x) L_{n0-1}^1(x + x0) dx

    which recovers the closed form exactly (and 0 for n > n0).  Integrand
    polynomials come from :func:`explicit_laguerre`; the weight from exact
    factorials.
    """
    if n0 < 1 or n < 1 or x0 < 0:
        raise ValueError("need n0 >= 1, n >= 1, x0 >= 0")

    def g(x):
        count = len(x)
        own = np.array(_explicit_laguerre_at_nodes(n - 1, 0.0, count))
        shifted = np.array(_explicit_laguerre_at_nodes(n0 - 1, float(x0), count))
        return x * own * shifted

    integral = adaptive_gauss_laguerre(g, rtol=rtol)
    log_weight = math.log(math.factorial(n)) - math.log(n0 * math.factorial(n0))
    return math.exp(log_weight - x0 / 2.0) * integral


def double_scatter_direct(n0: int, x0: float, n: int) -> float:
    """Coefficient after two identical collisions via the literal double sum:

        C_n = e^{-x0} (n*n!/(n0*n0!))
              sum_{n'=n}^{n0} L_{n0-n'}^{-1}(x0) L_{n'-n}^{-1}(x0)
    """
    if not 1 <= n <= n0:
        raise ValueError(f"need 1 <= n <= n0, got n={n}, n0={n0}")
    total = 0.0
    for np_ in range(n, n0 + 1):
        total += float(explicit_laguerre(n0 - np_, -1, x0)) * \
            float(explicit_laguerre(np_ - n, -1, x0))
    weight = math.exp(exact_log_level_weight(n) - exact_log_level_weight(n0))
    return math.exp(-x0) * weight * total


def verify_expansion_identity(n0_max: int, x0_grid) -> VerificationReport:
    """Shifted wavefunction vs its finite expansion, pointwise on a radial
    grid out to 40 n0 a0."""
    if n0_max < 1:
        raise ValueError(f"n0_max must be >= 1, got {n0_max}")
    worst = 0.0
    x0_grid = tuple(float(v) for v in x0_grid)
    for n0 in range(1, n0_max + 1):
        atom = projection.AtomSpec.from_nucleus_mass(n0, 1.66e-27)
        grid = np.linspace(0.0, 40.0 * n0 * CONSTANTS.bohr_radius, 64)
        for x0 in x0_grid:
            d = projection.Displacement(r_d=x0 / atom.k0, x0=x0)
            worst = max(worst,
                        projection.expansion_identity_residual(atom, d, grid))
    return VerificationReport.from_error(
        check_name="expansion_identity",
        grid_description=f"n0 in 1..{n0_max}, x0 in {x0_grid}, "
                         "64-point radial grid on [0, 40 n0 a0]",
        max_relative_error=worst,
        tolerance=EXPANSION_TOLERANCE,
    )


def verify_coefficients_vs_quadrature(n0: int, x0: float) -> VerificationReport:
    """Closed-form coefficients against quadrature for every retained level
    with |C_n| above the comparison floor, plus two levels above n0 checked
    against zero."""
    atom = projection.AtomSpec.from_nucleus_mass(n0, 1.66e-27)
    d = projection.Displacement(r_d=x0 / atom.k0, x0=x0)
    closed = projection.single_scatter_coefficients(atom, d)
    worst = 0.0
    for n in range(1, n0 + 1):
        reference = closed.coefficient(n)
        if abs(reference) <= COEFFICIENT_FLOOR:
            continue
        numeric = coefficient_by_quadrature(n0, x0, n)
        worst = max(worst, abs(numeric - reference) / abs(reference))
    for n in (n0 + 1, n0 + 2):
        worst = max(worst, abs(coefficient_by_quadrature(n0, x0, n)))
    return VerificationReport.from_error(
        check_name="coefficients_vs_quadrature",
        grid_description=f"n0={n0}, x0={x0}, levels with |C| > {COEFFICIENT_FLOOR} "
                         "plus two vanishing levels above n0",
        max_relative_error=worst,
        tolerance=QUADRATURE_TOLERANCE,
    )


def verify_multiscatter(n0: int, x0: float, l_max: int) -> VerificationReport:
    """Matrix powers of the transfer operator against the closed forms.

    Asserted within tolerance: the survival closed form for every l, the
    two-collision double sum, and the neighbor closed form at l = 1.  The
    neighbor residuals for l = 2..l_max are attached as informational detail
    rows regardless of size.
    """
    if l_max < 1:
        raise ValueError(f"l_max must be >= 1, got {l_max}")
    atom = projection.AtomSpec.from_nucleus_mass(n0, 1.66e-27)
    d = projection.Displacement(r_d=x0 / atom.k0, x0=x0)
    worst = 0.0
    neighbor_rows = []
    for l in range(1, l_max + 1):
        state = evolution.coefficients_after_collisions(atom, d, l)
        survival_closed = evolution.survival_after_collisions(atom, d, l)
        worst = max(worst, abs(state.survival - survival_closed)
                    / max(abs(survival_closed), 1e-300))
        if n0 >= 2:
            neighbor_closed = evolution.neighbor_coefficient_after_collisions(
                atom, d, l)
            matrix_value = state.coefficient(n0 - 1)
            residual = abs(matrix_value - neighbor_closed) / \
                max(abs(neighbor_closed), 1e-300)
            neighbor_rows.append((l, matrix_value, neighbor_closed, residual))
            if l == 1:
                worst = max(worst, residual)
    # two-collision cross-check against the literal double sum
    state2 = evolution.coefficients_after_collisions(atom, d, 2)
    for n in range(1, n0 + 1):
        direct = double_scatter_direct(n0, x0, n)
        if abs(direct) <= COEFFICIENT_FLOOR:
            continue
        worst = max(worst, abs(state2.coefficient(n) - direct) / abs(direct))
    return VerificationReport.from_error(
        check_name="multiscatter_consistency",
        grid_description=f"n0={n0}, x0={x0}, l in 1..{l_max}; survival closed "
                         "form, two-collision double sum, neighbor at l=1; "
                         "neighbor residuals for l >= 2 attached as detail",
        max_relative_error=worst,
        tolerance=ALGEBRAIC_TOLERANCE,
        detail_rows=tuple(neighbor_rows),
    )


def run_all(inject_fault: bool = False) -> list[VerificationReport]:
    """Full default verification sweep.

    ``inject_fault`` deliberately corrupts the first check's measured error;
    it exists as a negative control so callers can prove their failure
    handling works.
    """
    reports = [
        verify_expansion_identity(30, (0.01, 0.1, 0.5, 1.0)),
        verify_coefficients_vs_quadrature(20, 0.5),
        verify_multiscatter(12, 0.2, 20),
    ]
    if inject_fault:
        first = reports[0]
        reports[0] = VerificationReport.from_error(
            check_name=first.check_name,
            grid_description=first.grid_description + " [fault injected]",
            max_relative_error=first.tolerance * 10.0 + first.max_relative_error,
            tolerance=first.tolerance,
            detail_rows=first.detail_rows,
        )
    return reports
