"""Associated Laguerre polynomials and hydrogen-like s-state radial functions.

The production path for L_n^a is the three-term recurrence, which is stable in
the small-argument regime the displacement model lives in (x = k0*r_d << 1).
The explicit-summation form of the polynomial exists only in :mod:`.oracle`
as an independent cross-check.  Factorial ratios never leave log space, so
principal quantum numbers up to 150 evaluate without overflow.
"""

from __future__ import annotations

import math
from functools import lru_cache

import numpy as np
from scipy.linalg import eigh_tridiagonal


class NumericalConvergenceError(RuntimeError):
    """Quadrature failed to converge; carries the achieved residual."""

    def __init__(self, message: str, achieved: float):
        super().__init__(message)
        self.achieved = achieved


def laguerre(n: int, alpha: int, x):
    """Generalized Laguerre polynomial L_n^alpha evaluated at x.

    Parameters
    ----------
    n : int
        polynomial degree, n >= 0
    alpha : int
        superscript; the model uses -1 and +1, any integer >= -1 works
    x : float or numpy.ndarray
        evaluation points

    Returns
    -------
    float or numpy.ndarray
        L_n^alpha(x) via the recurrence
        L_k = ((2k - 1 + alpha - x) L_{k-1} - (k - 1 + alpha) L_{k-2}) / k,
        seeded with L_0 = 1 and L_1 = 1 + alpha - x.
    """
    if n < 0:
        raise ValueError(f"Laguerre degree must be >= 0, got {n}")
    scalar = np.isscalar(x)
    x = np.asarray(x, dtype=float)
    if n == 0:
        out = np.ones_like(x)
        return float(out) if scalar else out
    prev = np.ones_like(x)
    cur = (1.0 + alpha) - x
    for k in range(2, n + 1):
        prev, cur = cur, ((2 * k - 1 + alpha - x) * cur - (k - 1 + alpha) * prev) / k
    return float(cur) if scalar else cur


def laguerre_sequence(nmax: int, alpha: int, x):
    """All orders L_0^alpha(x) .. L_nmax^alpha(x) from one recurrence pass.

    Returns an array of shape (nmax+1,) for scalar x, or (nmax+1, *x.shape).
    """
    if nmax < 0:
        raise ValueError(f"Laguerre degree must be >= 0, got {nmax}")
    x = np.asarray(x, dtype=float)
    out = np.empty((nmax + 1,) + x.shape)
    out[0] = 1.0
    if nmax == 0:
        return out
    out[1] = (1.0 + alpha) - x
    for k in range(2, nmax + 1):
        out[k] = ((2 * k - 1 + alpha - x) * out[k - 1] - (k - 1 + alpha) * out[k - 2]) / k
    return out


def log_factorial_ratio(m: int, n0: int) -> float:
    """ln(m * m!) - ln(n0 * n0!), the log of the coefficient weight m*m!/(n0*n0!).

    Exponentiation is left to the caller so that tiny ratios (n0 up to 150)
    stay representable.  Identical arguments return exactly 0.0.
    """
    if not 1 <= m <= n0:
        raise ValueError(f"need 1 <= m <= n0, got m={m}, n0={n0}")
    return (math.log(m) + math.lgamma(m + 1)) - (math.log(n0) + math.lgamma(n0 + 1))


def hydrogenic_radial(n: int, k: float, r):
    """Unit-norm l=0 radial function with inverse-length scale k.

    R_n(r) = -(1/(sqrt(2) n)) k^{3/2} exp(-k r / 2) L_{n-1}^{1}(k r)

    Normalized so that the radial probability integral over r^2 dr is 1 for
    any k > 0; the hydrogen eigenstate of level n uses k = 2/(n a0).
    """
    if n < 1:
        raise ValueError(f"principal quantum number must be >= 1, got {n}")
    if k <= 0:
        raise ValueError(f"scale k must be positive, got {k}")
    r = np.asarray(r, dtype=float)
    if np.any(r < 0):
        raise ValueError("radius must be non-negative")
    x = k * r
    value = -(k**1.5) / (math.sqrt(2.0) * n) * np.exp(-x / 2.0) * laguerre(n - 1, 1, x)
    return float(value) if value.ndim == 0 else value


def _christoffel_weights(x: np.ndarray, count: int) -> np.ndarray:
    """Gauss weights w_i = 1 / sum_k p_k(x_i)^2 over the orthonormal Laguerre
    family, accumulated with dynamic rescaling.

    The stock weight formulas (and the library routines built on them)
    overflow beyond ~200 nodes; the Christoffel sum only ever divides, so the
    far-tail weights underflow harmlessly to zero instead.
    """
    prev = np.zeros_like(x)
    cur = np.ones_like(x)
    log_scale = np.zeros_like(x)
    square_sum = np.ones_like(x)
    for k in range(count - 1):
        prev, cur = cur, ((x - (2 * k + 1)) * cur - k * prev) / (k + 1)
        square_sum = square_sum + cur * cur
        big = np.abs(cur) > 1e140
        if big.any():
            shrink = np.where(big, 1e-140, 1.0)
            prev = prev * shrink
            cur = cur * shrink
            square_sum = square_sum * shrink * shrink
            log_scale = log_scale + np.where(big, math.log(1e140), 0.0)
    return np.exp(-2.0 * log_scale - np.log(square_sum))


@lru_cache(maxsize=8)
def gauss_laguerre_nodes(count: int) -> tuple[np.ndarray, np.ndarray]:
    """Cached nodes and weights for the weight function exp(-x) on [0, inf).

    Nodes are the eigenvalues of the Jacobi matrix of the Laguerre recurrence
    (diagonal 2k+1, off-diagonal k); weights come from the Christoffel sum.
    """
    k = np.arange(count)
    x = eigh_tridiagonal(2.0 * k + 1.0, np.arange(1.0, count),
                         eigvals_only=True)
    return x, _christoffel_weights(x, count)


#: successive estimates closer than this times the gross integrand magnitude
#: are float noise, not signal; integrals that are exactly zero stop here.
#: Sized from the observed scatter of heavily cancelling Laguerre integrands.
_NOISE_FLOOR = 1e-11


def adaptive_gauss_laguerre(g, rtol: float = 1e-10, start_nodes: int = 200,
                            max_nodes: int = 1600):
    """Integrate exp(-x) * g(x) over [0, inf) with node-doubling convergence.

    ``g`` takes a node array and returns integrand values.  Doubles the rule
    from ``start_nodes`` until successive estimates agree to ``rtol`` relative
    or to the noise floor absolute (relative convergence is meaningless for
    integrals whose true value is zero).  Raises
    :class:`NumericalConvergenceError` if ``max_nodes`` is reached first.
    """
    nodes = start_nodes
    x, w = gauss_laguerre_nodes(nodes)
    gx = np.asarray(g(x))  # keep g's dtype: the sum may cancel heavily
    estimate = float(np.dot(w.astype(gx.dtype), gx))
    gross = float(np.dot(w, np.abs(gx).astype(float)))
    achieved = math.inf
    while nodes < max_nodes:
        nodes *= 2
        x, w = gauss_laguerre_nodes(nodes)
        gx = np.asarray(g(x))
        new = float(np.dot(w.astype(gx.dtype), gx))
        gross = max(gross, float(np.dot(w, np.abs(gx).astype(float))))
        achieved = abs(new - estimate)
        if achieved <= max(rtol * abs(new), _NOISE_FLOOR * gross):
            return new
        estimate = new
    relative = achieved / max(abs(new), 1e-300)
    raise NumericalConvergenceError(
        f"Gauss-Laguerre integral did not converge to rtol={rtol} "
        f"within {max_nodes} nodes (achieved relative {relative:.3e})",
        relative,
    )
