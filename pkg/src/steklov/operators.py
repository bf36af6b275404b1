"""Discrete operator stack on the equidistant boundary grid.

For an even grid size n the module assembles

* ``D`` — spectral differentiation of the trigonometric interpolant,
  factorized as D = F W F* with the DFT matrix F and the diagonal
  frequency matrix W (the Nyquist slot of W is zero, so D annihilates
  the alternating mode cos(n t / 2));
* ``K`` — the discrete conjugation (Hilbert transform) matrix,
  K_ij = (2/n) cot((i-j) π / n) for odd i-j, zero otherwise;
* ``B``, ``C`` — Nyström matrices for the boundary integral equation
  (I - N) μ = -M γ: B discretizes the continuous Neumann-type kernel
  N(s,t) by the trapezoidal rule, and C = -K + C̃ splits the singular
  kernel M(s,t) into its cotangent part (handled exactly by K) and
  the continuous remainder M̃ (trapezoidal);
* ``E = -(I - B)^{-1} C`` — the conjugation matrix mapping the
  boundary values of Re f to those of Im f, for f analytic in the
  domain with Im f(α) = 0 (bounded) or Im f(∞) = 0 (exterior).

With A(t) = η(t) - α for bounded domains and A(t) = 1 for exterior
ones, the kernels are

    M(s,t) + i N(s,t) = (1/π) (A(s)/A(t)) η'(t) / (η(t) - η(s)),
    M(s,t) = -(1/2π) cot((s-t)/2) + M̃(s,t),
    N(t,t) = (1/π) Im(η''(t)/(2η'(t)) - A'(t)/A(t)),
    M̃(t,t) = (1/π) Re(η''(t)/(2η'(t)) - A'(t)/A(t)).

On the unit disk N ≡ -1/(2π) and M̃ ≡ 0, and E reduces to K.

The null space of C is spanned by the constant vector once the grid
resolves the curve (the constant-annihilation defect decays like the
trapezoidal error of the analytic kernel, i.e. exponentially in n),
and E then shares the two-dimensional numerical null space of K: the
constant and the alternating Nyquist vector.  All other eigenvalues
of K and E sit at ±i.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .curves import BoundaryCurve, DomainKind, Grid, build_grid
from .densela import LUFactors, SingularMatrixError, lu_factor

__all__ = [
    "DiscretizationError",
    "DtnDiscretization",
    "apply_diff_fast",
    "build_dtn",
    "conjugation_matrix",
    "fourier_diff_matrix",
    "kernel_values",
    "nystrom_matrices",
    "solve_conjugate",
    "wittich_matrix",
]

# Residual imaginary part of F W F* beyond this indicates a wrong
# frequency layout rather than rounding.
_DIFF_IMAG_TOL = 1e-12


class DiscretizationError(RuntimeError):
    """Operator assembly failed (typically: grid too coarse for the curve)."""


def _check_even(n: int) -> None:
    if n < 4 or n % 2 != 0:
        raise ValueError(f"grid size must be an even integer >= 4, got {n}")


def _frequencies(n: int) -> np.ndarray:
    """Signed interpolation frequencies (0, 1, .., n/2-1, 0, -(n/2-1), .., -1)."""
    k = np.zeros(n)
    k[1 : n // 2] = np.arange(1, n // 2)
    k[n // 2 + 1 :] = np.arange(n // 2 + 1, n) - n
    return k


def fourier_diff_matrix(n: int) -> np.ndarray:
    """Dense spectral differentiation matrix D = F W F*.

    Exact on trigonometric polynomials of degree < n/2; the Nyquist
    mode cos(n t / 2) is mapped to zero.  The factorization is applied
    column-wise through the FFT, and the (rounding-level) imaginary
    residue is checked and discarded.
    """
    _check_even(n)
    w = -1j * _frequencies(n)
    d = np.fft.fft(w[:, None] * np.fft.ifft(np.eye(n), axis=0), axis=0)
    residue = np.max(np.abs(d.imag))
    if residue > _DIFF_IMAG_TOL:
        raise DiscretizationError(
            f"differentiation matrix has imaginary residue {residue:.3e}; "
            "frequency layout is inconsistent"
        )
    return np.ascontiguousarray(d.real)


def apply_diff_fast(values: np.ndarray) -> np.ndarray:
    """Apply the spectral differentiation operator via the FFT.

    Equals fourier_diff_matrix(n) @ values to rounding; O(n log n).
    Accepts a vector or a matrix of columns.
    """
    values = np.asarray(values, dtype=float)
    n = values.shape[0]
    _check_even(n)
    w = -1j * _frequencies(n)
    if values.ndim == 1:
        return np.real(np.fft.fft(w * np.fft.ifft(values)))
    return np.real(np.fft.fft(w[:, None] * np.fft.ifft(values, axis=0), axis=0))


def wittich_matrix(n: int) -> np.ndarray:
    """Discrete conjugation matrix with cotangent entries at odd offsets."""
    _check_even(n)
    d = np.subtract.outer(np.arange(n), np.arange(n))
    odd = (d % 2) != 0
    k = np.zeros((n, n))
    k[odd] = (2.0 / n) / np.tan(d[odd] * np.pi / n)
    return k


# ---------------------------------------------------------------------------
# Kernels and Nyström assembly
# ---------------------------------------------------------------------------

def _log_derivative_term(curve: BoundaryCurve, t: np.ndarray) -> np.ndarray:
    """η''/(2η') - A'/A at the nodes; A' = η' (bounded) or 0 (exterior)."""
    e1 = curve.eta1(t)
    e2 = curve.eta2(t)
    q = 0.5 * e2 / e1
    if curve.kind is DomainKind.BOUNDED_INTERIOR:
        q = q - e1 / (curve.eta(t) - curve.alpha)
    return q


def kernel_values(curve: BoundaryCurve, s, t):
    """Point values (N(s,t), M̃(s,t)) of the boundary kernels.

    Arguments broadcast; pairs with |s - t| < 1e-14 after periodic
    wrapping are routed to the diagonal (limit) formulas.  On the
    equidistant grid only s == t hits that branch, so the switch is a
    guard rather than a smoothing.
    """
    s = np.asarray(s, dtype=float)
    t = np.asarray(t, dtype=float)
    s, t = np.broadcast_arrays(s, t)
    d = np.mod(s - t + np.pi, 2.0 * np.pi) - np.pi
    on_diag = np.abs(d) < 1e-14

    ts = np.where(on_diag, 0.0, t)  # dummy arguments on the diagonal
    eta_s, eta_t = curve.eta(s), curve.eta(ts)
    eta1_t = curve.eta1(ts)
    if curve.kind is DomainKind.BOUNDED_INTERIOR:
        ratio = (eta_s - curve.alpha) / (eta_t - curve.alpha)
    else:
        ratio = np.ones_like(eta_s)
    denom = np.where(on_diag, 1.0, eta_t - eta_s)
    m_in = (1.0 / np.pi) * ratio * eta1_t / denom
    n_off = m_in.imag
    mt_off = m_in.real + (1.0 / (2.0 * np.pi)) / np.tan(np.where(on_diag, 1.0, d) / 2.0)

    q = _log_derivative_term(curve, s) / np.pi
    n_val = np.where(on_diag, q.imag, n_off)
    mt_val = np.where(on_diag, q.real, mt_off)
    if n_val.ndim == 0:
        return float(n_val), float(mt_val)
    return n_val, mt_val


def nystrom_matrices(grid: Grid, curve: BoundaryCurve) -> tuple[np.ndarray, np.ndarray]:
    """Trapezoidal Nyström matrices (B, C) on the grid.

    B_ij = (2π/n) N(t_i, t_j); C = -K + C̃ with C̃_ij = (2π/n) M̃(t_i, t_j).
    C annihilates constants up to the trapezoidal error of the kernel.
    """
    n = grid.n
    eta, eta1 = grid.eta, grid.eta1
    if curve.kind is DomainKind.BOUNDED_INTERIOR:
        a_val = eta - curve.alpha
    else:
        a_val = np.ones(n, dtype=complex)

    denom = eta[None, :] - eta[:, None]  # η(t_j) - η(t_i); row i = s, col j = t
    np.fill_diagonal(denom, 1.0)
    m_in = (1.0 / np.pi) * (a_val[:, None] / a_val[None, :]) * eta1[None, :] / denom

    dt = np.subtract.outer(grid.t, grid.t)
    np.fill_diagonal(dt, 1.0)
    n_mat = m_in.imag
    mt_mat = m_in.real + (1.0 / (2.0 * np.pi)) / np.tan(dt / 2.0)

    q = _log_derivative_term(curve, grid.t) / np.pi
    np.fill_diagonal(n_mat, q.imag)
    np.fill_diagonal(mt_mat, q.real)

    h = 2.0 * np.pi / n
    b = h * n_mat
    c = -wittich_matrix(n) + h * mt_mat
    return b, c


def _conjugation_from_nystrom(
    n: int, b: np.ndarray, c: np.ndarray
) -> tuple[np.ndarray, LUFactors]:
    try:
        factors = lu_factor(np.eye(n) - b)
    except SingularMatrixError as exc:
        raise DiscretizationError(
            f"(I - B) is singular at n={n}; increase the grid size"
        ) from exc
    return -factors.solve(c), factors


def conjugation_matrix(grid: Grid, curve: BoundaryCurve) -> tuple[np.ndarray, LUFactors]:
    """Conjugation matrix E = -(I - B)^{-1} C and the retained LU of (I - B)."""
    b, c = nystrom_matrices(grid, curve)
    return _conjugation_from_nystrom(grid.n, b, c)


@dataclass
class DtnDiscretization:
    """All grid-level operators for one (curve, n) pair.

    Treated as immutable once built; ``q`` is filled in lazily by
    ``spectrum.assemble_q`` (it is the only n³-cost matrix product and
    not every use of the discretization needs it).
    """

    curve: BoundaryCurve
    grid: Grid
    K: np.ndarray
    B: np.ndarray
    C: np.ndarray
    E: np.ndarray
    lu_i_minus_b: LUFactors
    q: np.ndarray | None = field(default=None, repr=False)

    @property
    def n(self) -> int:
        return self.grid.n

    @property
    def rho(self) -> np.ndarray:
        """Diagonal of the arclength weight matrix P."""
        return self.grid.rho


def build_dtn(curve: BoundaryCurve, n: int) -> DtnDiscretization:
    """Assemble K, B, C, E and the (I - B) factorization for (curve, n)."""
    grid = build_grid(curve, n)
    b, c = nystrom_matrices(grid, curve)
    e, factors = _conjugation_from_nystrom(n, b, c)
    return DtnDiscretization(
        curve=curve,
        grid=grid,
        K=wittich_matrix(n),
        B=b,
        C=c,
        E=e,
        lu_i_minus_b=factors,
    )


def solve_conjugate(disc: DtnDiscretization, gamma: np.ndarray) -> np.ndarray:
    """Harmonic-conjugate boundary values μ solving (I - B) μ = -C γ.

    Matrix-free equivalent of E @ gamma through the retained LU.
    """
    gamma = np.asarray(gamma, dtype=float)
    if gamma.shape[0] != disc.n:
        raise ValueError(f"gamma has length {gamma.shape[0]}, expected {disc.n}")
    return disc.lu_i_minus_b.solve(-(disc.C @ gamma))
