"""Cross-section-weighted averages of squared CCR terms over an angle window.

Each squared term Q^2 of the post-scattering state is averaged as

    Q2_bar = (1/N) integral_D w(theta) Q^2(theta) dtheta,
    N      =       integral_D w(theta) dtheta,

with w(theta) the summed squared outgoing amplitudes for the chosen input,
i.e. the squared pre-normalization norm of the filtered final state.  That
weight is the angular factor of the differential cross section; all constant
prefactors cancel between numerator and N.  The measure is plain dtheta as
the averages are defined; an optional flag folds in the solid-angle sin theta
Jacobian instead.

Integration uses adaptive Gauss-Legendre panels: each panel is accepted when
its n-point and 2n-point estimates agree to the relative tolerance, and
bisected otherwise.  The integrand is smooth on any closed subinterval of
(0, 2*pi), so a handful of panels normally suffices.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .amplitudes import MUON_ELECTRON_MASS_RATIO, Process
from .errors import DomainError, QuadratureError
from .measures import pvc
from .scattering import scatter_coefficients
from .states import TwoQubitState

#: Relative tolerance for accepting a quadrature panel.
DEFAULT_REL_TOL = 1e-8

_MAX_DEPTH = 40


@dataclass(frozen=True)
class ThetaDomain:
    """Closed angle window strictly inside (0, 2*pi)."""

    lo: float
    hi: float

    def __post_init__(self):
        if not (np.isfinite(self.lo) and np.isfinite(self.hi)
                and 0.0 < self.lo < self.hi < 2.0 * np.pi):
            raise DomainError(
                f"domain must satisfy 0 < lo < hi < 2*pi, got "
                f"({self.lo}, {self.hi})")


@dataclass(frozen=True)
class WeightedAverages:
    """Weighted averages of the squared CCR terms plus the weight integral."""

    c2_bar: float
    pa2_bar: float
    pb2_bar: float
    va2_bar: float
    vb2_bar: float
    n_weight: float


def _gl_nodes(n: int, lo: float, hi: float):
    x, w = np.polynomial.legendre.leggauss(n)
    mid, half = 0.5 * (hi + lo), 0.5 * (hi - lo)
    return mid + half * x, half * w


def _panel_estimates(f, lo, hi, n):
    x1, w1 = _gl_nodes(n, lo, hi)
    x2, w2 = _gl_nodes(2 * n, lo, hi)
    return f(x1) @ w1, f(x2) @ w2


def adaptive_gauss_legendre(f, lo: float, hi: float, n: int = 32,
                            rel_tol: float = DEFAULT_REL_TOL,
                            max_depth: int = _MAX_DEPTH) -> np.ndarray:
    """Integrate a vector-valued integrand f(theta)->(k, len(theta)).

    Returns the k component integrals.  Panels refine by bisection until the
    n- and 2n-point Gauss-Legendre estimates of every component agree to
    rel_tol (relative to the running full-interval scale); exceeding
    ``max_depth`` raises QuadratureError.
    """
    coarse, fine = _panel_estimates(f, lo, hi, n)
    scale = np.maximum(np.abs(fine), 1e-300)
    stack = [(lo, hi, coarse, fine, 0)]
    total = np.zeros_like(fine)
    while stack:
        a, b, coarse, fine, depth = stack.pop()
        if np.all(np.abs(fine - coarse) <= rel_tol * scale):
            total = total + fine
            continue
        if depth >= max_depth:
            raise QuadratureError(
                f"panel [{a}, {b}] failed to converge at depth {depth}")
        mid = 0.5 * (a + b)
        for sub in ((a, mid), (mid, b)):
            c, fn = _panel_estimates(f, sub[0], sub[1], n)
            stack.append((sub[0], sub[1], c, fn, depth + 1))
    return total


def weighted_average(process: Process, mu: float, lam: float,
                     initial: TwoQubitState, domain: ThetaDomain,
                     quadrature_points: int = 32,
                     rel_tol: float = DEFAULT_REL_TOL,
                     include_sin_theta: bool = False) -> WeightedAverages:
    """Cross-section-weighted averages of (C^2, P^2, V^2) over ``domain``.

    ``quadrature_points`` is the Gauss-Legendre order per panel (minimum 16).
    With ``include_sin_theta`` the weight carries the solid-angle Jacobian.
    """
    if quadrature_points < 16:
        raise DomainError("quadrature_points must be at least 16")
    if not (np.isfinite(mu) and mu > 0.0):
        raise DomainError(f"mu must be a positive finite number, got {mu}")
    v0 = initial.coefficients

    def integrand(thetas: np.ndarray) -> np.ndarray:
        f = scatter_coefficients(process, mu, thetas, v0, lam)
        w = np.sum(np.abs(f) ** 2, axis=-1)
        if include_sin_theta:
            w = w * np.sin(thetas)
        # a zero-norm node carries zero weight; floor the norm so the
        # normalized direction stays finite there
        norms = np.maximum(np.sqrt(np.sum(np.abs(f) ** 2, axis=-1)), 1e-300)
        states = f / norms[:, None]
        conc, p_a, p_b, v_a, v_b = pvc(states)
        return np.stack([w, w * conc**2, w * p_a**2, w * p_b**2,
                         w * v_a**2, w * v_b**2])

    parts = adaptive_gauss_legendre(integrand, domain.lo, domain.hi,
                                    n=quadrature_points, rel_tol=rel_tol)
    n_weight = float(parts[0])
    if n_weight <= 0.0:
        raise QuadratureError("weight integral is not positive")
    return WeightedAverages(
        c2_bar=float(parts[1] / n_weight),
        pa2_bar=float(parts[2] / n_weight),
        pb2_bar=float(parts[3] / n_weight),
        va2_bar=float(parts[4] / n_weight),
        vb2_bar=float(parts[5] / n_weight),
        n_weight=n_weight,
    )
