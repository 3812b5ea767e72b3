"""Entanglement-gain regimes of partially entangled inputs.

dC = (C_final - C_initial) / C_initial is evaluated over a theta grid.  A
configuration is *entanglophilus* when dC > 0 at every grid angle,
*entanglophobus* when dC < 0 everywhere, and *mixed* otherwise.  The strict
sign threshold separates genuine sign structure from round-off at angles
where dC crosses zero tangentially.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

import numpy as np

from .amplitudes import MUON_ELECTRON_MASS_RATIO, Kinematics, Process
from .errors import DomainError, ZeroInitialEntanglementError
from .measures import concurrence, pvc
from .scattering import (DEGENERATE_NORM_TOL, default_theta_grid,
                         scatter_coefficients)
from .states import TwoQubitState

#: Strict-sign threshold for the regime verdict.
SIGN_TOL = 1e-9

FAMILY_LABELS = ("phi+", "phi-", "psi+", "psi-")


@dataclass(frozen=True)
class FamilyState:
    """One-parameter partially entangled family built on a Bell-state pattern.

    phi+/-: cos(angle)|RR> +/- sin(angle)|LL>
    psi+/-: cos(angle)|RL> +/- sin(angle)|LR>

    The angle must keep the initial concurrence |sin 2 angle| positive:
    (0, pi/2) for the phi families, signed (-pi/2, pi/2) minus 0 for psi.
    """

    family: str
    angle: float

    def __post_init__(self):
        if self.family not in FAMILY_LABELS:
            raise DomainError(f"unknown family {self.family!r}")
        a = self.angle
        if self.family.startswith("phi"):
            ok = 0.0 < a < 0.5 * np.pi
        else:
            ok = 0.0 < abs(a) < 0.5 * np.pi
        if not ok:
            raise DomainError(
                f"family angle {a} leaves no initial entanglement")

    def to_state(self) -> TwoQubitState:
        sign = 1.0 if self.family.endswith("+") else -1.0
        ca, sa = np.cos(self.angle), np.sin(self.angle)
        if self.family.startswith("phi"):
            return TwoQubitState.from_coefficients([ca, 0.0, 0.0, sign * sa])
        return TwoQubitState.from_coefficients([0.0, ca, sign * sa, 0.0])

    @property
    def initial_concurrence(self) -> float:
        return abs(np.sin(2.0 * self.angle))


class Regime(Enum):
    ENTANGLOPHILUS = "entanglophilus"
    ENTANGLOPHOBUS = "entanglophobus"
    MIXED = "mixed"


@dataclass(frozen=True)
class RegimeVerdict:
    regime: Regime
    min_dc: float
    max_dc: float
    theta_grid_size: int


def _as_state(state) -> TwoQubitState:
    if isinstance(state, FamilyState):
        return state.to_state()
    return state


def delta_c(process: Process, kin: Kinematics, state) -> float:
    """Relative concurrence change at a single kinematic point."""
    initial = _as_state(state)
    c_i = concurrence(initial)
    if c_i <= 1e-10:
        raise ZeroInitialEntanglementError(
            "relative change undefined: initial concurrence is zero")
    f = scatter_coefficients(process, kin.mu, kin.theta,
                             initial.coefficients, kin.lam)
    norm = np.linalg.norm(f)
    if norm < DEGENERATE_NORM_TOL:
        raise ZeroInitialEntanglementError(
            f"{process.value}: outgoing amplitudes cancel at this point")
    c_f = float(pvc(f / norm)[0])
    return (c_f - c_i) / c_i


def delta_c_curve(process: Process, mu: float, state,
                  lam: float = MUON_ELECTRON_MASS_RATIO,
                  theta_grid=None) -> tuple:
    """(theta_grid, dC values) for a whole grid at once."""
    initial = _as_state(state)
    c_i = concurrence(initial)
    if c_i <= 1e-10:
        raise ZeroInitialEntanglementError(
            "relative change undefined: initial concurrence is zero")
    if theta_grid is None:
        theta_grid = default_theta_grid()
    thetas = np.asarray(theta_grid, dtype=float)
    f = scatter_coefficients(process, mu, thetas, initial.coefficients, lam)
    norms = np.linalg.norm(f, axis=-1)
    if np.any(norms < DEGENERATE_NORM_TOL):
        raise ZeroInitialEntanglementError(
            f"{process.value}: outgoing amplitudes cancel on the grid")
    c_f = pvc(f / norms[:, None])[0]
    return thetas, (c_f - c_i) / c_i


def classify(process: Process, mu: float, lam: float, state: FamilyState,
             theta_grid=None, sign_tol: float = SIGN_TOL) -> RegimeVerdict:
    """Regime verdict for a family state over a theta grid."""
    thetas, dc = delta_c_curve(process, mu, state, lam=lam,
                               theta_grid=theta_grid)
    lo, hi = float(np.min(dc)), float(np.max(dc))
    if lo > sign_tol:
        regime = Regime.ENTANGLOPHILUS
    elif hi < -sign_tol:
        regime = Regime.ENTANGLOPHOBUS
    else:
        regime = Regime.MIXED
    return RegimeVerdict(regime=regime, min_dc=lo, max_dc=hi,
                         theta_grid_size=int(thetas.size))
