"""Momentum-filtered scattering of two-qubit helicity states.

The post-scattering state at a fixed angle is the filtered superposition

    f_rs = sum_{zk} A_zk m(zk; rs)

of the initial coefficients A pushed through the process amplitude table,
normalized afterwards.  The unscattered forward component lives at theta = 0,
outside the kinematic domain, and never mixes in.

Scans evaluate a theta grid row by row; rows whose kinematics are invalid or
whose outgoing amplitudes cancel are recorded with an error code instead of
aborting the whole scan.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .amplitudes import MUON_ELECTRON_MASS_RATIO, Kinematics, Process, amplitude_matrix
from .errors import DegenerateOutcomeError, DomainError
from .measures import CcrReport, ccr_report, pvc
from .states import TwoQubitState, canonical_phase

#: Below this unnormalized norm the outgoing amplitudes are treated as
#: having cancelled exactly (underflow sits many orders lower).
DEGENERATE_NORM_TOL = 1e-14

SCAN_COLUMNS = ("theta", "C2", "PA2", "PB2", "VA2", "VB2",
                "raw_norm", "residual_A", "residual_B", "error")


def scatter_coefficients(process: Process, mu: float, theta, initial,
                         lam: float = MUON_ELECTRON_MASS_RATIO) -> np.ndarray:
    """Unnormalized final coefficient vectors, vectorized over theta."""
    m = amplitude_matrix(process, mu, theta, lam)
    v = np.asarray(initial, dtype=complex).reshape(4)
    return np.einsum("...io,i->...o", m, v)


@dataclass(frozen=True)
class ScatteringOutcome:
    """Final filtered state plus before/after complementarity reports."""

    final: TwoQubitState
    raw_norm: float
    initial_report: CcrReport
    final_report: CcrReport


def scatter(process: Process, kin: Kinematics,
            initial: TwoQubitState) -> ScatteringOutcome:
    """Scatter ``initial`` through ``process`` at the kinematic point ``kin``.

    Raises DomainError for invalid kinematics and DegenerateOutcomeError when
    every outgoing amplitude cancels (the filtered state is then undefined).
    """
    f = scatter_coefficients(process, kin.mu, kin.theta,
                             initial.coefficients, kin.lam)
    raw_norm = float(np.linalg.norm(f))
    if raw_norm < DEGENERATE_NORM_TOL:
        raise DegenerateOutcomeError(
            f"{process.value}: outgoing amplitudes cancel at "
            f"mu={kin.mu}, theta={kin.theta}")
    final = TwoQubitState.from_coefficients(canonical_phase(f))
    return ScatteringOutcome(
        final=final,
        raw_norm=raw_norm,
        initial_report=ccr_report(initial),
        final_report=ccr_report(final),
    )


@dataclass(frozen=True)
class ScanRow:
    """One theta grid point of a scan; ``error`` is None on success."""

    theta: float
    c2: float | None
    pa2: float | None
    pb2: float | None
    va2: float | None
    vb2: float | None
    raw_norm: float | None
    residual_a: float | None
    residual_b: float | None
    error: str | None = None

    def as_tuple(self):
        return (self.theta, self.c2, self.pa2, self.pb2, self.va2, self.vb2,
                self.raw_norm, self.residual_a, self.residual_b, self.error)


@dataclass
class ScanResult:
    """Tabulated post-scattering observables over a theta grid."""

    meta: dict = field(default_factory=dict)
    rows: list = field(default_factory=list)

    @property
    def columns(self):
        return SCAN_COLUMNS

    def column(self, name: str) -> np.ndarray:
        """Numeric column over the successful rows (failed rows dropped)."""
        i = SCAN_COLUMNS.index(name)
        return np.array([row.as_tuple()[i] for row in self.rows
                         if row.error is None], dtype=float)

    @property
    def thetas(self) -> np.ndarray:
        return np.array([row.theta for row in self.rows], dtype=float)


def default_theta_grid(n: int = 720, lo: float = 0.0,
                       hi: float = 2.0 * np.pi) -> np.ndarray:
    """n midpoints of equal subintervals of (lo, hi); endpoints never appear."""
    if n < 1:
        raise DomainError("grid size must be at least 1")
    edges = np.linspace(lo, hi, n + 1)
    return 0.5 * (edges[:-1] + edges[1:])


def ccr_scan(process: Process, initial: TwoQubitState, mu: float,
             lam: float = MUON_ELECTRON_MASS_RATIO,
             theta_grid=None) -> ScanResult:
    """Squared CCR terms of the final state over a theta grid.

    Rows are computed independently; a row with invalid kinematics or a
    cancelled outgoing column carries an error code and empty observables.
    """
    if theta_grid is None:
        theta_grid = default_theta_grid()
    thetas = np.asarray(theta_grid, dtype=float)
    if thetas.ndim != 1 or thetas.size == 0:
        raise DomainError("theta grid must be a non-empty 1-d sequence")
    if not (np.isfinite(mu) and mu > 0.0):
        raise DomainError(f"mu must be a positive finite number, got {mu}")

    valid = np.isfinite(thetas) & (thetas > 0.0) & (thetas < 2.0 * np.pi)
    result = ScanResult(meta={
        "process": process.value,
        "mu": mu,
        "lam": lam,
        "initial": [repr(z) for z in initial.coefficients.tolist()],
        "grid_size": int(thetas.size),
    })

    rows: list[ScanRow | None] = [None] * thetas.size
    for k in np.flatnonzero(~valid):
        rows[k] = ScanRow(float(thetas[k]), None, None, None, None, None,
                          None, None, None, error="domain_error")

    idx = np.flatnonzero(valid)
    if idx.size:
        f = scatter_coefficients(process, mu, thetas[idx],
                                 initial.coefficients, lam)
        norms = np.linalg.norm(f, axis=-1)
        ok = norms >= DEGENERATE_NORM_TOL
        for k, j in enumerate(idx):
            if not ok[k]:
                rows[j] = ScanRow(float(thetas[j]), None, None, None, None,
                                  None, None, None, None,
                                  error="degenerate_outcome")
        good = idx[ok]
        if good.size:
            w = f[ok] / norms[ok][:, None]
            conc, p_a, p_b, v_a, v_b = pvc(w)
            res_a = np.abs(p_a**2 + v_a**2 + conc**2 - 1.0)
            res_b = np.abs(p_b**2 + v_b**2 + conc**2 - 1.0)
            for k, j in enumerate(good):
                rows[j] = ScanRow(
                    theta=float(thetas[j]),
                    c2=float(conc[k] ** 2),
                    pa2=float(p_a[k] ** 2),
                    pb2=float(p_b[k] ** 2),
                    va2=float(v_a[k] ** 2),
                    vb2=float(v_b[k] ** 2),
                    raw_norm=float(norms[ok][k]),
                    residual_a=float(res_a[k]),
                    residual_b=float(res_b[k]),
                )
    result.rows = rows
    return result
