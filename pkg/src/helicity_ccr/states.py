"""Two-qubit helicity states.

Coefficients (a, b, c, d) multiply |RR>, |RL>, |LR>, |LL> in that order;
particle A carries the first label.  States are immutable and normalized at
construction, with the pre-normalization norm kept for diagnostics.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import NormalizationError

#: Unit-norm tolerance for constructed states.
NORM_TOL = 1e-12

BELL_LABELS = ("phi+", "phi-", "psi+", "psi-")

_BASIS_STATES = {
    "RR": (1, 0, 0, 0),
    "RL": (0, 1, 0, 0),
    "LR": (0, 0, 1, 0),
    "LL": (0, 0, 0, 1),
}

_SQRT2 = np.sqrt(2.0)

_BELL_COEFFS = {
    "phi+": (1 / _SQRT2, 0, 0, 1 / _SQRT2),
    "phi-": (1 / _SQRT2, 0, 0, -1 / _SQRT2),
    "psi+": (0, 1 / _SQRT2, 1 / _SQRT2, 0),
    "psi-": (0, 1 / _SQRT2, -1 / _SQRT2, 0),
}


@dataclass(frozen=True)
class TwoQubitState:
    """Normalized pure state of two helicity qubits."""

    a: complex
    b: complex
    c: complex
    d: complex
    raw_norm: float = 1.0

    def __post_init__(self):
        n = abs(self.a) ** 2 + abs(self.b) ** 2 + abs(self.c) ** 2 + abs(self.d) ** 2
        if abs(n - 1.0) > NORM_TOL:
            raise NormalizationError(
                f"coefficients have squared norm {n}; use from_coefficients "
                "to normalize")

    @classmethod
    def from_coefficients(cls, coeffs) -> "TwoQubitState":
        """Normalize an arbitrary 4-vector of coefficients."""
        v = np.asarray(coeffs, dtype=complex).reshape(4)
        norm = float(np.linalg.norm(v))
        if not np.isfinite(norm) or norm < 1e-150:
            raise NormalizationError(f"cannot normalize vector with norm {norm}")
        v = v / norm
        return cls(complex(v[0]), complex(v[1]), complex(v[2]), complex(v[3]),
                   raw_norm=norm)

    @property
    def coefficients(self) -> np.ndarray:
        return np.array([self.a, self.b, self.c, self.d], dtype=complex)

    def overlap(self, other: "TwoQubitState") -> float:
        """|<self|other>|, a global-phase-free similarity in [0, 1]."""
        return float(abs(np.vdot(self.coefficients, other.coefficients)))


def basis_state(label: str) -> TwoQubitState:
    """Product basis state |RR>, |RL>, |LR> or |LL>."""
    try:
        coeffs = _BASIS_STATES[label.upper()]
    except KeyError:
        raise NormalizationError(f"unknown basis label {label!r}") from None
    return TwoQubitState(*[complex(x) for x in coeffs])


def bell_state(label: str) -> TwoQubitState:
    """One of the four Bell states phi+/-, psi+/-."""
    try:
        coeffs = _BELL_COEFFS[label.lower()]
    except KeyError:
        raise NormalizationError(f"unknown Bell label {label!r}") from None
    return TwoQubitState(*[complex(x) for x in coeffs])


def product_superposition(alpha: float, beta: float,
                          xi: float = 0.0, eta: float = 0.0) -> TwoQubitState:
    """Product of two single-particle superpositions.

    (cos a |R> + e^{i xi} sin a |L>)_A x (cos b |R> + e^{i eta} sin b |L>)_B
    """
    ca, sa = np.cos(alpha), np.sin(alpha) * np.exp(1j * xi)
    cb, sb = np.cos(beta), np.sin(beta) * np.exp(1j * eta)
    return TwoQubitState.from_coefficients([ca * cb, ca * sb, sa * cb, sa * sb])


def general_state(alpha: float, beta: float, chi: float,
                  xi: float = 0.0, eta: float = 0.0,
                  tau: float = 0.0) -> TwoQubitState:
    """Generic two-qubit state from three angles and three relative phases.

    cos a |RR> + e^{i xi} sin a cos b |RL>
    + e^{i eta} sin a sin b cos x |LR> + e^{i tau} sin a sin b sin x |LL>
    """
    sa, sb = np.sin(alpha), np.sin(beta)
    return TwoQubitState.from_coefficients([
        np.cos(alpha),
        np.exp(1j * xi) * sa * np.cos(beta),
        np.exp(1j * eta) * sa * sb * np.cos(chi),
        np.exp(1j * tau) * sa * sb * np.sin(chi),
    ])


def canonical_phase(coeffs: np.ndarray) -> np.ndarray:
    """Fix the global phase by making the largest-modulus entry real-positive.

    Ties resolve to the first maximal entry, so the result is reproducible.
    """
    v = np.asarray(coeffs, dtype=complex)
    k = int(np.argmax(np.abs(v)))
    pivot = v[k]
    if pivot == 0:
        return v.copy()
    return v * (np.conj(pivot) / abs(pivot))
