"""Complementarity measures on two-qubit pure states.

For |psi> = a|RR> + b|RL> + c|LR> + d|LL>:

    P_A = | (|c|^2 + |d|^2) - (|a|^2 + |b|^2) |      predictability
    V_A = 2 |a c* + b d*|                            visibility (local coherence)
    C   = 2 |a d - b c|                              concurrence

and symmetrically for subsystem B (b <-> c).  For every normalized pure state
P_k^2 + V_k^2 + C^2 = 1.  The same split is exposed in two further forms: the
Hilbert-Schmidt triplet, which sums to 1/2 and equals (P^2, V^2, C^2)/2
term by term, and the entropic triplet, which sums to 1 (= log2 of the
subsystem dimension).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import NormalizationError
from .states import TwoQubitState

#: Tolerance on |P^2 + V^2 + C^2 - 1| considered numerically healthy.
TRIALITY_TOL = 1e-10

_SUBSYSTEMS = ("A", "B")


def _coeffs(state) -> np.ndarray:
    if isinstance(state, TwoQubitState):
        v = state.coefficients
    else:
        v = np.asarray(state, dtype=complex)
    n = float(np.sum(np.abs(v) ** 2, axis=-1))
    if abs(n - 1.0) > 1e-10:
        raise NormalizationError(f"state has squared norm {n}, expected 1")
    return v


def _check_subsystem(subsystem: str) -> str:
    sub = subsystem.upper()
    if sub not in _SUBSYSTEMS:
        raise ValueError(f"subsystem must be 'A' or 'B', got {subsystem!r}")
    return sub


def pvc(coeffs: np.ndarray):
    """(C, P_A, P_B, V_A, V_B) for an array of coefficient 4-vectors.

    Vectorized over leading axes; assumes unit-norm rows.
    """
    v = np.asarray(coeffs, dtype=complex)
    a, b, c, d = v[..., 0], v[..., 1], v[..., 2], v[..., 3]
    pa2 = np.abs(a) ** 2
    pb2 = np.abs(b) ** 2
    pc2 = np.abs(c) ** 2
    pd2 = np.abs(d) ** 2
    conc = 2.0 * np.abs(a * d - b * c)
    p_a = np.abs((pc2 + pd2) - (pa2 + pb2))
    p_b = np.abs((pb2 + pd2) - (pa2 + pc2))
    v_a = 2.0 * np.abs(a * np.conj(c) + b * np.conj(d))
    v_b = 2.0 * np.abs(a * np.conj(b) + c * np.conj(d))
    return conc, p_a, p_b, v_a, v_b


def concurrence(state) -> float:
    """C = 2 |a d - b c|; 0 for product states, 1 at maximal entanglement."""
    v = _coeffs(state)
    return float(2.0 * abs(v[0] * v[3] - v[1] * v[2]))


def predictability(state, subsystem: str = "A") -> float:
    v = _coeffs(state)
    sub = _check_subsystem(subsystem)
    p = np.abs(v) ** 2
    if sub == "A":
        return float(abs((p[2] + p[3]) - (p[0] + p[1])))
    return float(abs((p[1] + p[3]) - (p[0] + p[2])))


def visibility(state, subsystem: str = "A") -> float:
    v = _coeffs(state)
    sub = _check_subsystem(subsystem)
    if sub == "A":
        return float(2.0 * abs(v[0] * np.conj(v[2]) + v[1] * np.conj(v[3])))
    return float(2.0 * abs(v[0] * np.conj(v[1]) + v[2] * np.conj(v[3])))


def reduced_density_matrix(state, subsystem: str = "A") -> np.ndarray:
    """2x2 reduced density matrix of one subsystem (Hermitian, unit trace)."""
    v = _coeffs(state)
    sub = _check_subsystem(subsystem)
    psi = v.reshape(2, 2)  # psi[i, j]: i = A index, j = B index
    if sub == "A":
        rho = psi @ psi.conj().T
    else:
        rho = psi.T @ psi.conj()
    return rho


def _entropy_bits(probabilities) -> float:
    # 0 log 0 := 0; tiny negative eigenvalues from rounding are clipped
    p = np.clip(np.asarray(probabilities, dtype=float), 0.0, 1.0)
    nz = p[p > 0.0]
    return float(-np.sum(nz * np.log2(nz)))


def hilbert_schmidt_triplet(state, subsystem: str = "A"):
    """(predictability, coherence, nonlocal) parts in Hilbert-Schmidt form.

    The three terms sum to 1/2 and equal (P_k^2, V_k^2, C^2)/2.
    """
    v = _coeffs(state)
    rho = reduced_density_matrix(state, subsystem)
    p_hs = float(rho[0, 0].real ** 2 + rho[1, 1].real ** 2 - 0.5)
    c_hs = float(2.0 * abs(rho[0, 1]) ** 2)
    a, b, c, d = v
    c_nl = float(2.0 * (abs(a * d) ** 2 + abs(b * c) ** 2)
                 - 4.0 * (a * np.conj(b) * np.conj(c) * d).real)
    return p_hs, c_hs, c_nl


def entropic_triplet(state, subsystem: str = "A"):
    """(predictability, relative entropy of coherence, entanglement entropy).

    All in bits; the triplet sums to log2(2) = 1 for a pure two-qubit state.
    """
    rho = reduced_density_matrix(state, subsystem)
    eigenvalues = np.linalg.eigvalsh(rho)
    s_vn = _entropy_bits(eigenvalues)
    s_diag = _entropy_bits([rho[0, 0].real, rho[1, 1].real])
    return 1.0 - s_diag, s_diag - s_vn, s_vn


def entanglement_entropy_from_concurrence(c: float) -> float:
    """Closed-form subsystem entropy of a pure state with concurrence c."""
    lam = 0.5 * (1.0 + np.sqrt(max(0.0, 1.0 - c * c)))
    return _entropy_bits([lam, 1.0 - lam])


def linear_entropy(state) -> float:
    """S_lin = 2 (1 - Tr rho_A^2); equals the squared concurrence."""
    rho = reduced_density_matrix(state, "A")
    purity = float(np.trace(rho @ rho).real)
    return 2.0 * (1.0 - purity)


@dataclass(frozen=True)
class MaxEntanglementCondition:
    """Structural test of the maximal-concurrence conditions."""

    moduli_matched: bool      # |a|^2 = |d|^2 and |b|^2 = |c|^2
    phase_aligned: bool       # arg(b) + arg(c) - arg(d) at an odd multiple of pi
    holds: bool               # concurrence within tol of 1


def max_entanglement_condition(state, tol: float = 1e-10) -> MaxEntanglementCondition:
    v = _coeffs(state)
    a, b, c, d = v
    moduli = (abs(abs(a) ** 2 - abs(d) ** 2) <= tol
              and abs(abs(b) ** 2 - abs(c) ** 2) <= tol)
    # phases are relative to a; the cross term vanishes with any zero modulus
    if min(abs(a), abs(b), abs(c), abs(d)) <= tol:
        aligned = True
    else:
        rel = np.angle(b * c * np.conj(d) * np.conj(a))  # xi + eta - tau
        aligned = bool(abs(np.cos(rel) + 1.0) <= tol)
    return MaxEntanglementCondition(
        moduli_matched=bool(moduli),
        phase_aligned=aligned,
        holds=bool(concurrence(state) >= 1.0 - tol),
    )


def is_maximally_entangled(state, tol: float = 1e-10) -> bool:
    """True when the concurrence is within tol of 1."""
    return concurrence(state) >= 1.0 - tol


@dataclass(frozen=True)
class CcrReport:
    """All complementarity measures of one state, in the three formulations."""

    p_a: float
    p_b: float
    v_a: float
    v_b: float
    concurrence: float
    hs_a: tuple          # (P_hs, C_hs, C_hs_nl) for subsystem A
    hs_b: tuple
    vn_a: tuple          # (P_vn, C_re, S_vn) for subsystem A
    vn_b: tuple
    triality_residual_a: float
    triality_residual_b: float


def ccr_report(state) -> CcrReport:
    """Evaluate every measure and the triality residuals for one state."""
    v = _coeffs(state)
    conc, p_a, p_b, v_a, v_b = (float(x) for x in pvc(v))
    return CcrReport(
        p_a=p_a, p_b=p_b, v_a=v_a, v_b=v_b, concurrence=conc,
        hs_a=hilbert_schmidt_triplet(state, "A"),
        hs_b=hilbert_schmidt_triplet(state, "B"),
        vn_a=entropic_triplet(state, "A"),
        vn_b=entropic_triplet(state, "B"),
        triality_residual_a=abs(p_a ** 2 + v_a ** 2 + conc ** 2 - 1.0),
        triality_residual_b=abs(p_b ** 2 + v_b ** 2 + conc ** 2 - 1.0),
    )


def probability_decomposition(state, subsystem: str = "A"):
    """(P_k^2, V_k^2, C^2) from outcome probabilities and relative phases.

    Uses only the four probabilities |coeff|^2 and the phase combination
    xi + eta - tau of the |RL>, |LR>, |LL> coefficients relative to |RR>.
    """
    v = _coeffs(state)
    sub = _check_subsystem(subsystem)
    a, b, c, d = v
    p_rr, p_rl, p_lr, p_ll = (abs(x) ** 2 for x in (a, b, c, d))
    if min(abs(a), abs(b), abs(c), abs(d)) > 0.0:
        cos_rel = np.cos(np.angle(b * c * np.conj(d) * np.conj(a)))
    else:
        cos_rel = 0.0  # the cross terms carry a vanishing modulus anyway
    cross = np.sqrt(p_rr * p_ll * p_rl * p_lr) * cos_rel
    if sub == "A":
        p2 = ((p_rr - p_ll) ** 2 + (p_rl - p_lr) ** 2
              - 2.0 * (p_rr - p_ll) * (p_lr - p_rl))
        v2 = 4.0 * (p_rr * p_lr + p_ll * p_rl + 2.0 * cross)
    else:
        p2 = ((p_rr - p_ll) ** 2 + (p_lr - p_rl) ** 2
              - 2.0 * (p_rr - p_ll) * (p_rl - p_lr))
        v2 = 4.0 * (p_rr * p_rl + p_ll * p_lr + 2.0 * cross)
    c2 = 4.0 * (p_rr * p_ll + p_rl * p_lr - 2.0 * cross)
    return float(p2), float(v2), float(c2)
