"""Bell-basis analysis of scattering outcomes.

Bell basis order: phi+ = (|RR>+|LL>)/sqrt2, phi- = (|RR>-|LL>)/sqrt2,
psi+ = (|RL>+|LR>)/sqrt2, psi- = (|RL>-|LR>)/sqrt2.

Two of the two-dimensional Bell planes, span{phi+, psi-} and
span{phi-, psi+}, consist entirely of maximally entangled states for real
coefficients; a two-term mix inside one of them keeps concurrence 1.  A
two-term mix across any other pair {U, V} is instead a Schmidt-like
combination: rewriting it on the product pair (U+V)/sqrt2, (U-V)/sqrt2 as
cos r X + sin r Y gives concurrence |sin 2r|.  ``two_term_mix`` always
reports the angle in the basis that makes these statements exact.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .amplitudes import Kinematics, Process
from .errors import (DegenerateOutcomeError, NotTwoTermMixError,
                     PreconditionError)
from .measures import concurrence, pvc
from .scattering import DEGENERATE_NORM_TOL, scatter_coefficients
from .states import BELL_LABELS, TwoQubitState, bell_state, canonical_phase

#: Bell coefficients below this modulus count as absent from a pattern.
PATTERN_TOL = 1e-9

_SQRT2 = np.sqrt(2.0)

# rows: bell coefficients of the helicity basis vectors (unitary, involutive)
_BELL_FROM_HELICITY = np.array([
    [1, 0, 0, 1],
    [1, 0, 0, -1],
    [0, 1, 1, 0],
    [0, 1, -1, 0],
]) / _SQRT2

#: The two maximally entangled Bell planes (for real coefficients).
MAGIC_PAIRS = (("phi+", "psi-"), ("phi-", "psi+"))


def bell_decompose(state) -> np.ndarray:
    """Coefficients of a state on (phi+, phi-, psi+, psi-)."""
    if isinstance(state, TwoQubitState):
        v = state.coefficients
    else:
        v = np.asarray(state, dtype=complex)
    return _BELL_FROM_HELICITY @ v


def bell_compose(bell_coeffs) -> TwoQubitState:
    """State from its Bell-basis coefficients (inverse of bell_decompose)."""
    v = _BELL_FROM_HELICITY.T @ np.asarray(bell_coeffs, dtype=complex)
    return TwoQubitState.from_coefficients(v)


def bell_pattern(state, tol: float = PATTERN_TOL) -> tuple:
    """Labels of the Bell components with modulus above tol."""
    bd = bell_decompose(state)
    return tuple(label for label, z in zip(BELL_LABELS, bd) if abs(z) > tol)


@dataclass(frozen=True)
class BellTableRow:
    """Fate of one Bell state under one process at fixed kinematics."""

    initial: str
    final_pattern: tuple
    mixing_angle: float | None
    concurrence: float
    classification: str            # "self" | "two-term-mix" | "gc"
    transparent: bool = False      # lowest-order column vanished; state passes through


@dataclass(frozen=True)
class TwoTermMix:
    """Final state written as cos(angle) X + sin(angle) Y."""

    angle: float
    labels: tuple          # labels of (X, Y)
    x_state: TwoQubitState
    y_state: TwoQubitState

    def reconstruct(self) -> TwoQubitState:
        v = (np.cos(self.angle) * self.x_state.coefficients
             + np.sin(self.angle) * self.y_state.coefficients)
        return TwoQubitState.from_coefficients(v)


def _scattered_bell(process: Process, kin: Kinematics, label: str):
    """Unnormalized final coefficients for a Bell input, or None if cancelled."""
    f = scatter_coefficients(process, kin.mu, kin.theta,
                             bell_state(label).coefficients, kin.lam)
    if np.linalg.norm(f) < DEGENERATE_NORM_TOL:
        return None
    return f / np.linalg.norm(f)


def _two_term_mix_of(final_coeffs, tol: float = PATTERN_TOL) -> TwoTermMix:
    bd = bell_decompose(canonical_phase(final_coeffs))
    live = [i for i in range(4) if abs(bd[i]) > tol]
    if len(live) > 2:
        raise NotTwoTermMixError(
            f"final state has {len(live)} Bell components")
    if len(live) == 1:
        label = BELL_LABELS[live[0]]
        one = bell_state(label)
        return TwoTermMix(angle=0.0, labels=(label, label),
                          x_state=one, y_state=one)
    i, j = live
    if np.max(np.abs(bd.imag)) > 1e-9:
        raise NotTwoTermMixError("Bell coefficients are not relatively real")
    x, y = float(bd[i].real), float(bd[j].real)
    pair = (BELL_LABELS[i], BELL_LABELS[j])
    if pair in MAGIC_PAIRS:
        labels = pair
        x_state, y_state = bell_state(pair[0]), bell_state(pair[1])
    else:
        # rotate onto the product pair where concurrence = |sin 2 angle|
        u = bell_state(pair[0]).coefficients
        w = bell_state(pair[1]).coefficients
        x_state = TwoQubitState.from_coefficients((u + w) / _SQRT2)
        y_state = TwoQubitState.from_coefficients((u - w) / _SQRT2)
        labels = (f"({pair[0]}+{pair[1]})/sqrt2", f"({pair[0]}-{pair[1]})/sqrt2")
        x, y = (x + y) / _SQRT2, (x - y) / _SQRT2
    if y < 0.0:
        x, y = -x, -y
    return TwoTermMix(angle=float(np.arctan2(y, x)), labels=labels,
                      x_state=x_state, y_state=y_state)


def two_term_mix(process: Process, kin: Kinematics,
                 initial_bell: str) -> TwoTermMix:
    """Two-term decomposition of the scattered Bell state.

    The angle lies in [0, pi] with the Y coefficient taken non-negative;
    self-maps report angle 0.  Raises NotTwoTermMixError for generic
    (three-or-more component) outcomes.
    """
    f = _scattered_bell(process, kin, initial_bell)
    if f is None:
        raise DegenerateOutcomeError(
            f"{process.value}: the {initial_bell} column vanishes at lowest order")
    return _two_term_mix_of(f)


def mixing_angle(process: Process, kin: Kinematics, initial_bell: str) -> float:
    """Angle of the two-term combination, in [0, pi] (0 for self-maps)."""
    return two_term_mix(process, kin, initial_bell).angle


def bell_table(process: Process, kin: Kinematics) -> list:
    """Transformation table of the four Bell states under one process."""
    rows = []
    for label in BELL_LABELS:
        f = _scattered_bell(process, kin, label)
        if f is None:
            # the process is transparent to this input at lowest order
            rows.append(BellTableRow(
                initial=label, final_pattern=(label,), mixing_angle=0.0,
                concurrence=concurrence(bell_state(label)),
                classification="self", transparent=True))
            continue
        pattern = bell_pattern(f)
        conc = float(pvc(f)[0])
        if len(pattern) > 2:
            rows.append(BellTableRow(
                initial=label, final_pattern=pattern, mixing_angle=None,
                concurrence=conc, classification="gc"))
            continue
        mix = _two_term_mix_of(f)
        rows.append(BellTableRow(
            initial=label, final_pattern=pattern, mixing_angle=mix.angle,
            concurrence=conc,
            classification="self" if len(pattern) == 1 else "two-term-mix"))
    return rows


@dataclass(frozen=True)
class TransformationCheck:
    """Coefficient-matrix map M_f = T M_i for a maximally entangled input."""

    matrix: np.ndarray
    orthogonality_defect: float   # Frobenius norm of T^T T - I
    det: float


def _real_coefficient_matrix(state: TwoQubitState, tol: float) -> np.ndarray:
    v = canonical_phase(state.coefficients)
    if np.max(np.abs(v.imag)) > tol:
        raise PreconditionError(
            "coefficient matrix is not real up to a global phase")
    return _SQRT2 * v.real.reshape(2, 2)


def transformation_orthogonality(process: Process, kin: Kinematics,
                                 initial: TwoQubitState,
                                 tol: float = 1e-10) -> TransformationCheck:
    """T = M_f M_i^{-1} between sqrt2-scaled coefficient matrices.

    Requires a maximally entangled initial state with real coefficients (its
    matrix is then orthogonal and invertible).  For the all-fermion processes
    T comes out orthogonal with |det T| = 1.
    """
    if concurrence(initial) < 1.0 - tol:
        raise PreconditionError("initial state is not maximally entangled")
    m_i = _real_coefficient_matrix(initial, tol)
    f = scatter_coefficients(process, kin.mu, kin.theta,
                             initial.coefficients, kin.lam)
    norm = np.linalg.norm(f)
    if norm < DEGENERATE_NORM_TOL:
        raise DegenerateOutcomeError(
            f"{process.value}: outgoing amplitudes cancel for this input")
    final = TwoQubitState.from_coefficients(canonical_phase(f))
    m_f = _real_coefficient_matrix(final, 1e-8)
    t = m_f @ np.linalg.inv(m_i)
    defect = float(np.linalg.norm(t.T @ t - np.eye(2)))
    return TransformationCheck(matrix=t, orthogonality_defect=defect,
                               det=float(np.linalg.det(t)))


def iterate_scatter(process: Process, kin: Kinematics,
                    initial: TwoQubitState, n: int) -> list:
    """States after 1..n successive scatterings at the same kinematic point."""
    states = []
    current = initial
    for _ in range(n):
        f = scatter_coefficients(process, kin.mu, kin.theta,
                                 current.coefficients, kin.lam)
        if np.linalg.norm(f) < DEGENERATE_NORM_TOL:
            raise DegenerateOutcomeError(
                f"{process.value}: outgoing amplitudes cancel while iterating")
        current = TwoQubitState.from_coefficients(canonical_phase(f))
        states.append(current)
    return states
