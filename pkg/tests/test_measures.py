"""Complementarity measures: printed values, identities, property tests."""

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from helicity_ccr import (NormalizationError, TwoQubitState, basis_state,
                          bell_state, ccr_report, concurrence,
                          entanglement_entropy_from_concurrence,
                          entropic_triplet, hilbert_schmidt_triplet,
                          is_maximally_entangled, linear_entropy,
                          max_entanglement_condition, predictability,
                          probability_decomposition, reduced_density_matrix,
                          visibility)

import oracles

# frozen: -p log2 p - (1-p) log2 (1-p) at p = (1 + sqrt(3)/2) / 2
S_VN_AT_HALF_CONCURRENCE = 0.35457890266527003


def coeff_lists():
    part = st.floats(min_value=-1.0, max_value=1.0,
                     allow_nan=False, allow_infinity=False)
    return st.lists(part, min_size=8, max_size=8).filter(
        lambda xs: sum(x * x for x in xs) > 1e-6)


def to_state(xs) -> TwoQubitState:
    coeffs = [complex(xs[2 * i], xs[2 * i + 1]) for i in range(4)]
    return TwoQubitState.from_coefficients(coeffs)


def sigma_expectations(state):
    """Pauli-expectation forms of P and V, used only as a cross check."""
    v = state.coefficients
    sz = np.diag([1.0, -1.0])
    sp = np.array([[0.0, 1.0], [0.0, 0.0]])
    eye = np.eye(2)
    p_a = abs(np.vdot(v, np.kron(sz, eye) @ v))
    p_b = abs(np.vdot(v, np.kron(eye, sz) @ v))
    v_a = 2 * abs(np.vdot(v, np.kron(sp, eye) @ v))
    v_b = 2 * abs(np.vdot(v, np.kron(eye, sp) @ v))
    return p_a, p_b, v_a, v_b


# ------------------------------------------------------------- printed values

def test_concurrence_examples():
    assert concurrence(bell_state("phi+")) == pytest.approx(1.0, abs=1e-15)
    assert concurrence(basis_state("RL")) == 0.0
    state = TwoQubitState.from_coefficients(
        [np.cos(np.pi / 6), 0.0, 0.0, np.sin(np.pi / 6)])
    assert concurrence(state) == pytest.approx(np.sin(np.pi / 3), rel=1e-15)


def test_predictability_examples():
    assert predictability(basis_state("RL"), "A") == 1.0
    assert predictability(basis_state("RL"), "B") == 1.0
    assert predictability(bell_state("phi+"), "A") == pytest.approx(0.0, abs=1e-16)
    flat = TwoQubitState.from_coefficients([0.5, 0.5, 0.5, 0.5])
    assert predictability(flat, "A") == pytest.approx(0.0, abs=1e-15)
    assert predictability(flat, "B") == pytest.approx(0.0, abs=1e-15)


def test_visibility_examples():
    plus_r = TwoQubitState.from_coefficients([1, 0, 1, 0])  # (|R>+|L>)|R>/sqrt2
    assert visibility(plus_r, "A") == pytest.approx(1.0, rel=1e-15)
    assert visibility(plus_r, "B") == pytest.approx(0.0, abs=1e-15)
    assert visibility(bell_state("phi+"), "A") == pytest.approx(0.0, abs=1e-15)
    assert visibility(basis_state("RR"), "A") == 0.0
    assert visibility(basis_state("RR"), "B") == 0.0


def test_reduced_density_examples():
    rho = reduced_density_matrix(bell_state("phi+"), "A")
    np.testing.assert_allclose(rho, np.eye(2) / 2, atol=1e-15)
    rho = reduced_density_matrix(basis_state("RL"), "A")
    np.testing.assert_allclose(rho, np.diag([1.0, 0.0]), atol=1e-15)
    plus_r = TwoQubitState.from_coefficients([1, 0, 1, 0])
    rho = reduced_density_matrix(plus_r, "A")
    assert rho[0, 1] == pytest.approx(0.5, rel=1e-15)


def test_hilbert_schmidt_examples():
    np.testing.assert_allclose(hilbert_schmidt_triplet(bell_state("phi+"), "A"),
                               (0.0, 0.0, 0.5), atol=1e-15)
    np.testing.assert_allclose(hilbert_schmidt_triplet(basis_state("RL"), "A"),
                               (0.5, 0.0, 0.0), atol=1e-15)
    plus_r = TwoQubitState.from_coefficients([1, 0, 1, 0])
    np.testing.assert_allclose(hilbert_schmidt_triplet(plus_r, "A"),
                               (0.0, 0.5, 0.0), atol=1e-15)


def test_entropic_examples():
    np.testing.assert_allclose(entropic_triplet(bell_state("phi+"), "A"),
                               (0.0, 0.0, 1.0), atol=1e-12)
    np.testing.assert_allclose(entropic_triplet(basis_state("RL"), "A"),
                               (1.0, 0.0, 0.0), atol=1e-12)
    # subsystem entropy of a C = 1/2 state, against the closed form in C
    alpha = 0.5 * np.arcsin(0.5)
    state = TwoQubitState.from_coefficients(
        [np.cos(alpha), 0.0, 0.0, np.sin(alpha)])
    assert concurrence(state) == pytest.approx(0.5, rel=1e-14)
    s_vn = entropic_triplet(state, "A")[2]
    assert s_vn == pytest.approx(S_VN_AT_HALF_CONCURRENCE, abs=1e-12)
    assert entanglement_entropy_from_concurrence(0.5) == pytest.approx(
        S_VN_AT_HALF_CONCURRENCE, abs=1e-15)


def test_linear_entropy_examples():
    assert linear_entropy(bell_state("phi-")) == pytest.approx(1.0, abs=1e-14)
    assert linear_entropy(basis_state("RR")) == pytest.approx(0.0, abs=1e-15)
    state = TwoQubitState.from_coefficients(
        [np.cos(np.pi / 6), 0.0, 0.0, np.sin(np.pi / 6)])
    assert linear_entropy(state) == pytest.approx(0.75, rel=1e-14)


def test_max_entanglement_examples():
    assert is_maximally_entangled(bell_state("psi-"))
    assert not is_maximally_entangled(basis_state("RL"))
    tilted = TwoQubitState.from_coefficients(
        [np.cos(np.pi / 8), 0.0, 0.0, np.sin(np.pi / 8)])
    assert not is_maximally_entangled(tilted)
    cond = max_entanglement_condition(bell_state("phi-"))
    assert cond.holds and cond.moduli_matched and cond.phase_aligned
    cond = max_entanglement_condition(tilted)
    assert not cond.holds and not cond.moduli_matched


def test_phase_condition_uses_all_three_relative_phases():
    # |a|=|d|, |b|=|c| with phases xi = eta = pi/2, tau = 0: the relative
    # combination sits at pi, so the state is maximally entangled
    state = TwoQubitState.from_coefficients(
        [0.5, 0.5j, 0.5j, 0.5])
    assert concurrence(state) == pytest.approx(1.0, rel=1e-14)
    cond = max_entanglement_condition(state)
    assert cond.holds and cond.phase_aligned


def test_ccr_report_examples():
    rep = ccr_report(bell_state("phi+"))
    assert rep.concurrence == pytest.approx(1.0, abs=1e-15)
    assert rep.p_a == pytest.approx(0.0, abs=1e-15)
    assert rep.v_a == pytest.approx(0.0, abs=1e-15)
    assert rep.triality_residual_a < 1e-14
    rep = ccr_report(basis_state("RL"))
    assert (rep.p_a, rep.v_a, rep.concurrence) == (1.0, 0.0, 0.0)


def test_probability_decomposition_examples():
    c2 = probability_decomposition(bell_state("phi+"), "A")[2]
    assert c2 == pytest.approx(1.0, rel=1e-14)
    plus_r = TwoQubitState.from_coefficients([1, 0, 1, 0])
    v2 = probability_decomposition(plus_r, "A")[1]
    assert v2 == pytest.approx(1.0, rel=1e-14)


def test_normalization_errors():
    with pytest.raises(NormalizationError):
        TwoQubitState(1.0, 1.0, 0.0, 0.0)
    with pytest.raises(NormalizationError):
        TwoQubitState.from_coefficients([0.0, 0.0, 0.0, 0.0])
    with pytest.raises(NormalizationError):
        concurrence(np.array([1.0, 1.0, 0.0, 0.0]))


# ---------------------------------------------------------------- property tests

@given(coeff_lists())
@settings(max_examples=300, deadline=None)
def test_triality_identity(xs):
    state = to_state(xs)
    rep = ccr_report(state)
    assert rep.triality_residual_a < 1e-10
    assert rep.triality_residual_b < 1e-10


@given(coeff_lists())
@settings(max_examples=200, deadline=None)
def test_hs_and_entropic_sums(xs):
    state = to_state(xs)
    for sub in ("A", "B"):
        hs = hilbert_schmidt_triplet(state, sub)
        assert sum(hs) == pytest.approx(0.5, abs=1e-10)
        vn = entropic_triplet(state, sub)
        assert sum(vn) == pytest.approx(1.0, abs=1e-10)


@given(coeff_lists())
@settings(max_examples=200, deadline=None)
def test_hs_triplet_doubles_to_squares(xs):
    state = to_state(xs)
    c = concurrence(state)
    for sub in ("A", "B"):
        p_hs, c_hs, c_nl = hilbert_schmidt_triplet(state, sub)
        assert 2 * p_hs == pytest.approx(predictability(state, sub) ** 2, abs=1e-10)
        assert 2 * c_hs == pytest.approx(visibility(state, sub) ** 2, abs=1e-10)
        assert 2 * c_nl == pytest.approx(c ** 2, abs=1e-10)


@given(coeff_lists())
@settings(max_examples=200, deadline=None)
def test_probability_decomposition_matches_direct(xs):
    state = to_state(xs)
    c = concurrence(state)
    for sub in ("A", "B"):
        p2, v2, c2 = probability_decomposition(state, sub)
        assert p2 == pytest.approx(predictability(state, sub) ** 2, abs=1e-10)
        assert v2 == pytest.approx(visibility(state, sub) ** 2, abs=1e-10)
        assert c2 == pytest.approx(c ** 2, abs=1e-10)


@given(coeff_lists())
@settings(max_examples=200, deadline=None)
def test_pauli_expectation_cross_check(xs):
    state = to_state(xs)
    p_a, p_b, v_a, v_b = sigma_expectations(state)
    assert predictability(state, "A") == pytest.approx(p_a, abs=1e-12)
    assert predictability(state, "B") == pytest.approx(p_b, abs=1e-12)
    assert visibility(state, "A") == pytest.approx(v_a, abs=1e-12)
    assert visibility(state, "B") == pytest.approx(v_b, abs=1e-12)


@given(coeff_lists())
@settings(max_examples=200, deadline=None)
def test_concurrence_is_matrix_determinant(xs):
    state = to_state(xs)
    m = np.sqrt(2.0) * state.coefficients.reshape(2, 2)
    assert concurrence(state) == pytest.approx(abs(np.linalg.det(m)), abs=1e-12)


@given(coeff_lists())
@settings(max_examples=200, deadline=None)
def test_linear_entropy_equals_squared_concurrence(xs):
    state = to_state(xs)
    assert linear_entropy(state) == pytest.approx(concurrence(state) ** 2,
                                                  abs=1e-12)


@given(coeff_lists())
@settings(max_examples=200, deadline=None)
def test_reduced_density_contract(xs):
    state = to_state(xs)
    c = concurrence(state)
    expected = np.sort([0.5 * (1 - np.sqrt(max(0.0, 1 - c * c))),
                        0.5 * (1 + np.sqrt(max(0.0, 1 - c * c)))])
    for sub in ("A", "B"):
        rho = reduced_density_matrix(state, sub)
        np.testing.assert_allclose(rho, rho.conj().T, atol=1e-12)
        assert np.trace(rho).real == pytest.approx(1.0, abs=1e-12)
        eigs = np.linalg.eigvalsh(rho)
        assert eigs.min() > -1e-10
        np.testing.assert_allclose(np.sort(eigs), expected, atol=1e-10)


def test_local_unitary_invariance_of_concurrence():
    rng = np.random.default_rng(7)
    for _ in range(60):
        state = TwoQubitState.from_coefficients(oracles.random_states(rng, 1)[0])
        u_a, _ = np.linalg.qr(rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2)))
        u_b, _ = np.linalg.qr(rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2)))
        rotated = TwoQubitState.from_coefficients(
            np.kron(u_a, u_b) @ state.coefficients)
        assert concurrence(rotated) == pytest.approx(concurrence(state), abs=1e-10)


def test_entropy_closed_form_matches_eigen_path():
    rng = np.random.default_rng(11)
    for coeffs in oracles.random_states(rng, 50):
        state = TwoQubitState.from_coefficients(coeffs)
        s_eigen = entropic_triplet(state, "A")[2]
        s_closed = entanglement_entropy_from_concurrence(concurrence(state))
        assert s_eigen == pytest.approx(s_closed, abs=1e-10)
