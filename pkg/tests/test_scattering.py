"""Scattering engine: filtered final states, scans, error rows."""

import numpy as np
import pytest

from helicity_ccr import (DegenerateOutcomeError, DomainError, Kinematics,
                          Process, TwoQubitState, basis_state, bell_state,
                          ccr_scan, default_theta_grid, product_superposition,
                          scatter)
from helicity_ccr.serialize import dumps, table_from_scan

import oracles


def test_psi_minus_rides_through_bhabha():
    for mu, th in [(0.5, 1.0), (1.0, np.pi / 2), (40.0, 5.5)]:
        out = scatter(Process.BHABHA, Kinematics(mu=mu, theta=th),
                      bell_state("psi-"))
        assert out.final.overlap(bell_state("psi-")) == pytest.approx(1.0, abs=1e-12)
        assert out.final_report.concurrence == pytest.approx(1.0, abs=1e-12)


def test_case_one_relativistic_limit_state():
    out = scatter(Process.BHABHA, Kinematics(mu=1e6, theta=np.pi / 2),
                  basis_state("RL"))
    assert out.final_report.concurrence == pytest.approx(1.0, abs=1e-11)
    assert out.final.overlap(bell_state("psi+")) == pytest.approx(1.0, abs=1e-11)


def test_balanced_probabilities_at_backscatter():
    # |RR> in, backward angle: equal RR/LL weights make the output maximal
    mu_max = 0.5 * np.sqrt(-3.0 + np.sqrt(17.0))
    out = scatter(Process.BHABHA, Kinematics(mu=mu_max, theta=np.pi),
                  basis_state("RR"))
    assert out.final_report.concurrence == pytest.approx(1.0, abs=1e-12)
    assert abs(out.final.a) ** 2 == pytest.approx(0.5, abs=1e-12)
    assert abs(out.final.d) ** 2 == pytest.approx(0.5, abs=1e-12)


def test_matches_independent_transcription_end_to_end():
    rng = np.random.default_rng(3)
    for _ in range(25):
        mu = np.exp(rng.uniform(np.log(0.2), np.log(200.0)))
        th = rng.uniform(0.05, 2 * np.pi - 0.05)
        lam = rng.uniform(1.0, 300.0)
        initial = TwoQubitState.from_coefficients(oracles.random_states(rng, 1)[0])
        for process in Process:
            ref = oracles.scatter(oracles.TABLES[process.value](mu, th, lam),
                                  initial.coefficients)
            if np.linalg.norm(ref) < 1e-14:
                continue
            out = scatter(process, Kinematics(mu=mu, theta=th, lam=lam), initial)
            c, pa, pb, va, vb = oracles.measures(ref)
            assert out.final_report.concurrence == pytest.approx(c, abs=1e-11)
            assert out.final_report.p_a == pytest.approx(pa, abs=1e-11)
            assert out.final_report.v_b == pytest.approx(vb, abs=1e-11)
            assert out.raw_norm == pytest.approx(np.linalg.norm(ref), rel=1e-12)


def test_linearity_in_the_initial_coefficients():
    kin = Kinematics(mu=2.0, theta=2.2)
    base = TwoQubitState.from_coefficients([0.5, 0.1j, -0.3, 0.2 + 0.7j])
    reference = scatter(Process.BHABHA, kin, base).final
    for scale in (0.25, np.exp(1.3j), -3.0):
        scaled = TwoQubitState.from_coefficients(scale * base.coefficients)
        out = scatter(Process.BHABHA, kin, scaled).final
        assert out.overlap(reference) == pytest.approx(1.0, abs=1e-12)


def test_degenerate_outcome_is_an_error():
    # the lowest-order pair-to-muons column for phi+ cancels identically
    with pytest.raises(DegenerateOutcomeError):
        scatter(Process.EE_TO_MUMU, Kinematics(mu=5.0, theta=1.0),
                bell_state("phi+"))


def test_reports_carry_triality():
    out = scatter(Process.COMPTON, Kinematics(mu=0.8, theta=2.6),
                  product_superposition(0.3, 1.1))
    for rep in (out.initial_report, out.final_report):
        assert rep.triality_residual_a < 1e-10
        assert rep.triality_residual_b < 1e-10


# ------------------------------------------------------------------------ scans

def test_scan_rows_satisfy_triality():
    res = ccr_scan(Process.BHABHA, product_superposition(0.4, 0.9), 1.0,
                   theta_grid=default_theta_grid(64))
    assert len(res.rows) == 64
    for row in res.rows:
        assert row.error is None
        assert row.residual_a < 1e-10 and row.residual_b < 1e-10
        assert row.raw_norm > 0


def test_case_one_subsystem_symmetry():
    for mu in (1.0, 1000.0):
        res = ccr_scan(Process.BHABHA, basis_state("RL"), mu,
                       theta_grid=default_theta_grid(360))
        np.testing.assert_array_equal(res.column("PA2"), res.column("PB2"))
        np.testing.assert_array_equal(res.column("VA2"), res.column("VB2"))


def test_case_one_visibility_by_regime():
    res = ccr_scan(Process.BHABHA, basis_state("RL"), 1000.0,
                   theta_grid=default_theta_grid(360))
    assert res.column("VA2").max() < 1e-4
    res = ccr_scan(Process.BHABHA, basis_state("RL"), 1.0,
                   theta_grid=default_theta_grid(360))
    assert res.column("VA2").max() > 0.01


def test_case_one_concurrence_peaks_at_right_angle():
    res = ccr_scan(Process.BHABHA, basis_state("RL"), 1000.0,
                   theta_grid=default_theta_grid(720))
    thetas, c2 = res.thetas, res.column("C2")
    half = thetas < np.pi
    peak = thetas[half][np.argmax(c2[half])]
    assert abs(peak - np.pi / 2) <= np.pi / 720


def test_case_two_loses_subsystem_symmetry_nonrelativistically():
    res = ccr_scan(Process.BHABHA, product_superposition(0.5, 0.5), 1.0,
                   theta_grid=default_theta_grid(64))
    gap = np.abs(res.column("PA2") - res.column("PB2"))
    assert gap.max() > 1e-3
    # and the curve is not symmetric about theta = pi
    c2 = res.column("C2")
    assert np.abs(c2 - c2[::-1]).max() > 1e-3


def test_case_two_relativistic_mirror_symmetry():
    res = ccr_scan(Process.BHABHA, product_superposition(0.5, 0.8), 1e6,
                   theta_grid=default_theta_grid(64))
    for name in ("C2", "PA2", "PB2", "VA2", "VB2"):
        col = res.column(name)
        assert np.abs(col - col[::-1]).max() < 1e-4


def test_scan_marks_bad_rows_without_aborting():
    grid = np.array([1.0, 0.0, 2.0, 2 * np.pi, np.nan])
    res = ccr_scan(Process.BHABHA, basis_state("RL"), 1.0, theta_grid=grid)
    errors = [row.error for row in res.rows]
    assert errors == [None, "domain_error", None, "domain_error", "domain_error"]
    assert res.rows[1].c2 is None


def test_scan_marks_degenerate_rows():
    res = ccr_scan(Process.EE_TO_MUMU, bell_state("phi+"), 5.0,
                   theta_grid=default_theta_grid(8))
    assert all(row.error == "degenerate_outcome" for row in res.rows)


def test_scan_deterministic_and_serializable():
    grid = default_theta_grid(16)
    a = ccr_scan(Process.COMPTON, basis_state("RL"), 0.7, theta_grid=grid)
    b = ccr_scan(Process.COMPTON, basis_state("RL"), 0.7, theta_grid=grid)
    assert [r.as_tuple() for r in a.rows] == [r.as_tuple() for r in b.rows]
    assert dumps(table_from_scan(a), "csv") == dumps(table_from_scan(b), "csv")
    assert dumps(table_from_scan(a), "json") == dumps(table_from_scan(b), "json")


def test_scan_validates_grid_and_mu():
    with pytest.raises(DomainError):
        ccr_scan(Process.BHABHA, basis_state("RL"), 1.0, theta_grid=[])
    with pytest.raises(DomainError):
        ccr_scan(Process.BHABHA, basis_state("RL"), -1.0,
                 theta_grid=default_theta_grid(4))
