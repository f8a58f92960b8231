import numpy as np
import pytest

from qreal import (
    build_hamiltonian,
    nsare_residual,
    solve_lyapunov,
    solve_nsare,
    verify_proof_claims,
)
from qreal.errors import ImaginaryAxisEigenvalue, NonHurwitz, SingularX1
from qreal.riccati import stable_subspace, x_from_subspace
from qreal.structmat import theta

from conftest import ROUNDED_X_EXAMPLE1, zero_output_system


def test_hamiltonian_blocks(ex1):
    h = build_hamiltonian(ex1).h
    bu, c = ex1.b_u, ex1.c
    np.testing.assert_array_equal(h[:4, :4], ex1.a)
    np.testing.assert_array_equal(h[4:, 4:], -ex1.a.T)
    top = -bu @ theta(2) @ bu.T
    low = -c.T @ theta(2) @ c
    np.testing.assert_array_equal(h[:4, 4:], top)
    np.testing.assert_array_equal(h[4:, :4], low)
    np.testing.assert_array_equal(top.T, -top)
    np.testing.assert_array_equal(low.T, -low)


def test_example1_hamiltonian_has_no_axis_eigenvalues(ex1):
    ev = build_hamiltonian(ex1).eigenvalues
    assert np.min(np.abs(ev.real)) > 0.1


def test_example1_solution(ex1):
    sol = solve_nsare(ex1)
    assert np.max(np.abs(sol.x - ROUNDED_X_EXAMPLE1)) <= 5e-4
    assert sol.residual <= 1e-8
    assert sol.skew_defect <= 1e-8
    assert sol.sigma_min_ratio > 0.1
    assert sol.accepted


def test_example2_singular_x1(ex2):
    with pytest.raises(SingularX1):
        solve_nsare(ex2)


def test_residual_of_rounded_x(ex1):
    assert nsare_residual(ex1, ROUNDED_X_EXAMPLE1) <= 5e-3


def test_residual_at_zero(ex1):
    expected = np.linalg.norm(ex1.c.T @ theta(2) @ ex1.c, "fro")
    assert nsare_residual(ex1, np.zeros((4, 4))) == pytest.approx(expected)
    assert nsare_residual(zero_output_system(), np.zeros((4, 4))) == 0.0


def test_imaginary_axis_eigenvalue_detected():
    from qreal import QuantumLinearSystem

    # lossless oscillator: A = 2 Th, no coupling -> spec(H) = {+-2i}
    sys = QuantumLinearSystem(2 * theta(2), np.zeros((2, 2)), np.zeros((2, 2)))
    with pytest.raises(ImaginaryAxisEigenvalue):
        solve_nsare(sys)


def test_solution_basis_invariance(ex1, gen_systems):
    rng = np.random.default_rng(11)
    for sys in [ex1] + gen_systems:
        h = build_hamiltonian(sys).h
        v, _ = stable_subspace(h, sys.n)
        x_ref, _ = x_from_subspace(v)
        for _ in range(5):
            g = rng.normal(size=(sys.n, sys.n)) + 3 * np.eye(sys.n)
            x, _ = x_from_subspace(v @ g)
            assert np.max(np.abs(x - x_ref)) <= 1e-8


def test_accepted_solutions_meet_invariants(gen_systems):
    for sys in gen_systems:
        sol = solve_nsare(sys)
        nx = np.linalg.norm(sol.x, "fro")
        assert np.isrealobj(sol.x)
        assert sol.skew_defect <= 1e-8 * (1 + nx)
        assert sol.sigma_min_ratio >= 1e-8
        assert sol.residual <= 1e-8 * (1 + nx ** 2)


def test_lyapunov_closed_form():
    q = np.arange(16.0).reshape(4, 4)
    np.testing.assert_allclose(solve_lyapunov(-np.eye(4), q), q / 2, atol=1e-14)


def test_lyapunov_skew_input_gives_skew_output(ex1):
    q = ex1.c.T @ theta(2) @ ex1.c
    lmat = solve_lyapunov(ex1.a, q)
    assert np.linalg.norm(lmat + lmat.T, "fro") <= 1e-10
    assert np.linalg.norm(ex1.a.T @ lmat + lmat @ ex1.a + q, "fro") <= 1e-10 * (1 + np.linalg.norm(q))


def test_lyapunov_symmetric_and_linear():
    rng = np.random.default_rng(5)
    for _ in range(20):
        a = rng.normal(size=(5, 5))
        a -= (np.max(np.linalg.eigvals(a).real) + 0.5) * np.eye(5)
        q1 = rng.normal(size=(5, 5))
        q2 = rng.normal(size=(5, 5))
        qs = q1 + q1.T
        ls = solve_lyapunov(a, qs)
        np.testing.assert_allclose(ls, ls.T, atol=1e-10)
        l1, l2, l12 = (solve_lyapunov(a, q) for q in (q1, q2, q1 + q2))
        assert np.max(np.abs(l12 - l1 - l2)) <= 1e-10
        assert np.linalg.norm(a.T @ l1 + l1 @ a + q1) <= 1e-10 * (1 + np.linalg.norm(q1))


def test_lyapunov_rejects_unstable():
    with pytest.raises(NonHurwitz):
        solve_lyapunov(np.eye(2), np.eye(2))


def test_proof_claims_example1(ex1):
    rep = verify_proof_claims(ex1, solve_nsare(ex1))
    assert rep.max_residual() <= 1e-8


def test_proof_claims_generated(gen_systems):
    for sys in gen_systems:
        assert verify_proof_claims(sys, solve_nsare(sys)).max_residual() <= 1e-8


def test_proof_claims_refuse_unaccepted(ex1):
    sol = solve_nsare(ex1)
    sol.residual = 1.0
    with pytest.raises(ValueError):
        verify_proof_claims(ex1, sol)
