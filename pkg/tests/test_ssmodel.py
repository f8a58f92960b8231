import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from qreal import QuantumLinearSystem, check_assumptions, eval_adjoint, eval_transfer
from qreal.errors import DimensionError, NearPole
from qreal.ssmodel import hamiltonian, spectral_pairing_defect

from conftest import zero_output_system

# per-channel data of the first fixture: x-coordinates (1, 3) and (2, 4) decouple
A11, A12, A21, A22 = -1.3894, -0.4472, -0.2, -0.25
K = 0.4472 ** 2  # c * b


def channel_gain(s):
    """Hand elimination: G_ch(s) = K (s - A22) / det(sI - A_ch)."""
    det = (s - A11) * (s - A22) - A12 * A21
    return K * (s - A22) / det


def test_dimensions_validated():
    with pytest.raises(DimensionError):
        QuantumLinearSystem(np.eye(3), np.ones((3, 2)), np.ones((2, 3)))
    with pytest.raises(DimensionError):
        QuantumLinearSystem(np.eye(4), np.ones((4, 2)), np.ones((2, 3)))
    with pytest.raises(DimensionError):
        QuantumLinearSystem(np.eye(4), np.ones((4, 1)), np.ones((2, 4)))


def test_arrays_are_read_only(ex1):
    with pytest.raises(ValueError):
        ex1.a[0, 0] = 1.0


def test_strictly_proper(ex1):
    assert np.max(np.abs(eval_transfer(ex1, 1e9))) <= 1e-8


def test_dc_gain_matches_hand_elimination(ex1):
    g = eval_transfer(ex1, 0.0)
    np.testing.assert_allclose(np.diag(g), [channel_gain(0.0)] * 2, rtol=1e-12)
    assert g[0, 1] == 0 and g[1, 0] == 0
    assert channel_gain(0.0) == pytest.approx(0.2 * 0.25 / 0.2579, rel=1e-3)


@pytest.mark.parametrize("s", [0.3, 1j, 2 - 3j, -0.7 + 0.1j])
def test_generic_point_matches_hand_elimination(ex1, s):
    g = eval_transfer(ex1, s)
    np.testing.assert_allclose(g, channel_gain(s) * np.eye(2), rtol=1e-12, atol=1e-15)


def test_near_pole_rejected(ex1):
    pole = np.linalg.eigvals(ex1.a)[0]
    with pytest.raises(NearPole):
        eval_transfer(ex1, pole)


def test_adjoint_mirrored_numerator(ex1):
    # d(-s) G~(s) = K (-s - A22) I, i.e. the numerator with s -> -s
    for s in [0.5, 1 + 1j, -2j]:
        d_minus = (-s - A11) * (-s - A22) - A12 * A21
        np.testing.assert_allclose(d_minus * eval_adjoint(ex1, s),
                                   K * (-s - A22) * np.eye(2), rtol=1e-12, atol=1e-15)


def test_adjoint_zero_output():
    sys = zero_output_system()
    np.testing.assert_array_equal(eval_adjoint(sys, 1.0 + 1j), 0)


@settings(max_examples=100, deadline=None)
@given(st.floats(-3, 3))
def test_adjoint_is_conjugate_transpose_on_axis(log_w):
    rng = np.random.default_rng(7)
    sys = QuantumLinearSystem(rng.normal(size=(4, 4)) - 2 * np.eye(4),
                              rng.normal(size=(4, 2)), rng.normal(size=(2, 4)))
    w = 10.0 ** log_w
    g = eval_transfer(sys, 1j * w)
    ga = eval_adjoint(sys, 1j * w)
    assert np.max(np.abs(ga - g.conj().T)) <= 1e-12 * (1 + np.max(np.abs(g)))


def test_assumptions_example1(ex1):
    rep = check_assumptions(ex1)
    assert rep.hurwitz and rep.minimal and rep.disjoint_spectra
    assert rep.hamiltonian_symmetric and rep.imaginary_axis_free
    assert rep.min_eigenvalue_gap >= 0


def test_assumptions_example2(ex2):
    rep = check_assumptions(ex2)
    assert rep.hamiltonian_symmetric
    assert rep.imaginary_axis_free
    assert not rep.hurwitz  # A has an eigenvalue near 1.94
    assert rep.minimal


def test_unstable_a_flagged():
    sys = QuantumLinearSystem(np.eye(2), np.eye(2), np.eye(2))
    assert not check_assumptions(sys).hurwitz


def test_nonminimal_flagged():
    a = np.diag([-1.0, -2.0, -3.0, -4.0])
    b = np.zeros((4, 2))
    b[:2] = np.eye(2)
    c = np.ones((2, 4))
    rep = check_assumptions(QuantumLinearSystem(a, b, c))
    assert not rep.minimal and rep.controllability_rank == 2


def test_zero_output_hamiltonian_is_block_triangular():
    sys = zero_output_system()
    h = hamiltonian(sys)
    np.testing.assert_array_equal(h[4:, :4], 0)
    ev = np.sort_complex(np.linalg.eigvals(h))
    expected = np.sort_complex(np.concatenate([np.linalg.eigvals(sys.a),
                                               np.linalg.eigvals(-sys.a.T)]))
    np.testing.assert_allclose(ev, expected, atol=1e-10)


@settings(max_examples=50, deadline=None)
@given(st.integers(0, 2**32 - 1), st.sampled_from([(2, 2, 2), (4, 2, 2), (6, 4, 2), (4, 4, 4)]))
def test_hamiltonian_spectrum_pairing(seed, dims):
    n, n_u, n_y = dims
    rng = np.random.default_rng(seed)
    sys = QuantumLinearSystem(rng.normal(size=(n, n)), rng.normal(size=(n, n_u)),
                              rng.normal(size=(n_y, n)))
    assert spectral_pairing_defect(np.linalg.eigvals(hamiltonian(sys))) <= 1e-8
