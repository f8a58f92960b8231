import numpy as np
import pytest

from qreal import GridSpec, check_positivity, inertia_check, solve_nsare, sweep
from qreal.freqcond import FrequencySweep, det_phi_jw
from qreal.jspectral import SpectralFactor


def test_default_grid():
    w = GridSpec().omegas()
    assert w.size == 502 and w[0] == 0.0 and w[-1] == 1e6
    assert np.all(np.diff(w) > 0)


def test_single_point_grid():
    w = GridSpec(points=1, endpoints=False).omegas()
    np.testing.assert_array_equal(w, [1e-3])


@pytest.mark.parametrize("name", ["ex1", "ex2"])
def test_fixture_sweeps_positive(name, request):
    sys = request.getfixturevalue(name)
    sw = sweep(sys)
    assert sw.min_real > 0
    assert check_positivity(sw)
    assert abs(sw.det_values[-1] - 1) <= 1e-6


def test_determinant_is_real(ex1, ex2, gen_systems):
    for sys in [ex1, ex2] + gen_systems[:3]:
        sw = sweep(sys)
        assert np.all(np.abs(sw.det_values.imag) <= 1e-8 * (1 + np.abs(sw.det_values)))


def test_negated_sweep_fails_with_witness(ex1):
    sw = sweep(ex1)
    neg = FrequencySweep(sw.omegas, -sw.det_values)
    res = check_positivity(neg)
    assert not res.holds
    # witness is where the original determinant is largest
    assert res.witness_omega == sw.omegas[np.argmax(sw.det_values.real)]


def test_sweep_validation():
    with pytest.raises(ValueError):
        FrequencySweep([1.0, 1.0], [1, 1])
    with pytest.raises(ValueError):
        FrequencySweep([1.0], [1, 1])


def test_necessity_direction(gen_systems):
    for sys in gen_systems:
        assert check_positivity(sweep(sys)).holds


def test_inertia_example1(ex1):
    sol = solve_nsare(ex1)
    assert inertia_check(ex1, sol, 1.0) == (1, 1)


def test_inertia_identity_factor(ex1):
    f = SpectralFactor(a=ex1.a, b=ex1.b_u, n_a=np.zeros((2, 4)), inv_a=ex1.a)
    assert inertia_check(ex1, None, 0.5, factor=f) == (1, 1)


def test_inertia_generated(gen_systems):
    rng = np.random.default_rng(9)
    for sys in gen_systems[:5]:
        sol = solve_nsare(sys)
        for w in 10.0 ** rng.uniform(-2, 2, 10):
            assert inertia_check(sys, sol, w) == (sys.n_u // 2, sys.n_u // 2)


def test_det_helper_matches_sweep(ex1):
    sw = sweep(ex1, [0.5, 2.0])
    assert det_phi_jw(ex1, 2.0) == sw.det_values[1]
