"""End-to-end smoke checks of the python bindings."""

import cmath
import math

import surfbath


def test_version_string():
    assert surfbath.__version__.count(".") == 2


def test_lattice_shape():
    lat = surfbath.build_lattice(2, 2)
    assert lat.n_qubits == 13
    assert len(lat.stars) == 6
    assert len(lat.plaquettes) == 6
    assert len(lat.positions) == 13
    assert len(lat.neighbor_pairs()) == 16
    assert lat.vertical_id(1, 1) == 6
    # Logical strings overlap in exactly one qubit.
    assert len(set(lat.gamma_x) & set(lat.gamma_z)) == 1


def test_five_qubit_fidelity_closed_form():
    lat = surfbath.build_lattice(1, 1)
    ens = surfbath.Ensemble(lat, j=-1.0 + 0.0j)
    assert ens.generator_count == 2
    assert ens.ensemble_size == 8
    for beta in (0.0, 0.2, 0.8):
        y = math.exp(-8.0 * beta)
        a = 1.0 + 6.0 * y + y * y
        b = (1.0 - y) ** 2
        amp_a, amp_b = ens.amplitudes(beta)
        assert abs(amp_a - a) < 1e-12
        assert abs(amp_b - b) < 1e-12
        assert abs(ens.fidelity(beta) - a / math.hypot(a, b)) < 1e-12
    sweep = ens.fidelity_sweep([0.0, 0.2, 0.8])
    assert sweep[0] == 1.0
    assert sweep == [ens.fidelity(b) for b in (0.0, 0.2, 0.8)]


def test_brute_force_agreement():
    lat = surfbath.build_lattice(1, 1)
    ens = surfbath.Ensemble(lat, j=-1.0 + 0.4j)
    for beta in (0.1, 0.6):
        a, b = ens.amplitudes(beta)
        ba, bb = surfbath.brute_force_amplitudes(lat, -1.0 + 0.4j, beta)
        assert abs(a - ba) < 1e-12
        assert abs(b - bb) < 1e-12


def test_marginal_family_coupling_identity():
    p = surfbath.BathParams(s=0.0, delta=2.1, v=0.6, omega0=1.4)
    b = 0.6 * 2.1
    d = 0.5 * b
    j = surfbath.bath_coupling(p, d)
    expect = 0.5 * (math.acosh(b / d) + 1j * math.pi / 2)
    assert cmath.isclose(j, expect, rel_tol=1e-12)


def test_flip_probability_round_trip():
    p = surfbath.BathParams(s=-0.5, delta=1.7, v=0.8, omega0=1.1)
    beta = 0.9
    prob = surfbath.flip_probability(p, beta)
    assert 0.0 < prob < 0.5
    assert abs(surfbath.beta_for_flip_probability(p, prob) - beta) < 1e-10


def test_bath_ensemble_runs():
    lat = surfbath.build_lattice(2, 2)
    bath = surfbath.BathParams(s=0.0, delta=3.1, v=1.0, omega0=1.0)
    ens = surfbath.bath_ensemble(lat, bath, workers=2)
    assert ens.fidelity(0.0) == 1.0
    assert 0.0 < ens.fidelity(0.5) <= 1.0


def test_cam_single_column_closed_form():
    # Boundary correlation sum of the smallest cluster is 4*tanh(2x), so the
    # critical point solves 1 = 4*x*tanh(2*x).
    x = surfbath.cam_critical_point(1)
    assert abs(1.0 - 4.0 * x * math.tanh(2.0 * x)) < 1e-5
    assert abs(x - 0.3858511596) < 1e-6


def test_cam_extrapolation_window():
    ext = surfbath.cam_extrapolate([1, 2], workers=2)
    assert len(ext.x_c) == 2
    assert ext.beta_c == 1.0 / ext.intercept


def test_estimates():
    assert abs(surfbath.entropy_balance_beta_c() - math.log(2.64) / 8) < 1e-15
    assert abs(surfbath.flip_probability_threshold() - math.log(2.64) / 16) < 1e-15


def test_errors_are_catchable():
    try:
        surfbath.build_lattice(0, 1)
    except surfbath.Error:
        pass
    else:  # pragma: no cover
        raise AssertionError("expected surfbath.Error")
