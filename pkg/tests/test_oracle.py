import math

import numpy as np
import pytest

import planorth as po
from planorth.errors import DegreeTooHighError, NonStarlikeError
from planorth.oracle import berezin_expectation, holomorphic_pairing, smoothstep


def test_disk_mass_and_moment(disk_const_model):
    rule = po.build_quadrature(disk_const_model.map, disk_const_model.weight, degree=24)
    assert abs(rule.mass - 1.0) <= 1e-10
    assert abs(rule.integrate(np.abs(rule.nodes) ** 20).real - 1.0 / 11.0) <= 1e-10
    assert rule.declared_accuracy <= 1e-12
    assert np.all(rule.weights > 0)


def test_ellipse_mass(ellipse_const_model):
    rule = po.build_quadrature(ellipse_const_model.map, ellipse_const_model.weight, degree=24)
    assert abs(rule.mass - 2.0) <= 1e-8


def test_non_starlike_rejected():
    m = po.exterior_map(1.0, [0.0, 0.5, 0.3])
    ws = po.pullback_weight(m, po.constant_weight(), 8, 0.985)
    with pytest.raises(NonStarlikeError):
        po.build_quadrature(m, ws, degree=16)


def test_oracle_monomials_on_disk(disk_const_oracle):
    _, polys = disk_const_oracle
    # rotation invariance forces P_n = sqrt(n+1) z^n
    assert abs(polys.kappa[10] - math.sqrt(11)) <= 1e-9
    col = polys.coeff_table[:, 7]
    assert abs(col[7] - math.sqrt(8)) < 1e-10
    assert np.max(np.abs(col[:7])) < 1e-10


def test_oracle_gram_residual(disk_alpha_oracle):
    _, polys = disk_alpha_oracle
    assert polys.gram_residual <= 1e-10


def test_oracle_kappa_times_prefactor_carleman(ellipse_const_model, ellipse_const_oracle):
    _, polys = ellipse_const_oracle
    N = 30
    assert abs(polys.kappa[N] * po.monic_prefactor(ellipse_const_model, N)
               / math.sqrt(N + 1) - 1.0) <= 1e-4


def test_rotation_equivariance_of_kappa(disk_alpha_oracle):
    _, polys = disk_alpha_oracle
    m = po.disk_map()
    rotated = po.exp_re_linear_weight(0.3 * np.exp(1j * np.pi / 3))
    ws = po.pullback_weight(m, rotated, 8, 0.5)
    rule = po.build_quadrature(m, ws, degree=42)
    polys_rot = po.oracle_onps(rule, 20)
    assert np.max(np.abs(polys_rot.kappa[:21] / polys.kappa[:21] - 1.0)) <= 1e-9


def test_kernel_symmetry_and_disk_value(disk_const_oracle, disk_alpha_oracle):
    _, polys = disk_alpha_oracle
    z, w = 1.3 + 0.2j, 0.8 - 0.5j
    assert po.oracle_kernel(polys, z, w) == pytest.approx(
        np.conj(po.oracle_kernel(polys, w, z)), rel=1e-12)
    _, pc = disk_const_oracle
    assert po.oracle_kernel(pc, 0.0, 0.0) == pytest.approx(1.0, abs=1e-10)
    diag = po.oracle_kernel(polys, z, z)
    assert abs(diag.imag) <= 1e-12 * diag.real and diag.real > 0


def test_kernel_reproducing_property(disk_alpha_model, disk_alpha_oracle):
    rule, polys = disk_alpha_oracle
    w = 0.4 + 0.3j
    vals = polys.evaluate(rule.nodes, upto=10)
    kr = vals @ np.conj(polys.evaluate(np.array([w]), upto=10)[0])
    q = rule.nodes ** 3
    got = rule.integrate(kr * np.conj(q))
    assert abs(got - np.conj(w) ** 3) <= 1e-8


def test_degree_guard():
    model = po.build_model(po.disk_map(), po.constant_weight(), 1, bidegree=8,
                           inner_radius=0.7)
    rule = po.build_quadrature(model.map, model.weight, degree=16)
    with pytest.raises(DegreeTooHighError):
        po.oracle_onps(rule, 30)


def test_smoothstep_profile():
    assert smoothstep(np.array([0.0, 0.5, 1.0]), 0.0, 1.0) == pytest.approx([0.0, 0.5, 1.0])
    x = np.linspace(0, 1, 11)
    s = smoothstep(x, 0.0, 1.0)
    assert np.all(np.diff(s) >= 0)


def test_l2_discrepancy_flat_disk_matches_prediction(disk_const_model, disk_const_oracle):
    # P_N = sqrt(N+1) z^N exactly, so the only sources of discrepancy are the
    # truncated norm factor (relative |sqrt(1+1/N) - D_N| since ||z^N|| =
    # 1/sqrt(N+1)) and the cutoff region; the high-order run isolates the latter
    rule, polys = disk_const_oracle
    N = 20
    cutoff = po.l2_discrepancy(disk_const_model, polys, rule, N, order=4)
    assert cutoff <= 0.02
    d0 = po.l2_discrepancy(disk_const_model, polys, rule, N, order=0)
    norm_err = abs(math.sqrt(N + 1) - math.sqrt(N) * po.norm_factor(disk_const_model, N, 0))
    predicted = math.hypot(norm_err / math.sqrt(N + 1), cutoff)
    assert abs(d0 - predicted) <= 0.1 * predicted


def test_l2_discrepancy_rate(disk_alpha_model, disk_alpha_oracle):
    rule, polys = disk_alpha_oracle
    d12 = po.l2_discrepancy(disk_alpha_model, polys, rule, 12, order=1)
    d24 = po.l2_discrepancy(disk_alpha_model, polys, rule, 24, order=1)
    assert 0.25 / 1.6 <= d24 / d12 <= 0.25 * 1.6


def test_l2_discrepancy_ellipse_exp_rate(ellipse_exp_model, ellipse_exp_oracle):
    rule, polys = ellipse_exp_oracle
    consts = []
    for N in (16, 32):
        d = po.l2_discrepancy(ellipse_exp_model, polys, rule, N, order=0)
        consts.append(d * N)
    assert 0.4 <= consts[1] / consts[0] <= 2.5


def test_holomorphic_pairing_decays(disk_alpha_model, disk_alpha_oracle):
    _, polys = disk_alpha_oracle
    g = po.circle_from_modes({-1: 1.0}, 4, "exterior-vanishing")
    v16 = abs(holomorphic_pairing(disk_alpha_model, polys, g, 16, rho_ring=0.75))
    v32 = abs(holomorphic_pairing(disk_alpha_model, polys, g, 32, rho_ring=0.75))
    assert v16 / max(v32, 1e-300) >= 2 ** 2.5


def test_holomorphic_pairing_constant_value(disk_alpha_model, disk_alpha_oracle):
    # a test function with nonzero value at infinity pairs to 1/(D_N sqrt(N))
    _, polys = disk_alpha_oracle
    one = po.circle_from_modes({0: 1.0}, 2)
    rels = {}
    for N in (16, 32):
        v = holomorphic_pairing(disk_alpha_model, polys, one, N, rho_ring=0.5)
        pred = 1.0 / (po.norm_factor(disk_alpha_model, N) * math.sqrt(N))
        rels[N] = abs(v / pred - 1.0)
    assert rels[16] <= 1e-5 and rels[32] <= 1e-6
    assert rels[16] / rels[32] >= 2 ** 3.5


def test_berezin_constant_function(disk_alpha_model, disk_alpha_oracle):
    rule, polys = disk_alpha_oracle
    one = po.annulus_constant(1.0, 8, disk_alpha_model.inner_radius)
    for N in (16, 32):
        v = berezin_expectation(disk_alpha_model, polys, rule, one, N)
        # the taper removes only exponentially little of the unit mass
        assert abs(v - 1.0) <= 5e-4
