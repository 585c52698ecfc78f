import pytest

import planorth as po
from planorth.presets import preset_model


@pytest.fixture(scope="session")
def disk_const_model():
    return preset_model("disk-const", 4)


@pytest.fixture(scope="session")
def disk_alpha_model():
    return preset_model("disk-expre03", 4)


@pytest.fixture(scope="session")
def ellipse_const_model():
    return preset_model("ellipse-const", 4)


@pytest.fixture(scope="session")
def ellipse_exp_model():
    return preset_model("ellipse-expre", 4)


@pytest.fixture(scope="session")
def all_preset_models(disk_const_model, disk_alpha_model, ellipse_const_model,
                      ellipse_exp_model):
    return {
        "disk-const": disk_const_model,
        "disk-expre03": disk_alpha_model,
        "ellipse-const": ellipse_const_model,
        "ellipse-expre": ellipse_exp_model,
        "perturbed-expre": preset_model("perturbed-expre", 4),
    }


@pytest.fixture(scope="session")
def disk_alpha_oracle(disk_alpha_model):
    rule = po.build_quadrature(disk_alpha_model.map, disk_alpha_model.weight, degree=82)
    polys = po.oracle_onps(rule, 40)
    return rule, polys


@pytest.fixture(scope="session")
def disk_const_oracle(disk_const_model):
    rule = po.build_quadrature(disk_const_model.map, disk_const_model.weight, degree=44)
    polys = po.oracle_onps(rule, 20)
    return rule, polys


@pytest.fixture(scope="session")
def ellipse_const_oracle(ellipse_const_model):
    rule = po.build_quadrature(ellipse_const_model.map, ellipse_const_model.weight, degree=64)
    polys = po.oracle_onps(rule, 30)
    return rule, polys


@pytest.fixture(scope="session")
def ellipse_exp_oracle(ellipse_exp_model):
    rule = po.build_quadrature(ellipse_exp_model.map, ellipse_exp_model.weight, degree=68)
    polys = po.oracle_onps(rule, 32)
    return rule, polys


def random_annulus(rng, bidegree, inner_radius, scale=1.0):
    side = 2 * bidegree + 1
    grid = scale * (rng.standard_normal((side, side)) + 1j * rng.standard_normal((side, side)))
    return po.AnnulusSeries(grid, inner_radius)


def random_circle(rng, bandwidth, scale=1.0):
    arr = scale * (rng.standard_normal(2 * bandwidth + 1)
                   + 1j * rng.standard_normal(2 * bandwidth + 1))
    return po.CircleSeries(arr)
