import math

import numpy as np
import pytest

from intrabody.dielectrics import (
    DebyeModel,
    Material,
    absorption_index,
    conductivity,
    debye_permittivity,
    index_to_permittivity,
    lookup_permittivity,
    material_library,
    material_set_names,
    penetration_depth,
    permittivity_to_index,
)
from intrabody.errors import DomainError

from reference_impls import REFERENCE_TISSUES, relaxation_point

BLOOD = material_library("table")["whole_blood"]


def test_blood_permittivity_at_1_thz():
    eps = debye_permittivity(BLOOD.debye, 1e12)
    assert eps.real == pytest.approx(3.334240781699765, rel=1e-12)
    assert -eps.imag == pytest.approx(2.160457186553182, rel=1e-12)


def test_blood_index_at_1_thz():
    idx = permittivity_to_index(debye_permittivity(BLOOD.debye, 1e12))
    assert idx.real == pytest.approx(1.91144471134061, rel=1e-12)
    assert -idx.imag == pytest.approx(0.5651372424572838, rel=1e-12)


def test_blood_conductivity_and_depth_at_1_thz():
    eps = debye_permittivity(BLOOD.debye, 1e12)
    sigma = conductivity(-eps.imag, 1e12)
    assert sigma == pytest.approx(120.13479273437227, rel=1e-11)
    assert penetration_depth(sigma, 1e12) == pytest.approx(4.604003609361694e-05, rel=1e-11)


def test_debye_static_and_high_frequency_limits():
    model = BLOOD.debye
    low = debye_permittivity(model, 1.0)
    high = debye_permittivity(model, 1e20)
    assert low.real == pytest.approx(model.eps_static, rel=1e-6)
    assert abs(low.imag) < 1e-6
    assert high.real == pytest.approx(model.eps_inf, rel=1e-6)
    assert abs(high.imag) < 1e-6


def test_debye_steps_telescope():
    model = DebyeModel.double(2.1, 130.0, 3.8, 14.4e-12, 0.1e-12)
    assert model.steps() == (130.0 - 3.8, 3.8 - 2.1)
    assert model.eps_static == 130.0


def test_debye_matches_term_by_term_reference():
    for name, (e_inf, e_s, e_2, t1, t2) in REFERENCE_TISSUES.items():
        model = DebyeModel.double(e_inf, e_s, e_2, t1, t2)
        for f in (0.2e12, 0.7e12, 1e12):
            er, ei, n_ref, k_ref, sigma_ref = relaxation_point(e_inf, e_s, e_2, t1, t2, f)
            eps = debye_permittivity(model, f)
            assert eps.real == pytest.approx(er, rel=1e-12), name
            assert -eps.imag == pytest.approx(ei, rel=1e-12), name
            idx = permittivity_to_index(eps)
            assert idx.real == pytest.approx(n_ref, rel=1e-12)
            assert -idx.imag == pytest.approx(k_ref, rel=1e-12)
            assert conductivity(-eps.imag, f) == pytest.approx(sigma_ref, rel=1e-12)


def test_debye_vector_matches_scalar():
    freqs = np.linspace(0.1e12, 1e12, 37)
    vec = debye_permittivity(BLOOD.debye, freqs)
    for f, v in zip(freqs, vec):
        assert v == debye_permittivity(BLOOD.debye, float(f))


def test_index_round_trip():
    rng = np.random.default_rng(7)
    for _ in range(200):
        eps = complex(rng.uniform(1.0, 100.0), -rng.uniform(0.0, 50.0))
        idx = permittivity_to_index(eps)
        back = index_to_permittivity(idx)
        # kappa loses digits when eps'' << eps', so compare against |eps|
        assert back == pytest.approx(eps, rel=1e-12)


def test_index_round_trip_vectorized():
    eps = np.array([3.0 - 2.0j, 1.0 + 0.0j, 80.0 - 10.0j])
    back = index_to_permittivity(permittivity_to_index(eps))
    assert np.allclose(back, eps, rtol=1e-12, atol=0)


def test_active_medium_rejected():
    with pytest.raises(DomainError):
        permittivity_to_index(2.0 + 0.5j)


def test_hemoglobin_index_at_600_nm():
    hgb = material_library("optical")["hemoglobin"]
    idx = permittivity_to_index(lookup_permittivity(hgb, 600e-9))
    assert idx.real == pytest.approx(1.4106736007495706, rel=1e-12)
    assert -idx.imag == pytest.approx(8.861015065269729e-05, rel=1e-12)


def test_table_interpolation_is_linear():
    hgb = material_library("optical")["hemoglobin"]
    a = lookup_permittivity(hgb, 600e-9)
    b = lookup_permittivity(hgb, 650e-9)
    mid = lookup_permittivity(hgb, 625e-9)
    assert mid.real == pytest.approx((a.real + b.real) / 2, rel=1e-12)
    assert mid.imag == pytest.approx((a.imag + b.imag) / 2, rel=1e-12)


def test_table_refuses_extrapolation():
    hgb = material_library("optical")["hemoglobin"]
    with pytest.raises(DomainError) as err:
        lookup_permittivity(hgb, 400e-9)
    # error names the supported interval
    assert "4.500e-07" in str(err.value)
    assert "1.000e-06" in str(err.value)


def test_lookup_dispatches_to_debye():
    eps = lookup_permittivity(BLOOD, 3e8 / 1e12)
    assert eps == debye_permittivity(BLOOD.debye, 1e12)


def test_material_sets_contents():
    assert set(material_set_names()) == {"table", "appendix", "optical"}
    assert set(material_library("table")) == {"water", "whole_blood", "skin"}
    assert set(material_library("appendix")) == {
        "whole_blood",
        "blood_plasma",
        "water",
        "skin_dermis",
        "skin_epidermis",
    }
    assert set(material_library("optical")) == {"fat", "hemoglobin", "water"}
    with pytest.raises(DomainError):
        material_library("nope")


def test_material_validation():
    with pytest.raises(DomainError):
        Material(name="empty")
    with pytest.raises(DomainError):
        Material(name="both", debye=BLOOD.debye, table=((450e-9, 2.0 + 0j),))
    with pytest.raises(DomainError):
        Material(name="unsorted", table=((500e-9, 2.0 + 0j), (450e-9, 2.0 + 0j)))


def test_model_validation():
    with pytest.raises(DomainError):
        DebyeModel(0.5, ((80.0, 8e-12),))
    with pytest.raises(DomainError):
        DebyeModel(2.0, ())
    with pytest.raises(DomainError):
        DebyeModel.double(2.1, 130.0, 3.8, -1e-12, 0.1e-12)


def test_scalar_domain_errors():
    with pytest.raises(DomainError):
        debye_permittivity(BLOOD.debye, 0.0)
    with pytest.raises(DomainError):
        debye_permittivity(BLOOD.debye, -1e12)
    with pytest.raises(DomainError):
        conductivity(-0.1, 1e12)
    with pytest.raises(DomainError):
        conductivity(1.0, 0.0)
    with pytest.raises(DomainError):
        penetration_depth(-1.0, 1e12)
    with pytest.raises(DomainError):
        penetration_depth(1.0, 0.0)
    with pytest.raises(DomainError):
        absorption_index(-1.0, 500e-9)
    with pytest.raises(DomainError):
        absorption_index(1.0, 0.0)
    with pytest.raises(DomainError):
        lookup_permittivity(BLOOD, -1e-6)


def test_penetration_depth_lossless_is_infinite():
    assert penetration_depth(0.0, 1e12) == math.inf


def test_absorption_index_round_trip():
    # kappa -> power coefficient -> kappa
    kappa = 0.5651372424572838
    lam = 3e-4
    alpha = 4.0 * math.pi * kappa / lam
    assert absorption_index(alpha, lam) == pytest.approx(kappa, rel=1e-12)
