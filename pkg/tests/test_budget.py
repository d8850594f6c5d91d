import math

import pytest

from intrabody.budget import (
    DETECTORS,
    OPTICAL_TX_DBW,
    THZ_TX_DBW,
    BudgetReport,
    DetectorSpec,
    RadioLink,
    dbw_to_watts,
    link_feasibility,
    pathloss_from_fields,
    pathloss_from_s21,
    received_power_dbw,
    required_sensitivity_dbw,
    watts_to_dbw,
)
from intrabody.errors import DomainError


def test_thz_reference_chain():
    link = RadioLink(tx_power_dbw=THZ_TX_DBW, loss_db=65.8)
    received = received_power_dbw(link)
    assert received == pytest.approx(-95.8, abs=1e-12)
    assert dbw_to_watts(received) == pytest.approx(2.6302679918953814e-10, rel=1e-12)
    threshold = required_sensitivity_dbw(received, 10.0)
    assert threshold == pytest.approx(-105.8, abs=1e-12)
    report = link_feasibility(link, DETECTORS["thz_reference"], snr_target_db=10.0)
    assert report.margin_db == pytest.approx(0.0, abs=1e-12)
    assert report.feasible


def test_optical_reference_chain():
    link = RadioLink(tx_power_dbw=OPTICAL_TX_DBW, loss_db=88.6)
    received = received_power_dbw(link)
    assert received == pytest.approx(-98.6, abs=1e-12)
    assert dbw_to_watts(received) == pytest.approx(1.3803842646028866e-10, rel=1e-12)
    report = link_feasibility(link, DETECTORS["optical_reference"], snr_target_db=10.0)
    assert report.required_threshold_dbw == pytest.approx(-108.6, abs=1e-12)
    assert report.margin_db == pytest.approx(0.0, abs=1e-12)
    assert report.feasible


def test_shipped_detector_constants():
    assert DETECTORS["thz_reference"].sensitivity_dbw == -105.8
    assert DETECTORS["optical_reference"].sensitivity_dbw == -108.6


def test_margin_sign_convention():
    # a quieter detector leaves headroom, a deafer one goes negative
    link = RadioLink(tx_power_dbw=-30.0, loss_db=65.8)
    good = link_feasibility(link, DetectorSpec("quiet", -110.0), snr_target_db=10.0)
    assert good.margin_db == pytest.approx(4.2, abs=1e-12)
    assert good.feasible
    flat = link_feasibility(link, DetectorSpec("flat", -105.8), snr_target_db=10.0)
    assert flat.margin_db == pytest.approx(0.0, abs=1e-12)
    assert flat.feasible
    bad = link_feasibility(link, DetectorSpec("deaf", -104.8), snr_target_db=10.0)
    assert bad.margin_db == pytest.approx(-1.0, abs=1e-12)
    assert not bad.feasible


def test_gain_terms_add_linearly():
    base = received_power_dbw(RadioLink(tx_power_dbw=-30.0, loss_db=65.8))
    boosted = received_power_dbw(
        RadioLink(tx_power_dbw=-30.0, tx_gain_db=3.0, rx_gain_db=2.5, loss_db=65.8)
    )
    assert boosted - base == pytest.approx(5.5, abs=1e-12)


def test_dbw_watts_round_trip():
    for p in (-105.8, -30.0, 0.0, 13.0):
        assert watts_to_dbw(dbw_to_watts(p)) == pytest.approx(p, abs=1e-12)
    with pytest.raises(DomainError):
        watts_to_dbw(0.0)
    with pytest.raises(DomainError):
        watts_to_dbw(-1e-12)


def test_pathloss_from_s21():
    assert pathloss_from_s21(0.5) == pytest.approx(-20.0 * math.log10(0.5), rel=1e-12)
    assert pathloss_from_s21(1.0) == 0.0
    # complex scattering parameter uses its magnitude
    assert pathloss_from_s21(0.3 - 0.4j) == pytest.approx(
        -20.0 * math.log10(0.5), rel=1e-12
    )
    assert pathloss_from_s21(0.0) == math.inf


def test_pathloss_from_fields():
    assert pathloss_from_fields(4.0, 1.0) == pytest.approx(
        10.0 * math.log10(4.0), rel=1e-12
    )
    with pytest.raises(DomainError):
        pathloss_from_fields(0.0, 1.0)
    with pytest.raises(DomainError):
        pathloss_from_fields(1.0, 0.0)


def test_field_and_s21_pathloss_agree():
    # |s21|^2 equal to the squared-field ratio gives the same dB loss
    s21 = 0.123
    assert pathloss_from_s21(s21) == pytest.approx(
        pathloss_from_fields(1.0, s21 * s21), rel=1e-12
    )


def test_loss_must_be_finite():
    with pytest.raises(DomainError):
        RadioLink(tx_power_dbw=-30.0, loss_db=math.inf)
    with pytest.raises(DomainError):
        RadioLink(tx_power_dbw=-30.0, loss_db=math.nan)


def test_report_carries_inputs():
    link = RadioLink(tx_power_dbw=-30.0, loss_db=65.8)
    det = DETECTORS["thz_reference"]
    report = link_feasibility(link, det, snr_target_db=10.0)
    assert isinstance(report, BudgetReport)
    assert report.link == link
    assert report.detector == det
    assert report.snr_target_db == 10.0
    assert report.received_watts == pytest.approx(
        dbw_to_watts(report.received_dbw), rel=1e-15
    )
