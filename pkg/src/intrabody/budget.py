"""Received-power bookkeeping for short-range in-tissue links.

All powers are dBW unless a name says watts.  Gains and losses are dB.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import DomainError

__all__ = [
    "RadioLink",
    "DetectorSpec",
    "BudgetReport",
    "DETECTORS",
    "THZ_TX_DBW",
    "OPTICAL_TX_DBW",
    "dbw_to_watts",
    "watts_to_dbw",
    "received_power_dbw",
    "required_sensitivity_dbw",
    "pathloss_from_s21",
    "pathloss_from_fields",
    "link_feasibility",
]

# Default transmit powers: 1 mW for the THz carrier, 100 mW for the
# optical one.
THZ_TX_DBW = -30.0
OPTICAL_TX_DBW = -10.0


@dataclass(frozen=True)
class RadioLink:
    """Transmit power plus antenna gains and the channel loss, all dB(W)."""

    tx_power_dbw: float
    tx_gain_db: float = 0.0
    rx_gain_db: float = 0.0
    loss_db: float = 0.0

    def __post_init__(self):
        if not math.isfinite(self.loss_db):
            raise DomainError("channel loss must be finite")


@dataclass(frozen=True)
class DetectorSpec:
    """Receiver named by its minimum detectable power."""

    name: str
    sensitivity_dbw: float


# Reference receivers for the command-line budget report.  Sensitivities
# sit 10 dB under the received level of the two default scenarios; treat
# them as placeholders to override per deployment.
DETECTORS = {
    "thz_reference": DetectorSpec("thz_reference", -105.8),
    "optical_reference": DetectorSpec("optical_reference", -108.6),
}


def dbw_to_watts(p_dbw):
    return 10.0 ** (p_dbw / 10.0)


def watts_to_dbw(p_watts):
    if p_watts <= 0.0:
        raise DomainError("power in watts must be positive")
    return 10.0 * math.log10(p_watts)


def received_power_dbw(link):
    """P_rx = P_tx + G_tx - loss + G_rx."""
    return link.tx_power_dbw + link.tx_gain_db - link.loss_db + link.rx_gain_db


def required_sensitivity_dbw(received_dbw, snr_db):
    """Detectable-power threshold a receiver must beat for the target SNR."""
    return received_dbw - snr_db


def pathloss_from_s21(s21):
    """Loss in dB from a transmission scattering amplitude.

    A dead channel (|s21| = 0) maps to infinite loss rather than an
    error so sweeps over nulls stay total.
    """
    mag = abs(s21)
    if mag == 0.0:
        return math.inf
    return -20.0 * math.log10(mag)


def pathloss_from_fields(e_sq_source, e_sq_point):
    """Loss in dB between squared field magnitudes at source and probe."""
    if e_sq_source <= 0.0 or e_sq_point <= 0.0:
        raise DomainError("squared field magnitudes must be positive")
    return 10.0 * math.log10(e_sq_source / e_sq_point)


@dataclass(frozen=True)
class BudgetReport:
    """Link outcome against one receiver at one SNR target."""

    link: RadioLink
    detector: DetectorSpec
    snr_target_db: float
    received_dbw: float
    received_watts: float
    required_threshold_dbw: float
    margin_db: float

    @property
    def feasible(self):
        return self.margin_db >= 0.0


def link_feasibility(link, detector, snr_target_db=0.0):
    """Margin of the required threshold over the receiver's sensitivity.

    Feasible when the receiver can detect a signal weak enough to leave
    the target SNR intact, i.e. sensitivity <= received - snr_target.
    """
    p_r = received_power_dbw(link)
    threshold = required_sensitivity_dbw(p_r, snr_target_db)
    return BudgetReport(
        link=link,
        detector=detector,
        snr_target_db=snr_target_db,
        received_dbw=p_r,
        received_watts=dbw_to_watts(p_r),
        required_threshold_dbw=threshold,
        margin_db=threshold - detector.sensitivity_dbw,
    )
