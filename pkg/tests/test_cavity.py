import math

import numpy as np
import pytest
from pydantic import ValidationError
from scipy.constants import c

from cavity import (
    OpticalCavity,
    airy_transmission,
    cavity_q,
    critical_coupling_rate,
    effective_interaction_length,
    finesse_from_reflectivity,
    finesse_from_spectrum,
    fit_transmission,
    fsr_from_geometry,
    linewidth_from_finesse,
    max_finesse_from_loss,
    sideband_enhancement,
    vpi_reduction,
)
from handlers.error_handler import DegeneratePhysicsError, InputError

SAW_OMEGA = 2.0 * math.pi * 87.6e6


def test_spectral_finesse():
    assert finesse_from_spectrum(12.1e9, 284e6) == pytest.approx(42.6, rel=1e-3)
    assert finesse_from_spectrum(12.1e9, 284e6) == pytest.approx(43.0, rel=0.02)
    assert linewidth_from_finesse(12.1e9, 42.6) == pytest.approx(284e6, rel=1e-3)


def test_cavity_quality_factor():
    q = cavity_q(c / 1064e-9, 284e6)
    assert q == pytest.approx(9.92e5, rel=1e-3)
    assert q == pytest.approx(1.0e6, rel=0.03)


def test_free_spectral_range_of_polished_waveguide():
    fsr = fsr_from_geometry(2.23, 5.5e-3)
    assert fsr == pytest.approx(12.2e9, rel=2e-3)
    assert fsr == pytest.approx(12.1e9, rel=0.02)
    with pytest.raises(InputError):
        fsr_from_geometry(1.0, 5.5e-3)


def test_cavity_model_properties():
    cavity = OpticalCavity.critically_coupled(12.1e9, 284e6, c / 1064e-9)
    assert cavity.kappa_ex == pytest.approx(cavity.kappa / 2.0)
    assert cavity.linewidth_hz == pytest.approx(284e6)
    assert cavity.finesse == pytest.approx(42.6, rel=1e-3)
    assert cavity.q == pytest.approx(9.92e5, rel=1e-3)


def test_cavity_rejects_excess_external_coupling():
    with pytest.raises(ValidationError, match="kappa_ex"):
        OpticalCavity.from_hz(12.1e9, 284e6, 300e6)


def test_q_needs_optical_frequency():
    cavity = OpticalCavity.critically_coupled(12.1e9, 284e6)
    with pytest.raises(InputError):
        cavity.q


def test_enhancement_at_saw_frequency():
    cavity = OpticalCavity.from_hz(43.0 * 284e6, 284e6, 142e6)
    resonant = (2.0 * 43.0 / math.pi) ** 2
    expected = 142.0**2 / (87.6**2 + 142.0**2)
    assert sideband_enhancement(cavity, SAW_OMEGA) == pytest.approx(
        expected * resonant, rel=1e-9
    )
    assert expected == pytest.approx(0.723, abs=2e-3)


def test_enhancement_halves_at_half_linewidth():
    cavity = OpticalCavity.critically_coupled(12.1e9, 284e6)
    peak = sideband_enhancement(cavity, 0.0)
    assert peak == pytest.approx((2.0 * cavity.finesse / math.pi) ** 2)
    assert sideband_enhancement(cavity, cavity.kappa / 2.0) == pytest.approx(peak / 2.0)


def test_enhancement_falls_with_saw_frequency():
    cavity = OpticalCavity.critically_coupled(12.1e9, 284e6)
    omegas = 2.0 * math.pi * np.linspace(0.0, 1e9, 50)
    values = [sideband_enhancement(cavity, omega) for omega in omegas]
    assert np.all(np.diff(values) < 0.0)


def test_cavity_reduces_half_wave_voltage():
    kappa = 2.0 * math.pi * 89.6e6
    reduced = vpi_reduction(2.58, 15.0, 0.0, kappa, critical_coupling_rate(kappa))
    assert reduced == pytest.approx(0.270, rel=0.01)
    assert reduced == pytest.approx(2.58 * math.pi / 30.0, rel=1e-12)


def test_finite_saw_frequency_costs_voltage():
    kappa = 2.0 * math.pi * 89.6e6
    kappa_ex = critical_coupling_rate(kappa)
    slow = vpi_reduction(2.58, 15.0, 0.0, kappa, kappa_ex)
    fast = vpi_reduction(2.58, 15.0, SAW_OMEGA, kappa, kappa_ex)
    ratio = math.sqrt((SAW_OMEGA**2 + (kappa / 2.0) ** 2) / (kappa / 2.0) ** 2)
    assert fast == pytest.approx(slow * ratio, rel=1e-12)


def test_uncoupled_cavity_is_degenerate():
    with pytest.raises(DegeneratePhysicsError):
        vpi_reduction(2.58, 15.0, 0.0, 1e9, 0.0)


def test_loss_limited_finesse():
    finesse = max_finesse_from_loss(0.2, 5e-3)
    assert finesse == pytest.approx(2.0 * math.pi / 0.0450, rel=2e-3)
    assert finesse == pytest.approx(150.0, rel=0.1)
    assert max_finesse_from_loss(0.0, 5e-3) == math.inf
    with pytest.raises(InputError):
        max_finesse_from_loss(-0.1, 5e-3)


def test_loss_limited_finesse_doubles_for_half_length():
    long = max_finesse_from_loss(0.02, 5e-3)
    short = max_finesse_from_loss(0.02, 2.5e-3)
    assert short == pytest.approx(2.0 * long, rel=0.01)


def test_finesse_with_mirrors():
    assert finesse_from_reflectivity(1.0, 1.0) == math.inf
    assert finesse_from_reflectivity(1.0, 0.9) == pytest.approx(2.0 * math.pi / 0.1)
    lossy = finesse_from_reflectivity(1.0, 1.0, 0.2, 5e-3)
    assert lossy == pytest.approx(max_finesse_from_loss(0.2, 5e-3))
    with pytest.raises(InputError):
        finesse_from_reflectivity(0.0, 1.0)


def test_effective_interaction_length():
    assert effective_interaction_length(50e-3, 15.0) == pytest.approx(
        50e-3 * 30.0 / math.pi
    )


def _transmission_scan(start, stop, noise=0.0):
    detuning = np.linspace(start, stop, int(round((stop - start) / 10e6)) + 1)
    t = airy_transmission(detuning, 0.0, 12.1e9, 284e6, 1.0)
    rng = np.random.default_rng(7)
    return detuning, t + noise * rng.standard_normal(detuning.size)


def test_transmission_fit_recovers_cavity():
    detuning, t = _transmission_scan(-5e9, 30e9)
    fit = fit_transmission(detuning, t, optical_frequency=c / 1064e-9)
    assert fit.converged
    assert fit.fsr_hz == pytest.approx(12.1e9, rel=1e-5)
    assert fit.linewidth_hz == pytest.approx(284e6, rel=1e-5)
    assert fit.f_0_hz == pytest.approx(0.0, abs=1e3)
    assert fit.finesse == pytest.approx(43.0, rel=0.02)
    assert fit.q == pytest.approx(1.0e6, rel=0.03)


def test_transmission_fit_with_noise():
    detuning, t = _transmission_scan(-5e9, 30e9, noise=0.01)
    fit = fit_transmission(detuning, t)
    assert fit.converged
    assert fit.fsr_hz == pytest.approx(12.1e9, rel=1e-3)
    assert fit.linewidth_hz == pytest.approx(284e6, rel=0.02)
    assert fit.q is None
    assert fit.rms_residual == pytest.approx(0.01, rel=0.2)


def test_fitted_cavity_is_critically_coupled():
    detuning, t = _transmission_scan(-5e9, 30e9)
    cavity = fit_transmission(detuning, t).to_cavity()
    assert cavity.kappa_ex == pytest.approx(cavity.kappa / 2.0)
    assert cavity.finesse == pytest.approx(42.6, rel=1e-3)


def test_transmission_fit_needs_two_resonances():
    detuning, t = _transmission_scan(-5e9, 5e9)
    with pytest.raises(InputError, match="two resonances"):
        fit_transmission(detuning, t)
    with pytest.raises(InputError, match="strictly increasing"):
        fit_transmission(detuning[::-1], t)
