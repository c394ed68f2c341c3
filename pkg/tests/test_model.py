import numpy as np
import pytest

from ucwaves import (
    PoleError,
    ScalarParams,
    ShockKind,
    char_speed,
    classify_shock,
    dispersion_lambda,
    flux,
    rh_speed,
)
from ucwaves.errors import DomainError


def test_flux_values():
    assert flux(0.0) == 0.0
    assert flux(1.0) == 0.0
    assert flux(0.4) == pytest.approx(0.336, abs=1e-15)


def test_char_speed_values():
    assert char_speed(0.0) == 1.0
    assert char_speed(1 / np.sqrt(3)) == pytest.approx(0.0, abs=1e-15)
    assert char_speed(0.4) == pytest.approx(0.52, abs=1e-15)


def test_rh_speed_values():
    assert rh_speed(0.0, 0.0) == 1.0
    assert rh_speed(0.4, -0.8) == pytest.approx(0.52, abs=1e-15)
    for u in (0.3, 0.7, -0.2):
        assert rh_speed(u, -u) == pytest.approx(1 - u * u, abs=1e-15)


def test_rh_speed_symmetry_and_consistency():
    rng = np.random.default_rng(0)
    for ul, ur in rng.uniform(-1.5, 1.5, size=(50, 2)):
        assert rh_speed(ul, ur) == pytest.approx(rh_speed(ur, ul), abs=1e-15)
        assert rh_speed(ul, ul) == pytest.approx(char_speed(ul), abs=1e-15)


def test_classify_lax():
    pair = classify_shock(0.1, 0.3)
    assert pair.kind is ShockKind.LAX
    assert pair.speed == pytest.approx(0.87, abs=1e-15)
    assert char_speed(0.3) < pair.speed < char_speed(0.1)


def test_classify_undercompressive_candidate():
    pair = classify_shock(0.5288, -0.8)
    assert pair.kind is ShockKind.UNDERCOMPRESSIVE_CANDIDATE
    assert pair.speed > char_speed(0.5288)
    assert pair.speed > char_speed(-0.8)


def test_classify_characteristic_and_inadmissible():
    assert classify_shock(0.2, 0.2).kind is ShockKind.CHARACTERISTIC
    # expansion-type jump: characteristics leave both sides
    pair = classify_shock(0.3, 0.25)
    assert pair.kind is ShockKind.INADMISSIBLE


def test_classify_sonic_contact_flag():
    # chord from -0.8 is tangent to the flux graph at 0.4
    pair = classify_shock(0.4, -0.8)
    assert pair.sonic
    assert pair.kind is ShockKind.INADMISSIBLE


def test_classify_odd_symmetry():
    rng = np.random.default_rng(1)
    for ul, ur in rng.uniform(-1.2, 1.2, size=(100, 2)):
        a = classify_shock(ul, ur)
        b = classify_shock(-ul, -ur)
        assert a.kind is b.kind
        assert a.speed == pytest.approx(b.speed, abs=1e-14)


def test_flux_odd_symmetry():
    u = np.linspace(-2, 2, 41)
    assert np.allclose(flux(-u), -flux(u), atol=1e-15)


def test_dispersion_zero_wavenumber():
    assert dispersion_lambda(0.7, 2.0, 0.5, 0.0) == 0.0


def test_dispersion_reference_value():
    lam = dispersion_lambda(0.0, 1.0, 1.0, 1.0)
    assert lam == pytest.approx((-1.0 - 1.0j) / 2.0, abs=1e-15)


def test_dispersion_unstable_for_negative_mu():
    lam = dispersion_lambda(0.0, 1.0, -1.0, 2.0)
    assert lam.real == pytest.approx(4.0 / 3.0, abs=1e-15)
    assert lam.real > 0


def test_dispersion_pole_reported():
    with pytest.raises(PoleError):
        dispersion_lambda(0.0, 1.0, -1.0, 1.0)


def test_dispersion_damping_on_log_grid():
    xi = np.logspace(-3, 3, 200)
    for beta, mu in [(0.1, 0.06), (1.0, 1.0), (0.5, 2.0)]:
        lam = np.array([dispersion_lambda(0.3, beta, mu, x) for x in xi])
        assert np.all(lam.real < 0)


def test_scalar_params():
    p = ScalarParams(beta=0.1, mu=0.06)
    assert p.gamma == pytest.approx(1 / np.sqrt(6), abs=1e-15)
    with pytest.raises(DomainError):
        ScalarParams(beta=-0.1, mu=0.06)
    with pytest.raises(DomainError):
        ScalarParams(beta=0.1, mu=0.0)
