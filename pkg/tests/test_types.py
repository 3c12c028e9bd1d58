"""Configuration types: validation, conversions, presets."""

import math

import pytest

from eeesim import (
    PRESETS,
    CoalescerConfig,
    DomainError,
    EeeConfig,
    LinkConfig,
    ParetoRenewal,
    Periodic,
    Poisson,
    TrafficSpec,
    lambda_from_load,
    load_from_lambda,
    pareto_traffic,
    parse_time,
    poisson_traffic,
)


def test_link_defaults_are_ten_gig_with_known_transitions():
    link = LinkConfig()
    assert link.capacity == 10e9
    assert link.t_sleep == 2.88e-6
    assert link.t_wake == 4.48e-6
    assert link.sigma_lpi == 0.1
    assert link.service_time(12000) == pytest.approx(1.2e-6)


@pytest.mark.parametrize(
    "kwargs",
    [
        {"capacity": 0.0},
        {"capacity": -1.0},
        {"t_sleep": -1e-9},
        {"t_wake": -1e-9},
        {"sigma_lpi": -0.1},
        {"sigma_lpi": 1.0},
    ],
)
def test_link_rejects_out_of_range_values(kwargs):
    with pytest.raises(DomainError):
        LinkConfig(**kwargs)


def test_eee_config_rejects_negative_times():
    with pytest.raises(DomainError):
        EeeConfig(hysteresis=-1e-9)
    with pytest.raises(DomainError):
        EeeConfig(wake_delay=-1e-9)


def test_coalescer_config_rejects_negative_times():
    with pytest.raises(DomainError):
        CoalescerConfig(bunch=-1e-9)
    with pytest.raises(DomainError):
        CoalescerConfig(bunch=1e-3, propagation=-1e-9)


def test_presets_match_documented_hardware_settings():
    assert PRESETS["aggressive"] == EeeConfig(hysteresis=20e-6, wake_delay=6e-6)
    assert PRESETS["non-aggressive"] == EeeConfig(hysteresis=600e-6, wake_delay=6e-6)


def test_parse_time_suffixes():
    assert parse_time("450ns") == 450e-9
    assert parse_time("20us") == 2e-5
    assert parse_time("2.88 us") == 2.88e-6
    assert parse_time("1ms") == 1e-3
    assert parse_time("2s") == 2.0
    assert parse_time("0.25") == 0.25  # bare numbers are seconds
    assert parse_time("6µs") == 6e-6  # micro sign normalizes to u


@pytest.mark.parametrize("text", ["", "fast", "12kg", "-3us"])
def test_parse_time_rejects_garbage(text):
    with pytest.raises(DomainError):
        parse_time(text)


def test_load_rate_round_trip():
    link = LinkConfig()
    lam = lambda_from_load(0.01, link, 12000)
    assert lam == pytest.approx(8333.333333333334)
    assert load_from_lambda(lam, link, 12000) == pytest.approx(0.01)


def test_lambda_from_load_rejects_bad_inputs():
    link = LinkConfig()
    with pytest.raises(DomainError):
        lambda_from_load(0.0, link, 12000)
    with pytest.raises(DomainError):
        lambda_from_load(1.5, link, 12000)
    with pytest.raises(DomainError):
        lambda_from_load(0.5, link, 0)


def test_traffic_spec_rate_and_load():
    link = LinkConfig()
    spec = poisson_traffic(0.1, link)
    assert isinstance(spec.process, Poisson)
    assert spec.load(link) == pytest.approx(0.1)

    pareto = pareto_traffic(0.1, link, shape=1.8)
    assert isinstance(pareto.process, ParetoRenewal)
    assert pareto.process.rate == spec.process.rate
    # the scale parameter is chosen so the mean gap matches 1/rate
    mean_gap = pareto.process.shape * pareto.process.scale / (pareto.process.shape - 1)
    assert mean_gap == pytest.approx(1.0 / pareto.process.rate)


def test_periodic_rate_is_inverse_period():
    assert Periodic(period=1e-3).rate == pytest.approx(1000.0)
    with pytest.raises(DomainError):
        Periodic(period=0.0)


def test_pareto_shape_must_leave_finite_mean():
    with pytest.raises(DomainError):
        ParetoRenewal(rate=1000.0, shape=1.0)
    with pytest.raises(DomainError):
        ParetoRenewal(rate=0.0, shape=1.8)


def test_overloaded_spec_is_rejected():
    link = LinkConfig()
    spec = TrafficSpec(process=Poisson(rate=link.capacity / 12000 * 1.2))
    with pytest.raises(DomainError):
        spec.load(link)


def test_frame_bits_must_be_positive():
    with pytest.raises(DomainError):
        TrafficSpec(process=Poisson(rate=1.0), frame_bits=0)


def test_energy_consumption_never_below_sleep_floor():
    # sigma = 1 - (1 - sigma_lpi) * rho_lpi stays within [sigma_lpi, 1]
    from eeesim import energy_from_sleep

    assert energy_from_sleep(0.1, 0.0) == 1.0
    assert energy_from_sleep(0.1, 1.0) == pytest.approx(0.1)
    for rho_lpi in (0.0, 0.25, 0.5, 0.99):
        val = energy_from_sleep(0.1, rho_lpi)
        assert 0.1 <= val <= 1.0
        assert math.isclose(val, 1.0 - 0.9 * rho_lpi)
