"""Closed-form model tests.

Expected values were computed with an independent hand-transcribed version
of each formula (plain math module, no package imports) and frozen at ten
significant digits.  Monte-Carlo checks re-derive the per-cycle quantities
from raw exponential draws, and the agreement tests compare the closed
forms against the discrete-event simulator on randomized operating points.
"""

from __future__ import annotations

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from eeesim import (
    DomainError,
    EeeConfig,
    LinkConfig,
    CoalescerConfig,
    UnsupportedModelError,
    energy_from_sleep,
    expected_h_poisson,
    expected_n_poisson,
    expected_tlpi_poisson,
    marshall_wait_general,
    pareto_traffic,
    poisson_traffic,
    precoalesce_mean_wait,
    precoalesce_sleep_fraction,
    replicate,
    sleep_fraction_frame_tx,
    sleep_fraction_hyst_delay,
)

LINK = LinkConfig()


def lam(rho: float) -> float:
    return rho * LINK.capacity / 12000.0


class TestFrozenValues:
    """Canonical operating points against independently computed constants."""

    def test_hysteresis_delay_low_load_aggressive(self):
        res = sleep_fraction_hyst_delay(
            poisson_traffic(0.01, LINK), EeeConfig(20e-6, 6e-6), LINK
        )
        assert res.rho_lpi == pytest.approx(0.8006187490, abs=1e-9)
        assert res.sigma == pytest.approx(0.2794431259, abs=1e-9)
        assert res.exp_n == pytest.approx(1.1813604129, abs=1e-9)
        assert res.exp_h == pytest.approx(1.8422193013e-05, rel=1e-9)
        assert res.exp_tlpi == pytest.approx(1.2312e-04, rel=1e-9)
        assert res.exp_cycle == pytest.approx(1.5378106015e-04, rel=1e-9)
        assert res.valid

    def test_hysteresis_delay_low_load_non_aggressive(self):
        res = sleep_fraction_hyst_delay(
            poisson_traffic(0.01, LINK), EeeConfig(600e-6, 6e-6), LINK
        )
        assert res.rho_lpi == pytest.approx(0.0068399773, abs=1e-9)

    def test_hysteresis_delay_half_load(self):
        res = sleep_fraction_hyst_delay(
            poisson_traffic(0.5, LINK), EeeConfig(20e-6, 6e-6), LINK
        )
        assert res.rho_lpi == pytest.approx(0.0002761351, abs=1e-9)

    def test_frame_transmission_policy(self):
        assert sleep_fraction_frame_tx(
            poisson_traffic(0.1, LINK), LINK
        ) == pytest.approx(0.5057033565, abs=1e-9)
        assert sleep_fraction_frame_tx(
            poisson_traffic(0.01, LINK), LINK
        ) == pytest.approx(0.9314814132, abs=1e-9)
        assert sleep_fraction_frame_tx(
            poisson_traffic(0.5, LINK), LINK
        ) == pytest.approx(0.0447159522, abs=1e-9)

    def test_precoalescing_sleep_fraction(self):
        res = precoalesce_sleep_fraction(
            poisson_traffic(0.01, LINK),
            CoalescerConfig(bunch=6e-3),
            EeeConfig(600e-6, 0.0),
            LINK,
        )
        assert res.valid
        assert res.rho_lpi == pytest.approx(0.8919254756, abs=1e-9)
        res2 = precoalesce_sleep_fraction(
            poisson_traffic(0.1, LINK),
            CoalescerConfig(bunch=7.36e-6),
            EeeConfig(0.0, 0.0),
            LINK,
        )
        assert res2.rho_lpi == pytest.approx(0.5947136564, abs=1e-9)

    def test_coalescing_mean_wait(self):
        assert precoalesce_mean_wait(
            lam(0.01), 0.01, 0.0, 6e-3, LINK.t_wake
        ) == pytest.approx(3.0610704506e-03, rel=1e-9)
        assert precoalesce_mean_wait(
            lam(0.1), 0.1, 0.0, 200e-6, LINK.t_wake
        ) == pytest.approx(1.0797407243e-04, rel=1e-9)
        assert precoalesce_mean_wait(
            lam(0.001), 0.001, 0.0, 200e-6, LINK.t_wake
        ) == pytest.approx(1.8959535111e-04, rel=1e-9)


class TestIdentities:
    def test_lpi_window_branches_agree_at_crossover(self):
        l = lam(0.05)
        below = expected_tlpi_poisson(l, LINK.t_sleep, LINK.t_sleep)
        assert below == pytest.approx(1.0 / l, rel=1e-12)
        above = expected_tlpi_poisson(l, LINK.t_sleep + 1e-12, LINK.t_sleep)
        assert above == pytest.approx(below, rel=1e-9)

    def test_frame_tx_equals_zero_hysteresis_zero_delay(self):
        for rho in (0.001, 0.01, 0.1, 0.5, 0.9):
            traffic = poisson_traffic(rho, LINK)
            direct = sleep_fraction_frame_tx(traffic, LINK)
            composed = sleep_fraction_hyst_delay(traffic, EeeConfig(0.0, 0.0), LINK)
            assert direct == pytest.approx(composed.rho_lpi, rel=1e-12)

    def test_precoalesce_ignores_wake_delay_inside_bunch(self):
        """A wake delay shorter than the bunch window never defers a wake."""
        traffic = poisson_traffic(0.01, LINK)
        coal = CoalescerConfig(bunch=6e-3)
        a = precoalesce_sleep_fraction(traffic, coal, EeeConfig(600e-6, 0.0), LINK)
        b = precoalesce_sleep_fraction(traffic, coal, EeeConfig(600e-6, 6e-6), LINK)
        assert a.rho_lpi == b.rho_lpi

    def test_poisson_wait_specializes_general_form(self):
        for rho, bunch, var_s in ((0.01, 6e-3, 0.0), (0.1, 200e-6, 2.5e-13), (0.4, 1e-3, 0.0)):
            l = lam(rho)
            special = precoalesce_mean_wait(l, rho, var_s, bunch, LINK.t_wake)
            general = marshall_wait_general(
                l, rho, var_s, 1.0 / l**2, bunch, LINK.t_wake, 1.0 / l, 2.0 / l**2
            )
            assert special == pytest.approx(general, rel=1e-12)

    def test_energy_is_affine_in_sleep_fraction(self):
        res = sleep_fraction_hyst_delay(
            poisson_traffic(0.05, LINK), EeeConfig(20e-6, 6e-6), LINK
        )
        assert res.sigma == energy_from_sleep(LINK.sigma_lpi, res.rho_lpi)
        assert energy_from_sleep(0.1, 0.0) == 1.0
        assert energy_from_sleep(0.1, 1.0) == pytest.approx(0.1)


class TestDomainHandling:
    def test_non_poisson_traffic_is_rejected(self):
        traffic = pareto_traffic(0.1, LINK)
        with pytest.raises(UnsupportedModelError):
            sleep_fraction_hyst_delay(traffic, EeeConfig(20e-6, 0.0), LINK)
        with pytest.raises(UnsupportedModelError):
            sleep_fraction_frame_tx(traffic, LINK)
        with pytest.raises(UnsupportedModelError):
            precoalesce_sleep_fraction(
                traffic, CoalescerConfig(bunch=1e-3), EeeConfig(0.0, 0.0), LINK
            )

    def test_invalid_inputs_raise(self):
        with pytest.raises(DomainError):
            expected_n_poisson(0.0, 1e-6)
        with pytest.raises(DomainError):
            expected_n_poisson(1e6, -1e-6)
        with pytest.raises(DomainError):
            expected_h_poisson(-5.0, 1e-6)
        with pytest.raises(DomainError):
            expected_tlpi_poisson(1e6, -1e-9, 2.88e-6)
        with pytest.raises(DomainError):
            energy_from_sleep(0.1, 1.5)
        with pytest.raises(DomainError):
            energy_from_sleep(-0.1, 0.5)
        with pytest.raises(DomainError):
            precoalesce_mean_wait(1e6, 1.0, 0.0, 1e-3, 4.48e-6)
        with pytest.raises(DomainError):
            marshall_wait_general(1e6, 0.5, -1.0, 1e-12, 1e-3, 4.48e-6, 1e-6, 2e-12)

    def test_huge_hysteresis_saturates_to_zero_sleep(self):
        """Beyond double range the geometric retry count is effectively
        infinite and the sleeping fraction is an exact zero, not an error."""
        res = sleep_fraction_hyst_delay(
            poisson_traffic(0.9, LINK), EeeConfig(1e-3, 0.0), LINK
        )
        assert res.valid
        assert res.rho_lpi == 0.0
        assert res.sigma == 1.0
        assert math.isinf(res.exp_n)
        with pytest.raises(DomainError):
            expected_n_poisson(lam(0.9), 1e-3)

    def test_precoalesce_flags_invalid_regions(self):
        traffic = poisson_traffic(0.3, LINK)
        short = precoalesce_sleep_fraction(
            traffic, CoalescerConfig(bunch=1e-6), EeeConfig(0.0, 0.0), LINK
        )
        assert not short.valid
        assert math.isnan(short.rho_lpi)
        assert short.reason is not None
        inverted = precoalesce_sleep_fraction(
            traffic, CoalescerConfig(bunch=100e-6), EeeConfig(0.0, 200e-6), LINK
        )
        assert not inverted.valid
        assert "wake delay" in inverted.reason


class TestMonteCarloCrossChecks:
    """Re-derive per-cycle quantities from raw exponential draws."""

    N = 400_000

    def test_retry_count_matches_geometric_mean(self):
        l, h = lam(0.05), 20e-6
        rng = np.random.default_rng(2024)
        gaps = rng.exponential(1.0 / l, size=self.N)
        # attempts per cycle = position of first gap exceeding h, geometric
        success = gaps > h
        counts = np.diff(np.flatnonzero(success))
        mc = counts.mean()
        se = counts.std(ddof=1) / math.sqrt(counts.size)
        assert abs(expected_n_poisson(l, h) - mc) < 4 * se

    def test_hysteresis_residence_matches_truncated_mean(self):
        l, h = lam(0.05), 20e-6
        rng = np.random.default_rng(2025)
        gaps = rng.exponential(1.0 / l, size=self.N)
        trunc = np.minimum(gaps, h)
        se = trunc.std(ddof=1) / math.sqrt(self.N)
        assert abs(expected_h_poisson(l, h) - trunc.mean()) < 4 * se

    @pytest.mark.parametrize("delay", [0.0, 1e-6, 2.88e-6, 10e-6])
    def test_idle_window_matches_censored_mean(self, delay):
        l, ts = lam(0.05), 2.88e-6
        rng = np.random.default_rng(2026)
        first = rng.exponential(1.0 / l, size=self.N)
        window = np.maximum(0.0, first + delay - ts)
        se = window.std(ddof=1) / math.sqrt(self.N)
        assert abs(expected_tlpi_poisson(l, delay, ts) - window.mean()) < 4 * se


class TestProperties:
    @given(
        rho=st.floats(1e-4, 0.95),
        h=st.floats(0.0, 1e-3),
        d=st.floats(0.0, 1e-3),
    )
    @settings(max_examples=80, deadline=None)
    def test_sleep_fraction_stays_in_idle_budget(self, rho, h, d):
        res = sleep_fraction_hyst_delay(poisson_traffic(rho, LINK), EeeConfig(h, d), LINK)
        assert 0.0 <= res.rho_lpi <= 1.0 - rho + 1e-12
        assert 0.0 <= res.sigma <= 1.0

    @given(
        rho=st.floats(1e-3, 0.9),
        h1=st.floats(0.0, 5e-4),
        h2=st.floats(0.0, 5e-4),
        d=st.floats(0.0, 1e-4),
    )
    @settings(max_examples=80, deadline=None)
    def test_longer_hysteresis_never_sleeps_more(self, rho, h1, h2, d):
        lo, hi = sorted((h1, h2))
        traffic = poisson_traffic(rho, LINK)
        a = sleep_fraction_hyst_delay(traffic, EeeConfig(lo, d), LINK).rho_lpi
        b = sleep_fraction_hyst_delay(traffic, EeeConfig(hi, d), LINK).rho_lpi
        assert b <= a + 1e-12

    @given(
        rho=st.floats(1e-3, 0.9),
        h=st.floats(0.0, 5e-4),
        d1=st.floats(0.0, 5e-4),
        d2=st.floats(0.0, 5e-4),
    )
    @settings(max_examples=80, deadline=None)
    def test_longer_wake_delay_never_sleeps_less(self, rho, h, d1, d2):
        lo, hi = sorted((d1, d2))
        traffic = poisson_traffic(rho, LINK)
        a = sleep_fraction_hyst_delay(traffic, EeeConfig(h, lo), LINK).rho_lpi
        b = sleep_fraction_hyst_delay(traffic, EeeConfig(h, hi), LINK).rho_lpi
        assert b >= a - 1e-12

    @given(r1=st.floats(1e-3, 0.99), r2=st.floats(1e-3, 0.99))
    @settings(max_examples=80, deadline=None)
    def test_frame_tx_sleep_decreases_with_load(self, r1, r2):
        lo, hi = sorted((r1, r2))
        a = sleep_fraction_frame_tx(poisson_traffic(lo, LINK), LINK)
        b = sleep_fraction_frame_tx(poisson_traffic(hi, LINK), LINK)
        assert b <= a + 1e-12


class TestModelAgainstSimulator:
    """Dual-route check: closed forms vs. the discrete-event simulator."""

    @pytest.mark.parametrize("idx", range(12))
    def test_randomized_operating_points_agree(self, idx):
        rng = np.random.default_rng(900 + idx)
        rho = float(rng.uniform(0.005, 0.4))
        h = float(rng.uniform(0.0, 2e-4))
        d = float(rng.uniform(0.0, 1e-4))
        traffic = poisson_traffic(rho, LINK)
        eee = EeeConfig(h, d)
        model = sleep_fraction_hyst_delay(traffic, eee, LINK)
        summ = replicate(traffic, 60_000, eee, LINK, n_reps=3, base_seed=7_000 + idx)
        sim = summ.mean["rho_lpi"]
        hw = summ.ci95_halfwidth["rho_lpi"]
        tol = max(0.012, 3.0 * hw)
        assert abs(model.rho_lpi - sim) < tol, (
            f"rho={rho:.4f} h={h:.2e} d={d:.2e}: model {model.rho_lpi:.5f} "
            f"vs sim {sim:.5f} ± {hw:.5f}"
        )
        assert abs(model.sigma - summ.mean["sigma"]) < tol
