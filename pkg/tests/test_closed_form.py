import math

import numpy as np
import pytest

from infodyn import (
    DivergentMeasureWarning,
    DivergentPIRError,
    InfoRates,
    MaModel,
    NonPositiveVarianceError,
    OutOfRegionError,
    entropy_rate_cf,
    gamma0_ar2,
    info_rates,
    info_rates_spectral,
    make_ar,
    mir_ar1,
    mir_ar2,
    mir_ar_general,
    mir_ma,
    mir_spectral,
    pir_ar,
    pir_ma,
    poles_to_ar,
    psd_ar,
    psd_ma,
    random_pole_set,
)
from infodyn.closed_form import NATS_PER_BIT
from infodyn.spectral import LOG_2PI_E


class TestPirAr:
    def test_white_noise(self):
        assert pir_ar([]) == 0.0
        assert pir_ar(make_ar([], 1.0)) == 0.0

    def test_corner_coefficients(self):
        # evaluated at the stability-boundary corner: half log 6
        for sign in (1.0, -1.0):
            v = pir_ar([sign * 2.0, -1.0])
            assert v / NATS_PER_BIT == pytest.approx(0.5 * math.log2(6.0), rel=1e-14)

    def test_binomial_coefficients(self):
        psi = [-((-1.0) ** k) * math.comb(8, k) for k in range(1, 9)]
        assert pir_ar(psi) == pytest.approx(0.5 * np.log(12870.0), rel=1e-14)

    def test_ignores_sigma2(self):
        a = pir_ar(make_ar([0.3, -0.2], 1.0))
        b = pir_ar(make_ar([0.3, -0.2], 123.0))
        assert a == b

    def test_even_and_increasing_in_modulus(self):
        psis = np.linspace(0.0, 0.99, 50)
        vals = np.array([pir_ar([p]) for p in psis])
        assert np.all(np.diff(vals) > 0)
        assert all(pir_ar([p]) == pir_ar([-p]) for p in psis)


class TestEntropyRateCf:
    def test_unit_variance(self):
        assert entropy_rate_cf(1.0) == pytest.approx(0.5 * LOG_2PI_E, rel=1e-15)

    def test_analytic_zero(self):
        assert entropy_rate_cf(1.0 / (2.0 * np.pi * np.e)) == pytest.approx(0.0, abs=1e-14)

    def test_unit_variance_ar1(self):
        # psi = 0.8 normalised to unit marginal variance: sigma2 = 1 - 0.64
        assert entropy_rate_cf(0.36) == pytest.approx(
            0.5 * (LOG_2PI_E + np.log(0.36)), rel=1e-15
        )

    def test_rejects_nonpositive(self):
        with pytest.raises(NonPositiveVarianceError):
            entropy_rate_cf(0.0)


class TestMirSpecials:
    def test_mir_ar1_zero(self):
        assert mir_ar1(0.0) == 0.0

    def test_mir_ar1_half(self):
        assert mir_ar1(0.5) == pytest.approx(-0.5 * np.log(0.75), rel=1e-14)

    def test_mir_ar1_out_of_region(self):
        with pytest.raises(OutOfRegionError):
            mir_ar1(1.0)

    def test_mir_ar2_matches_general_path(self):
        m = make_ar([0.5, -0.3], 1.0)
        assert mir_ar2(0.5, -0.3) == pytest.approx(mir_ar_general(m), abs=1e-12)

    def test_mir_ar2_out_of_region(self):
        with pytest.raises(OutOfRegionError):
            mir_ar2(2.0, -1.0)

    def test_mir_ar2_grid_against_general(self):
        # 50 x 50 grid strictly inside the stability triangle
        p1s = np.linspace(-1.8, 1.8, 50)
        p2s = np.linspace(-0.9, 0.9, 50)
        checked = 0
        for p1 in p1s:
            for p2 in p2s:
                if p2 >= 1 - abs(p1) - 0.05:
                    continue
                m = make_ar([p1, p2], 1.0)
                assert mir_ar2(p1, p2) == pytest.approx(
                    mir_ar_general(m), abs=1e-10
                )
                checked += 1
        assert checked > 1000

    def test_gamma0_ar2(self):
        m = make_ar([0.5, -0.3], 1.0)
        assert gamma0_ar2(m) == pytest.approx(1.3 / 1.008, rel=1e-13)
        with pytest.raises(ValueError):
            gamma0_ar2(make_ar([0.5], 1.0))


class TestMirGeneral:
    def test_white_noise(self):
        assert mir_ar_general(make_ar([], 1.0)) == 0.0

    def test_ar1(self):
        m = make_ar([0.5], 0.75)
        assert mir_ar_general(m) == pytest.approx(-0.5 * np.log(0.75), abs=1e-12)

    def test_matches_spectral_for_random_ar8(self):
        rng = np.random.default_rng(21)
        for _ in range(10):
            m = poles_to_ar(random_pole_set(8, rng, max_modulus=0.9), 1.0)
            assert mir_ar_general(m) == pytest.approx(
                mir_spectral(psd_ar(m, 8192)), abs=1e-8
            )


class TestMirMa:
    def test_trivial(self):
        assert mir_ma(MaModel([1.0], 1.0)) == 0.0

    def test_ma1(self):
        assert mir_ma(MaModel([1.0, 0.5], 1.0)) == pytest.approx(
            0.5 * np.log(1.25), rel=1e-14
        )

    def test_binomial_duality(self):
        tail = [float(math.comb(8, k)) for k in range(1, 9)]
        assert mir_ma(tail) == pytest.approx(0.5 * np.log(12870.0), rel=1e-14)

    def test_bit_identical_to_pir_ar(self):
        rng = np.random.default_rng(17)
        for _ in range(50):
            c = rng.normal(size=int(rng.integers(1, 9)))
            assert mir_ma(c) == pir_ar(c)


class TestPirMa:
    def test_trivial(self):
        assert pir_ma(MaModel([1.0], 1.0)) == 0.0

    def test_ma1(self):
        assert pir_ma(MaModel([1.0, 0.5], 1.0)) == pytest.approx(
            -0.5 * np.log(0.75), rel=1e-14
        )

    def test_near_divergent_value_and_warning(self):
        m = MaModel([1.0, 0.999], 1.0)
        with pytest.warns(DivergentMeasureWarning, match="near-divergent"):
            v = pir_ma(m)
        assert v == pytest.approx(-0.5 * np.log(1.0 - 0.999**2), rel=1e-12)

    def test_divergent_raises(self):
        with pytest.raises(DivergentPIRError, match="diverges"):
            pir_ma(MaModel([1.0, 1.0], 1.0))
        with pytest.raises(DivergentPIRError):
            pir_ma(MaModel([1.0, 1.0 - 1e-7], 1.0))

    def test_general_order_matches_spectral(self):
        rng = np.random.default_rng(19)
        for _ in range(10):
            from infodyn import ma_minimum_phase, pir_spectral

            b = np.concatenate(([1.0], rng.uniform(-0.5, 0.5, int(rng.integers(2, 5)))))
            coeffs, gain = ma_minimum_phase(b)
            m = MaModel(coeffs, gain)
            assert pir_ma(m) == pytest.approx(pir_spectral(psd_ma(m, 8192)), abs=1e-8)

    def test_spectral_fallback_used_when_solver_fails(self, monkeypatch):
        import infodyn.closed_form as cf
        from infodyn.models import SingularSystemError

        def boom(model):
            raise SingularSystemError("forced")

        monkeypatch.setattr(cf, "mir_ar_general", boom)
        m = MaModel([1.0, 0.4, 0.2], 1.0)
        expected = cf.mir_spectral(cf.invert_spectrum(psd_ma(m, 4096)))
        assert cf.pir_ma(m, 4096) == pytest.approx(expected, rel=1e-12)


class TestInfoRates:
    def test_white_noise(self):
        rates = info_rates(make_ar([], 1.0))
        assert rates.h == pytest.approx(0.5 * LOG_2PI_E, rel=1e-15)
        assert rates.rho == 0.0
        assert rates.b == 0.0
        assert rates.r == rates.h

    def test_ar1_paper_values(self):
        rates = info_rates(make_ar([0.5], 0.75))
        assert rates.rho == pytest.approx(0.14384103622589042, abs=1e-12)
        assert rates.b == pytest.approx(0.11157177565710488, abs=1e-12)
        assert rates.h == pytest.approx(0.5 * (LOG_2PI_E + np.log(0.75)), rel=1e-14)
        assert rates.r == rates.h - rates.b

    def test_ma1_swaps_rho_and_b(self):
        ar = info_rates(make_ar([0.5], 0.75))
        ma = info_rates(MaModel([1.0, 0.5], 1.0))
        assert ma.rho == pytest.approx(ar.b, abs=1e-12)
        assert ma.b == pytest.approx(ar.rho, abs=1e-12)

    def test_decomposition_and_signs(self):
        assert InfoRates(1.0, 0.2, 0.3, 0.7).units == "nats"
        with pytest.raises(ValueError):
            InfoRates(1.0, -0.1, 0.3, 0.7)
        with pytest.raises(ValueError):
            InfoRates(1.0, 0.2, 0.3, 0.8)  # h != b + r

    def test_unit_conversion_round_trip(self):
        rates = info_rates(make_ar([0.5], 0.75))
        bits = rates.in_units("bits")
        assert bits.units == "bits"
        assert bits.b == pytest.approx(rates.b / NATS_PER_BIT, rel=1e-15)
        back = bits.in_units("nats")
        assert back.h == pytest.approx(rates.h, rel=1e-14)

    def test_spectral_info_rates_consistent(self):
        m = make_ar([0.4, 0.1], 0.9)
        spectral = info_rates_spectral(psd_ar(m, 8192))
        closed = info_rates(m)
        for key in ("h", "rho", "b", "r"):
            assert getattr(spectral, key) == pytest.approx(getattr(closed, key), abs=1e-8)
