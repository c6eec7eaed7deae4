import math

import numpy as np
import pytest

from effcap.asymptotics import (
    combined_tail,
    ec_ora_high_snr,
    ec_ora_low_snr,
    high_snr_metrics,
    low_snr_metrics,
)
from effcap.combiner import CombinerSpec
from effcap.errors import DomainError, UnsupportedModelError
from effcap.fading import AlphaEtaMu, GeneralizedGamma, Gsnm, Nakagami
from effcap.policies import QosSpec, ec_ora

GG = GeneralizedGamma(2.0, 1.5, 1.0)


def egc3(snr_db, model=GG):
    return CombinerSpec.egc([model] * 3, 10 ** (snr_db / 10.0))


class TestCombinedTail:
    def test_composition(self):
        spec = egc3(0.0)
        c, d = combined_tail(spec)
        from effcap.fading import tail_expansion

        te = tail_expansion(GG, 1.0)
        assert d == pytest.approx(3 * te.d)
        assert c == pytest.approx(te.C ** 3, rel=1e-12)

    def test_gsnm_refused(self):
        spec = CombinerSpec.egc([Gsnm(1.25, 5 / 3, 2.3, 3.5)] * 2, 1.0)
        with pytest.raises(UnsupportedModelError):
            combined_tail(spec)


class TestHighSnr:
    def test_deterministic_slope_one(self):
        spec = CombinerSpec.mrc([Nakagami(500.0, 1.0)] * 2, 1e4)
        met = high_snr_metrics(spec, QosSpec.from_a(4.0))
        assert met.slope_s_inf == 1.0

    def test_mrc_slope_doubles_with_branches(self):
        # QoS-limited regime: slope = d/A with d proportional to L
        a = 8.0
        m1 = high_snr_metrics(CombinerSpec.mrc([GG], 1e4),
                              QosSpec.from_a(a))
        m2 = high_snr_metrics(CombinerSpec.mrc([GG] * 2, 1e4),
                              QosSpec.from_a(a))
        assert m2.slope_s_inf == pytest.approx(2 * m1.slope_s_inf, rel=1e-9)

    def test_egc_half_exponent_prefactor(self):
        # EGC slope carries the d/(2A) prefactor of its kernel pairing
        a = 5.0  # inside the window d/2 < A < d+1 for d = 6
        spec = CombinerSpec.egc([GG] * 2, 1e4)
        met = high_snr_metrics(spec, QosSpec.from_a(a))
        _, d = combined_tail(spec)
        assert met.slope_s_inf == pytest.approx(d / (2 * a), rel=1e-9)

    @pytest.mark.parametrize("a", [1.0, 2.0, 4.0])
    def test_gg_asymptote_tight_at_40db(self, a):
        qos = QosSpec.from_a(a)
        spec = egc3(40.0)
        exact = ec_ora(spec, qos).value
        asym = ec_ora_high_snr(spec, qos).value
        assert abs(exact - asym) / exact <= 0.01

    def test_gap_monotone_shrinking(self):
        qos = QosSpec.from_a(2.0)
        gaps = []
        for db in (20.0, 30.0, 40.0, 50.0):
            spec = egc3(db)
            exact = ec_ora(spec, qos).value
            gaps.append(abs(exact - ec_ora_high_snr(spec, qos).value)
                        / exact)
        assert all(b < a for a, b in zip(gaps, gaps[1:]))

    def test_alpha_eta_mu_fig4_setup(self):
        qos = QosSpec.from_a(2.0)
        spec = egc3(40.0, AlphaEtaMu(2.4, 64.3, 1.2))
        exact = ec_ora(spec, qos).value
        asym = ec_ora_high_snr(spec, qos).value
        assert abs(exact - asym) / exact <= 0.01

    def test_slope_matches_finite_difference(self):
        qos = QosSpec.from_a(8.0)  # QoS-limited window for d = 9
        met = high_snr_metrics(egc3(0.0), qos)
        e45 = ec_ora(egc3(45.0), qos).value
        e50 = ec_ora(egc3(50.0), qos).value
        fd_slope = (e50 - e45) / (5.0 * math.log2(10.0) / 10.0)
        assert abs(met.slope_s_inf - fd_slope) <= 0.02 * met.slope_s_inf

    def test_boundary_refused(self):
        _, d = combined_tail(egc3(0.0))
        with pytest.raises(DomainError):
            high_snr_metrics(egc3(0.0), QosSpec.from_a(d / 2.0))

    def test_af_refused(self):
        spec = CombinerSpec.af([Nakagami(1.5)] * 2, 1.0)
        with pytest.raises(UnsupportedModelError):
            high_snr_metrics(spec, QosSpec.from_a(2.0))


class TestLowSnr:
    def test_deterministic_expansion_is_log_series(self):
        spec = CombinerSpec.mrc([Nakagami(50000.0, 1.0)], 1.0)
        qos = QosSpec.from_a(2.0)
        met = low_snr_metrics(spec, qos)
        eps = 0.01
        want = (eps - eps * eps / 2) / math.log(2)
        got = met.r_dot0 * eps + 0.5 * met.r_ddot0 * eps * eps
        assert got == pytest.approx(want, rel=1e-3)

    @pytest.mark.parametrize("a", [1.0, 4.0])
    def test_gg_expansion_accurate(self, a):
        model = GeneralizedGamma(3.0, 3.0, 1.0)
        qos = QosSpec.from_a(a)
        spec = CombinerSpec.egc([model] * 3, 10 ** (-20 / 10))
        exact = ec_ora(spec, qos).value
        approx = ec_ora_low_snr(spec, qos).value
        assert abs(exact - approx) / exact <= 0.02

    def test_quadratic_error_decay(self):
        model = GeneralizedGamma(3.0, 3.0, 1.0)
        qos = QosSpec.from_a(2.0)
        errs = []
        for db in (-10.0, -20.0):
            spec = CombinerSpec.egc([model] * 3, 10 ** (db / 10))
            exact = ec_ora(spec, qos).value
            errs.append(abs(exact - ec_ora_low_snr(spec, qos).value)
                        / exact)
        assert 30.0 <= errs[0] / errs[1] <= 1000.0

    def test_first_derivative_vs_finite_difference(self):
        qos = QosSpec.from_a(2.0)
        spec = CombinerSpec.egc([GeneralizedGamma(3.0, 3.0, 1.0)] * 3, 1e-4)
        met = low_snr_metrics(spec, qos)
        fd = ec_ora(spec, qos).value / 1e-4
        assert met.r_dot0 == pytest.approx(fd, rel=5e-3)

    def test_ebn0_floor_and_scaling(self):
        qos = QosSpec.from_a(2.0)
        det = CombinerSpec.mrc([Nakagami(50000.0, 1.0)], 1.0)
        assert low_snr_metrics(det, qos).ebn0_min == pytest.approx(
            math.log(2), rel=1e-4)
        vals = [low_snr_metrics(CombinerSpec.mrc([Nakagami(1.0)] * L, 1.0),
                                qos).ebn0_min for L in (1, 2, 4)]
        assert vals[0] / vals[1] == pytest.approx(2.0, rel=1e-9)
        assert vals[0] / vals[2] == pytest.approx(4.0, rel=1e-9)

    def test_wideband_slope_decreases_with_qos(self):
        spec = CombinerSpec.mrc([Nakagami(1.0)] * 2, 1.0)
        slopes = [low_snr_metrics(spec, QosSpec.from_a(a)).wideband_slope
                  for a in (0.1, 1.0, 10.0)]
        assert slopes[0] > slopes[1] > slopes[2] > 0

    def test_af_refused(self):
        spec = CombinerSpec.af([Nakagami(1.5)] * 2, 1.0)
        with pytest.raises(UnsupportedModelError):
            low_snr_metrics(spec, QosSpec.from_a(1.0))
