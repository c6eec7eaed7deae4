import math

import numpy as np
import pytest
from scipy.stats import gamma as gamma_dist

from effcap import combiner as cb
from effcap.combiner import (
    CombinerSpec,
    EulerInversionParams,
    cdf_x_euler_laplace,
    cdf_x_gil_pelaez,
    chf_x,
    incomplete_mgf_x,
    joint_mgf_x,
    mgf_x_derivative,
    mgf_x_derivative_fd,
    snr_end,
    x_moment,
)
from effcap.errors import DomainError, ParameterError
from effcap.fading import GeneralizedGamma, Nakagami, sample_envelope

RAYLEIGH2 = CombinerSpec.mrc([Nakagami(1.0, 1.0)] * 2, 1.0)
NAK2 = CombinerSpec.mrc([Nakagami(1.5, 1.0)] * 2, 1.0)
NAK2_EGC = CombinerSpec.egc([Nakagami(1.5, 1.0)] * 2, 1.0)
GG3_EGC = CombinerSpec.egc([GeneralizedGamma(2.0, 1.5, 1.0)] * 3, 1.0)


class TestSpec:
    def test_presets(self):
        assert (RAYLEIGH2.p, RAYLEIGH2.q, RAYLEIGH2.K) == (2.0, 1.0, 1.0)
        assert NAK2_EGC.K == pytest.approx(0.5)  # standard EGC: 1/L
        egc_paper = CombinerSpec.egc([Nakagami(1.0)] * 2, 1.0,
                                     k_norm=1 / math.sqrt(2))
        assert egc_paper.K == pytest.approx(1 / math.sqrt(2))
        af = CombinerSpec.af([Nakagami(1.5)] * 2, 1.0)
        assert (af.p, af.q, af.K) == (-2.0, -1.0, 1.0)

    def test_validation(self):
        with pytest.raises(ParameterError):
            CombinerSpec(0.0, 1.0, 1.0, (Nakagami(1.0),), 1.0)
        with pytest.raises(ParameterError):
            CombinerSpec(2.0, 1.0, 1.0, (), 1.0)


class TestSnrEnd:
    def test_mrc(self):
        assert snr_end(RAYLEIGH2, [1.0, 1.0]) == pytest.approx(2.0)

    def test_af_harmonic(self):
        af = CombinerSpec.af([Nakagami(1.0)] * 2, 1.0)
        assert snr_end(af, [1.0, 1.0]) == pytest.approx(0.5)

    def test_egc_coherent_gain(self):
        egc = CombinerSpec.egc([Nakagami(1.0)] * 2, 1.0)
        assert snr_end(egc, [1.0, 1.0]) == pytest.approx(2.0)

    def test_mrc_dominates_standard_egc(self):
        # Cauchy-Schwarz: sum r^2 >= (sum r)^2 / L
        rng = np.random.default_rng(2)
        r = rng.uniform(0.01, 5.0, size=(100_000, 2))
        mrc = snr_end(RAYLEIGH2, r)
        egc = snr_end(CombinerSpec.egc([Nakagami(1.0)] * 2, 1.0), r)
        assert np.all(mrc >= egc - 1e-12)


class TestJointTransforms:
    def test_mgf_at_zero_and_single_branch(self):
        assert joint_mgf_x(NAK2, 0.0) == 1.0
        single = CombinerSpec.mrc([Nakagami(1.5)], 1.0)
        u = np.linspace(0.0, 5.0, 7)
        from effcap.fading import mgf_rp

        assert np.allclose(joint_mgf_x(single, u),
                           mgf_rp(Nakagami(1.5), 2.0, u), rtol=1e-13)

    def test_gamma_sum_closure(self):
        u = np.linspace(0.0, 8.0, 9)
        got = joint_mgf_x(NAK2, u)
        assert np.allclose(got, (1 + u / 1.5) ** -3.0, rtol=1e-12)

    def test_factorization_exactness(self):
        u = np.geomspace(0.01, 10, 12)
        prod = joint_mgf_x(GG3_EGC, u)
        from effcap.fading import mgf_rp

        logs = sum(np.log(mgf_rp(b, 1.0, u)) for b in GG3_EGC.branches)
        assert np.allclose(prod, np.exp(logs), rtol=1e-12)

    def test_chf_gamma_sum_closed_form(self):
        w = np.array([0.3, 1.0, 4.0])
        got = chf_x(NAK2, w)
        want = (1 - 1j * w / 1.5) ** -3.0
        assert np.allclose(got, want, rtol=1e-9)

    def test_chf_hermitian_grid(self):
        w = np.linspace(0.1, 6.0, 8)
        assert np.allclose(chf_x(GG3_EGC, -w), np.conj(chf_x(GG3_EGC, w)),
                           rtol=1e-12)


class TestMgfDerivative:
    def test_exponential_atom(self):
        # single deterministic-like branch sanity: d/du e^{-u x0} = -x0 e^..
        spec = CombinerSpec.mrc([Nakagami(5000.0, 1.0)], 1.0)
        got = mgf_x_derivative(spec, 0.5)
        assert got == pytest.approx(-math.exp(-0.5), rel=1e-3)

    def test_moment_identity_at_origin(self):
        got = mgf_x_derivative(NAK2_EGC, 1e-7)
        assert got == pytest.approx(-x_moment(NAK2_EGC, 1), rel=1e-5)

    def test_af_two_method_agreement(self):
        af = CombinerSpec.af([Nakagami(1.5)] * 2, 1.0)
        for u in (0.3, 1.0, 4.0):
            a = mgf_x_derivative(af, u)
            b = mgf_x_derivative_fd(af, u)
            assert a == pytest.approx(b, rel=1e-7)

    def test_domain(self):
        with pytest.raises(DomainError):
            mgf_x_derivative(NAK2, 0.0)


class TestCdf:
    @pytest.mark.parametrize("x", [0.5, 1.0, 2.0, 5.0])
    def test_erlang_reference_both_methods(self, x):
        ref = gamma_dist.cdf(x, 2, scale=1.0)
        assert cdf_x_gil_pelaez(RAYLEIGH2, x, tol=1e-9) == pytest.approx(
            ref, abs=1e-6)
        assert cdf_x_euler_laplace(RAYLEIGH2, x) == pytest.approx(ref,
                                                                  abs=1e-6)

    def test_erlang_value_at_one(self):
        assert cdf_x_gil_pelaez(RAYLEIGH2, 1.0) == pytest.approx(
            1 - 2 * math.exp(-1), abs=1e-7)

    def test_small_x_limit(self):
        assert cdf_x_gil_pelaez(RAYLEIGH2, 1e-4) < 1e-6

    def test_huge_x(self):
        assert cdf_x_euler_laplace(RAYLEIGH2, 100.0) == pytest.approx(
            1.0, abs=1e-8)

    @pytest.mark.parametrize("spec", [NAK2, NAK2_EGC, GG3_EGC])
    def test_methods_agree_on_sums(self, spec):
        grid = np.linspace(0.4, 4.0, 10)
        for x in grid:
            gp = cdf_x_gil_pelaez(spec, float(x), tol=1e-9)
            el = cdf_x_euler_laplace(spec, float(x))
            assert abs(gp - el) < 1e-6

    @pytest.mark.parametrize("spec", [NAK2, GG3_EGC])
    def test_monotone_and_bounded(self, spec):
        xs = np.linspace(0.05, 8.0, 50)
        vals = np.array([cdf_x_gil_pelaez(spec, float(x)) for x in xs])
        assert np.all(vals >= 0) and np.all(vals <= 1)
        assert np.all(np.diff(vals) > -1e-7)

    def test_triple_gg_egc_median_vs_empirical(self):
        rng = np.random.default_rng(31)
        n = 2_000_000
        r = sum(sample_envelope(b, rng, n) for b in GG3_EGC.branches)
        med = float(np.median(r))
        got = cdf_x_gil_pelaez(GG3_EGC, med, tol=1e-9)
        # empirical median CDF standard error ~ 0.5/sqrt(n)
        assert got == pytest.approx(0.5, abs=4 * 0.5 / math.sqrt(n))

    def test_euler_params_validated(self):
        with pytest.raises(ParameterError):
            cdf_x_euler_laplace(RAYLEIGH2, 1.0,
                                EulerInversionParams(Q=5.0), tol=1e-6)
        with pytest.raises(ParameterError):
            EulerInversionParams(Q=-1.0)


class TestIncompleteMgf:
    def test_v_zero_is_mgf(self):
        assert incomplete_mgf_x(NAK2, 0.7, 0.0) == pytest.approx(
            float(joint_mgf_x(NAK2, 0.7)), rel=1e-12)

    def test_s_zero_is_survival(self):
        got = incomplete_mgf_x(NAK2, 0.0, 1.3)
        want = 1.0 - cdf_x_gil_pelaez(NAK2, 1.3, tol=1e-10)
        assert got == pytest.approx(want, abs=1e-8)

    def test_closed_form_vs_density_reconstruction(self):
        closed = incomplete_mgf_x(NAK2, 0.7, 1.3)
        orig = cb._gamma_sum_params
        cb._gamma_sum_params = lambda s: None
        try:
            numeric = incomplete_mgf_x(NAK2, 0.7, 1.3)
        finally:
            cb._gamma_sum_params = orig
        assert closed == pytest.approx(numeric, abs=1e-6)

    def test_bounds(self):
        s, v = 0.5, 1.0
        val = incomplete_mgf_x(NAK2, s, v)
        assert val <= float(joint_mgf_x(NAK2, s)) + 1e-12
        assert val <= 1.0 - cdf_x_gil_pelaez(NAK2, v) + 1e-8


class TestMoments:
    def test_vs_monte_carlo(self):
        rng = np.random.default_rng(0)
        n = 200_000
        r = np.vstack([sample_envelope(b, rng, n)
                       for b in NAK2_EGC.branches]).T
        x = (r ** NAK2_EGC.p).sum(axis=1)
        for k in range(1, 5):
            se = (x ** k).std() / math.sqrt(n)
            assert abs(x_moment(NAK2_EGC, k) - (x ** k).mean()) < 4 * se
