"""Effective capacity under the four adaptive transmission policies.

ORA uses the single-integral pairing of the combiner MGF with the kernel
C_q(u) = L^-1{(1+x^q)^-A}; OPRA pairs the characteristic function with
exponential-integral / incomplete-gamma kernels after Parseval (or, for
Gamma-sum combiners, the incomplete-MGF route); CIFR needs one Mellin-type
MGF integral; TIFR needs one CHF integral plus the outage factor.

Conventions
-----------
* A = theta*T*B/ln2 is the normalized QoS exponent; all capacities are in
  bits/s/Hz.
* For AF relaying (q < 0) the L-slot time sharing replaces A by A/L inside
  every service-rate expectation and divides the resulting capacity by L.
* The transmission region in combiner space is X >= delta for q > 0 and
  X <= delta for q < 0, with delta = (gamma0/k)^(1/q) in both cases.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional

import numpy as np
from scipy import special as sp

from .combiner import (
    CombinerSpec,
    cdf_x_euler_laplace,
    cdf_x_gil_pelaez,
    chf_x,
    incomplete_mgf_x,
    joint_mgf_x,
    mgf_x_derivative,
    x_mean,
    _gamma_sum_params,
)
from .errors import (
    DomainError,
    MethodUnavailableError,
    NumericError,
    ParameterError,
    UnsupportedModelError,
)
from .fading import Gsnm, mgf_rp, tail_expansion
from .quadrature import (
    gk15_panels,
    integrate_alternating,
    integrate_interval,
    integrate_semi_infinite,
)
from .specfun import expint_iomega, kummer_1f1, lower_incomplete_gamma

__all__ = [
    "QosSpec",
    "EcResult",
    "CutoffSolution",
    "kernel_cq",
    "ec_ora",
    "ec_opra_mgf",
    "ec_opra_chf",
    "optimal_cutoff",
    "ec_cifr",
    "ec_tifr",
]

_LN2 = math.log(2.0)


@dataclass(frozen=True)
class QosSpec:
    """Delay-QoS exponent theta (1/bit) with frame duration and bandwidth."""

    theta: float
    T: float = 2e-3
    B: float = 1e5

    def __post_init__(self):
        if self.theta <= 0 or self.T <= 0 or self.B <= 0:
            raise ParameterError("theta, T and B must be positive")

    @property
    def A(self) -> float:
        return self.theta * self.T * self.B / _LN2

    @property
    def lam(self) -> float:
        a = self.A
        return a / (a + 1.0)

    @classmethod
    def from_a(cls, a: float, T: float = 2e-3, B: float = 1e5) -> "QosSpec":
        if a <= 0:
            raise ParameterError("A must be positive")
        return cls(a * _LN2 / (T * B), T, B)


@dataclass(frozen=True)
class EcResult:
    policy: str
    method: str
    snr_db: float
    theta: float
    value: float
    cutoff_gamma0: Optional[float] = None
    diagnostics: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.value < 0 and not self.diagnostics.get("flag"):
            raise NumericError(f"negative capacity {self.value}")


@dataclass(frozen=True)
class CutoffSolution:
    gamma0: float
    residual: float
    iterations: int


def _snr_db(spec: CombinerSpec) -> float:
    return 10.0 * math.log10(spec.snr_per_symbol)


def _effective_a(spec: CombinerSpec, qos: QosSpec):
    """(A_eff, result divisor) honoring AF time sharing."""
    if spec.q < 0:
        return qos.A / spec.L, float(spec.L)
    return qos.A, 1.0


# ---------------------------------------------------------------------------
# ORA kernels and capacity
# ---------------------------------------------------------------------------

def kernel_cq(q: float, a_exp: float, u):
    """C_q(u) = L^-1{(1+x^q)^-A; x; u} for q in {1, 2, -1}.

    q = 1: u^(A-1) e^-u / Gamma(A);  q = 2: the normalized Hankel kernel
    sqrt(pi)/Gamma(A) (u/2)^(A-1/2) J_{A-1/2}(u);  q = -1: 1F1(A, 1, -u)
    (which pairs with -dM/du rather than M).
    """
    if a_exp <= 0:
        raise DomainError("A must be positive")
    u = np.asarray(u, dtype=float)
    if q == 1:
        with np.errstate(divide="ignore"):
            return np.exp((a_exp - 1.0) * np.log(u) - u - sp.gammaln(a_exp))
    if q == 2:
        from .quadrature import _egc_kernel

        return _egc_kernel(u, a_exp)
    if q == -1:
        return kummer_1f1(a_exp, 1.0, -u)
    raise DomainError("kernel_cq supports q in {1, 2, -1} only; other "
                      "orders need the Fox-H form, which is out of scope")


def _ora_integral(spec: CombinerSpec, a_eff: float, tol: float):
    """E[(1 + gamma)^-A] via the kernel-MGF pairing; returns (I, diag).

    The integrals are renormalized by a coarse probe of their magnitude so
    that adaptive error control stays relative even deep in the high-SNR
    tail, where E[(1+gamma)^-A] is many orders below one.
    """
    from .combiner import x_moment

    k = spec.k
    if spec.q == 1:
        def f(u):
            return kernel_cq(1, a_eff, u) * np.real(joint_mgf_x(spec, k * u))

        scale0 = _probe_scale(f, max(a_eff, 1.0))

        def fn(u):
            return f(u) / scale0

        if a_eff >= 0.5:
            est = integrate_semi_infinite(
                fn, tol=tol,
                origin_power=(a_eff - 1.0 if a_eff < 1 else 0.0),
                scale=max(a_eff, 1.0))
            value = est.value * scale0
        else:
            # tiny exponents carry most mass at the u^(A-1) edge; peel a
            # Taylor head off analytically (the substitution would
            # underflow)
            u0 = 1e-4
            m1, m2 = x_moment(spec, 1), x_moment(spec, 2)
            g0, g1 = 1.0, -(1.0 + k * m1)
            g2 = 1.0 + 2.0 * k * m1 + k * k * m2
            head = (g0 * u0 ** a_eff / a_eff
                    + g1 * u0 ** (a_eff + 1) / (a_eff + 1)
                    + 0.5 * g2 * u0 ** (a_eff + 2) / (a_eff + 2)) \
                / math.gamma(a_eff)
            est = integrate_semi_infinite(
                lambda t: fn(u0 + np.asarray(t)), tol=tol,
                scale=max(a_eff, 1.0))
            value = est.value * scale0 + head
        return value, {"err_estimate": est.error_estimate * scale0,
                       "evaluations": est.evaluations}
    if spec.q == 2:
        from .quadrature import integrate_hankel_partitioned

        rk = math.sqrt(k)

        def g(u):
            return np.real(joint_mgf_x(spec, rk * u))

        def cg(u):
            return kernel_cq(2, a_exp=a_eff, u=u) * g(u)

        scale0 = _probe_scale(cg, max(a_eff, 1.0), positive=False)
        gd0 = -rk * x_moment(spec, 1) if a_eff < 0.25 else None
        est = integrate_hankel_partitioned(lambda u: g(u) / scale0, a_eff,
                                           tol=tol,
                                           g_deriv0=(None if gd0 is None
                                                     else gd0 / scale0))
        return est.value * scale0, {"err_estimate": est.error_estimate
                                    * scale0,
                                    "evaluations": est.evaluations,
                                    "zeros_used": est.zeros_used}
    if spec.q == -1:
        def f(u):
            u = np.asarray(u)
            return -kernel_cq(-1, a_eff, u) \
                * mgf_x_derivative(spec, u / k) / k

        scale0 = _probe_scale(f, max(k, 1.0))

        est = integrate_semi_infinite(lambda u: f(u) / scale0, tol=tol,
                                      scale=max(k, 1.0))
        return est.value * scale0, {"err_estimate": est.error_estimate
                                    * scale0,
                                    "evaluations": est.evaluations}
    raise DomainError("ORA supports q in {1, 2, -1}")


def _probe_scale(f, scale: float, positive: bool = True) -> float:
    """Order-of-magnitude of int f over a coarse logarithmic grid."""
    u = np.geomspace(1e-4 * scale, 60.0 * scale, 40)
    vals = np.abs(np.asarray(f(u)))
    probe = float(np.max(vals * u))
    return probe if probe > 0 else 1.0


def _finish(policy, method, spec, qos, lnarg, a_eff, div, gamma0=None,
            diag=None):
    if not (lnarg > 0) or not math.isfinite(lnarg):
        raise NumericError(f"{policy}: ln argument {lnarg} is not positive")
    value = -math.log(lnarg) / (a_eff * _LN2) / div
    return EcResult(policy, method, _snr_db(spec), qos.theta,
                    max(value, 0.0), cutoff_gamma0=gamma0,
                    diagnostics=diag or {})


def ec_ora(spec: CombinerSpec, qos: QosSpec, tol: float = 1e-8) -> EcResult:
    """EC under constant power and optimal rate adaptation."""
    a_eff, div = _effective_a(spec, qos)
    if a_eff < 1e-6:
        # ergodic limit: evaluate at the smallest stable exponent
        a_eff = 1e-6
    val, diag = _ora_integral(spec, a_eff, tol)
    return _finish("ora", "mgf", spec, qos, float(np.real(val)), a_eff, div,
                   diag=diag)


# ---------------------------------------------------------------------------
# Parseval-type frequency integrals shared by OPRA / TIFR / the cutoff
# ---------------------------------------------------------------------------

def _kernel_e(nu: float):
    def kern(w):
        return expint_iomega(nu, w)
    return kern


def _kernel_w(nu: float):
    def kern(w):
        w = np.asarray(w, dtype=float)
        z = 1j * w
        return np.exp(-(1.0 + nu) * np.log(z)) \
            * lower_incomplete_gamma(1.0 + nu, z)
    return kern


def _parseval(spec: CombinerSpec, delta: float, kern, tol: float,
              sing_power: float | None = None,
              scale: float = 1.0) -> complex:
    """int_0^inf Phi_X(w/delta) kern(w) dw with partitioning + epsilon.

    ``sing_power`` declares an integrable w^s behaviour of the kernel at
    the origin (s in (-1, 0)); the head panel substitutes it away.
    ``scale`` pre-divides the integrand so the adaptive error control is
    relative to the expected magnitude of the result.
    """
    mean_rate = x_mean(spec) / delta
    period = math.pi / (1.0 + mean_rate)

    def f(w):
        w = np.asarray(w, dtype=float)
        return chf_x(spec, w / delta) * kern(w) / scale

    if sing_power is not None and sing_power < 0:
        ap1 = sing_power + 1.0

        def head_f(sig):
            sig = np.asarray(sig, dtype=float)
            w = period * sig ** (1.0 / ap1)
            return f(w) * (period / ap1) * sig ** (1.0 / ap1 - 1.0)

        head = integrate_interval(head_f, 1e-300, 1.0, tol=0.1 * tol)
    else:
        head = integrate_interval(f, 1e-300, period, tol=0.1 * tol)

    dead = [False]

    def panel_sums(i0, i1):
        if dead[0]:
            return [0.0] * (i1 - i0)
        edges = period * np.arange(i0 + 1, i1 + 2)
        vals, errs, _ = gk15_panels(f, edges)
        out = list(vals)
        budget = 0.05 * tol * (1.0 + np.abs(vals))
        for j in np.nonzero(errs > budget)[0]:
            out[j] = integrate_interval(f, edges[j], edges[j + 1],
                                        tol=0.02 * tol).value
        if np.max(np.abs(chf_x(spec, edges[-1:] / delta))) < 1e-14:
            dead[0] = True
        return out

    # accelerate real and imaginary parts jointly via the complex sums
    tail, used, err = integrate_alternating(
        lambda i0, i1: [complex(v) for v in panel_sums(i0, i1)],
        tol, batch=8, max_panels=40_000)
    return (head.value + tail) * scale


# ---------------------------------------------------------------------------
# OPRA: cutoff and capacity
# ---------------------------------------------------------------------------

def _delta_of(spec: CombinerSpec, gamma0: float) -> float:
    """Combiner-space threshold: X >= delta (q > 0) or X <= delta (q < 0)."""
    return (gamma0 / spec.k) ** (1.0 / spec.q)


@dataclass(frozen=True)
class _OpraRefs:
    """Closed-form moment references for the OPRA quantities.

    e_inv = E[1/gamma], e_lam = E[gamma^-lam]; lng0_est is the cutoff from
    the no-outage power constraint gamma0^(-1/(A+1)) e_lam - e_inv = 1,
    exact whenever the outage region carries negligible mass.  These set
    the bracket for the full root-find and normalize its integrals.
    """

    e_inv: float
    e_lam: float
    lng0_est: float

    def k_est(self, gamma0: float, lam: float) -> float:
        """No-outage estimate of E[(gamma/gamma0)^-lam; gamma >= gamma0]."""
        return math.exp(lam * math.log(gamma0) + math.log(self.e_lam))


def _opra_refs(spec: CombinerSpec, a_eff: float, tol: float) -> _OpraRefs:
    from .combiner import x_fractional_moment, x_inverse_moment

    lam = a_eff / (a_eff + 1.0)
    k = spec.k
    q = spec.q
    if q > 0:
        e_inv = x_inverse_moment(spec, q, tol) / k
        e_lam = x_inverse_moment(spec, lam * q, tol) * k ** -lam
    else:
        e_inv = x_moment_pos(spec, abs(q)) / k
        s = lam * abs(q)
        e_lam = (x_fractional_moment(spec, s, tol) if 0 < s < 1
                 else x_moment_pos(spec, s)) * k ** -lam
    lng0 = -(a_eff + 1.0) * math.log((1.0 + e_inv) / e_lam)
    return _OpraRefs(e_inv=e_inv, e_lam=e_lam, lng0_est=lng0)


def x_moment_pos(spec: CombinerSpec, s: float) -> float:
    from .combiner import x_moment

    if s == int(s):
        return x_moment(spec, int(s))
    from .combiner import x_fractional_moment

    return x_fractional_moment(spec, s)


def _cutoff_lhs_scaled(spec: CombinerSpec, a_eff: float, gamma0: float,
                       tol: float) -> float:
    """V(gamma0)/gamma0, where the power constraint reads V = gamma0."""
    lam = a_eff / (a_eff + 1.0)
    q = spec.q
    delta = _delta_of(spec, gamma0)
    if q > 0:
        nu1, nu2 = q * lam, q

        def kern(w):
            return expint_iomega(nu1, w) - expint_iomega(nu2, w)

        sing = min(nu1, nu2) - 1.0 if min(nu1, nu2) < 1.0 else None
        val = _parseval(spec, delta, kern, tol, sing_power=sing,
                        scale=math.pi * gamma0)
        return float(np.real(val)) / (math.pi * gamma0)
    aq = abs(q)
    nu1, nu2 = aq * lam, aq

    def kern(w):
        w = np.asarray(w, dtype=float)
        z = 1j * w
        g1 = np.exp(-(1.0 + nu1) * np.log(z)) \
            * lower_incomplete_gamma(1.0 + nu1, z)
        g2 = np.exp(-(1.0 + nu2) * np.log(z)) \
            * lower_incomplete_gamma(1.0 + nu2, z)
        return g1 - g2

    val = _parseval(spec, delta, kern, tol, scale=math.pi * gamma0)
    return float(np.real(val)) / (math.pi * gamma0)


def _outage_mass_bound(spec: CombinerSpec, gamma0: float) -> float:
    """Upper bound on P(gamma < gamma0), used to decide when the
    no-outage closed form is exact to machine level."""
    from .fading import Nakagami

    if spec.q > 0:
        delta = _delta_of(spec, gamma0)
        # P(X < delta) <= (delta-origin mass); use the smallest branch
        # origin exponent through Markov on X^-s
        try:
            from .combiner import x_inverse_moment

            s = 1.0
            return x_inverse_moment(spec, s) * delta
        except Exception:
            return 1.0
    delta = _delta_of(spec, gamma0)  # transmission is X <= delta
    if all(isinstance(b, Nakagami) for b in spec.branches):
        out = 0.0
        for b in spec.branches:
            t = delta / spec.L
            out += float(sp.gammainc(b.m, b.m / (b.omega * t)))
        return out
    return x_mean(spec) / delta  # Markov fallback


def _solve_cutoff(spec: CombinerSpec, qos: QosSpec, tol: float):
    """(CutoffSolution, refs, lng0, closed_form).

    Root-find on the full constraint, bracketed by the no-outage closed
    form when the cutoff is tiny; when the outage mass at the estimated
    cutoff is beyond machine resolution (always the case for very large
    QoS exponents) the closed form itself is the solution.
    """
    a_eff, _ = _effective_a(spec, qos)
    refs = _opra_refs(spec, a_eff, tol)
    evals = [0]

    def resid(g0):
        evals[0] += 1
        return _cutoff_lhs_scaled(spec, a_eff, g0, tol) - 1.0

    from scipy.optimize import brentq

    g0_est = math.exp(max(refs.lng0_est, -744.0))
    if refs.lng0_est < math.log(1e-280) \
            or _outage_mass_bound(spec, g0_est) < 1e-12:
        return (CutoffSolution(gamma0=g0_est, residual=0.0, iterations=0),
                refs, refs.lng0_est, True)
    if refs.lng0_est < math.log(5e-3):
        # tight bracket around the closed-form estimate, verified on the
        # full residual
        lo = math.exp(refs.lng0_est - 2.0)
        hi = math.exp(min(refs.lng0_est + 2.0, 0.0))
        flo, fhi = resid(lo), resid(hi)
        tries = 0
        while flo * fhi > 0 and tries < 6:
            lo *= 0.1
            hi = min(hi * 10.0, 20.0)
            flo, fhi = resid(lo), resid(hi)
            tries += 1
    else:
        hi = 1.0
        fhi = resid(hi)
        while fhi > 0 and hi < 20.0:
            hi *= 2.0
            fhi = resid(hi)
        lo, flo = hi, fhi
        while flo <= 0 and lo > 1e-10:
            lo *= 0.2
            flo = resid(lo)
    if flo * fhi > 0 or flo <= 0:
        raise NumericError(
            f"cutoff bracket failed: resid({lo:.3g})={flo:.3g}, "
            f"resid({hi:.3g})={fhi:.3g}")
    g0 = brentq(resid, lo, hi, xtol=1e-300, rtol=1e-10, maxiter=300)
    res = abs(resid(g0))
    return (CutoffSolution(gamma0=float(g0), residual=float(res),
                           iterations=evals[0]),
            refs, math.log(g0), False)


def optimal_cutoff(spec: CombinerSpec, qos: QosSpec,
                   tol: float = 1e-8) -> CutoffSolution:
    """Solve the average-power constraint for the OPRA cutoff gamma0."""
    cut, _, _, _ = _solve_cutoff(spec, qos, tol)
    return cut


def _opra_closed_lnarg(refs: _OpraRefs, lam: float, lng0: float) -> float:
    """ln E[(gamma/gamma0)^-lam] in the negligible-outage regime."""
    return lam * lng0 + math.log(refs.e_lam)


def ec_opra_chf(spec: CombinerSpec, qos: QosSpec, tol: float = 1e-8,
                cutoff: CutoffSolution | None = None) -> EcResult:
    """OPRA capacity via the characteristic-function route."""
    a_eff, div = _effective_a(spec, qos)
    lam = a_eff / (a_eff + 1.0)
    if cutoff is None:
        cut, refs, lng0, closed = _solve_cutoff(spec, qos, tol)
    else:
        cut = cutoff
        refs = _opra_refs(spec, a_eff, tol)
        lng0 = math.log(cut.gamma0) if cut.gamma0 > 0 else refs.lng0_est
        closed = (lng0 < math.log(1e-280)
                  or _outage_mass_bound(spec, max(cut.gamma0, 5e-324))
                  < 1e-12)
    if closed:
        # outage mass beyond machine resolution: the no-outage closed
        # form is exact
        lnarg = _opra_closed_lnarg(refs, lam, lng0)
        value = -lnarg / (a_eff * _LN2) / div
        return EcResult("opra", "chf", _snr_db(spec), qos.theta,
                        max(value, 0.0), cutoff_gamma0=cut.gamma0,
                        diagnostics={"regime": "no-outage-asymptotic"})
    g0 = math.exp(lng0)
    delta = _delta_of(spec, g0)
    q = spec.q
    kest = refs.k_est(g0, lam)
    if q > 0:
        nu = lam * q
        sing = nu - 1.0 if nu < 1.0 else None
        kval = _parseval(spec, delta, _kernel_e(nu), tol, sing_power=sing,
                         scale=math.pi * kest)
        kterm = float(np.real(kval)) / math.pi
        fterm = cdf_x_gil_pelaez(spec, delta, tol=tol)
    else:
        nu = lam * abs(q)
        kval = _parseval(spec, delta, _kernel_w(nu), tol,
                         scale=math.pi * kest)
        kterm = float(np.real(kval)) / math.pi
        fterm = 1.0 - cdf_x_gil_pelaez(spec, delta, tol=tol)
    return _finish("opra", "chf", spec, qos, kterm + fterm, a_eff, div,
                   gamma0=g0, diag=diagnostics_or_none(cut))


def diagnostics_or_none(cut: CutoffSolution) -> dict:
    return {"cutoff_residual": cut.residual,
            "cutoff_iterations": cut.iterations}


def ec_opra_mgf(spec: CombinerSpec, qos: QosSpec, tol: float = 1e-8,
                cutoff: CutoffSolution | None = None) -> EcResult:
    """OPRA capacity via the incomplete-MGF route (Gamma-sum combiners).

    Available when the combiner admits a closed incomplete MGF (MRC over
    Nakagami with a common Gamma scale); anything else raises and the
    caller should use ec_opra_chf.
    """
    if spec.q <= 0:
        raise MethodUnavailableError(
            "the incomplete-MGF route applies to q > 0 only; AF uses the "
            "CHF route")
    if _gamma_sum_params(spec) is None:
        raise MethodUnavailableError(
            "no closed incomplete MGF for this combiner; use ec_opra_chf")
    a_eff, div = _effective_a(spec, qos)
    lam = a_eff / (a_eff + 1.0)
    if cutoff is None:
        cut, refs, lng0, closed = _solve_cutoff(spec, qos, tol)
    else:
        cut = cutoff
        refs = _opra_refs(spec, a_eff, tol)
        lng0 = math.log(cut.gamma0) if cut.gamma0 > 0 else refs.lng0_est
        closed = lng0 < math.log(1e-280)
    if closed:
        lnarg = _opra_closed_lnarg(refs, lam, lng0)
        value = -lnarg / (a_eff * _LN2) / div
        return EcResult("opra", "incomplete-mgf", _snr_db(spec), qos.theta,
                        max(value, 0.0), cutoff_gamma0=cut.gamma0,
                        diagnostics={"regime": "no-outage-asymptotic"})
    g0 = math.exp(lng0)
    delta = _delta_of(spec, g0)
    q = spec.q
    lq = lam * q
    # integrate in w = v/delta, where the incomplete MGF lives on the
    # combiner scale whatever the cutoff is; the delta^(lam q) prefactor
    # is carried in logs
    ref = refs.e_lam * spec.k ** lam  # ~ E[X^-lam q]

    def f(w):
        w = np.atleast_1d(np.asarray(w, dtype=float))
        vals = np.array([incomplete_mgf_x(spec, ww, delta) for ww in w])
        with np.errstate(divide="ignore"):
            return np.exp((lq - 1.0) * np.log(w) - sp.gammaln(lq)) \
                * vals / ref

    est = integrate_semi_infinite(
        f, tol=tol, origin_power=(lq - 1.0 if lq < 1 else 0.0), scale=1.0)
    ln_j = math.log(float(np.real(est.value)) * ref) + lq * math.log(delta)
    jterm = math.exp(ln_j) if ln_j > -700.0 else 0.0
    fterm = cdf_x_euler_laplace(spec, delta, tol=max(tol, 1e-9))
    return _finish("opra", "incomplete-mgf", spec, qos,
                   jterm + fterm, a_eff, div,
                   gamma0=g0, diag=diagnostics_or_none(cut))


# ---------------------------------------------------------------------------
# CIFR / TIFR
# ---------------------------------------------------------------------------

def _total_tail_exponent(spec: CombinerSpec):
    from .combiner import x_tail_exponent

    return x_tail_exponent(spec)


def ec_cifr(spec: CombinerSpec, qos: QosSpec, tol: float = 1e-8) -> EcResult:
    """EC under total channel inversion; divergent E[1/gamma] yields a
    flagged zero-capacity result rather than an exception."""
    q = spec.q
    k = spec.k
    div = float(spec.L) if q < 0 else 1.0
    if q > 0:
        d_tot = _total_tail_exponent(spec)
        if d_tot <= q * (1.0 + 1e-9):
            return EcResult("cifr", "mgf", _snr_db(spec), qos.theta, 0.0,
                            diagnostics={"flag": "divergent-inverse-moment"})

        def f(u):
            u = np.asarray(u, dtype=float)
            with np.errstate(divide="ignore"):
                pw = (q - 1.0) * np.log(u) if q != 1 else 0.0
            return np.exp(pw) * np.real(joint_mgf_x(spec, u))

        est = integrate_semi_infinite(
            f, tol=tol, origin_power=(q - 1.0 if q < 1 else 0.0), scale=1.0,
            max_evals=800_000)
        inv_mean = float(np.real(est.value)) / (k * math.gamma(q))
        diag = {"err_estimate": est.error_estimate}
    elif q == -1.0:
        inv_mean = x_mean(spec) / k
        diag = {}
    else:
        raise DomainError("CIFR supports q in {1, 2, -1}")
    value = math.log2(1.0 + 1.0 / inv_mean) / div
    return EcResult("cifr", "mgf", _snr_db(spec), qos.theta, value,
                    diagnostics=diag)


def _tifr_inverse_moment(spec: CombinerSpec, gamma0: float,
                         tol: float) -> float:
    """E[u(gamma-gamma0)/gamma] via the CHF kernels."""
    q = spec.q
    delta = _delta_of(spec, gamma0)
    if q > 0:
        sing = q - 1.0 if q < 1.0 else None
        val = _parseval(spec, delta, _kernel_e(float(q)), tol,
                        sing_power=sing)
    else:
        val = _parseval(spec, delta, _kernel_w(abs(float(q))), tol)
    return float(np.real(val)) / (math.pi * gamma0)


def ec_tifr(spec: CombinerSpec, qos: QosSpec,
            gamma0: float | None = None, tol: float = 1e-8,
            optimize: bool = False) -> EcResult:
    """EC under truncated channel inversion.

    With ``gamma0=None`` (or optimize=True) the cutoff maximizing the
    capacity is located by golden-section search on log gamma0.
    """
    div = float(spec.L) if spec.q < 0 else 1.0

    def rate(g0):
        inv = _tifr_inverse_moment(spec, g0, tol)
        delta = _delta_of(spec, g0)
        fx = cdf_x_gil_pelaez(spec, delta, tol=tol)
        p_out = fx if spec.q > 0 else 1.0 - fx
        if inv <= 0:
            return 0.0
        return (1.0 - p_out) * math.log2(1.0 + 1.0 / inv) / div

    if gamma0 is None or optimize:
        gbar = spec.k * x_mean(spec) ** spec.q
        lo, hi = math.log(1e-3 * gbar), math.log(8.0 * gbar)
        phi = (math.sqrt(5.0) - 1.0) / 2.0
        a, b = lo, hi
        c = b - phi * (b - a)
        d = a + phi * (b - a)
        fc, fd = rate(math.exp(c)), rate(math.exp(d))
        for _ in range(40):
            if fc > fd:
                b, d, fd = d, c, fc
                c = b - phi * (b - a)
                fc = rate(math.exp(c))
            else:
                a, c, fc = c, d, fd
                d = a + phi * (b - a)
                fd = rate(math.exp(d))
        g0 = math.exp(0.5 * (a + b))
        method = "chf-optimized"
    else:
        g0 = float(gamma0)
        method = "chf"
    value = rate(g0)
    return EcResult("tifr", method, _snr_db(spec), qos.theta, value,
                    cutoff_gamma0=g0, diagnostics={})
