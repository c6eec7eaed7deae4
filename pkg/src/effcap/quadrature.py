"""Integration and series-acceleration engines.

Four pieces of machinery shared by every analytic path in the package:

* a Gauss rule for half-line integrals with Gaussian weight,
  ``int_0^inf exp(-t^2) f(t) dt ~= sum w_k f(t_k)``, generated by the
  Golub-Welsch procedure from the moment problem mu_j = Gamma((j+1)/2)/2;
* an adaptive Gauss-Kronrod integrator for finite and semi-infinite ranges;
* a Bessel-zero partitioned integrator for Hankel-type oscillatory
  integrals, with the partial sums accelerated by the epsilon algorithm;
* Wynn's epsilon (Shanks) table itself.

All integrand callables must accept numpy arrays and be reentrant; rules
and estimates are immutable values.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable, Sequence

import numpy as np

from .errors import DomainError, NumericError

__all__ = [
    "GaussRule",
    "IntegralEstimate",
    "EpsilonTable",
    "gauss_halfline_rule",
    "epsilon_accelerate",
    "integrate_interval",
    "integrate_semi_infinite",
    "integrate_hankel_partitioned",
    "integrate_alternating",
]


# ---------------------------------------------------------------------------
# Gauss rule for int_0^inf exp(-t^2) f(t) dt
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class GaussRule:
    """Nodes and weights for the half-line Gaussian-weight rule."""

    nodes: np.ndarray
    weights: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "nodes", np.asarray(self.nodes, dtype=float))
        object.__setattr__(self, "weights", np.asarray(self.weights, dtype=float))
        if self.nodes.ndim != 1 or self.nodes.shape != self.weights.shape:
            raise DomainError("nodes and weights must be matching 1-d arrays")
        if not (np.all(np.diff(self.nodes) > 0) and np.all(self.nodes > 0)):
            raise DomainError("nodes must be strictly increasing and positive")

    @property
    def count(self) -> int:
        return self.nodes.size

    def apply(self, f: Callable[[np.ndarray], np.ndarray]):
        return float(np.dot(self.weights, f(self.nodes)))


def _halfline_rule_mp(n: int):
    """Golub-Welsch from raw moments, in multiprecision.

    The Hankel moment matrix of this weight is severely ill-conditioned, so
    the Chebyshev moment-to-recurrence algorithm is run with a working
    precision that grows linearly with n; the result is rounded to float.
    """
    import mpmath as mp

    dps = 60 + 5 * n
    with mp.workdps(dps):
        moms = [mp.gamma(mp.mpf(j + 1) / 2) / 2 for j in range(2 * n)]
        # Chebyshev algorithm: recurrence coefficients a_k, b_k.
        a = [moms[1] / moms[0]]
        b = [moms[0]]
        sig_prev = [mp.mpf(0)] * (2 * n)
        sig = list(moms)
        for k in range(1, n):
            sig_new = [mp.mpf(0)] * (2 * n)
            for l in range(k, 2 * n - k):
                sig_new[l] = sig[l + 1] - a[k - 1] * sig[l] - b[k - 1] * sig_prev[l]
            a.append(sig_new[k + 1] / sig_new[k] - sig[k] / sig[k - 1])
            b.append(sig_new[k] / sig[k - 1])
            sig_prev, sig = sig, sig_new
        # Jacobi matrix eigen-decomposition.
        J = mp.zeros(n)
        for i in range(n):
            J[i, i] = a[i]
        for i in range(1, n):
            off = mp.sqrt(b[i])
            J[i, i - 1] = off
            J[i - 1, i] = off
        E, Q = mp.eigsy(J)
        nodes = [E[i] for i in range(n)]
        weights = [b[0] * Q[0, i] ** 2 for i in range(n)]
        order = sorted(range(n), key=lambda i: nodes[i])
        return (
            np.array([float(nodes[i]) for i in order]),
            np.array([float(weights[i]) for i in order]),
        )


@lru_cache(maxsize=None)
def gauss_halfline_rule(n_t: int) -> GaussRule:
    """Rule integrating t^j exp(-t^2) on [0, inf) exactly for j <= 2*n_t - 1."""
    if not (2 <= n_t <= 64):
        raise DomainError("n_t must lie in [2, 64]; larger rules are ill-conditioned")
    from . import _halfrange_tables

    tab = _halfrange_tables.TABLES.get(n_t)
    if tab is not None:
        nodes, weights = tab
        return GaussRule(np.array(nodes), np.array(weights))
    nodes, weights = _halfline_rule_mp(n_t)
    return GaussRule(nodes, weights)


# ---------------------------------------------------------------------------
# Epsilon (Shanks) acceleration
# ---------------------------------------------------------------------------

@dataclass
class EpsilonTable:
    """Wynn epsilon table over a sequence of partial sums.

    Column r = -1 is identically zero, column r = 0 holds the partial sums;
    only even columns approximate the limit. ``estimates`` collects the
    newest entry of each even column, shallow to deep.
    """

    sums: Sequence[float]
    columns: list = field(default_factory=list)
    estimates: list = field(default_factory=list)
    converged_early: bool = False

    def __post_init__(self):
        s = list(self.sums)  # float or complex entries
        if len(s) < 3:
            raise DomainError("need at least 3 partial sums to accelerate")
        scale = max(abs(x) for x in s) or 1.0
        tiny = 1e-305
        zero = 0.0 * s[0]
        prev = [zero] * (len(s) + 1)  # column r-1
        cur = s[:]                    # column r
        self.columns = [cur[:]]
        self.estimates = [cur[-1]]
        r = 0
        while len(cur) >= 2:
            nxt = []
            for k in range(len(cur) - 1):
                diff = cur[k + 1] - cur[k]
                if abs(diff) < tiny or abs(diff) < 1e-16 * abs(scale):
                    # Denominator underflow: the lozenge has converged.
                    self.converged_early = True
                    self.estimates.append(cur[k + 1])
                    return
                nxt.append(prev[k + 1] + 1.0 / diff)
            prev, cur = cur, nxt
            r += 1
            self.columns.append(cur[:])
            if r % 2 == 0 and cur:
                self.estimates.append(cur[-1])

    @property
    def best(self) -> float:
        return self.estimates[-1]


def epsilon_accelerate(partial_sums: Sequence[float]) -> float:
    """Best even-column epsilon-table estimate of the series limit."""
    return EpsilonTable(partial_sums).best


def integrate_alternating(
    panel_sums: Callable[[int, int], Sequence[float]],
    tol: float,
    batch: int = 8,
    max_panels: int = 4096,
):
    """Accelerate the partial sums of a panel-wise (alternating) series.

    ``panel_sums(i0, i1)`` returns the integrals of panels i0..i1-1. Panels
    are consumed in batches, the running partial sums are epsilon
    accelerated after each batch, and iteration stops when two successive
    even-column estimates agree within tol.
    """
    sums: list = []
    total = 0.0
    last = None
    n = 0
    while n < max_panels:
        vals = panel_sums(n, n + batch)
        for v in vals:
            total = total + v
            sums.append(total)
        n += batch
        if len(sums) < 3:
            continue
        table = EpsilonTable(sums[-min(len(sums), 40):])
        est = table.best
        if last is not None and abs(est - last) < tol * max(1.0, abs(est)):
            return est, n, abs(est - last)
        # A vanished tail means the raw sums themselves have converged.
        if abs(sums[-1] - sums[-2]) < 0.01 * tol * max(1.0, abs(est)):
            return est, n, abs(sums[-1] - sums[-2])
        last = est
    raise NumericError(
        f"epsilon acceleration stagnated after {n} panels",
        best_estimate=last,
    )


# ---------------------------------------------------------------------------
# Adaptive Gauss-Kronrod integration
# ---------------------------------------------------------------------------

# 15-point Kronrod extension of 7-point Gauss on [-1, 1].
_XGK = np.array([
    0.991455371120813, 0.949107912342759, 0.864864423359769,
    0.741531185599394, 0.586087235467691, 0.405845151377397,
    0.207784955007898, 0.0,
])
_WGK = np.array([
    0.022935322010529, 0.063092092629979, 0.104790010322250,
    0.140653259715525, 0.169004726639267, 0.190350578064785,
    0.204432940075298, 0.209482141084728,
])
_WG = np.array([
    0.129484966168870, 0.279705391489277, 0.381830050505119,
    0.417959183673469,
])


# Flattened 15-node layout (ascending) and matching weight vectors.
_XK15 = np.concatenate([-_XGK[:-1], [0.0], _XGK[-2::-1]])
_WK15 = np.concatenate([_WGK[:-1], [_WGK[-1]], _WGK[-2::-1]])
_WG7 = np.concatenate([_WG[:-1], [_WG[-1]], _WG[-2::-1]])


def _gk15(f, a, b):
    c = 0.5 * (a + b)
    h = 0.5 * (b - a)
    x = c + h * _XK15
    y = np.asarray(f(x))
    k = h * np.sum(_WK15 * y)
    # Embedded Gauss value uses every other node.
    g = h * np.sum(_WG7 * y[1:-1:2])
    return k, abs(k - g), y.size


def gk15_panels(f, edges):
    """Batched Gauss-Kronrod over contiguous panels (one call to f).

    Returns (values, error_estimates, evaluations) per panel.
    """
    edges = np.asarray(edges, dtype=float)
    mids = 0.5 * (edges[:-1] + edges[1:])
    halfs = 0.5 * np.diff(edges)
    nodes = (mids[:, None] + halfs[:, None] * _XK15[None, :]).ravel()
    y = np.asarray(f(nodes)).reshape(mids.size, _XK15.size)
    vals = halfs * (y @ _WK15)
    gauss = halfs * (y[:, 1:-1:2] @ _WG7)
    return vals, np.abs(vals - gauss), nodes.size


@dataclass(frozen=True)
class IntegralEstimate:
    """Value, self-reported error bound and cost of one integration."""

    value: complex
    error_estimate: float
    evaluations: int
    zeros_used: int | None = None

    @property
    def real(self) -> float:
        return float(np.real(self.value))


def integrate_interval(f, a, b, tol=1e-10, max_depth=48, max_evals=200_000):
    """Adaptive Gauss-Kronrod on a finite interval (complex-valued f ok)."""
    import heapq

    val, err, ne = _gk15(f, a, b)
    heap = [(-err, 0, a, b, val, err)]
    total, toterr, evals = val, err, ne
    seq = 1
    while heap and toterr > tol * max(1.0, abs(total)) and evals < max_evals:
        negerr, _, x0, x1, v, e = heapq.heappop(heap)
        depth_hit = (x1 - x0) < (b - a) * 0.5 ** max_depth
        if depth_hit:
            # Keep the contribution, give up refining this sliver.
            continue
        m = 0.5 * (x0 + x1)
        v1, e1, n1 = _gk15(f, x0, m)
        v2, e2, n2 = _gk15(f, m, x1)
        total += v1 + v2 - v
        toterr += e1 + e2 - e
        evals += n1 + n2
        heapq.heappush(heap, (-e1, seq, x0, m, v1, e1))
        heapq.heappush(heap, (-e2, seq + 1, m, x1, v2, e2))
        seq += 2
    return IntegralEstimate(total, max(toterr, 0.0), evals)


def integrate_semi_infinite(
    f,
    tol: float = 1e-10,
    origin_power: float = 0.0,
    scale: float = 1.0,
    max_evals: int = 400_000,
):
    """Adaptive integral of f over [0, inf) via the map u = scale*x/(1-x).

    ``origin_power`` declares a known integrable u^alpha behaviour of f at
    the origin (alpha > -1); the head panel is then integrated under the
    substitution u = u0*w^(1/(1+alpha)), which removes the singularity.
    ``scale`` should roughly match where the integrand lives.
    """
    if tol <= 0:
        raise DomainError("tol must be positive")
    if origin_power <= -1:
        raise DomainError("origin_power must exceed -1 for integrability")
    evals = 0
    head = None
    u0 = 0.0
    if origin_power != 0.0:
        u0 = 1e-2 * scale
        ap1 = origin_power + 1.0

        def head_f(w):
            w = np.asarray(w)
            u = u0 * np.power(w, 1.0 / ap1)
            return f(u) * (u0 / ap1) * np.power(w, 1.0 / ap1 - 1.0)

        head = integrate_interval(head_f, 1e-300, 1.0, tol=0.5 * tol)
        evals += head.evaluations

    def mapped(x):
        x = np.asarray(x)
        u = u0 + scale * x / (1.0 - x)
        return f(u) * scale / (1.0 - x) ** 2

    body = integrate_interval(mapped, 0.0, 1.0 - 1e-14, tol=0.5 * tol,
                              max_evals=max_evals)
    evals += body.evaluations
    value = body.value + (head.value if head else 0.0)
    err = body.error_estimate + (head.error_estimate if head else 0.0)
    if err > 100 * tol * max(1.0, abs(value)):
        raise NumericError(
            f"semi-infinite integral did not reach tol={tol:g} "
            f"(err~{err:.2e})", best_estimate=value)
    return IntegralEstimate(value, err, evals)


# ---------------------------------------------------------------------------
# Hankel-type partitioned integration (EGC kernel against a smooth factor)
# ---------------------------------------------------------------------------

def _egc_kernel(u: np.ndarray, a_exp: float) -> np.ndarray:
    """sqrt(pi)/Gamma(A) * (u/2)^(A-1/2) * J_{A-1/2}(u), computed stably."""
    from scipy.special import gammaln, jv

    u = np.asarray(u, dtype=float)
    nu = a_exp - 0.5
    pref = math.exp(0.5 * math.log(math.pi) - gammaln(a_exp) - nu * math.log(2.0))
    return pref * np.power(u, nu) * jv(nu, u)


def integrate_hankel_partitioned(g, a_exp: float, tol: float = 1e-8,
                                 batch: int = 8, max_zeros: int = 4096,
                                 g_deriv0: float | None = None):
    """``int_0^inf sqrt(pi)/Gamma(A) (u/2)^(A-1/2) J_{A-1/2}(u) g(u) du``.

    The range is split at consecutive zeros of J_{A-1/2}; the first panel
    [0, u_1] is not oscillatory and is handled adaptively (with the
    u^(2A-1) origin behaviour substituted away when A < 1/2; for A below
    1/4 the substitution underflows and an analytic Taylor head peels the
    edge instead, using ``g_deriv0`` = g'(0) when the caller supplies it).
    The alternating panel series is epsilon accelerated in batches.
    """
    from .specfun import bessel_j_zeros

    if a_exp <= 0:
        raise DomainError("A must be positive")
    nu = a_exp - 0.5
    evals = [0]

    def integrand(u):
        return _egc_kernel(u, a_exp) * g(u)

    zeros = bessel_j_zeros(nu, batch)

    # Head panel [0, z1]: kernel ~ u^(2A-1) near the origin.
    z1 = zeros[0]
    if 2 * a_exp < 0.5:
        from scipy.special import gammaln
        pref = math.exp(0.5 * math.log(math.pi) - gammaln(a_exp)
                        - nu * math.log(2.0))
        p2a = 2.0 * a_exp
        ratio0 = math.exp(-nu * math.log(2.0) - gammaln(nu + 1.0))
        u0 = 1e-4
        g0 = float(np.asarray(g(np.array([1e-30]))).ravel()[0])
        gd = g_deriv0 if g_deriv0 is not None else 0.0
        head0 = pref * ratio0 * (g0 * u0 ** p2a / p2a
                                 + gd * u0 ** (p2a + 1.0) / (p2a + 1.0))
        rest = integrate_interval(integrand, u0, z1, tol=0.1 * tol)
        head = IntegralEstimate(head0 + rest.value, rest.error_estimate,
                                rest.evaluations)
    elif 2 * a_exp - 1 < 0:
        from scipy.special import gammaln, jv
        pref = math.exp(0.5 * math.log(math.pi) - gammaln(a_exp)
                        - nu * math.log(2.0))
        p2a = 2.0 * a_exp
        ratio0 = math.exp(-nu * math.log(2.0) - gammaln(nu + 1.0))

        def head_w(w):
            w = np.asarray(w)
            u = z1 * np.power(w, 1.0 / p2a)
            # J_nu(u)/u^nu is smooth through u = 0; use its limit when the
            # node underflows.
            safe = u > 1e-150
            us = np.where(safe, u, 1.0)
            ratio = np.where(safe, jv(nu, us) / np.power(us, nu), ratio0)
            return pref * ratio * g(u) * (z1 ** p2a / p2a)

        head = integrate_interval(head_w, 1e-300, 1.0, tol=0.1 * tol)
    else:
        head = integrate_interval(integrand, 1e-300, z1, tol=0.1 * tol)
    evals[0] += head.evaluations

    zero_list = [0.0] + list(zeros)

    def panel_sums(i0, i1):
        nonlocal zero_list
        need = i1 + 1
        if len(zero_list) - 1 < need:
            zs = bessel_j_zeros(nu, need + batch)
            zero_list = [0.0] + list(zs)
        edges = np.array(zero_list[i0 + 1:i1 + 2])
        vals, errs, n = gk15_panels(integrand, edges)
        evals[0] += n
        out = list(vals)
        for j in np.nonzero(errs > 1e-3 * tol * np.maximum(1.0, np.abs(vals))
                            + 1e-14 * np.abs(vals))[0]:
            est = integrate_interval(integrand, edges[j], edges[j + 1],
                                     tol=1e-2 * tol)
            out[j] = est.value
            evals[0] += est.evaluations
        return out

    try:
        tail, used, err = integrate_alternating(panel_sums, tol, batch=batch,
                                                max_panels=max_zeros)
    except NumericError as exc:
        if exc.best_estimate is None:
            raise
        raise NumericError(
            "Hankel integral acceleration stagnated",
            best_estimate=head.value + exc.best_estimate) from exc
    value = head.value + tail
    return IntegralEstimate(value, head.error_estimate + err, evals[0],
                            zeros_used=used)
