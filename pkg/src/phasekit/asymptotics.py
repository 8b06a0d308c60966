"""Large-N approximations and independently computed scaling constants.

Both studied states have asymptotic densities of the reduced form
P(phi) = N f(N phi): a squared quarter-order Bessel profile for the
equal-split state and a squared-cosine-over-quartic profile for the optimal
state.  Every scaling constant of the asymptotic table is recomputed here
from its own route (series summation, closed form, root finding or profile
quadrature with analytic oscillatory-average tails); none is a stored
literal.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from ._quad import panel_nodes
from .errors import DomainError, NumericError

# series / asymptotic-expansion crossover for J_{1/4}; float64 loses ~4
# digits to series cancellation here, while the Hankel expansion already
# reaches ~4e-11 absolute, so both branches stay comfortably inside the
# 1e-9 relative contract (an overlap-agreement test pins this down)
BESSEL_CROSSOVER = 12.0


def gamma_fn(x: float) -> float:
    """Gamma function for x > 0 (platform libm, ~1 ulp)."""
    if not x > 0.0:
        raise DomainError("gamma_fn requires x > 0")
    return math.gamma(x)


_G34 = math.gamma(0.75)
_G54 = math.gamma(1.25)


def bessel_j_quarter(x):
    """Bessel J of order 1/4 for x >= 0 (scalar or array).

    Power series below the crossover, Hankel asymptotic expansion with
    adaptive truncation above it.
    """
    scalar = np.isscalar(x)
    x = np.atleast_1d(np.asarray(x, dtype=float))
    if np.any(x < 0.0):
        raise DomainError("bessel_j_quarter requires x >= 0")
    out = np.empty_like(x)
    lo = x < BESSEL_CROSSOVER
    xs = x[lo]
    if xs.size:
        h = 0.5 * xs
        t = np.where(h > 0.0, h, 1.0) ** 0.25 / _G54
        t[h == 0.0] = 0.0
        s = t.copy()
        comp = np.zeros_like(t)
        h2 = h * h
        for k in range(1, 80):
            t = t * (-h2) / (k * (k + 0.25))
            y = t - comp
            tot = s + y
            comp = (tot - s) - y
            s = tot
            if np.all(np.abs(t) < 1e-18 * np.abs(s) + 1e-300):
                break
        out[lo] = s
    xa = x[~lo]
    if xa.size:
        mu = 0.25  # 4 nu^2 for nu = 1/4
        w = xa - 3.0 * math.pi / 8.0
        p = np.ones_like(xa)
        q = np.zeros_like(xa)
        term = np.ones_like(xa)
        for k in range(0, 40):
            term = term * (mu - (2 * k + 1) ** 2) / ((k + 1) * 8.0 * xa)
            kk = k + 1
            if kk % 2:
                q += term * (-1.0) ** ((kk - 1) // 2)
            else:
                p += term * (-1.0) ** (kk // 2)
            if np.all(np.abs(term) < 1e-18):
                break
        out[~lo] = np.sqrt(2.0 / (math.pi * xa)) * (np.cos(w) * p - np.sin(w) * q)
    return float(out[0]) if scalar else out


def _bessel_profile_g(y):
    """g(y) = J_{1/4}(y) / y^{1/4}, finite (and maximal) at y = 0."""
    y = np.atleast_1d(np.asarray(y, dtype=float))
    out = np.empty_like(y)
    tiny = y < 1e-10
    out[tiny] = 2.0**-0.25 / _G54
    ys = y[~tiny]
    if ys.size:
        out[~tiny] = bessel_j_quarter(ys) / ys**0.25
    return out


def j0_bessel_density(j, phi):
    """Bessel-approximation density of the equal-split state.

    Normalised over [-pi/2, pi/2] in the large-j limit; the value at phi=0
    is the finite limit of the 0/0 form.
    """
    scalar = np.isscalar(phi)
    phi = np.atleast_1d(np.asarray(phi, dtype=float))
    x = np.abs(float(j) * phi)
    out = (2.0 * j + 1.0) / (2.0 * math.pi) * _G34**2 / math.sqrt(2.0) * _bessel_profile_g(x) ** 2
    return float(out[0]) if scalar else out


def j0_intermediate_density(j: int, phi):
    """Pre-integral (discrete-sum) approximation for the equal-split state.

    (2/pi^2) |sum_mu e^{-2 i mu phi} / (j(j+1) - (2 mu)^2)^{1/4}|^2 with mu
    running over integers in [-j/2, j/2] for even j, and over the
    half-integers inside that range for odd j.
    """
    if int(j) != j or j < 1:
        raise DomainError("intermediate density needs integer j >= 1")
    j = int(j)
    scalar = np.isscalar(phi)
    phi = np.atleast_1d(np.asarray(phi, dtype=float))
    # integer grid for even j, half-integer grid for odd j; both are the
    # j+1 values mu = -j/2, -j/2+1, ..., j/2
    mus = -0.5 * j + np.arange(j + 1, dtype=float)
    wts = (j * (j + 1.0) - (2.0 * mus) ** 2) ** -0.25
    out = np.empty_like(phi)
    for i in range(0, len(phi), 512):
        ph = phi[i : i + 512]
        z = np.exp(-2.0j * np.outer(ph, mus))
        out[i : i + 512] = np.abs(z @ wts) ** 2
    out *= 2.0 / math.pi**2
    return float(out[0]) if scalar else out


def optimal_asymptotic_density(n: int, phi):
    """Large-N density of the optimal state: 2 pi N (1+cos x)/(x^2-pi^2)^2
    at x = N phi, with the removable points x = +-pi evaluated stably."""
    if n < 1:
        raise DomainError("photon number must be >= 1")
    scalar = np.isscalar(phi)
    x = float(n) * np.atleast_1d(np.asarray(phi, dtype=float))
    out = float(n) * _optimal_profile_f(x)
    return float(out[0]) if scalar else out


# ---------------------------------------------------------------------------
# reduced profiles f with P(phi) = N f(N phi)
# ---------------------------------------------------------------------------

def _optimal_profile_psi(x):
    """Real amplitude: psi(x) = 2 sqrt(pi) cos(x/2)/(pi^2 - x^2); f = psi^2."""
    x = np.atleast_1d(np.asarray(x, dtype=float))
    out = np.empty_like(x)
    u = np.abs(x) - math.pi
    near = np.abs(u) < 1e-4
    xn = x[~near]
    out[~near] = 2.0 * math.sqrt(math.pi) * np.cos(0.5 * xn) / (math.pi**2 - xn**2)
    if np.any(near):
        un = u[near]
        # cos(x/2) = sin(-u/2) at |x| near pi; ratio to (pi^2 - x^2) = -u(2pi+u)
        out[near] = math.sqrt(math.pi) * np.sinc(0.5 * un / math.pi) / (2.0 * math.pi + un)
    return out


def _optimal_profile_f(x):
    return _optimal_profile_psi(x) ** 2


def _optimal_profile_dpsi(x):
    x = np.atleast_1d(np.asarray(x, dtype=float))
    out = np.empty_like(x)
    u = np.abs(x) - math.pi
    near = np.abs(u) < 1e-3
    xn = x[~near]
    den = math.pi**2 - xn**2
    out[~near] = 2.0 * math.sqrt(math.pi) * (-0.5 * np.sin(0.5 * xn) * den + 2.0 * xn * np.cos(0.5 * xn)) / den**2
    if np.any(near):
        # centred difference of the stable psi; the profile is analytic here
        xs = x[near]
        h = 1e-6
        out[near] = (_optimal_profile_psi(xs + h) - _optimal_profile_psi(xs - h)) / (2.0 * h)
    return out


_C0 = _G34**2 / (2.0 * math.sqrt(2.0) * math.pi)  # j0 profile prefactor
_C1 = 2.0 * _G34**2 / math.pi**2                  # j0 profile tail amplitude


def _j0_profile_f(x):
    """f(x) = C0 g(x/2)^2; tails ~ C1 sin^2(x/2 + pi/8)/x^{3/2}."""
    x = np.abs(np.atleast_1d(np.asarray(x, dtype=float)))
    return _C0 * _bessel_profile_g(0.5 * x) ** 2


@dataclass(frozen=True)
class AsymptoticProfile:
    """A reduced density: density(N, phi), and f with P = N f(N phi) when
    the reduction applies (the intermediate form keeps an explicit j)."""

    kind: str
    density: callable
    profile_fn: callable | None


def profile(kind: str) -> AsymptoticProfile:
    k = str(kind).lower()
    if k in ("j0bessel", "j0_bessel", "bessel"):
        return AsymptoticProfile("j0_bessel", lambda n, phi: j0_bessel_density(n / 2.0, phi), _j0_profile_f)
    if k in ("j0intermediate", "j0_intermediate", "intermediate"):
        return AsymptoticProfile("j0_intermediate", lambda n, phi: j0_intermediate_density(n // 2, phi), None)
    if k in ("optimallorentzianlike", "optimal"):
        return AsymptoticProfile("optimal", optimal_asymptotic_density, _optimal_profile_f)
    raise DomainError(f"unknown profile kind {kind!r}")


# ---------------------------------------------------------------------------
# scaling constants, each by its own route
# ---------------------------------------------------------------------------

_AVG_SIN2 = 0.5
_AVG_SIN2_LOG = 0.5 * (1.0 - 2.0 * math.log(2.0))  # <sin^2 t ln sin^2 t>


def holevo_series_constant(terms: int = 40) -> float:
    """Bessel-route Holevo-variance coefficient of 1/sqrt(N):
    (2/pi^2) Gamma(3/4)^2 * sum (-1)^{n-1} pi^{2n} sqrt(2/pi)/((2n)!(4n-1))."""
    s = 0.0
    for n in range(1, terms + 1):
        s += (-1.0) ** (n - 1) * math.pi ** (2 * n) * math.sqrt(2.0 / math.pi) / (
            math.factorial(2 * n) * (4 * n - 1))
    return 2.0 / math.pi**2 * _G34**2 * s


def standard_series_constant() -> float:
    """Bessel-route standard-variance coefficient: sqrt(2/pi) Gamma(3/4)^2 / 3."""
    return math.sqrt(2.0 / math.pi) * _G34**2 / 3.0


def _j0_mass_half(x_hi: float) -> float:
    """integral_0^{x} f for the j0 profile (smooth through 0)."""
    nodes, wts = panel_nodes(0.0, x_hi, max(32, int(2.0 * x_hi)), 24)
    return float(np.sum(_j0_profile_f(nodes) * wts))


def _j0_confidence_constant() -> float:
    """N L_{2/3} solves  integral_0^{N L} f = 1/3  (bisection + Newton).

    In the spin variable this is the quarter-order Bessel integral
    (1/pi)(Gamma(3/4)^2/sqrt 2) int_0^{jL} J^2_{1/4}(y)/sqrt(y) dy = 1/3,
    with N L = 2 jL.
    """
    lo, hi = 0.5, 6.0
    for _ in range(50):
        mid = 0.5 * (lo + hi)
        if _j0_mass_half(mid) < 1.0 / 3.0:
            lo = mid
        else:
            hi = mid
    x = 0.5 * (lo + hi)
    for _ in range(4):
        x -= (_j0_mass_half(x) - 1.0 / 3.0) / float(_j0_profile_f(x)[0])
    return x


def _j0_sussman_constant(x_hi: float = 4000.0) -> float:
    nodes, wts = panel_nodes(0.0, x_hi, int(x_hi), 16)
    body = 2.0 * float(np.sum(_j0_profile_f(nodes) ** 2 * wts))
    # averaged tail of f^2 ~ C1^2 sin^4 / x^3: 2 * (3/8) C1^2 / (2 X^2)
    tail = 2.0 * (_C1**2 * 3.0 / 8.0) / (2.0 * x_hi**2)
    return 1.0 / (body + tail)


def _j0_entropic_constant(x_hi: float = 2.0e4) -> float:
    """exp of the profile entropy; the x^{-3/2} ln x tail is integrated by
    replacing the fast sin^2 factors with their period averages."""
    nodes, wts = panel_nodes(0.0, x_hi, int(2.0 * x_hi), 12)
    f = _j0_profile_f(nodes)
    g = np.zeros_like(f)
    m = f > 0.0
    g[m] = f[m] * np.log(f[m])
    body = -2.0 * float(np.sum(g * wts))
    i1 = 2.0 / math.sqrt(x_hi)                          # int x^{-3/2}
    i2 = 2.0 * (math.log(x_hi) + 2.0) / math.sqrt(x_hi)  # int ln x x^{-3/2}
    tail = _C1 * ((_AVG_SIN2_LOG + _AVG_SIN2 * math.log(_C1)) * i1 - 1.5 * _AVG_SIN2 * i2)
    s = body - 2.0 * tail
    if not math.isfinite(s):
        raise NumericError("entropic profile integral failed (j0)")
    return math.exp(s)


def _opt_halfline_edges(x_hi: float):
    """Panel edges on [0, x_hi] snapped to the profile zeros (odd pi)."""
    zeros = [(2 * m + 1) * math.pi for m in range(int(x_hi / (2.0 * math.pi)) + 1)]
    return [0.0] + [z for z in zeros if z < x_hi] + [x_hi]


def _opt_sussman_constant(x_hi: float = 300.0) -> float:
    nodes, wts = panel_nodes(0.0, x_hi, int(4.0 * x_hi), 16)
    body = 2.0 * float(np.sum(_optimal_profile_f(nodes) ** 2 * wts))
    return 1.0 / body


def _opt_entropic_constant(x_hi: float = 800.0) -> float:
    total = 0.0
    edges = _opt_halfline_edges(x_hi)
    for a, b in zip(edges[:-1], edges[1:]):
        nodes, wts = panel_nodes(a, b, max(4, int((b - a) / 0.5)), 32)
        f = _optimal_profile_f(nodes)
        g = np.zeros_like(f)
        m = f > 0.0
        g[m] = f[m] * np.log(f[m])
        total += float(np.sum(g * wts))
    # tail: f ~ 4 pi cos^2(x/2)/x^4
    c = 4.0 * math.pi
    i3 = 1.0 / (3.0 * x_hi**3)
    i4 = (math.log(x_hi) / 3.0 + 1.0 / 9.0) / x_hi**3
    tail = c * ((_AVG_SIN2_LOG + _AVG_SIN2 * math.log(c)) * i3 - 4.0 * _AVG_SIN2 * i4)
    return math.exp(-2.0 * total - 2.0 * tail)


def _opt_confidence_constant() -> float:
    def mass(ell):
        nodes, wts = panel_nodes(0.0, ell, max(16, int(4.0 * ell)), 24)
        return 2.0 * float(np.sum(_optimal_profile_f(nodes) * wts))

    lo, hi = 1.0, 8.0
    for _ in range(50):
        mid = 0.5 * (lo + hi)
        if mass(mid) < 2.0 / 3.0:
            lo = mid
        else:
            hi = mid
    x = 0.5 * (lo + hi)
    for _ in range(4):
        x -= (mass(x) - 2.0 / 3.0) / (2.0 * float(_optimal_profile_f(x)[0]))
    return x


def _opt_fisher_constant(x_hi: float = 600.0) -> float:
    """(N L_F)^{-2} = 4 int psi'^2 for the real optimal amplitude."""
    nodes, wts = panel_nodes(0.0, x_hi, int(4.0 * x_hi), 16)
    fisher = 8.0 * float(np.sum(_optimal_profile_dpsi(nodes) ** 2 * wts))
    return fisher**-0.5


def scaling_constants(kind: str) -> dict[str, float]:
    """Asymptotic constants for one state, each computed from scratch.

    Keys for the optimal state are the limits of N times the measure.  The
    equal-split variance rows instead scale as N^{3/4}; their entries are the
    coefficients of 1/sqrt(N) in the variances (``holevo_variance_scale``,
    ``standard_variance_scale``) and the matching N^{3/4} amplitude forms.
    """
    k = str(kind).lower()
    if k in ("optimal", "optimallorentzianlike"):
        return {
            "N_delta_phi": math.pi,          # analytic: lim N tan(pi/(N+2))
            "N_delta_phi_H": math.pi,
            "N_L_rp": math.pi**3 / 4.0,      # analytic peak of the profile
            "N_L_S": _opt_sussman_constant(),
            "N_L_H": _opt_entropic_constant(),
            "N_L_c23": _opt_confidence_constant(),
            "N_L_F": _opt_fisher_constant(),
        }
    if k in ("j0", "j0bessel"):
        hol = holevo_series_constant()
        std = standard_series_constant()
        return {
            "holevo_variance_scale": hol,
            "standard_variance_scale": std,
            "N34_delta_phi": math.sqrt(std),
            "N34_delta_phi_H": math.sqrt(hol),
            "N_L_rp": 4.0 * math.pi * (_G54 / _G34) ** 2,
            "N_L_S": _j0_sussman_constant(),
            "N_L_H": _j0_entropic_constant(),
            "N_L_c23": _j0_confidence_constant(),
            "N_L_F": math.sqrt(2.0),         # Fisher information 2 j^2
        }
    raise DomainError(f"unknown state kind {kind!r} for scaling constants")
