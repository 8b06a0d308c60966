"""The seven phase-uncertainty measures.

Standard variance, the confidence interval and the Suessman measure have
closed forms in the Fourier coefficients; the entropic and Fisher lengths
are quadratures over the synthesised density; the reciprocal peak is a grid
scan refined by golden section.  Quadrature panels are width pi/(4(N+2)),
resolving the fastest harmonic, with a higher-order recomputation as a
convergence check.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from ._quad import panel_nodes
from .errors import DomainError, NumericError
from .phase_dist import (
    MOMENT_FLOOR,
    Period,
    PhaseDistribution,
    density_grid,
    distribution,
    holevo_variance,
    holevo_variance_mod_pi,
    synthesize,
    synthesize_grid,
)

DENSITY_FLOOR = 1e-14  # Fisher integrand points below this density are dropped

# above this photon number the quadrature measures leave Gauss-Legendre
# panels for the periodic uniform rule on an FFT grid: same verified
# accuracy (the integrands are periodic), but O(G log G) instead of O(G N)
GRID_RULE_SWITCH = 1024


def mean_phase(dist: PhaseDistribution) -> float:
    """arg <e^{i phi}>, or half of arg <e^{2i phi}> for mod-pi distributions.

    Zero (by convention) when the relevant moment vanishes.
    """
    if dist.period is Period.TWO_PI:
        m = dist.coefficient(-1)
        return cmath.phase(m) if abs(m) > MOMENT_FLOOR else 0.0
    m = dist.coefficient(-2)
    return 0.5 * cmath.phase(m) if abs(m) > MOMENT_FLOOR else 0.0


def _centered_harmonics(dist: PhaseDistribution):
    """(k, Re(P_k e^{ik phibar})) over the period's harmonics, centred so the
    mean phase drops out of the closed forms."""
    phib = mean_phase(dist)
    ks, pk = dist.positive_harmonics()
    if dist.period is Period.PI:
        keep = ks % 2 == 0
        ks, pk = ks[keep], pk[keep]
    re = (pk * np.exp(1j * ks * phib)).real
    return ks, re


def standard_variance(dist: PhaseDistribution) -> float:
    """Variance about the mean phase, by the Fourier closed form."""
    ks, re = _centered_harmonics(dist)
    if dist.period is Period.TWO_PI:
        base = math.pi**2 / 3.0
        if len(ks):
            base += float(np.sum(4.0 * (-1.0) ** ks * re / ks**2))
        return base
    base = math.pi**2 / 12.0
    if len(ks):
        base += float(np.sum((2.0 / ks) ** 2 * (-1.0) ** (ks // 2) * re))
    return base


def _quad_panels(dist: PhaseDistribution, order: int):
    lo, hi = dist.domain
    # one panel per quarter oscillation of the fastest harmonic, with a floor
    # so that small-N densities still resolve the kinks at their zeros
    n_panels = int(math.ceil((hi - lo) / (math.pi / (4.0 * (dist.n_photons + 2)))))
    return panel_nodes(lo, hi, max(n_panels, 256), order)


def _plogp(p):
    g = np.zeros_like(p)
    m = p > 0.0
    g[m] = p[m] * np.log(p[m])
    return g


def entropic_length(dist: PhaseDistribution, order: int = 8) -> float:
    """exp(-integral P log P); 0 log 0 counts as 0.

    Raises NumericError (with the best estimate attached) if the refinement
    pass moves the result by more than the convergence tolerance.
    """
    lo, hi = dist.domain
    if dist.n_photons > GRID_RULE_SWITCH:
        def run(oversample):
            phi, p = synthesize_grid(dist, oversample * (dist.n_photons + 2))
            return -(hi - lo) * float(np.mean(_plogp(p)))

        s1, s2 = run(32), run(64)
    else:
        def run(o):
            nodes, wts = _quad_panels(dist, o)
            return -float(np.sum(_plogp(synthesize(dist, nodes)) * wts))

        s1, s2 = run(order), run(order + 4)
    # the integrand has x^2 log x kinks at density zeros, so refinement
    # agrees to ~1e-7 rather than machine precision; anything inside 1e-6
    # of the log is far below every quoted tolerance downstream
    if abs(s2 - s1) > 1e-6 * max(1.0, abs(s2)):
        raise NumericError(
            f"entropic quadrature not converged: {s1} vs {s2}", estimate=math.exp(s2))
    return math.exp(s2)


def _fisher_integrand(p, dp):
    m = p > DENSITY_FLOOR
    out = np.zeros_like(p)
    out[m] = dp[m] ** 2 / p[m]
    return out


def fisher_length(dist: PhaseDistribution, order: int = 10) -> float:
    """Inverse root of the Fisher information integral [P']^2 / P.

    The density of an oscillatory state touches zero; there the integrand has
    a finite limit but loses floating-point accuracy, so points with
    P < DENSITY_FLOOR are excluded.  The excluded mass is a vanishing
    fraction of a panel per node, far below the quoted tolerances.
    """
    lo, hi = dist.domain
    if dist.n_photons > GRID_RULE_SWITCH:
        phi, p, dp = synthesize_grid(dist, 64 * (dist.n_photons + 2), derivative=True)
        fisher = (hi - lo) * float(np.mean(_fisher_integrand(p, dp)))
    else:
        nodes, wts = _quad_panels(dist, order)
        p, dp = synthesize(dist, nodes, derivative=True)
        fisher = float(np.sum(_fisher_integrand(p, dp) * wts))
    if fisher < 1e-30:
        return math.inf
    return fisher**-0.5


def fisher_length_closed_j0(n: int) -> float:
    """Fisher length of the equal-split state from the amplitude sum.

    The density is the square of a real amplitude, so the information is
    4 sum_mu mu^2 I^j_{mu 0}^2 with no zero-density trouble.
    """
    if n % 2:
        raise DomainError("equal-split state needs even photon number")
    from .su2 import SpinIndex, wigner_column

    col = wigner_column(SpinIndex(n), SpinIndex(0)).values
    mus = np.arange(-n, n + 1, 2) / 2.0
    fisher = 4.0 * float(np.sum(mus**2 * col**2))
    return fisher**-0.5


def confidence_interval(dist: PhaseDistribution, confidence: float) -> float:
    """Smallest half-width L with mass ``confidence`` inside [mean-L, mean+L].

    The enclosed mass is exact in the coefficients; L is found by bisection
    to 1e-10.
    """
    if not 0.0 < confidence < 1.0:
        raise DomainError("confidence must lie strictly between 0 and 1")
    ks, re = _centered_harmonics(dist)
    if dist.period is Period.TWO_PI:
        hi = math.pi
        def mass(ell):
            s = dist.coefficient(0).real * ell
            if len(ks):
                s += float(np.sum(re * 2.0 * np.sin(ks * ell) / ks))
            return s / math.pi
    else:
        hi = math.pi / 2.0
        def mass(ell):
            s = 2.0 * dist.coefficient(0).real * ell
            if len(ks):
                s += float(np.sum(re * 4.0 * np.sin(ks * ell) / ks))
            return s / math.pi
    lo = 0.0
    while hi - lo > 1e-10:
        mid = 0.5 * (lo + hi)
        if mass(mid) < confidence:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def reciprocal_peak(dist: PhaseDistribution) -> float:
    """1 / max P, the reciprocal-of-peak length.

    A uniform grid scan at several points per oscillation locates the global
    maximum cell; golden-section refines inside it.  For the states studied
    the peak sits at the mean phase, but the scan does not assume that.
    """
    phi, vals = density_grid(dist, 8 * (dist.n_photons + 2))
    i = int(np.argmax(vals))
    step = phi[1] - phi[0] if len(phi) > 1 else 1.0
    lo = phi[i] - 2.0 * step
    hi = phi[i] + 2.0 * step
    inv = 0.5 * (math.sqrt(5.0) - 1.0)
    c = hi - inv * (hi - lo)
    d = lo + inv * (hi - lo)
    fc = float(synthesize(dist, c)[0])
    fd = float(synthesize(dist, d)[0])
    for _ in range(70):
        if fc > fd:
            hi, d, fd = d, c, fc
            c = hi - inv * (hi - lo)
            fc = float(synthesize(dist, c)[0])
        else:
            lo, c, fc = c, d, fd
            d = lo + inv * (hi - lo)
            fd = float(synthesize(dist, d)[0])
    return 1.0 / max(fc, fd)


def sussman_length(dist: PhaseDistribution) -> float:
    """Effective support width: period / sum |P_k|^2."""
    s = float(np.sum(np.abs(dist.p) ** 2))
    return (2.0 * math.pi if dist.period is Period.TWO_PI else math.pi) / s


def sin_squared_expectation(dist: PhaseDistribution) -> float:
    """<sin^2 phi> = (1 - Re <e^{2i phi}>)/2, from the second harmonic."""
    return 0.5 * (1.0 - dist.coefficient(-2).real)


@dataclass(frozen=True)
class MeasureReport:
    """All measures of one state, as produced by ``report``."""

    n_photons: int
    kind: str | None
    period: Period
    mean_phase: float
    delta_phi: float      # sqrt of the standard variance
    delta_phi_h: float    # sqrt of the (mod-pi, if applicable) Holevo variance
    l_rp: float
    l_s: float
    l_h: float
    l_c: float            # 2/3 confidence interval half-width
    l_f: float


def report(state) -> MeasureReport:
    """Evaluate every measure at the state's natural period."""
    dist = distribution(state)
    if dist.period is Period.TWO_PI:
        vh = holevo_variance(dist)
    else:
        vh = holevo_variance_mod_pi(dist)
    return MeasureReport(
        n_photons=state.twice_j,
        kind=state.kind,
        period=dist.period,
        mean_phase=mean_phase(dist),
        delta_phi=math.sqrt(standard_variance(dist)),
        delta_phi_h=math.sqrt(vh) if math.isfinite(vh) else math.inf,
        l_rp=reciprocal_peak(dist),
        l_s=sussman_length(dist),
        l_h=entropic_length(dist),
        l_c=confidence_interval(dist, 2.0 / 3.0),
        l_f=fisher_length(dist),
    )
