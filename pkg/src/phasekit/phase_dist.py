"""Canonical phase distributions in Fourier form.

Projecting a fixed-N state onto the normalised phase states gives a density
that is a trigonometric polynomial of degree N,

    P(phi) = (1/2pi) sum_{k=-N..N} P_k e^{ik phi},   P_k = sum_mu c*_mu c_{mu+k}

over the arm-basis amplitudes c.  All moments and most uncertainty measures
reduce to coefficient algebra; the density itself is synthesised only where
quadrature or sampling genuinely needs it.  Distributions whose odd
harmonics all vanish (the equal-split state) repeat modulo pi and are
tagged with period Pi; their density is then taken renormalised on
[-pi/2, pi/2) with a 1/pi prefactor.
"""

from __future__ import annotations

import cmath
import enum
import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError
from .states import AngularState, Basis, to_basis

ODD_HARMONIC_TOL = 1e-12
MOMENT_FLOOR = 1e-30  # below this, a circular moment counts as zero

# grid oversampling for the inverse-CDF sampler: 64 nodes per (N+2) gives
# >= 20 nodes per oscillation of the fastest harmonic
SAMPLER_NODES_PER_UNIT = 64


class Period(enum.Enum):
    TWO_PI = "2pi"
    PI = "pi"


@dataclass(frozen=True)
class PhaseDistribution:
    """Fourier representation of a canonical phase density."""

    n_photons: int
    period: Period
    p: np.ndarray  # P_k for k = -N..N, index offset N

    def __post_init__(self):
        arr = np.asarray(self.p, dtype=complex)
        if arr.ndim != 1 or len(arr) != 2 * self.n_photons + 1:
            raise DomainError(f"expected {2 * self.n_photons + 1} Fourier coefficients")
        arr.setflags(write=False)
        object.__setattr__(self, "p", arr)

    def coefficient(self, k: int) -> complex:
        """P_k; exactly zero outside |k| <= N."""
        if abs(k) > self.n_photons:
            return 0.0 + 0.0j
        return complex(self.p[k + self.n_photons])

    @property
    def domain(self) -> tuple[float, float]:
        """Principal range of the (renormalised) density."""
        if self.period is Period.TWO_PI:
            return (-math.pi, math.pi)
        return (-math.pi / 2.0, math.pi / 2.0)

    def norm_factor(self) -> float:
        return 1.0 / (2.0 * math.pi) if self.period is Period.TWO_PI else 1.0 / math.pi

    def positive_harmonics(self) -> tuple[np.ndarray, np.ndarray]:
        """(k, P_k) for k >= 1 with numerically nonzero P_k."""
        n = self.n_photons
        ks = np.arange(1, n + 1)
        pk = self.p[n + 1 :]
        nz = np.abs(pk) > 1e-18
        return ks[nz], pk[nz]


def distribution(state: AngularState) -> PhaseDistribution:
    """Canonical phase distribution of a state.

    The coefficients are the autocorrelation of the arm-basis amplitudes
    (computed by FFT).  The k=0 coefficient is the squared norm and is pinned
    to exactly 1; the period is Pi when every odd harmonic vanishes.
    """
    ys = to_basis(state, Basis.Y)
    c = ys.coeffs
    n = state.twice_j
    nfft = 1
    while nfft < 2 * len(c):
        nfft *= 2
    f = np.fft.fft(c, nfft)
    ac = np.fft.ifft(np.abs(f) ** 2, nfft)[: n + 1]  # lag k = 0..N of sum c*_mu c_{mu+k}
    if abs(ac[0] - 1.0) > 1e-12:
        raise DomainError(f"coefficient P_0 = {ac[0]} deviates from 1")
    full = np.empty(2 * n + 1, dtype=complex)
    full[n] = 1.0
    full[n + 1 :] = ac[1:]
    full[:n] = np.conj(ac[1:][::-1])
    period = Period.TWO_PI
    odd_gone = n >= 1 and float(np.max(np.abs(full[n + 1 :: 2]))) < ODD_HARMONIC_TOL
    some_even = n >= 2 and float(np.max(np.abs(full[n + 2 :: 2]))) > ODD_HARMONIC_TOL
    if odd_gone and some_even:
        # parity-exact states (e.g. equal split) have exactly zero odd lags;
        # a flat density (no harmonics at all) stays on the full circle
        full[n + 1 :: 2] = 0.0
        full[n - 1 :: -2] = 0.0
        period = Period.PI
    return PhaseDistribution(n, period, full)


def _wrap(dist: PhaseDistribution, phi):
    lo, hi = dist.domain
    span = hi - lo
    return (np.asarray(phi, dtype=float) - lo) % span + lo


def synthesize(dist: PhaseDistribution, phi, derivative: bool = False, chunk: int = 2048):
    """Density (and optionally its derivative) at arbitrary angles.

    Evaluates the real cosine/sine form of the Fourier sum in chunks to keep
    the node-by-harmonic work matrices small.
    """
    phi = np.atleast_1d(np.asarray(phi, dtype=float))
    ks, pk = dist.positive_harmonics()
    pr, pim = pk.real, pk.imag
    dens = np.empty_like(phi)
    deriv = np.empty_like(phi) if derivative else None
    nf = dist.norm_factor()
    for i in range(0, len(phi), chunk):
        ph = phi[i : i + chunk]
        if len(ks) == 0:
            dens[i : i + chunk] = 1.0
            if derivative:
                deriv[i : i + chunk] = 0.0
            continue
        arg = np.outer(ph, ks)
        cs = np.cos(arg)
        sn = np.sin(arg)
        dens[i : i + chunk] = 1.0 + 2.0 * (cs @ pr - sn @ pim)
        if derivative:
            deriv[i : i + chunk] = 2.0 * (-(sn * ks) @ pr - (cs * ks) @ pim)
    dens *= nf
    if derivative:
        deriv *= nf
        return dens, deriv
    return dens


def density(dist: PhaseDistribution, phi):
    """Probability density at phi (radians); angles outside the principal
    range are wrapped, not rejected."""
    scalar = np.isscalar(phi)
    out = synthesize(dist, _wrap(dist, phi))
    return float(out[0]) if scalar else out


def synthesize_grid(dist: PhaseDistribution, min_points: int, derivative: bool = False):
    """Density (and optionally derivative) on a uniform grid, via FFT.

    Returns (angles, values[, derivatives]) with at least ``min_points``
    equally spaced angles covering the principal range.  Cost O(G log G)
    regardless of N, so this is the route of choice for large photon
    numbers; uniform spacing also makes the periodic trapezoid rule (a plain
    mean) spectrally accurate for integrals of smooth functionals.
    """
    want = max(min_points, 2 * dist.n_photons + 2)
    if dist.period is Period.PI:
        want *= 2  # half of the 2pi sampling collapses onto one pi period
    g = 1
    while g < want:
        g *= 2
    n = dist.n_photons
    ks = np.arange(0, n + 1)
    coef = np.zeros(g, dtype=complex)
    coef[ks] = dist.p[n:]
    vals = np.fft.fft(coef)  # at angles 2 pi m / g: sum_k P_k e^{-2 pi i k m/g}
    nf = dist.norm_factor()
    dens = (2.0 * vals.real - dist.p[n].real) * nf
    outs = [dens]
    if derivative:
        dcoef = np.zeros(g, dtype=complex)
        dcoef[ks] = 1j * ks * dist.p[n:]
        dvals = np.fft.fft(dcoef)
        outs.append(2.0 * dvals.real * nf)
    theta = 2.0 * math.pi * np.arange(g) / g  # e^{-ik theta} sampling = density at -theta
    phi = _wrap(dist, -theta)
    order = np.argsort(phi)
    phi = phi[order]
    outs = [o[order] for o in outs]
    if dist.period is Period.PI:
        keep = np.ones(len(phi), dtype=bool)
        keep[1:] = np.diff(phi) > 1e-15
        phi = phi[keep]
        outs = [o[keep] for o in outs]
    return (phi, *outs)


def density_grid(dist: PhaseDistribution, min_points: int) -> tuple[np.ndarray, np.ndarray]:
    """Density on a uniform grid over the principal range, via FFT."""
    phi, dens = synthesize_grid(dist, min_points)
    return phi, dens


def circular_moment(dist: PhaseDistribution, m: int) -> complex:
    """<e^{im phi}> as the Fourier coefficient P_{-m}.

    Harmonics above the photon number do not exist, so m > N returns exactly
    zero.  For period-Pi distributions these are the full-circle
    coefficients, which vanish for odd m.
    """
    if m < 1:
        raise DomainError("moment order must be a positive integer")
    return dist.coefficient(-m)


def holevo_variance(dist: PhaseDistribution) -> float:
    """|<e^{i phi}>|^-2 - 1, the cyclic-safe variance; inf for flat phase."""
    if dist.period is Period.PI:
        raise DomainError(
            "distribution repeats modulo pi; use holevo_variance_mod_pi")
    m = abs(circular_moment(dist, 1))
    if m < MOMENT_FLOOR:
        return math.inf
    return 1.0 / (m * m) - 1.0


def holevo_variance_mod_pi(dist: PhaseDistribution) -> float:
    """(|<e^{2i phi}>|^-2 - 1)/4, the variance natural modulo pi."""
    m = abs(circular_moment(dist, 2))
    if m < MOMENT_FLOOR:
        return math.inf
    return (1.0 / (m * m) - 1.0) / 4.0


def optimal_density_closed(n: int, phi):
    """Closed-form canonical density of the optimal state.

    P(phi) = (1/2pi) sin^2(t0) (1 + cos((N+2)phi)) / ((N+2)(cos phi - cos t0)^2)
    with t0 = pi/(N+2).  The apparent 0/0 at cos phi = cos t0 is removable;
    half-angle factorisation evaluates it stably:

        P = A [ cos(M phi/2) / (sin((phi-t0)/2) sin((phi+t0)/2)) ]^2,
        A = sin^2(t0) / (4 pi M),  M = N+2,

    where near phi = +-t0 the vanishing sine is paired with
    cos(M phi/2) = -+ sin(M(phi -+ t0)/2), a stable sinc-like ratio.
    """
    if n < 1:
        raise DomainError("photon number must be >= 1")
    scalar = np.isscalar(phi)
    phi = np.atleast_1d(np.asarray(phi, dtype=float))
    phi = (phi + math.pi) % (2.0 * math.pi) - math.pi
    m = n + 2
    t0 = math.pi / m
    amp = math.sin(t0) ** 2 / (4.0 * math.pi * m)
    out = np.empty_like(phi)
    near_hi = np.abs(phi - t0) < 1e-4
    near_lo = np.abs(phi + t0) < 1e-4
    rest = ~(near_hi | near_lo)
    ph = phi[rest]
    q = np.cos(0.5 * m * ph) / (np.sin(0.5 * (ph - t0)) * np.sin(0.5 * (ph + t0)))
    out[rest] = amp * q * q
    for mask, sgn in ((near_hi, 1.0), (near_lo, -1.0)):
        if not np.any(mask):
            continue
        u = phi[mask] - sgn * t0
        # cos(M phi/2) = -+ sin(M u/2) exactly (M t0 = pi), so the ratio to
        # sin(u/2) is sinc-like: sin(a u)/(u) with np.sinc(x)=sin(pi x)/(pi x)
        num = m * np.sinc(0.5 * m * u / math.pi)  # sin(M u/2)/(u/2)
        den = np.sinc(0.5 * u / math.pi)          # sin(u/2)/(u/2)
        q = num / (den * np.sin(0.5 * (u + 2.0 * sgn * t0)))
        out[mask] = amp * q * q
    return float(out[0]) if scalar else out


def sample(dist: PhaseDistribution, count: int, seed: int) -> np.ndarray:
    """Draw i.i.d. angles by inverse CDF on a dense uniform grid.

    The CDF at the grid nodes is the exact antiderivative of the Fourier
    density (no numerical integration); inversion interpolates linearly
    between nodes, which at 64(N+2) nodes is far below any statistical
    resolution.  Deterministic for a given seed.
    """
    if count < 1:
        raise DomainError("count must be >= 1")
    lo, hi = dist.domain
    g = SAMPLER_NODES_PER_UNIT * (dist.n_photons + 2)
    grid = np.linspace(lo, hi, g + 1)
    ks, pk = dist.positive_harmonics()
    nf = dist.norm_factor()
    cdf = nf * (grid - lo)
    if len(ks):
        # integral of 2 Re(P_k e^{ik phi}) is (2/k) Re(-i P_k (e^{ik phi} - e^{ik lo}))
        ex = np.exp(1j * np.outer(grid, ks))
        ex0 = np.exp(1j * ks * lo)
        cdf = cdf + nf * 2.0 * ((ex - ex0) @ (pk / (1j * ks))).real
    cdf = np.maximum.accumulate(cdf)
    cdf[0] = 0.0
    cdf /= cdf[-1]
    rng = np.random.default_rng(seed)
    u = rng.random(count)
    return np.interp(u, cdf, grid)
