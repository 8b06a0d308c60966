"""Construction of the studied two-mode input states of fixed photon number.

Four states are provided: the variance-optimal state (native to the arm
basis), the equal-split state |j0>, the superposition (|j0>+|j1>)/sqrt(2) and
the one-port state |jj> (all native to the input basis).  States carry their
basis tag; conversion between bases goes through the quarter-turn overlap
matrix.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field

import numpy as np

from .errors import DomainError
from .su2 import SpinIndex, overlap_phases, wigner_column

NORM_TOL = 1e-12


class Basis(enum.Enum):
    Z = "z"  # input-port photon split, eigenbasis of the port-number difference
    Y = "y"  # intra-arm photon split


class StateKind(enum.Enum):
    OPTIMAL = "optimal"
    J0 = "j0"
    J0J1 = "j0j1"
    JJ = "jj"


def _as_basis(b) -> Basis:
    if isinstance(b, Basis):
        return b
    try:
        return Basis(str(b).lower())
    except ValueError:
        raise DomainError(f"unknown basis {b!r}") from None


def _as_kind(k) -> StateKind:
    if isinstance(k, StateKind):
        return k
    try:
        return StateKind(str(k).lower())
    except ValueError:
        raise DomainError(f"unknown state kind {k!r}") from None


@dataclass(frozen=True)
class AngularState:
    """A pure two-mode state of fixed photon number N = twice_j.

    ``coeffs[i]`` is the amplitude on the basis state with mu = -j + i in the
    tagged basis.  ``kind`` is an optional descriptive label carried along
    for reporting; it does not affect any computation.
    """

    twice_j: int
    basis: Basis
    coeffs: np.ndarray
    kind: str | None = field(default=None, compare=False)

    def __post_init__(self):
        c = np.asarray(self.coeffs, dtype=complex)
        if c.ndim != 1 or len(c) != self.twice_j + 1:
            raise DomainError(f"expected {self.twice_j + 1} coefficients, got {c.shape}")
        nrm = float(np.sum(np.abs(c) ** 2))
        if abs(nrm - 1.0) > NORM_TOL:
            raise DomainError(f"state norm^2 = {nrm} deviates from 1 by more than {NORM_TOL}")
        c.setflags(write=False)
        object.__setattr__(self, "coeffs", c)
        object.__setattr__(self, "basis", _as_basis(self.basis))

    @property
    def n_photons(self) -> int:
        return self.twice_j

    def mu_values(self) -> np.ndarray:
        """The mu grid -j..j as floats."""
        return np.arange(-self.twice_j, self.twice_j + 1, 2) / 2.0


def _normalized(c: np.ndarray) -> np.ndarray:
    return c / math.sqrt(float(np.sum(np.abs(c) ** 2)))


def optimal_y_coefficients(n: int) -> np.ndarray:
    """Arm-basis amplitudes of the minimum-variance state, all real positive."""
    mus = np.arange(-n, n + 1, 2) / 2.0
    j = n / 2.0
    return np.sin((mus + j + 1.0) * math.pi / (2.0 * j + 2.0)) / math.sqrt(j + 1.0)


def make_state(n: int, kind, basis) -> AngularState:
    """Construct one of the four studied states with N = n photons.

    OPTIMAL is built in the Y basis, the others in Z; requesting the other
    basis converts through the overlap matrix.  J0 needs even N; J0J1 needs
    even N >= 2.
    """
    kind = _as_kind(kind)
    basis = _as_basis(basis)
    if n < 1:
        raise DomainError("photon number must be >= 1; N=0 carries no phase information")
    if kind is StateKind.OPTIMAL:
        c = optimal_y_coefficients(n).astype(complex)
        native = Basis.Y
    else:
        c = np.zeros(n + 1, dtype=complex)
        if kind is StateKind.J0:
            if n % 2:
                raise DomainError("J0 requires even photon number (mu=0 must exist)")
            c[n // 2] = 1.0
        elif kind is StateKind.J0J1:
            if n % 2 or n < 2:
                raise DomainError("J0J1 requires even photon number >= 2")
            c[n // 2] = 1.0 / math.sqrt(2.0)
            c[n // 2 + 1] = 1.0 / math.sqrt(2.0)
        else:  # JJ
            c[n] = 1.0
        native = Basis.Z
    state = AngularState(n, native, _normalized(c), kind=kind.value)
    return state if basis is native else to_basis(state, basis)


def to_basis(state: AngularState, target) -> AngularState:
    """Unitary change of basis between Z and Y.

    Only columns multiplying nonzero source amplitudes are generated, so
    converting sparse states (J0, JJ) stays cheap at large N.  The result is
    renormalised; the drift removed this way is within the recurrence
    column accuracy and is checked by the round-trip tests.
    """
    target = _as_basis(target)
    if target is state.basis:
        return state
    tj = state.twice_j
    out = np.zeros(tj + 1, dtype=complex)
    src = state.coeffs
    tms = np.arange(-tj, tj + 1, 2)
    if state.basis is Basis.Z:
        # c^y_mu = sum_nu c^z_nu e^{i(pi/2)(nu-mu)} I_{mu nu}
        for inu, tnu in enumerate(tms):
            if src[inu] == 0:
                continue
            col = wigner_column(SpinIndex(tj), SpinIndex(tnu)).values
            out += src[inu] * overlap_phases(tj, tnu) * col
    else:
        # c^z_nu = sum_mu c^y_mu e^{-i(pi/2)(nu-mu)} I_{mu nu}
        for inu, tnu in enumerate(tms):
            col = wigner_column(SpinIndex(tj), SpinIndex(tnu)).values
            out[inu] = np.sum(src * np.conj(overlap_phases(tj, tnu)) * col)
    return AngularState(tj, target, _normalized(out), kind=state.kind)


def _central_z_coefficients(n: int, half_window: int) -> np.ndarray:
    """Z-basis amplitudes of the optimal state for |nu| <= half_window only."""
    cy = optimal_y_coefficients(n)
    tj = n
    out = np.zeros(2 * half_window + 1, dtype=complex)
    for i, tnu in enumerate(range(-2 * half_window, 2 * half_window + 1, 2)):
        col = wigner_column(SpinIndex(tj), SpinIndex(tnu)).values
        out[i] = np.sum(cy * np.conj(overlap_phases(tj, tnu)) * col)
    return out


def truncate_optimal(n: int, window: int) -> AngularState:
    """Optimal state with only the ``window`` central Z amplitudes kept.

    The window is symmetric about mu=0 (hence odd), and the surviving
    amplitudes are renormalised.  Requires even N so that mu=0 exists.
    """
    if n < 1:
        raise DomainError("photon number must be >= 1")
    if n % 2:
        raise DomainError("truncation window is centred on mu=0, which needs even photon number")
    if window % 2 == 0:
        raise DomainError("window must be odd (symmetric about mu=0)")
    if not 1 <= window <= n + 1:
        raise DomainError(f"window must lie in 1..{n + 1}")
    half = (window - 1) // 2
    central = _central_z_coefficients(n, half)
    c = np.zeros(n + 1, dtype=complex)
    c[n // 2 - half : n // 2 + half + 1] = central
    return AngularState(n, Basis.Z, _normalized(c), kind="optimal-truncated")


def _holevo_variance_y(cy: np.ndarray) -> float:
    """Canonical Holevo variance from arm-basis amplitudes.

    Same quantity as phase_dist.holevo_variance(distribution(state)); the
    first circular moment is the lag-1 amplitude autocorrelation.
    """
    m1 = abs(complex(np.sum(np.conj(cy[:-1]) * cy[1:])))
    if m1 < 1e-30:
        return math.inf
    return 1.0 / m1**2 - 1.0


def min_eigenstates(n: int, factor: float) -> int:
    """Smallest odd window whose truncated state stays within ``factor``
    times the exact optimal canonical Holevo variance."""
    if factor <= 1.0:
        raise DomainError("factor must exceed 1")
    if n % 2:
        raise DomainError("requires even photon number (see truncate_optimal)")
    v_opt = math.tan(math.pi / (n + 2)) ** 2
    cy = optimal_y_coefficients(n)
    tj = n
    tms = np.arange(-tj, tj + 1, 2)
    cols = {}
    phases = {}

    def col_for(tnu):
        if tnu not in cols:
            cols[tnu] = wigner_column(SpinIndex(tj), SpinIndex(tnu)).values
            phases[tnu] = overlap_phases(tj, tnu)
        return cols[tnu], phases[tnu]

    for window in range(1, n + 2, 2):
        half = (window - 1) // 2
        cz = np.zeros(2 * half + 1, dtype=complex)
        for i, tnu in enumerate(range(-2 * half, 2 * half + 1, 2)):
            col, ph = col_for(tnu)
            cz[i] = np.sum(cy * np.conj(ph) * col)
        cz = _normalized(cz)
        # back to the arm basis to read off the variance
        cyt = np.zeros(tj + 1, dtype=complex)
        for i, tnu in enumerate(range(-2 * half, 2 * half + 1, 2)):
            col, ph = col_for(tnu)
            cyt += cz[i] * ph * col
        if _holevo_variance_y(cyt) <= factor * v_opt:
            return window
    return n + 1
