"""Observable-level models: visibility-dependent phase, slope statistics,
the trajectory geometry factor, decoherence rates, visibility decay, the
entanglement-selective signal, and concurrence.

Unit conventions: the phase formula mixes unit systems in its source
material, so both bookkeepings are implemented.  "paper-si" uses the mass
frequency m/hbar in SI (reproducing the quoted numbers), "compton" uses
m c^2 / hbar (dimensionally clean).  Every result that depends on the
choice records it in the CLI manifest.
"""

import warnings
from dataclasses import dataclass
from functools import lru_cache
from typing import NamedTuple

import numpy as np

from . import _accel
from .constants import C_LIGHT, HBAR
from .kernels import decoherence_form_factor
from .states import StateError

UNIT_CONVENTIONS = ("paper-si", "compton")

GEOMETRY_TIME_NODES = 513  # per axis; fixed so calibration and use match


class SignalError(ValueError):
    pass


def mass_frequency(mass, convention, hbar=HBAR, c=C_LIGHT):
    """omega_m: m/hbar (paper-si) or m c^2/hbar (compton)."""
    if convention == "paper-si":
        return mass / hbar
    if convention == "compton":
        return mass * c * c / hbar
    raise SignalError(f"unknown unit convention {convention!r}; choose from {UNIT_CONVENTIONS}")


@dataclass(frozen=True)
class InterferometerSpec:
    mass: float
    interrogation_time: float
    visibility: float
    geometry_factor: float
    coupling: float
    convention: str = "paper-si"

    def __post_init__(self):
        if self.mass <= 0 or self.interrogation_time <= 0 or self.coupling < 0:
            raise SignalError("mass, interrogation_time must be positive; coupling >= 0")
        if not 0.0 <= self.visibility <= 1.0:
            raise SignalError(f"visibility must lie in [0, 1], got {self.visibility}")
        if self.convention not in UNIT_CONVENTIONS:
            raise SignalError(f"unknown unit convention {self.convention!r}")
        if not 0.05 <= abs(self.geometry_factor) <= 20.0:
            warnings.warn(
                f"|I_geom| = {abs(self.geometry_factor)} outside the documented "
                f"range [0.05, 20]",
                stacklevel=2,
            )


@dataclass(frozen=True)
class TrajectorySpec:
    """Arm-separation history d(t) of a three-pulse sequence.

    The triangular shape rises linearly from 0 to max_separation over the
    first half of total_time and falls back over the second half
    (beam-splitter, mirror, recombiner at 0, T, 2T).  A custom shape passes
    sampled separations instead.
    """

    max_separation: float
    total_time: float
    shape: str = "triangular"
    samples: tuple = ()

    def __post_init__(self):
        if self.max_separation < 0 or self.total_time <= 0:
            raise SignalError("need max_separation >= 0 and total_time > 0")
        if self.shape not in ("triangular", "custom"):
            raise SignalError(f"unknown trajectory shape {self.shape!r}")
        if self.shape == "custom" and len(self.samples) < 3:
            raise SignalError("custom trajectory needs at least 3 separation samples")
        if self.shape == "custom" and any(s < 0 for s in self.samples):
            raise SignalError("separations must be nonnegative")

    def separations(self, n):
        if self.shape == "custom":
            t_in = np.linspace(0.0, 1.0, len(self.samples))
            return np.interp(np.linspace(0.0, 1.0, n), t_in, np.asarray(self.samples, float))
        t = np.linspace(0.0, self.total_time, n)
        half = self.total_time / 2.0
        return np.where(
            t <= half,
            self.max_separation * t / half,
            self.max_separation * (self.total_time - t) / half,
        )


def visibility_slope(spec):
    """kappa = g^2 omega_m T I_geom: the visibility-scan slope."""
    omega = mass_frequency(spec.mass, spec.convention)
    return spec.coupling**2 * omega * spec.interrogation_time * spec.geometry_factor


def qlg_phase(spec):
    """Phase shift linear in visibility: kappa * V (exact, zero intercept)."""
    return visibility_slope(spec) * spec.visibility


def slope_uncertainty(sigma_phi, delta_v, n_settings):
    """sigma_kappa = sigma_phi / (delta_V sqrt(M)) for a visibility scan."""
    if not 0.0 < delta_v <= 1.0:
        raise SignalError(f"delta_v must lie in (0, 1], got {delta_v}")
    if n_settings < 2:
        raise SignalError(f"need at least 2 visibility settings, got {n_settings}")
    return sigma_phi / (delta_v * np.sqrt(n_settings))


def _geometry_raw(trajectory, cutoff_length, n_nodes):
    """(1/T^2) double time integral of d_max * K(cross-branch separation).

    The branches sit at +-d(t)/2, so the kernel argument between branch L
    at t and branch R at t' is (d(t) + d(t'))/2, floored by the
    short-distance regulator delta_reg = cutoff_length/100.  The
    max_separation prefactor makes the integrand dimensionless.
    """
    d = trajectory.separations(n_nodes)
    dt = trajectory.total_time / (n_nodes - 1)
    w = np.full(n_nodes, dt)
    w[0] *= 0.5
    w[-1] *= 0.5
    delta_reg = cutoff_length / 100.0
    # kernel argument (d_i + d_j)/2 = |d_i/2 - (-d_j/2)|
    half = 0.5 * d
    value = _accel.trajectory_double_integral(half, -half, w, cutoff_length, delta_reg)
    scale = max(trajectory.max_separation, float(d.max()))
    return scale * value / trajectory.total_time**2


@lru_cache(maxsize=8)
def geometry_calibration_constant(n_nodes=GEOMETRY_TIME_NODES):
    """Normalization fixed so the reference trajectory (d_max = 1 m,
    T_tot = 2 s) at cutoff_length = 1 m scores exactly 1."""
    ref = TrajectorySpec(max_separation=1.0, total_time=2.0)
    return 1.0 / _geometry_raw(ref, 1.0, n_nodes)


def geometry_factor(trajectory, cutoff_length, normalization=None):
    """Dimensionless path-geometry weight of the screened interaction.

    With the default (calibrated, frozen) normalization the reference
    configuration scores 1 and representative sweeps stay order unity.
    Degenerate trajectories (zero separation throughout) return 0.
    """
    if cutoff_length <= 0:
        raise SignalError(f"cutoff_length must be positive, got {cutoff_length}")
    d = trajectory.separations(GEOMETRY_TIME_NODES)
    if float(np.max(d)) == 0.0:
        warnings.warn("degenerate trajectory: zero separation throughout", stacklevel=2)
        return 0.0
    if normalization is None:
        normalization = geometry_calibration_constant()
    return normalization * _geometry_raw(trajectory, cutoff_length, GEOMETRY_TIME_NODES)


def decoherence_rate(g, mass, delta_x, gamma0, cutoff_length):
    """Gamma = gamma0 g^2 m^2 f(delta_x).

    The mass enters in whatever unit the caller declared for gamma0;
    gamma0 absorbs the conversion.
    """
    if g < 0 or mass <= 0 or gamma0 < 0:
        raise SignalError("need g, gamma0 >= 0 and mass > 0")
    return gamma0 * g * g * mass * mass * decoherence_form_factor(delta_x, cutoff_length)


def visibility_decay(v0, rates, duration):
    """V(T) = V0 exp(-sum(rates) T)."""
    if not 0.0 <= v0 <= 1.0:
        raise SignalError(f"V0 must lie in [0, 1], got {v0}")
    rates = np.asarray(rates, dtype=float)
    if np.any(rates < 0):
        raise SignalError("rates must be nonnegative")
    return v0 * np.exp(-float(rates.sum()) * duration)


def residual_rate(gamma_total, gamma_env):
    """Residual decoherence rate after subtracting the modeled environment."""
    return gamma_total - gamma_env


# ---------------------------------------------------------------------------
# entanglement-selective sector
# ---------------------------------------------------------------------------

SIGMA_X = np.array([[0.0, 1.0], [1.0, 0.0]], dtype=np.complex128)
SIGMA_Y = np.array([[0.0, -1.0j], [1.0j, 0.0]], dtype=np.complex128)
SIGMA_XX = np.kron(SIGMA_X, SIGMA_X)
SIGMA_YY = np.kron(SIGMA_Y, SIGMA_Y)


class EntanglementSignal(NamedTuple):
    energy: float
    correlator: float


def entanglement_signal(state, g, m1, m2, r, cutoff_length):
    """Effective two-qubit energy g^2 m1 m2 K(R) <sigma_x sigma_x> plus the
    dimensionless correlator itself."""
    from .kernels import yukawa_kernel

    if r <= 0:
        raise SignalError(f"separation R must be positive, got {r}")
    correlator = float(np.real(np.trace(state.values @ SIGMA_XX)))
    energy = g * g * m1 * m2 * yukawa_kernel(r, cutoff_length) * correlator
    return EntanglementSignal(energy=energy, correlator=correlator)


def concurrence(state):
    """Spin-flip concurrence C = max(0, l1 - l2 - l3 - l4).

    The l_i are the decreasing square roots of the eigenvalues of
    rho (sy x sy) conj(rho) (sy x sy).  Eigenvalues at the
    double-precision floor are treated as exact zeros: for separable
    states the product matrix is nilpotent and its numerical eigenvalues
    are pure noise that the square root would otherwise amplify.
    """
    rho = state.values
    rho_tilde = SIGMA_YY @ rho.conj() @ SIGMA_YY
    evals = np.clip(np.real(np.linalg.eigvals(rho @ rho_tilde)), 0.0, None)
    evals[evals < 1e-16 * max(1.0, evals.max())] = 0.0
    lam = np.sqrt(evals)
    lam.sort()
    return float(max(0.0, lam[3] - lam[2] - lam[1] - lam[0]))


def signal_vs_concurrence_curve(family, n_points):
    """Tabulate (parameter, concurrence, normalized signal) along a family.

    families: "dephased" (Bell state dephasing into the classical mix),
    "werner" (Bell state mixed with I/4), "classical" (diagonal mixtures
    of |00> and |11|: zero concurrence and zero signal throughout).
    """
    from .states import TwoQubitState, classical_mix_00_11, dephased_family, werner_family

    if n_points < 2:
        raise SignalError(f"need at least 2 points, got {n_points}")
    params = np.linspace(0.0, 1.0, n_points)
    rows = []
    for p in params:
        if family == "dephased":
            state = dephased_family(p)
        elif family == "werner":
            state = werner_family(p)
        elif family == "classical":
            # diagonal |00>/|11> mixture with weight sliding along p
            w = 0.25 + 0.5 * p
            state = TwoQubitState(np.diag([w, 0.0, 0.0, 1.0 - w]).astype(np.complex128))
        else:
            raise SignalError(f"unknown family {family!r}")
        corr = float(np.real(np.trace(state.values @ SIGMA_XX)))
        rows.append((float(p), concurrence(state), corr))
    return rows
