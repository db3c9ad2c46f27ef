"""States on a periodic 1D grid plus the canonical two-qubit states.

The position basis is discretized on a uniform periodic grid.  Density
matrices are stored as dense kernels rho(x_i, x_j); the trace convention
is sum_i rho[i, i] * spacing = 1.  All constructors return immutable
value objects and never mutate their inputs.
"""

from dataclasses import dataclass
from functools import cached_property

import numpy as np


class StateError(ValueError):
    """A construction violated its preconditions."""


def _readonly(arr):
    arr.flags.writeable = False
    return arr


@dataclass(frozen=True)
class Grid1D:
    """Uniform periodic grid on [x_min, x_max).

    n_points must be a power of two and at least 16: the free propagator
    is applied spectrally and the FFT sizes stay fast and exact that way.
    """

    x_min: float
    x_max: float
    n_points: int

    def __post_init__(self):
        if self.n_points < 16 or self.n_points & (self.n_points - 1):
            raise StateError(
                f"n_points must be a power of two >= 16, got {self.n_points}"
            )
        if not self.x_max > self.x_min:
            raise StateError("grid needs x_max > x_min")

    @property
    def length(self):
        return self.x_max - self.x_min

    @property
    def spacing(self):
        return (self.x_max - self.x_min) / self.n_points

    @cached_property
    def x(self):
        """Node positions (periodic convention: x_max itself is excluded)."""
        return _readonly(self.x_min + self.spacing * np.arange(self.n_points))

    @cached_property
    def k(self):
        """FFT-ordered angular wavenumbers."""
        return _readonly(2.0 * np.pi * np.fft.fftfreq(self.n_points, d=self.spacing))


@dataclass(frozen=True)
class GaussianPacketSpec:
    """Gaussian packet of rms width ``width`` centered at ``center``."""

    center: float
    width: float

    def validate_on(self, grid):
        if self.width <= 0:
            raise StateError(f"packet width must be positive, got {self.width}")
        if self.width < 4.0 * grid.spacing:
            raise StateError(
                f"packet width {self.width} unresolvable: needs >= 4 grid spacings "
                f"({4.0 * grid.spacing:.3g})"
            )
        if 6.0 * self.width > grid.length:
            raise StateError(
                f"packet width {self.width} too wide: 6*width must fit in the "
                f"domain length {grid.length}"
            )
        if not (grid.x_min <= self.center < grid.x_max):
            raise StateError(f"packet center {self.center} outside the domain")


@dataclass(frozen=True)
class TwoBranchSpec:
    c_left: complex
    c_right: complex
    packet_left: GaussianPacketSpec
    packet_right: GaussianPacketSpec

    def __post_init__(self):
        total = abs(self.c_left) ** 2 + abs(self.c_right) ** 2
        if abs(total - 1.0) > 1e-12:
            raise StateError(f"|c_L|^2 + |c_R|^2 = {total}, expected 1 within 1e-12")


@dataclass(frozen=True, eq=False)
class WavefunctionGrid:
    grid: Grid1D
    amplitudes: np.ndarray

    def __post_init__(self):
        if self.amplitudes.shape != (self.grid.n_points,):
            raise StateError("amplitude array does not match the grid")

    def norm(self):
        return float(np.sum(np.abs(self.amplitudes) ** 2) * self.grid.spacing)

    def validate(self, atol=1e-10):
        if abs(self.norm() - 1.0) > atol:
            raise StateError(f"wavefunction norm {self.norm()} != 1 within {atol}")
        return self


@dataclass(frozen=True, eq=False)
class DensityKernel:
    """Discretized position-space density matrix rho(x_i, x_j)."""

    grid: Grid1D
    values: np.ndarray

    def __post_init__(self):
        n = self.grid.n_points
        if self.values.shape != (n, n):
            raise StateError("kernel shape does not match the grid")

    def trace(self):
        return complex(np.sum(np.diagonal(self.values)) * self.grid.spacing)

    def density(self):
        """Position density n(x_i) = rho(x_i, x_i)."""
        return np.real(np.diagonal(self.values))

    def is_hermitian(self):
        return np.array_equal(self.values, self.values.conj().T)

    def min_eigenvalue(self):
        return float(np.linalg.eigvalsh(self.values).min() * self.grid.spacing)

    def validate(self, trace_atol=1e-10, psd_atol=1e-8, check_psd=True):
        if not self.is_hermitian():
            raise StateError("kernel is not exactly Hermitian")
        tr = self.trace()
        if abs(tr - 1.0) > trace_atol:
            raise StateError(f"kernel trace {tr} != 1 within {trace_atol}")
        if check_psd and self.min_eigenvalue() < -psd_atol:
            raise StateError(f"kernel min eigenvalue {self.min_eigenvalue()} < -{psd_atol}")
        return self


def gaussian_packet(spec, grid):
    """Normalized Gaussian wavepacket on the grid.

    Samples (2 pi w^2)^(-1/4) exp(-(x - x0)^2 / (4 w^2)) at the nodes and
    renormalizes so the discrete norm is exactly 1.
    """
    spec.validate_on(grid)
    amp = (2.0 * np.pi * spec.width**2) ** (-0.25)
    psi = amp * np.exp(-((grid.x - spec.center) ** 2) / (4.0 * spec.width**2))
    psi = psi.astype(np.complex128)
    psi /= np.sqrt(np.sum(np.abs(psi) ** 2) * grid.spacing)
    return WavefunctionGrid(grid, _readonly(psi))


def superposition_wavefunction(spec, grid):
    """c_L phi_L + c_R phi_R, renormalized on the grid."""
    left = gaussian_packet(spec.packet_left, grid)
    right = gaussian_packet(spec.packet_right, grid)
    psi = spec.c_left * left.amplitudes + spec.c_right * right.amplitudes
    norm = np.sqrt(np.sum(np.abs(psi) ** 2) * grid.spacing)
    if norm == 0.0:
        raise StateError("branch amplitudes cancel everywhere")
    return WavefunctionGrid(grid, _readonly(psi / norm))


def pure_density_kernel(psi):
    """Rank-1 kernel psi(x_i) conj(psi(x_j)); exactly Hermitian."""
    psi.validate()
    values = np.outer(psi.amplitudes, psi.amplitudes.conj())
    return DensityKernel(psi.grid, _readonly(values))


def mixture_density_kernel(weights, states):
    """Convex combination of pure kernels.

    Accumulates w_k * |psi_k><psi_k| in list order, so mixing identical
    states reproduces the weighted sum of their kernels bit for bit.
    """
    weights = [float(w) for w in weights]
    if len(weights) != len(states) or not states:
        raise StateError("need one weight per state and at least one state")
    if any(w < 0 for w in weights):
        raise StateError(f"weights must be nonnegative, got {weights}")
    if abs(sum(weights) - 1.0) > 1e-12:
        raise StateError(f"weights sum to {sum(weights)}, expected 1 within 1e-12")
    grid = states[0].grid
    if any(s.grid != grid for s in states):
        raise StateError("all mixture components must share one grid")
    values = np.zeros((grid.n_points, grid.n_points), dtype=np.complex128)
    for w, s in zip(weights, states):
        values += w * np.outer(s.amplitudes, s.amplitudes.conj())
    return DensityKernel(grid, _readonly(values))


def split_diag_offdiag(rho):
    """Split a kernel into its main diagonal and the off-diagonal remainder.

    The diagonal output is the discrete stand-in for n(x) delta(x - x'),
    with delta represented as Kronecker/spacing; the two parts sum back to
    the input exactly.
    """
    diag_values = np.zeros_like(rho.values)
    idx = np.arange(rho.grid.n_points)
    diag_values[idx, idx] = rho.values[idx, idx]
    off_values = rho.values - diag_values
    return (
        DensityKernel(rho.grid, _readonly(diag_values)),
        DensityKernel(rho.grid, _readonly(off_values)),
    )


# ---------------------------------------------------------------------------
# two-qubit states, ordered basis {|00>, |01>, |10>, |11>}
# ---------------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class TwoQubitState:
    values: np.ndarray

    def __post_init__(self):
        if self.values.shape != (4, 4):
            raise StateError("two-qubit state must be a 4x4 matrix")

    def validate(self, trace_atol=1e-12, psd_atol=1e-10):
        if not np.array_equal(self.values, self.values.conj().T):
            raise StateError("two-qubit state is not exactly Hermitian")
        tr = complex(np.trace(self.values))
        if abs(tr - 1.0) > trace_atol:
            raise StateError(f"two-qubit trace {tr} != 1 within {trace_atol}")
        if np.linalg.eigvalsh(self.values).min() < -psd_atol:
            raise StateError("two-qubit state is not PSD within tolerance")
        return self

    def purity(self):
        return float(np.real(np.trace(self.values @ self.values)))


def bell_state(sign):
    """|Phi+-> = (|00> +- |11>)/sqrt(2) as a density matrix."""
    if sign not in (1, -1):
        raise StateError(f"bell_state sign must be +1 or -1, got {sign}")
    vec = np.zeros(4, dtype=np.complex128)
    vec[0] = 1.0 / np.sqrt(2.0)
    vec[3] = sign / np.sqrt(2.0)
    return TwoQubitState(_readonly(np.outer(vec, vec.conj())))


def classical_mix_00_11():
    """Equal classical mixture of |00> and |11> (same populations as Phi+)."""
    return TwoQubitState(_readonly(np.diag([0.5, 0.0, 0.0, 0.5]).astype(np.complex128)))


def dephased_family(p):
    """p |Phi+><Phi+| + (1-p) * classical mix: interpolates coherence only."""
    if not 0.0 <= p <= 1.0:
        raise StateError(f"dephased_family parameter must be in [0, 1], got {p}")
    values = p * bell_state(+1).values + (1.0 - p) * classical_mix_00_11().values
    return TwoQubitState(_readonly(values))


def werner_family(p):
    """p |Phi+><Phi+| + (1-p) I/4."""
    if not 0.0 <= p <= 1.0:
        raise StateError(f"werner_family parameter must be in [0, 1], got {p}")
    values = p * bell_state(+1).values + (1.0 - p) * np.eye(4, dtype=np.complex128) / 4.0
    return TwoQubitState(_readonly(values))
