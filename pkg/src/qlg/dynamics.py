"""Time evolution: spectral free propagation, Lindblad integration, the
analytic two-level coherence decay, and the quasi-static latent potential.

The Lindblad integrator is an explicit fixed-step RK4 with per-step
Hermitization; adaptive stepping is deliberately avoided so runs are
bit-reproducible.
"""

from dataclasses import dataclass, field

import numpy as np

from . import _accel
from .currents import ScalarField
from .states import StateError, WavefunctionGrid, _readonly


class StabilityError(ValueError):
    """The requested step size violates the integrator stability budget."""


def free_evolve(psi, mass, duration, hbar=1.0):
    """Exact spectral propagation under the free Hamiltonian.

    Multiplies each Fourier mode by exp(-i hbar k^2 t / 2m); unitary, so
    the norm and every mode modulus are preserved to rounding.
    """
    if mass <= 0:
        raise StateError(f"mass must be positive, got {mass}")
    k = psi.grid.k
    phase = np.exp(-1j * hbar * k * k * duration / (2.0 * mass))
    out = np.fft.ifft(phase * np.fft.fft(psi.amplitudes))
    return WavefunctionGrid(psi.grid, _readonly(out))


@dataclass(frozen=True)
class LindbladModel:
    """System Hamiltonian plus jump operators with nonnegative rates.

    The Lamb-shift term, when wanted, is folded into ``hamiltonian``;
    it defaults to absent.
    """

    hamiltonian: np.ndarray
    jump_operators: tuple = field(default_factory=tuple)

    def __post_init__(self):
        ham = np.asarray(self.hamiltonian)
        if ham.ndim != 2 or ham.shape[0] != ham.shape[1]:
            raise StateError("hamiltonian must be a square matrix")
        if not np.allclose(ham, ham.conj().T, atol=1e-12, rtol=0.0):
            raise StateError("hamiltonian must be Hermitian within 1e-12")
        for op, rate in self.jump_operators:
            if np.asarray(op).shape != ham.shape:
                raise StateError("jump operator shape must match the hamiltonian")
            if rate < 0:
                raise StateError(f"jump rates must be nonnegative, got {rate}")

    @property
    def dim(self):
        return np.asarray(self.hamiltonian).shape[0]


def lindblad_evolve(rho0, model, duration, dt, hbar=1.0):
    """Fixed-step RK4 integration of the Lindblad master equation.

    dt is a target step; the actual step is duration/n_steps with
    n_steps = round(duration/dt), so composed half-runs retrace the same
    step sequence.  The output is Hermitized every step; trace is
    conserved identically by the generator so drift is pure rounding.
    """
    rho0 = np.asarray(rho0, dtype=np.complex128)
    if rho0.shape != (model.dim, model.dim):
        raise StateError("initial state shape must match the model")
    if duration == 0.0:
        return rho0.copy()
    if dt <= 0 or duration < 0:
        raise StateError("need dt > 0 and duration >= 0")

    n_steps = max(1, int(round(duration / dt)))
    dt_actual = duration / n_steps

    ham = np.asarray(model.hamiltonian, dtype=np.complex128)
    rates = np.array([r for _, r in model.jump_operators], dtype=float)
    max_rate = float(rates.max()) if rates.size else 0.0
    h_norm = float(np.linalg.norm(ham, 2)) / hbar
    budget = dt_actual * (max_rate + h_norm)
    if budget > 0.1:
        raise StabilityError(
            f"dt * (max rate + |H|/hbar) = {budget:.3g} exceeds the stability "
            f"budget 0.1 (max rate {max_rate:.3g}, |H|/hbar {h_norm:.3g}); "
            f"reduce dt below {0.1 / (max_rate + h_norm):.3g}"
        )

    if model.jump_operators:
        ls = np.stack([np.asarray(op, dtype=np.complex128) for op, _ in model.jump_operators])
    else:
        ls = np.zeros((0, model.dim, model.dim), dtype=np.complex128)
    return _accel.lindblad_rk4(rho0, ham, ls, rates, dt_actual, n_steps, hbar)


@dataclass(frozen=True)
class TwoLevelDecoherenceSpec:
    """Branch-dephasing model with jump operator lambda * m * O,
    O = |L><L| - |R><R|."""

    gamma: float
    lambda_coupling: float
    mass: float

    def __post_init__(self):
        if self.gamma < 0 or self.lambda_coupling < 0 or self.mass < 0:
            raise StateError("two-level decoherence parameters must be nonnegative")

    @property
    def rate(self):
        """Off-diagonal decay rate 2 gamma lambda^2 m^2."""
        return 2.0 * self.gamma * self.lambda_coupling**2 * self.mass**2

    def lindblad_model(self):
        """Equivalent LindbladModel in the {|L>, |R>} basis (H = 0)."""
        op = self.lambda_coupling * self.mass * np.diag([1.0, -1.0]).astype(np.complex128)
        return LindbladModel(np.zeros((2, 2), dtype=np.complex128), ((op, self.gamma),))


def two_level_coherence_decay(rho_lr_0, spec, t):
    """Analytic off-diagonal element rho_LR(t) = rho_LR(0) exp(-rate t)."""
    if t < 0:
        raise StateError(f"t must be nonnegative, got {t}")
    return rho_lr_0 * np.exp(-spec.rate * t)


def latent_potential(source, g, screening_length):
    """Quasi-static potential from laplacian A0 = -g * source, screened.

    Spectral solve A0(k) = g source(k) / (k^2 + 1/screening_length^2); the
    screening length regulates the k = 0 mode of the periodic 1D Poisson
    problem (default choice elsewhere: the domain length).  Returns the
    real part of the inverse transform.
    """
    if screening_length <= 0:
        raise StateError(f"screening_length must be positive, got {screening_length}")
    grid = source.grid
    k = np.asarray(grid.k)
    denom = k * k + 1.0 / screening_length**2
    a0 = np.fft.ifft(g * np.fft.fft(source.values) / denom)
    return ScalarField(grid, _readonly(np.real(a0)))
