"""Hot inner kernels, compiled with numba when possible.

Every kernel exists twice: a numba ``@njit`` loop and a vectorized
pure-numpy twin.  The active backend is chosen once at import time:
numba is used when it imports cleanly and the environment variable
``QLG_PURE_NUMPY`` is unset (or "0"); otherwise the numpy path runs.
Both paths compute identical quantities and agree to float rounding
(summation order differs, so the last couple of ulps may not match).

``benchmarks/bench_kernels.py`` times the two paths against each other.
"""

import os

import numpy as np

KIND_GAUSSIAN = 0
KIND_LORENTZIAN = 1

_force_numpy = os.environ.get("QLG_PURE_NUMPY", "0") not in ("", "0")

try:
    if _force_numpy:
        raise ImportError("pure-numpy backend forced by QLG_PURE_NUMPY")
    from numba import njit
    HAVE_NUMBA = True
except ImportError:
    HAVE_NUMBA = False


def backend_name():
    """Name of the active backend, recorded in run manifests."""
    return "numba" if HAVE_NUMBA else "numpy"


# ---------------------------------------------------------------------------
# smearing weights in the relative coordinate
# ---------------------------------------------------------------------------

def _smear_weight_py(u, ell, kind):
    # normalized smearing kernel f(u): integral over u equals 1
    if kind == KIND_GAUSSIAN:
        # gaussian with standard deviation ell/sqrt(2)
        return np.exp(-u * u / (ell * ell)) / (ell * np.sqrt(np.pi))
    # two-sided exponential whose Fourier transform is 1/(1 + k^2 ell^2)
    return np.exp(-np.abs(u) / ell) / (2.0 * ell)


def _band_mask(n):
    # True away from the three central (periodic) diagonals: the discrete
    # delta's support; excluding the band keeps (n_coh, J_coh) a
    # second-order-consistent continuity pair
    idx = np.arange(n)
    mask = np.ones((n, n), dtype=bool)
    mask[idx, idx] = False
    mask[idx, (idx + 1) % n] = False
    mask[idx, (idx - 1) % n] = False
    return mask


def _smeared_sum_numpy(rho_off, x, ell, kind, dx):
    u = x[:, None] - x[None, :]
    f = _smear_weight_py(u, ell, kind) * _band_mask(x.size)
    return (f * rho_off).sum(axis=1) * dx


def _current_sum_numpy(rho_off, x, ell, kind, dx, scale):
    u = x[:, None] - x[None, :]
    f = _smear_weight_py(u, ell, kind) * _band_mask(x.size)
    # central differences with periodic wraparound, second-order accurate
    d_col = (np.roll(rho_off, -1, axis=1) - np.roll(rho_off, 1, axis=1)) / (2.0 * dx)
    d_row = (np.roll(rho_off, -1, axis=0) - np.roll(rho_off, 1, axis=0)) / (2.0 * dx)
    return scale * ((f * (d_row - d_col)).sum(axis=1) * dx)


def _multiplier_table_numpy(x, ell, kind):
    u = np.abs(x[:, None] - x[None, :])
    if kind == KIND_GAUSSIAN:
        return np.exp(-u * u / (2.0 * ell * ell))
    return (1.0 + u / ell) * np.exp(-u / ell)


def _trajectory_double_integral_numpy(a, b, w, ell, delta_reg):
    arg = np.abs(a[:, None] - b[None, :]) + delta_reg
    kern = np.exp(-arg / ell) / (4.0 * np.pi * arg)
    return float(w @ kern @ w)


def _lindblad_rhs_numpy(rho, ham, ls, l_dag_l, rates, hbar):
    out = (-1j / hbar) * (ham @ rho - rho @ ham)
    for a in range(ls.shape[0]):
        l_op = ls[a]
        out += rates[a] * (
            l_op @ rho @ l_op.conj().T
            - 0.5 * (l_dag_l[a] @ rho + rho @ l_dag_l[a])
        )
    return out


def _lindblad_rk4_numpy(rho0, ham, ls, rates, dt, n_steps, hbar):
    rho = rho0.copy()
    l_dag_l = np.stack([l.conj().T @ l for l in ls]) if ls.shape[0] else ls
    for _ in range(n_steps):
        k1 = _lindblad_rhs_numpy(rho, ham, ls, l_dag_l, rates, hbar)
        k2 = _lindblad_rhs_numpy(rho + 0.5 * dt * k1, ham, ls, l_dag_l, rates, hbar)
        k3 = _lindblad_rhs_numpy(rho + 0.5 * dt * k2, ham, ls, l_dag_l, rates, hbar)
        k4 = _lindblad_rhs_numpy(rho + dt * k3, ham, ls, l_dag_l, rates, hbar)
        rho = rho + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
        rho = 0.5 * (rho + rho.conj().T)
    return rho


if HAVE_NUMBA:

    @njit(cache=True)
    def _smeared_sum_numba(rho_off, x, ell, kind, dx):
        n = x.size
        out = np.zeros(n, dtype=np.complex128)
        for i in range(n):
            ip = i + 1 if i + 1 < n else 0
            im = i - 1 if i > 0 else n - 1
            acc = 0.0 + 0.0j
            xi = x[i]
            for j in range(n):
                if j == i or j == ip or j == im:
                    continue
                u = xi - x[j]
                if kind == 0:
                    f = np.exp(-u * u / (ell * ell)) / (ell * np.sqrt(np.pi))
                else:
                    f = np.exp(-abs(u) / ell) / (2.0 * ell)
                acc += f * rho_off[i, j]
            out[i] = acc * dx
        return out

    @njit(cache=True)
    def _current_sum_numba(rho_off, x, ell, kind, dx, scale):
        n = x.size
        out = np.zeros(n, dtype=np.complex128)
        inv2dx = 1.0 / (2.0 * dx)
        for i in range(n):
            ip = i + 1 if i + 1 < n else 0
            im = i - 1 if i > 0 else n - 1
            acc = 0.0 + 0.0j
            xi = x[i]
            for j in range(n):
                if j == i or j == ip or j == im:
                    continue
                jp = j + 1 if j + 1 < n else 0
                jm = j - 1 if j > 0 else n - 1
                u = xi - x[j]
                if kind == 0:
                    f = np.exp(-u * u / (ell * ell)) / (ell * np.sqrt(np.pi))
                else:
                    f = np.exp(-abs(u) / ell) / (2.0 * ell)
                d_row = (rho_off[ip, j] - rho_off[im, j]) * inv2dx
                d_col = (rho_off[i, jp] - rho_off[i, jm]) * inv2dx
                acc += f * (d_row - d_col)
            out[i] = acc * dx
        return out * scale

    @njit(cache=True)
    def _multiplier_table_numba(x, ell, kind):
        n = x.size
        out = np.empty((n, n), dtype=np.float64)
        for i in range(n):
            for j in range(n):
                u = abs(x[i] - x[j])
                if kind == 0:
                    out[i, j] = np.exp(-u * u / (2.0 * ell * ell))
                else:
                    out[i, j] = (1.0 + u / ell) * np.exp(-u / ell)
        return out

    @njit(cache=True)
    def _trajectory_double_integral_numba(a, b, w, ell, delta_reg):
        n = a.size
        total = 0.0
        for i in range(n):
            row = 0.0
            for j in range(n):
                arg = abs(a[i] - b[j]) + delta_reg
                row += w[j] * np.exp(-arg / ell) / (4.0 * np.pi * arg)
            total += w[i] * row
        return total

    @njit(cache=True)
    def _lindblad_rk4_numba(rho0, ham, ls, rates, dt, n_steps, hbar):
        n_ops = ls.shape[0]
        dim = rho0.shape[0]
        l_dag_l = np.zeros((n_ops, dim, dim), dtype=np.complex128)
        for a in range(n_ops):
            l_dag_l[a] = ls[a].conj().T @ ls[a]

        def rhs(rho):
            out = (-1j / hbar) * (ham @ rho - rho @ ham)
            for a in range(n_ops):
                l_op = ls[a]
                out += rates[a] * (
                    l_op @ rho @ l_op.conj().T
                    - 0.5 * (l_dag_l[a] @ rho + rho @ l_dag_l[a])
                )
            return out

        rho = rho0.copy()
        for _ in range(n_steps):
            k1 = rhs(rho)
            k2 = rhs(rho + 0.5 * dt * k1)
            k3 = rhs(rho + 0.5 * dt * k2)
            k4 = rhs(rho + dt * k3)
            rho = rho + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
            rho = 0.5 * (rho + rho.conj().T)
        return rho

    smeared_offdiag_sum = _smeared_sum_numba
    current_offdiag_sum = _current_sum_numba
    multiplier_table = _multiplier_table_numba
    trajectory_double_integral = _trajectory_double_integral_numba
    lindblad_rk4 = _lindblad_rk4_numba
else:
    smeared_offdiag_sum = _smeared_sum_numpy
    current_offdiag_sum = _current_sum_numpy
    multiplier_table = _multiplier_table_numpy
    trajectory_double_integral = _trajectory_double_integral_numpy
    lindblad_rk4 = _lindblad_rk4_numpy


def warm_up():
    """Trigger jit compilation on tiny inputs (no-op on the numpy backend)."""
    x = np.linspace(0.0, 1.0, 4)
    rho = np.eye(4, dtype=np.complex128)
    smeared_offdiag_sum(rho, x, 0.5, KIND_GAUSSIAN, 0.25)
    current_offdiag_sum(rho, x, 0.5, KIND_GAUSSIAN, 0.25, 1.0)
    multiplier_table(x, 0.5, KIND_GAUSSIAN)
    trajectory_double_integral(x, -x, np.ones(4), 0.5, 0.01)
    ls = np.zeros((1, 2, 2), dtype=np.complex128)
    ls[0] = np.diag(np.array([1.0, -1.0], dtype=np.complex128))
    lindblad_rk4(
        np.eye(2, dtype=np.complex128) / 2.0,
        np.zeros((2, 2), dtype=np.complex128),
        ls,
        np.ones(1),
        0.01,
        2,
        1.0,
    )
