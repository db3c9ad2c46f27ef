import numpy as np
import pytest

from qlg.coarsegrain import FilterSpec
from qlg.currents import (
    classical_suppression,
    coherence_current_density,
    coherence_density,
    continuity_residual,
    divergence,
)
from qlg.dynamics import free_evolve
from qlg.states import (
    GaussianPacketSpec,
    Grid1D,
    StateError,
    TwoBranchSpec,
    WavefunctionGrid,
    gaussian_packet,
    mixture_density_kernel,
    pure_density_kernel,
    split_diag_offdiag,
    superposition_wavefunction,
)

FILTER = FilterSpec(0.2, "gaussian-position")


def two_packet_kernels(grid, width=0.05, separation=1.0):
    half = separation / 2.0
    left_spec = GaussianPacketSpec(-half, width)
    right_spec = GaussianPacketSpec(half, width)
    amp = 1.0 / np.sqrt(2.0)
    sup = pure_density_kernel(
        superposition_wavefunction(TwoBranchSpec(amp, amp, left_spec, right_spec), grid)
    )
    mix = mixture_density_kernel(
        [0.5, 0.5],
        [gaussian_packet(left_spec, grid), gaussian_packet(right_spec, grid)],
    )
    return sup, mix


def free_trajectory(grid, width, dt, n_snap, mass=1.0, boost=0.0):
    psi = gaussian_packet(GaussianPacketSpec(0.0, width), grid)
    if boost:
        psi = WavefunctionGrid(grid, psi.amplitudes * np.exp(1j * boost * grid.x))
    snaps, times = [], []
    state = psi
    for m in range(n_snap):
        if m:
            state = free_evolve(state, mass, dt)
        snaps.append(pure_density_kernel(state))
        times.append(m * dt)
    return snaps, times


class TestCoherenceDensity:
    def test_diagonal_classical_state_gives_exact_zero(self, grid512):
        # the position-diagonal kernel is the classical baseline: it does
        # not source the coherence density at all
        _, mix = two_packet_kernels(grid512)
        diag, _ = split_diag_offdiag(mix)
        field = coherence_density(diag, FILTER)
        assert np.all(field.values == 0.0)

    def test_superposition_peak_is_order_of_density(self, grid512):
        sup, _ = two_packet_kernels(grid512)
        field = coherence_density(sup, FILTER)
        assert np.max(np.abs(field.values)) >= 0.05 * sup.density().max()

    def test_matches_dense_oracle(self, grid512):
        # independent dense evaluation of the smeared off-diagonal sum
        sup, _ = two_packet_kernels(grid512)
        field = coherence_density(sup, FILTER)
        _, off = split_diag_offdiag(sup)
        x = np.asarray(grid512.x)
        u = x[:, None] - x[None, :]
        ell = FILTER.cutoff_length
        f = np.exp(-u * u / (ell * ell)) / (ell * np.sqrt(np.pi))
        n = grid512.n_points
        idx = np.arange(n)
        for shift in (-1, 0, 1):
            f[idx, (idx + shift) % n] = 0.0
        oracle = (f * off.values).sum(axis=1) * grid512.spacing
        assert np.max(np.abs(field.values - oracle)) < 1e-12

    def test_linearity_in_the_state(self, grid512):
        sup, mix = two_packet_kernels(grid512)
        from qlg.states import DensityKernel

        combo = DensityKernel(grid512, 0.25 * sup.values + 0.75 * mix.values)
        lhs = coherence_density(combo, FILTER).values
        rhs = (
            0.25 * coherence_density(sup, FILTER).values
            + 0.75 * coherence_density(mix, FILTER).values
        )
        assert np.max(np.abs(lhs - rhs)) < 1e-12

    def test_randomized_diagonal_mixtures_never_source(self):
        # mixtures of well-separated packets, reduced to their diagonal
        # (classical) part, give identically zero coherence density
        rng = np.random.default_rng(19)
        grid = Grid1D(-2.0, 2.0, 128)
        for _ in range(100):
            n_comp = rng.integers(1, 4)
            weights = rng.random(n_comp)
            weights /= weights.sum()
            packets = [
                gaussian_packet(
                    GaussianPacketSpec(rng.uniform(-1.5, 1.5), rng.uniform(0.13, 0.3)),
                    grid,
                )
                for _ in range(n_comp)
            ]
            rho = mixture_density_kernel(weights.tolist(), packets)
            diag, _ = split_diag_offdiag(rho)
            field = coherence_density(diag, FilterSpec(0.3))
            assert np.max(np.abs(field.values)) <= 1e-10 * rho.density().max()


class TestCoherenceCurrent:
    def test_standing_state_has_no_physical_current(self, grid512):
        # real symmetric kernel: the gradient difference is real, so the
        # 1/i prefactor makes the physical (real) part vanish
        sup, _ = two_packet_kernels(grid512)
        j = coherence_current_density(sup, FILTER, mass=1.0)
        assert np.max(np.abs(j.real_values)) < 1e-10

    def test_diagonal_classical_state_gives_exact_zero(self, grid512):
        _, mix = two_packet_kernels(grid512)
        diag, _ = split_diag_offdiag(mix)
        j = coherence_current_density(diag, FILTER, mass=1.0)
        assert np.all(j.values == 0.0)

    def test_boost_shifts_current_by_group_velocity(self):
        # multiply by exp(i k0 x): J_coh = (hbar k0 / m) n_coh wherever
        # n_coh is appreciable (5% pointwise contract; this configuration
        # sits near 0.3%)
        grid = Grid1D(-2.0, 2.0, 2048)
        k0 = 2.0 * np.pi * 8.0 / grid.length
        spec = FilterSpec(0.04, "gaussian-position")
        amp = 1.0 / np.sqrt(2.0)
        psi = superposition_wavefunction(
            TwoBranchSpec(
                amp, amp, GaussianPacketSpec(-1.0, 0.4), GaussianPacketSpec(1.0, 0.4)
            ),
            grid,
        )
        boosted = WavefunctionGrid(grid, psi.amplitudes * np.exp(1j * k0 * grid.x))
        rho = pure_density_kernel(boosted)
        n_field = coherence_density(rho, spec)
        j_field = coherence_current_density(rho, spec, mass=1.0, hbar=1.0)
        predicted = k0 * n_field.values
        mask = np.abs(n_field.values) > 0.1 * np.abs(n_field.values).max()
        rel = np.abs(j_field.values[mask] - predicted[mask]) / np.abs(predicted[mask])
        assert rel.max() < 0.05

    def test_rejects_nonpositive_mass(self, grid512):
        sup, _ = two_packet_kernels(grid512)
        with pytest.raises(StateError):
            coherence_current_density(sup, FILTER, mass=0.0)


class TestContinuity:
    def test_reference_residual_small(self):
        grid = Grid1D(-2.0, 2.0, 512)
        snaps, times = free_trajectory(grid, width=0.25, dt=0.004, n_snap=3)
        res = continuity_residual(snaps, times, FILTER, mass=1.0)
        assert res < 1e-2

    def test_second_order_convergence(self):
        res = []
        for n, dt in ((512, 0.004), (1024, 0.002)):
            grid = Grid1D(-2.0, 2.0, n)
            snaps, times = free_trajectory(grid, width=0.25, dt=dt, n_snap=3)
            res.append(continuity_residual(snaps, times, FILTER, mass=1.0))
        order = np.log2(res[0] / res[1])
        assert order >= 1.8
        assert res[0] / res[1] >= 3.0

    def test_identical_snapshots_define_zero_residual(self, grid512):
        psi = gaussian_packet(GaussianPacketSpec(0.0, 0.25), grid512)
        rho = pure_density_kernel(psi)
        res = continuity_residual([rho, rho, rho], [0.0, 0.1, 0.2], FILTER, mass=1.0)
        assert res == 0.0

    def test_rejects_too_few_snapshots(self, grid512):
        psi = gaussian_packet(GaussianPacketSpec(0.0, 0.25), grid512)
        rho = pure_density_kernel(psi)
        with pytest.raises(StateError):
            continuity_residual([rho, rho], [0.0, 0.1], FILTER, mass=1.0)

    def test_rejects_nonuniform_times(self, grid512):
        psi = gaussian_packet(GaussianPacketSpec(0.0, 0.25), grid512)
        rho = pure_density_kernel(psi)
        with pytest.raises(StateError):
            continuity_residual([rho, rho, rho], [0.0, 0.1, 0.3], FILTER, mass=1.0)


class TestClassicalSuppression:
    def test_reference_fixture_ratio(self, grid512):
        # the l=0.05, d=1, l_c=0.2 fixture with the position-diagonal
        # classical baseline: the ratio is the numerical noise floor
        sup, mix = two_packet_kernels(grid512)
        diag, _ = split_diag_offdiag(mix)
        assert classical_suppression(diag, sup, FILTER) <= 1e-8

    def test_equal_states_give_unity(self, grid512):
        sup, _ = two_packet_kernels(grid512)
        assert classical_suppression(sup, sup, FILTER) == 1.0

    def test_wide_filter_limit(self, grid512):
        # filter wider than the domain: both fields shrink toward the
        # unfiltered off-diagonal sums, the ratio stays at the floor
        sup, mix = two_packet_kernels(grid512)
        diag, _ = split_diag_offdiag(mix)
        wide = FilterSpec(50.0, "gaussian-position")
        assert classical_suppression(diag, sup, wide) <= 1e-8

    def test_zero_reference_raises(self, grid512):
        _, mix = two_packet_kernels(grid512)
        diag, _ = split_diag_offdiag(mix)
        with pytest.raises(StateError):
            classical_suppression(diag, diag, FILTER)


def test_divergence_of_plane_wave(grid512):
    from qlg.currents import VectorField

    k = 2.0 * np.pi * 3.0 / grid512.length
    field = VectorField(grid512, np.exp(1j * k * np.asarray(grid512.x)))
    div = divergence(field)
    # central-difference response sin(k dx)/dx on a pure mode
    k_eff = np.sin(k * grid512.spacing) / grid512.spacing
    assert np.max(np.abs(div - 1j * k_eff * field.values)) < 1e-12
