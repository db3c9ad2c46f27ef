import numpy as np
import pytest

from qlg.states import (
    DensityKernel,
    GaussianPacketSpec,
    Grid1D,
    StateError,
    TwoBranchSpec,
    bell_state,
    classical_mix_00_11,
    dephased_family,
    gaussian_packet,
    mixture_density_kernel,
    pure_density_kernel,
    split_diag_offdiag,
    superposition_wavefunction,
    werner_family,
)


class TestGrid:
    def test_spacing_periodic_convention(self):
        grid = Grid1D(-2.0, 2.0, 512)
        assert grid.spacing == 4.0 / 512
        assert grid.x[0] == -2.0
        assert grid.x[-1] == pytest.approx(2.0 - grid.spacing)

    @pytest.mark.parametrize("n", [0, 8, 15, 100, 513])
    def test_rejects_bad_point_counts(self, n):
        with pytest.raises(StateError):
            Grid1D(-1.0, 1.0, n)

    def test_rejects_empty_domain(self):
        with pytest.raises(StateError):
            Grid1D(1.0, 1.0, 64)


class TestGaussianPacket:
    def test_discrete_norm_is_exact(self, grid512):
        psi = gaussian_packet(GaussianPacketSpec(0.0, 0.05), grid512)
        assert abs(psi.norm() - 1.0) < 1e-12

    def test_peak_amplitude_matches_formula(self, grid512):
        # |phi(0)| = (2 pi l^2)^(-1/4) before discrete renormalization;
        # the renormalization factor is itself within 1e-6 of unity here
        psi = gaussian_packet(GaussianPacketSpec(0.0, 0.05), grid512)
        expected = (2.0 * np.pi * 0.05**2) ** (-0.25)
        i0 = np.argmin(np.abs(grid512.x))
        assert abs(psi.amplitudes[i0]) == pytest.approx(expected, rel=1e-6)

    def test_overlap_matches_analytic_gaussian_integral(self, grid512):
        # <phi_L|phi_R> = exp(-d^2 / (8 l^2)) for equal widths
        left = gaussian_packet(GaussianPacketSpec(-0.5, 0.05), grid512)
        right = gaussian_packet(GaussianPacketSpec(0.5, 0.05), grid512)
        overlap = np.sum(left.amplitudes.conj() * right.amplitudes) * grid512.spacing
        assert abs(overlap) == pytest.approx(np.exp(-50.0), rel=1e-6)

    def test_rejects_unresolvable_width(self, grid512):
        with pytest.raises(StateError, match="unresolvable"):
            gaussian_packet(GaussianPacketSpec(0.0, 2.0 * grid512.spacing), grid512)

    def test_rejects_too_wide_packet(self, grid512):
        with pytest.raises(StateError, match="too wide"):
            gaussian_packet(GaussianPacketSpec(0.0, 1.0), grid512)

    def test_rejects_center_outside_domain(self, grid512):
        with pytest.raises(StateError, match="outside"):
            gaussian_packet(GaussianPacketSpec(3.0, 0.05), grid512)


class TestSuperposition:
    def test_norm(self, grid512, two_packet_spec):
        psi = superposition_wavefunction(two_packet_spec, grid512)
        assert abs(psi.norm() - 1.0) < 1e-12

    def test_degenerate_branch_equals_single_packet(self, grid512):
        spec = TwoBranchSpec(
            1.0, 0.0, GaussianPacketSpec(-0.5, 0.05), GaussianPacketSpec(0.5, 0.05)
        )
        psi = superposition_wavefunction(spec, grid512)
        single = gaussian_packet(GaussianPacketSpec(-0.5, 0.05), grid512)
        assert np.allclose(psi.amplitudes, single.amplitudes, atol=1e-14)

    def test_two_equal_lobes(self, grid512, two_packet_spec):
        # integrated weight 0.5 per half-domain for the balanced case
        psi = superposition_wavefunction(two_packet_spec, grid512)
        prob = np.abs(psi.amplitudes) ** 2 * grid512.spacing
        left_weight = prob[grid512.x < 0].sum()
        assert abs(left_weight - 0.5) < 1e-10
        assert abs(prob.sum() - 1.0) < 1e-12

    def test_rejects_unnormalized_amplitudes(self):
        with pytest.raises(StateError):
            TwoBranchSpec(
                1.0, 1.0, GaussianPacketSpec(-0.5, 0.05), GaussianPacketSpec(0.5, 0.05)
            )


class TestPureKernel:
    def test_hermitian_exactly(self, grid512, two_packet_spec):
        rho = pure_density_kernel(superposition_wavefunction(two_packet_spec, grid512))
        assert rho.is_hermitian()

    def test_trace_one(self, grid512, two_packet_spec):
        rho = pure_density_kernel(superposition_wavefunction(two_packet_spec, grid512))
        assert abs(rho.trace() - 1.0) < 1e-10

    def test_rank_one(self):
        grid = Grid1D(-2.0, 2.0, 128)
        spec = TwoBranchSpec(
            1.0 / np.sqrt(2.0),
            1.0 / np.sqrt(2.0),
            GaussianPacketSpec(-0.5, 0.15),
            GaussianPacketSpec(0.5, 0.15),
        )
        rho = pure_density_kernel(superposition_wavefunction(spec, grid))
        eigs = np.sort(np.linalg.eigvalsh(rho.values))[::-1] * grid.spacing
        assert eigs[0] == pytest.approx(1.0, abs=1e-8)
        assert abs(eigs[1]) < 1e-10

    def test_purity_bookkeeping(self, grid512, two_packet_spec):
        rho = pure_density_kernel(superposition_wavefunction(two_packet_spec, grid512))
        purity = np.real(np.sum(rho.values * rho.values.conj().T)) * grid512.spacing**2
        assert purity == pytest.approx(1.0, abs=1e-8)

    def test_cross_block_is_amplitude_product(self, grid512, two_packet_spec):
        # rho(x near x_L, x' near x_R) = c_L conj(c_R) phi_L(x) conj(phi_R(x'))
        psi = superposition_wavefunction(two_packet_spec, grid512)
        rho = pure_density_kernel(psi)
        left = gaussian_packet(two_packet_spec.packet_left, grid512)
        right = gaussian_packet(two_packet_spec.packet_right, grid512)
        sel_l = np.abs(grid512.x + 0.5) < 0.15
        sel_r = np.abs(grid512.x - 0.5) < 0.15
        block = rho.values[np.ix_(sel_l, sel_r)]
        expected = 0.5 * np.outer(left.amplitudes[sel_l], right.amplitudes[sel_r].conj())
        assert np.max(np.abs(block - expected)) < 1e-12


class TestMixture:
    def test_single_weight_equals_pure(self, grid512, two_packet_spec):
        psi = superposition_wavefunction(two_packet_spec, grid512)
        assert np.array_equal(
            mixture_density_kernel([1.0], [psi]).values,
            pure_density_kernel(psi).values,
        )

    def test_cross_block_carries_no_cross_terms(self, grid512):
        # the mixture block between the packets is built of pure tail
        # products (no c_L c_R* phi_L phi_R* term): bit-identical to the
        # weighted tail outer products and ~40 orders below the
        # superposition's genuine cross block
        left = gaussian_packet(GaussianPacketSpec(-0.5, 0.05), grid512)
        right = gaussian_packet(GaussianPacketSpec(0.5, 0.05), grid512)
        rho = mixture_density_kernel([0.5, 0.5], [left, right])
        sel_l = np.abs(grid512.x + 0.5) < 0.1
        sel_r = np.abs(grid512.x - 0.5) < 0.1
        block = rho.values[np.ix_(sel_l, sel_r)]
        tails = 0.5 * np.outer(left.amplitudes, left.amplitudes.conj()) + 0.5 * np.outer(
            right.amplitudes, right.amplitudes.conj()
        )
        assert np.array_equal(block, tails[np.ix_(sel_l, sel_r)])
        assert np.max(np.abs(block)) < 1e-30

    def test_trace(self, grid512):
        left = gaussian_packet(GaussianPacketSpec(-0.5, 0.05), grid512)
        right = gaussian_packet(GaussianPacketSpec(0.5, 0.05), grid512)
        rho = mixture_density_kernel([0.3, 0.7], [left, right])
        assert abs(rho.trace() - 1.0) < 1e-12

    def test_affine_in_identical_summands(self, grid512):
        psi = gaussian_packet(GaussianPacketSpec(0.0, 0.05), grid512)
        kernel = pure_density_kernel(psi).values
        mixed = mixture_density_kernel([0.3, 0.7], [psi, psi]).values
        assert np.array_equal(mixed, 0.3 * kernel + 0.7 * kernel)

    def test_rejects_bad_weights(self, grid512):
        psi = gaussian_packet(GaussianPacketSpec(0.0, 0.05), grid512)
        with pytest.raises(StateError):
            mixture_density_kernel([0.5, 0.6], [psi, psi])
        with pytest.raises(StateError):
            mixture_density_kernel([-0.5, 1.5], [psi, psi])

    def test_rejects_mismatched_grids(self):
        a = gaussian_packet(GaussianPacketSpec(0.0, 0.1), Grid1D(-2.0, 2.0, 512))
        b = gaussian_packet(GaussianPacketSpec(0.0, 0.1), Grid1D(-2.0, 2.0, 256))
        with pytest.raises(StateError):
            mixture_density_kernel([0.5, 0.5], [a, b])


class TestSplit:
    def test_sum_reconstructs_bit_exactly(self, grid512, two_packet_spec):
        rho = pure_density_kernel(superposition_wavefunction(two_packet_spec, grid512))
        diag, off = split_diag_offdiag(rho)
        assert np.array_equal(diag.values + off.values, rho.values)

    def test_idempotent_on_diag_part(self, grid512, two_packet_spec):
        rho = pure_density_kernel(superposition_wavefunction(two_packet_spec, grid512))
        diag, _ = split_diag_offdiag(rho)
        diag2, off2 = split_diag_offdiag(diag)
        assert np.array_equal(diag2.values, diag.values)
        assert np.all(off2.values == 0.0)

    def test_mixture_offdiag_cross_block_at_tail_level(self, grid512):
        left = gaussian_packet(GaussianPacketSpec(-0.5, 0.05), grid512)
        right = gaussian_packet(GaussianPacketSpec(0.5, 0.05), grid512)
        _, off = split_diag_offdiag(mixture_density_kernel([0.5, 0.5], [left, right]))
        sel_l = np.abs(grid512.x + 0.5) < 0.1
        sel_r = np.abs(grid512.x - 0.5) < 0.1
        assert np.max(np.abs(off.values[np.ix_(sel_l, sel_r)])) < 1e-30

    def test_cross_block_frobenius_norm(self, grid512, two_packet_spec):
        # ||cross block||_F * dx = |c_L c_R| via the discrete packet norms
        rho = pure_density_kernel(superposition_wavefunction(two_packet_spec, grid512))
        _, off = split_diag_offdiag(rho)
        sel_l = grid512.x < 0
        sel_r = grid512.x >= 0
        block = off.values[np.ix_(sel_l, sel_r)]
        frob = np.linalg.norm(block) * grid512.spacing
        assert frob == pytest.approx(0.5, abs=1e-8)


class TestRandomizedInvariants:
    def test_constructor_invariants_hold(self):
        rng = np.random.default_rng(7)
        grid = Grid1D(-2.0, 2.0, 64)
        for _ in range(100):
            n_comp = rng.integers(1, 4)
            weights = rng.random(n_comp)
            weights /= weights.sum()
            states = []
            for _ in range(n_comp):
                center = rng.uniform(-1.0, 1.0)
                width = rng.uniform(4.5 * grid.spacing, 0.3)
                states.append(gaussian_packet(GaussianPacketSpec(center, width), grid))
            rho = mixture_density_kernel(weights.tolist(), states)
            rho.validate(trace_atol=1e-10, psd_atol=1e-8)


class TestTwoQubitStates:
    def test_bell_purity(self):
        assert bell_state(+1).purity() == pytest.approx(1.0, abs=1e-12)
        assert bell_state(-1).purity() == pytest.approx(1.0, abs=1e-12)

    def test_werner_zero_is_maximally_mixed(self):
        state = werner_family(0.0)
        assert np.allclose(state.values, np.eye(4) / 4.0)
        assert state.purity() == pytest.approx(0.25, abs=1e-12)

    def test_dephased_half_entries(self):
        state = dephased_family(0.5)
        assert state.values[0, 3] == pytest.approx(0.25, abs=1e-15)
        assert np.allclose(np.diagonal(state.values), [0.5, 0.0, 0.0, 0.5])

    def test_dephased_endpoints(self):
        assert np.allclose(dephased_family(1.0).values, bell_state(+1).values)
        assert np.allclose(dephased_family(0.0).values, classical_mix_00_11().values)

    def test_all_constructors_validate(self):
        for state in (
            bell_state(+1),
            bell_state(-1),
            classical_mix_00_11(),
            dephased_family(0.3),
            werner_family(0.8),
        ):
            state.validate()

    def test_rejects_out_of_range_parameter(self):
        with pytest.raises(StateError):
            dephased_family(1.5)
        with pytest.raises(StateError):
            werner_family(-0.1)
