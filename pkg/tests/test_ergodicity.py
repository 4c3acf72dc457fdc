import numpy as np
import pytest
from conftest import multiset_distance, random_density, random_dilated_channel
from test_channel import flip_dephase_channel

from chanmix.channel import (
    Channel,
    DensityMatrix,
    apply_superop,
    channel_from_unitary,
    identity_channel,
)
from chanmix.constructions import (
    BlockDiagonalSpec,
    block_diagonal_channel,
    haar_random_unitary,
    swap_gate,
    cnot_gate,
    PAULI_X,
)
from chanmix.ergodicity import (
    DegenerateFixedPointError,
    Spectrum,
    _spectral_order,
    cesaro_average,
    classify,
    classify_channel,
    fixed_point,
    generalized_sff,
    iterate_convergence,
    scrambling_time,
    spectrum,
)
from chanmix.linalg import kron, trace_norm


def depolarizing_channel(d=2):
    return channel_from_unitary(swap_gate(d), DensityMatrix.maximally_mixed(d))


class TestSpectrum:
    def test_identity_channel(self):
        sp = spectrum(identity_channel(2))
        np.testing.assert_allclose(sp.values, np.ones(4))

    def test_cnot(self):
        sp = spectrum(channel_from_unitary(cnot_gate(), DensityMatrix.maximally_mixed(2)))
        np.testing.assert_allclose(sp.values, [1, 1, 0, 0], atol=1e-12)

    def test_flip_dephase(self):
        sp = spectrum(flip_dephase_channel())
        np.testing.assert_allclose(sp.values, [1, -1, 0, 0], atol=1e-12)

    def test_lambda0_and_bound_and_conjugation(self, rng):
        for d in (2, 3, 4):
            for _ in range(5):
                ch, _, _ = random_dilated_channel(d, rng)
                sp = spectrum(ch)
                assert abs(sp.values[0] - 1) < 1e-8
                assert np.all(np.abs(sp.values) <= 1 + 1e-9)
                assert multiset_distance(sp.values, sp.values.conj()) < 1e-8

    def test_ordering_deterministic(self):
        vals = np.array([0.5 + 0.5j, 1.0, 0.5 - 0.5j, -0.2])
        ordered = _spectral_order(vals)
        assert ordered[0] == 1.0
        # conjugate pair: positive imaginary part first
        assert ordered[1].imag > 0 > ordered[2].imag


class TestClassify:
    def test_non_ergodic(self):
        v = classify(Spectrum(np.array([1, 1, 0, 0], dtype=complex)), 1e-8)
        assert v.label == "non-ergodic"
        assert v.unit_count == 2

    def test_ergodic_not_mixing(self):
        v = classify(Spectrum(np.array([1, -1, 0, 0], dtype=complex)), 1e-8)
        assert v.label == "ergodic-not-mixing"
        assert v.peripheral_count == 2
        assert v.unit_count == 1

    def test_mixing(self):
        v = classify(Spectrum(np.array([1, 0.7071, 0, 0], dtype=complex)), 1e-8)
        assert v.label == "mixing"

    def test_integrable(self):
        v = classify(Spectrum(np.ones(4, dtype=complex)), 1e-8)
        assert v.label == "integrable"

    def test_epsilon_validated(self):
        with pytest.raises(ValueError):
            classify(Spectrum(np.ones(4, dtype=complex)), 0.5)

    def test_invariant_under_channel_basis_change(self, rng):
        ch, _, _ = random_dilated_channel(2, rng)
        u = haar_random_unitary(2, 77)
        conj = kron(u, u.conj())
        rotated = Channel(conj @ ch.superop @ conj.conj().T, 2)
        assert classify_channel(ch).label == classify_channel(rotated).label

    def test_fixed_points_populated(self):
        ch = channel_from_unitary(cnot_gate(), DensityMatrix.maximally_mixed(2))
        v = classify_channel(ch)
        assert v.label == "non-ergodic"
        assert len(v.fixed_points) == 2


class TestFixedPoint:
    def test_unital_mixing_channel(self, rng):
        ch, _, _ = random_dilated_channel(3, rng, mixed_env=False)
        rho = fixed_point(ch)
        np.testing.assert_allclose(rho.mat, np.eye(3) / 3, atol=1e-9)
        out = apply_superop(ch, rho)
        assert trace_norm(out.mat - rho.mat) < 1e-9

    def test_swap_fixes_sigma(self):
        sigma = DensityMatrix(np.diag([0.75, 0.25]))
        ch = channel_from_unitary(swap_gate(), sigma)
        rho = fixed_point(ch)
        np.testing.assert_allclose(rho.mat, sigma.mat, atol=1e-10)

    def test_identity_channel_degenerate(self):
        with pytest.raises(DegenerateFixedPointError) as err:
            fixed_point(identity_channel(2))
        assert err.value.eigenspace_dim == 4


class TestIterateConvergence:
    def test_depolarizing_one_step(self, rng):
        ch = depolarizing_channel()
        rho0 = random_density(2, rng, pure=True)
        deltas = iterate_convergence(ch, rho0, 5)
        assert np.isclose(deltas[0], trace_norm(rho0.mat - np.eye(2) / 2))
        np.testing.assert_allclose(deltas[1:], 0, atol=1e-12)

    def test_identity_channel_errors(self, rng):
        with pytest.raises(DegenerateFixedPointError):
            iterate_convergence(identity_channel(2), random_density(2, rng), 3)

    def test_geometric_tail_rate(self, rng):
        # eventual decay rate bounded by |lambda_1| + margin for mixing channels
        ch, _, _ = random_dilated_channel(2, rng, mixed_env=False)
        sp = spectrum(ch)
        assert classify(sp).label == "mixing"
        rho0 = random_density(2, rng, pure=True)
        deltas = iterate_convergence(ch, rho0, 40)
        ratios = deltas[21:] / deltas[20:-1]
        ok = deltas[20:-1] < 1e-13  # already converged: ratio meaningless
        assert np.all((ratios <= sp.lambda1_abs + 0.05) | ok)


class TestCesaro:
    def test_zero_terms_is_identity(self):
        ch = depolarizing_channel()
        np.testing.assert_allclose(cesaro_average(ch, 0).superop, np.eye(4))

    def test_flip_dephase_average_converges(self, rng):
        ch = flip_dephase_channel()
        avg = cesaro_average(ch, 99)
        rho = random_density(2, rng, pure=True)
        out = apply_superop(avg, rho)
        assert trace_norm(out.mat - np.eye(2) / 2) <= 2 / 100 + 1e-12

    def test_cesaro_is_cptp(self):
        cesaro_average(flip_dephase_channel(), 10).verify_cptp()

    def test_mixing_channel_same_limit(self, rng):
        ch, _, _ = random_dilated_channel(2, rng, mixed_env=False)
        assert classify_channel(ch).label == "mixing"
        rho = random_density(2, rng)
        n = 200
        via_avg = apply_superop(cesaro_average(ch, n), rho)
        via_pow = apply_superop(
            Channel(np.linalg.matrix_power(ch.superop, n), 2), rho
        )
        rho_star = fixed_point(ch)
        assert trace_norm(via_pow.mat - rho_star.mat) < 1e-6
        assert trace_norm(via_avg.mat - rho_star.mat) < 0.05


class TestSff:
    def test_identity(self):
        np.testing.assert_allclose(generalized_sff(identity_channel(2), 5), np.ones(5))

    def test_depolarizing(self):
        np.testing.assert_allclose(generalized_sff(depolarizing_channel(), 5), 0.25)

    def test_block_diagonal_non_thermalizing(self):
        ch, _ = block_diagonal_channel(BlockDiagonalSpec([np.eye(2), PAULI_X]))
        np.testing.assert_allclose(generalized_sff(ch, 8), 0.5, atol=1e-10)

    def test_trace_spectral_agreement(self, rng):
        # agreement is enforced inside generalized_sff; exercise it
        ch, _, _ = random_dilated_channel(3, rng)
        generalized_sff(ch, 20)


class TestScramblingTime:
    def test_depolarizing(self):
        ks = generalized_sff(depolarizing_channel(), 5)
        assert scrambling_time(ks, 2) == 1

    def test_identity_never(self):
        ks = generalized_sff(identity_channel(2), 5)
        assert scrambling_time(ks, 2) is None

    def test_empty_rejected(self):
        with pytest.raises(ValueError):
            scrambling_time([], 2)
