"""Squeezing parameters: closed forms, the 3×3 criterion matrix, critical K."""

import math

import numpy as np
import pytest

from darksqueeze import (
    CollectiveMoments,
    DegenerateDenominatorError,
    ModelParams,
    NoCrossingError,
    NonPhysicalStateError,
    collective_moments,
    critical_K,
    dark_state_squeezing,
    squeezing_from_moments,
    sym3_eigvals,
    toth_matrices,
)
from darksqueeze import oracle

PI = math.pi
RNG = np.random.default_rng(7)


class TestDarkStateSqueezing:
    def test_symmetric_dicke_is_fully_squeezed(self):
        rep = dark_state_squeezing(ModelParams(N=20, n=10, theta=PI / 2))
        assert rep.xi3_sq <= 1e-12
        assert rep.zeta3_sq == pytest.approx(1.0, abs=1e-12)

    def test_no_excitation_unsqueezed(self):
        rep = dark_state_squeezing(ModelParams(N=20, n=0, theta=PI / 2))
        assert rep.varsigma_sq == pytest.approx(1.0, abs=1e-12)
        assert rep.xi3_sq == pytest.approx(1.0, abs=1e-12)
        assert rep.zeta3_sq == pytest.approx(0.0, abs=1e-12)

    def test_fully_excited_unsqueezed(self):
        rep = dark_state_squeezing(ModelParams(N=20, n=20, theta=PI / 2))
        assert rep.zeta3_sq == pytest.approx(0.0, abs=1e-12)

    def test_zeta_in_unit_interval_and_xi_nonnegative(self):
        for n in range(0, 21, 2):
            for theta in np.linspace(0.0, PI, 11, endpoint=False):
                rep = dark_state_squeezing(ModelParams(N=20, n=n, theta=float(theta)))
                assert 0.0 <= rep.zeta3_sq <= 1.0
                assert rep.xi3_sq >= 0.0
                assert rep.zeta3_sq == pytest.approx(
                    max(1.0 - rep.xi3_sq, 0.0), abs=1e-14
                )

    def test_in_plane_never_squeezed_at_zero_K(self):
        for n in (1, 4, 10, 19):
            for theta in (0.2, 1.0, PI / 2, 2.5):
                rep = dark_state_squeezing(ModelParams(N=20, n=n, theta=theta))
                assert rep.xi1_sq >= 1.0 - 1e-12

    def test_phase_gradient_breaks_in_plane_floor(self):
        # The xi1 >= 1 floor is a K = 0 property: an alternating phase
        # (K = pi, even N) rotates pair coherences so that in-plane variance
        # drops below N/4.  At theta = pi/2 the even-N value is exactly
        # 1 - 2n(N-n)/(N(N-1)) (verified against the oracle for N = 4, 6, 8;
        # the library matches the oracle wherever the ratio is defined).
        for n in (1, 4):
            rep = dark_state_squeezing(ModelParams(N=20, n=n, theta=PI / 2, K=PI))
            expected = 1.0 - 2.0 * n * (20 - n) / (20 * 19)
            assert rep.xi1_sq == pytest.approx(expected, abs=1e-12)
            assert rep.xi1_sq < 1.0

    def test_requires_two_atoms(self):
        with pytest.raises(ValueError):
            dark_state_squeezing(ModelParams(N=1, n=1, theta=0.3))

    def test_minimizer_over_n_is_half_filling(self):
        xi = {
            n: dark_state_squeezing(ModelParams(N=20, n=n, theta=PI / 2)).xi3_sq
            for n in range(21)
        }
        assert min(xi, key=xi.get) == 10

    def test_xi3_even_in_K(self):
        for K in (0.2, 0.9, 2.4):
            a = dark_state_squeezing(ModelParams(N=16, n=5, theta=1.2, K=K))
            b = dark_state_squeezing(ModelParams(N=16, n=5, theta=1.2, K=-K))
            assert a.xi3_sq == pytest.approx(b.xi3_sq, rel=1e-12)


class TestSqueezingFromMoments:
    def test_all_down_state(self):
        N = 6
        m = CollectiveMoments(
            jz_mean=-3.0, jz2_mean=9.0, j2_mean=12.0, n_mean=0.0, n2fact_mean=0.0
        )
        rep = squeezing_from_moments(N, m)
        assert rep.zeta3_sq == pytest.approx(0.0, abs=1e-12)
        assert rep.varsigma_sq == pytest.approx(1.0, abs=1e-12)

    def test_perfect_dicke_limit(self):
        N = 10
        m = CollectiveMoments(
            jz_mean=0.0, jz2_mean=0.0, j2_mean=(N / 2) * (N / 2 + 1),
            n_mean=0.0, n2fact_mean=0.0,
        )
        assert squeezing_from_moments(N, m).xi3_sq == pytest.approx(0.0, abs=1e-14)

    def test_agrees_with_dark_state_route(self):
        p = ModelParams(N=8, n=3, theta=PI / 3)
        direct = dark_state_squeezing(p)
        via_moments = squeezing_from_moments(8, collective_moments(p))
        assert via_moments.xi3_sq == pytest.approx(direct.xi3_sq, abs=1e-10)
        assert via_moments.xi1_sq == pytest.approx(direct.xi1_sq, abs=1e-10)

    def test_degenerate_denominator_raises(self):
        N = 4
        m = CollectiveMoments(
            jz_mean=0.0, jz2_mean=0.0, j2_mean=N / 2.0, n_mean=0.0, n2fact_mean=0.0
        )
        with pytest.raises(DegenerateDenominatorError):
            squeezing_from_moments(N, m)

    def test_balanced_in_plane_nonzero_K_is_degenerate(self):
        # At theta = pi/2, n = N/2 the whole population sits in the spin
        # sector with <Jz^2> = 0, so <J^2> = N/2 + (D_N(K) - N) n(N-n)/(N(N-1))
        # drops below N/2 once the Dirichlet kernel D_N(K) falls under N
        # (any K past the first lobe), and the ratio criterion's denominator
        # goes negative -- a real regime, not a guard artifact (the oracle
        # reproduces <J^2> < N/2 at these points).
        for K in (0.9, 2.2, PI):
            with pytest.raises(DegenerateDenominatorError):
                dark_state_squeezing(ModelParams(N=10, n=5, theta=PI / 2, K=K))


class TestSym3Eigvals:
    def test_identity_and_scaling(self):
        assert sym3_eigvals(np.eye(3)) == pytest.approx((1.0, 1.0, 1.0))
        assert sym3_eigvals(5.0 * np.eye(3)) == pytest.approx((5.0, 5.0, 5.0))
        assert sym3_eigvals(np.zeros((3, 3))) == pytest.approx((0.0, 0.0, 0.0))

    def test_matches_numpy_on_random_draws(self):
        for _ in range(500):
            A = RNG.standard_normal((3, 3))
            S = (A + A.T) / 2.0
            got = np.array(sym3_eigvals(S))
            want = np.linalg.eigvalsh(S)
            assert np.allclose(got, want, atol=1e-10 * max(1.0, abs(want).max()))

    def test_roots_satisfy_characteristic_polynomial(self):
        A = RNG.standard_normal((3, 3))
        S = A + A.T
        for lam in sym3_eigvals(S):
            det = np.linalg.det(S - lam * np.eye(3))
            assert abs(det) < 1e-8


class TestTothMatrices:
    def test_diagonal_reference(self):
        cm = toth_matrices(3, np.zeros(3), np.eye(3))
        assert np.allclose(cm.gamma, np.eye(3), atol=1e-14)
        assert np.allclose(cm.corr, np.eye(3), atol=1e-14)
        assert np.allclose(cm.toth, 3.0 * np.eye(3), atol=1e-14)
        assert cm.lambda_min == pytest.approx(3.0, abs=1e-12)

    def test_all_down_state_ratio_is_one(self):
        N = 4
        first = np.array([0.0, 0.0, -2.0])
        second = np.diag([1.0, 1.0, 4.0])
        cm = toth_matrices(N, first, second)
        j2 = np.trace(second)
        assert cm.lambda_min / (j2 - N / 2) == pytest.approx(1.0, abs=1e-12)

    def test_toth_is_weighted_sum(self):
        first = RNG.standard_normal(3)
        A = RNG.standard_normal((3, 3))
        second = A @ A.T + 5 * np.eye(3)
        cm = toth_matrices(7, first, second)
        assert np.allclose(cm.toth, 6 * cm.gamma + cm.corr, atol=1e-12)

    def test_asymmetric_input_rejected(self):
        bad = np.array([[1.0, 0.5, 0.0], [0.1, 1.0, 0.0], [0.0, 0.0, 1.0]])
        with pytest.raises(NonPhysicalStateError):
            toth_matrices(4, np.zeros(3), bad)

    @pytest.mark.parametrize(
        "N,n,theta,K",
        [(4, 2, PI / 4, 0.0), (6, 2, PI / 4, 0.0), (8, 3, 1.1, 0.7), (10, 5, 1.0, 2.2)],
    )
    def test_lambda_min_route_equals_varsigma_route(self, N, n, theta, K):
        p = ModelParams(N=N, n=n, theta=theta, K=K)
        state = oracle.build_dark_state(p)
        first, second = oracle.second_moment_matrix(state)
        cm = toth_matrices(N, first, second)
        j2 = float(np.trace(second))
        xi3_lambda = cm.lambda_min / (j2 - N / 2)
        xi3_direct = dark_state_squeezing(p).xi3_sq
        assert xi3_lambda == pytest.approx(xi3_direct, abs=1e-9)


class TestCriticalK:
    def test_reference_configuration(self):
        kc = critical_K(20, 4, PI / 2)
        assert 0.0 < kc < PI
        rep = dark_state_squeezing(ModelParams(N=20, n=4, theta=PI / 2, K=kc))
        assert abs(rep.xi3_sq - 1.0) <= 1e-6

    def test_unsqueezed_raises(self):
        with pytest.raises(NoCrossingError):
            critical_K(20, 0, PI / 2)

    def test_matches_oracle_scan(self):
        N, n, theta = 8, 4, PI / 2
        kc = critical_K(N, n, theta)
        ks = np.linspace(0.0, PI, 801)
        signs = []
        for K in ks:
            state = oracle.build_dark_state(ModelParams(N=N, n=n, theta=theta, K=float(K)))
            m = oracle.oracle_moments(state)
            denom = (4.0 / N**2) * m.j2_mean - 2.0 / N
            var = m.jz2_mean - m.jz_mean**2
            vs = (4.0 / N**2) * (N * var + m.jz_mean**2)
            signs.append(denom - vs)
        signs = np.array(signs)
        crossings = np.nonzero(np.diff(np.sign(signs)) != 0)[0]
        assert len(crossings) >= 1
        lo, hi = ks[crossings[0]], ks[crossings[0] + 1]
        assert lo <= kc <= hi

    def test_squeezed_iff_inside_critical_window(self):
        N, n, theta = 20, 4, PI / 2
        kc = critical_K(N, n, theta)
        for K in np.linspace(0.0, PI, 173):
            if abs(K - kc) < 5e-3:
                continue
            rep = dark_state_squeezing(ModelParams(N=N, n=n, theta=theta, K=float(K)))
            if K < kc:
                assert rep.xi3_sq < 1.0
            else:
                assert rep.xi3_sq > 1.0
