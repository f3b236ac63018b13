"""Per-atom decoherence channels: Kraus sets, moment evolution, death points."""

from __future__ import annotations

import math

import numpy as np
import pytest

from darksqueeze import (
    ChannelKind,
    ChannelStrength,
    ModelParams,
    assemble_x_matrix,
    collective_moments,
    concurrence_x,
    dark_state_squeezing,
    evolve_moments,
    evolved_concurrence,
    evolved_rho12,
    evolved_squeezing,
    kraus_ops,
    rho12,
    sudden_death,
    wootters_concurrence,
)
from darksqueeze.oracle import (
    apply_kraus,
    build_dark_state,
    density_moments,
    reduce_spin_density,
    reduce_two_site_density,
)

ALL_KINDS = [ChannelKind.ADC, ChannelKind.PDC, ChannelKind.DPC]


def single_atom_action(kind, p, rho2):
    """Brute-force Φ(ρ) = Σ K ρ K† on one atom."""
    return sum(k @ rho2 @ k.conj().T for k in kraus_ops(kind, p))


class TestKindAndStrength:
    def test_coerce_strings(self):
        assert ChannelKind.coerce("adc") is ChannelKind.ADC
        assert ChannelKind.coerce("PDC") is ChannelKind.PDC
        assert ChannelKind.coerce(ChannelKind.DPC) is ChannelKind.DPC

    def test_unknown_kind(self):
        with pytest.raises(ValueError):
            ChannelKind.coerce("xyz")

    def test_strength_bounds(self):
        assert ChannelStrength(0.25).s == 0.75
        with pytest.raises(ValueError):
            ChannelStrength(-0.01)
        with pytest.raises(ValueError):
            ChannelStrength(1.01)

    def test_strength_coerce(self):
        st = ChannelStrength(0.5)
        assert ChannelStrength.coerce(st) is st
        assert ChannelStrength.coerce(0.5) == st


class TestKrausOps:
    @pytest.mark.parametrize("kind", ALL_KINDS)
    @pytest.mark.parametrize("p", [0.0, 0.2, 0.7, 1.0])
    def test_completeness(self, kind, p):
        total = sum(k.conj().T @ k for k in kraus_ops(kind, p))
        assert np.abs(total - np.eye(2)).max() < 1e-15

    def test_adc_action(self):
        # Local basis index 0 = |g>, 1 = |m>.  Excited population decays by
        # p into the ground state; coherences shrink by sqrt(s).
        p, s = 0.3, 0.7
        ee = np.zeros((2, 2), dtype=complex)
        ee[1, 1] = 1.0
        out = single_atom_action("adc", p, ee)
        assert out[1, 1] == pytest.approx(s, abs=1e-15)
        assert out[0, 0] == pytest.approx(p, abs=1e-15)
        coher = np.zeros((2, 2), dtype=complex)
        coher[1, 0] = 1.0
        out = single_atom_action("adc", p, coher)
        assert out[1, 0] == pytest.approx(math.sqrt(s), abs=1e-15)

    def test_pdc_action(self):
        # Populations frozen, coherences shrink by s = 1 - p.
        p = 0.4
        rho = np.array([[0.6, 0.2j], [-0.2j, 0.4]], dtype=complex)
        out = single_atom_action("pdc", p, rho)
        assert out[0, 0] == pytest.approx(0.6, abs=1e-15)
        assert out[1, 1] == pytest.approx(0.4, abs=1e-15)
        assert out[0, 1] == pytest.approx(0.2j * (1 - p), abs=1e-15)

    def test_dpc_action(self):
        # rho -> (1-p) rho + p I/2 on any input.
        p = 0.5
        rho = np.array([[0.7, 0.1 - 0.2j], [0.1 + 0.2j, 0.3]], dtype=complex)
        out = single_atom_action("dpc", p, rho)
        expected = (1 - p) * rho + p * np.eye(2) / 2
        assert np.abs(out - expected).max() < 1e-15

    def test_kraus_counts(self):
        assert len(kraus_ops("adc", 0.1)) == 2
        assert len(kraus_ops("pdc", 0.1)) == 2
        assert len(kraus_ops("dpc", 0.1)) == 4


class TestEvolveMoments:
    @pytest.mark.parametrize("kind", ALL_KINDS)
    def test_identity_at_p_zero(self, kind):
        m0 = collective_moments(ModelParams(N=8, n=3, theta=1.0))
        m1 = evolve_moments(kind, 0.0, m0, 8)
        assert m1 == m0

    def test_adc_full_damping_reaches_ground(self):
        # p = 1 sends every atom to |g>: Jz = -N/2 exactly, and the state is
        # the maximal-j Dicke bottom so <J^2> = (N/2)(N/2 + 1).
        N = 8
        m0 = collective_moments(ModelParams(N=N, n=3, theta=0.8))
        m1 = evolve_moments("adc", 1.0, m0, N)
        assert m1.jz_mean == pytest.approx(-N / 2, abs=1e-12)
        assert m1.jz2_mean == pytest.approx(N**2 / 4, abs=1e-12)
        assert m1.j2_mean == pytest.approx((N / 2) * (N / 2 + 1), abs=1e-12)

    def test_photon_moments_pass_through(self):
        m0 = collective_moments(ModelParams(N=6, n=2, theta=0.9))
        for kind in ALL_KINDS:
            m1 = evolve_moments(kind, 0.37, m0, 6)
            assert m1.n_mean == m0.n_mean
            assert m1.n2fact_mean == m0.n2fact_mean

    def test_pdc_preserves_z_moments(self):
        m0 = collective_moments(ModelParams(N=10, n=4, theta=1.2))
        m1 = evolve_moments("pdc", 0.6, m0, 10)
        assert m1.jz_mean == m0.jz_mean
        assert m1.jz2_mean == m0.jz2_mean

    @pytest.mark.parametrize("kind", ALL_KINDS)
    @pytest.mark.parametrize("p", [0.15, 0.55, 0.9])
    def test_matches_kraus_oracle(self, kind, p):
        params = ModelParams(N=6, n=2, theta=math.pi / 3)
        rho = apply_kraus(reduce_spin_density(build_dark_state(params)), kind, p)
        measured = density_moments(rho, 6)
        predicted = evolve_moments(kind, p, collective_moments(params), 6)
        assert predicted.jz_mean == pytest.approx(measured["jz"], abs=1e-12)
        assert predicted.jz2_mean == pytest.approx(measured["jz2"], abs=1e-12)
        assert predicted.j2_mean == pytest.approx(measured["j2"], abs=1e-12)

    @pytest.mark.parametrize("N,n,theta", [(20, 16, math.pi / 2), (8, 3, 1.0), (12, 5, 2.0)])
    def test_adc_variance_composition_identity(self, N, n, theta):
        # varsigma^2(p) = s^2 varsigma^2(0) + p(1 + s): the cross terms in the
        # evolved variance cancel exactly, leaving this two-term composition.
        m0 = collective_moments(ModelParams(N=N, n=n, theta=theta))

        def varsigma_sq(m):
            var = m.jz2_mean - m.jz_mean**2
            return (4.0 / N**2) * (N * var + m.jz_mean**2)

        v0 = varsigma_sq(m0)
        for p in np.linspace(0.0, 1.0, 21):
            s = 1.0 - p
            m1 = evolve_moments("adc", p, m0, N)
            assert varsigma_sq(m1) == pytest.approx(s**2 * v0 + p * (1 + s), abs=1e-12)


class TestEvolvedSqueezing:
    def test_identity_at_p_zero(self):
        params = ModelParams(N=12, n=5, theta=1.1)
        base = dark_state_squeezing(params)
        for kind in ALL_KINDS:
            rep = evolved_squeezing(kind, 0.0, params)
            assert rep.xi3_sq == pytest.approx(base.xi3_sq, abs=1e-12)
            assert rep.zeta3_sq == pytest.approx(base.zeta3_sq, abs=1e-12)

    def test_adc_full_damping_is_unsqueezed(self):
        rep = evolved_squeezing("adc", 1.0, ModelParams(N=10, n=4, theta=1.0))
        assert rep.xi3_sq == pytest.approx(1.0, abs=1e-12)
        assert rep.zeta3_sq == 0.0

    def test_nonzero_K_rejected(self):
        with pytest.raises(ValueError):
            evolved_squeezing("adc", 0.1, ModelParams(N=6, n=2, theta=1.0, K=0.3))

    def test_single_atom_rejected(self):
        with pytest.raises(ValueError):
            evolved_squeezing("adc", 0.1, ModelParams(N=1, n=1, theta=1.0))

    def test_degenerate_denominator_reports_absent(self):
        # PDC at p = 1 on the balanced Dicke state: <Jz^2> = 0 makes the
        # reference denominator vanish, which must report, not raise.
        rep = evolved_squeezing("pdc", 1.0, ModelParams(N=20, n=10, theta=math.pi / 2))
        assert rep.xi3_sq == math.inf
        assert rep.zeta3_sq == 0.0

    @pytest.mark.parametrize("kind", ALL_KINDS)
    def test_matches_kraus_oracle_along_p(self, kind):
        params = ModelParams(N=6, n=3, theta=1.2)
        N = 6
        rho0 = reduce_spin_density(build_dark_state(params))
        for p in (0.1, 0.45, 0.8):
            rho = apply_kraus(rho0, kind, p)
            m = density_moments(rho, N)
            var = m["jz2"] - m["jz"] ** 2
            vs = (4.0 / N**2) * (N * var + m["jz"] ** 2)
            denom = (4.0 / N**2) * m["j2"] - 2.0 / N
            rep = evolved_squeezing(kind, p, params)
            assert rep.varsigma_sq == pytest.approx(vs, abs=1e-12)
            assert rep.xi3_sq == pytest.approx(vs / denom, abs=1e-11)


class TestEvolvedRho12:
    @pytest.mark.parametrize("kind", ALL_KINDS)
    def test_identity_at_p_zero(self, kind):
        st = rho12(ModelParams(N=10, n=4, theta=1.0))
        out = evolved_rho12(kind, 0.0, st)
        assert out == st

    def test_adc_full_damping_reaches_ground(self):
        st = rho12(ModelParams(N=10, n=4, theta=1.0))
        out = evolved_rho12("adc", 1.0, st)
        assert out.v_minus == pytest.approx(1.0, abs=1e-12)
        assert out.v_plus == 0.0
        assert out.w == pytest.approx(0.0, abs=1e-15)
        assert out.y == pytest.approx(0.0, abs=1e-15)

    def test_dpc_full_damping_is_maximally_mixed(self):
        st = rho12(ModelParams(N=10, n=4, theta=1.0, K=0.4))
        out = evolved_rho12("dpc", 1.0, st)
        for val in (out.v_plus, out.v_minus, out.w):
            assert val == pytest.approx(0.25, abs=1e-14)
        assert out.y == pytest.approx(0.0, abs=1e-15)
        assert abs(complex(out.u)) == pytest.approx(0.0, abs=1e-15)

    def test_pdc_freezes_populations(self):
        st = rho12(ModelParams(N=10, n=4, theta=1.0, K=0.8))
        out = evolved_rho12("pdc", 0.35, st)
        assert out.v_plus == st.v_plus
        assert out.v_minus == st.v_minus
        assert out.w == st.w
        assert out.y == pytest.approx(0.65**2 * st.y, abs=1e-15)
        assert complex(out.u) == pytest.approx(0.65**2 * complex(st.u), abs=1e-15)

    @pytest.mark.parametrize("kind", ALL_KINDS)
    @pytest.mark.parametrize("p", [0.0, 0.3, 0.75, 1.0])
    def test_trace_preserved(self, kind, p):
        st = rho12(ModelParams(N=8, n=3, theta=0.9, K=0.2))
        out = evolved_rho12(kind, p, st)
        tr = out.v_plus + out.v_minus + 2 * out.w
        assert tr == pytest.approx(1.0, abs=1e-12)

    @pytest.mark.parametrize("kind", ALL_KINDS)
    @pytest.mark.parametrize("p", [0.12, 0.5, 0.88])
    def test_matches_kraus_oracle(self, kind, p):
        # Exact route: photon-traced density -> per-site Kraus -> two-site
        # reduction; the element rules must reproduce every element.
        params = ModelParams(N=6, n=2, theta=math.pi / 3)
        rho = apply_kraus(reduce_spin_density(build_dark_state(params)), kind, p)
        r12 = reduce_two_site_density(rho, 6, 1, 2)
        out = evolved_rho12(kind, p, rho12(params), params)
        assert out.v_plus == pytest.approx(r12[0, 0].real, abs=1e-12)
        assert out.v_minus == pytest.approx(r12[3, 3].real, abs=1e-12)
        assert out.w == pytest.approx(r12[1, 1].real, abs=1e-12)
        # K = 0 here, so the exchange coherence is purely real (= y).
        assert out.y == pytest.approx(r12[1, 2].real, abs=1e-12)


class TestEvolvedConcurrence:
    def test_identity_at_p_zero(self):
        params = ModelParams(N=20, n=4, theta=math.pi / 2)
        for kind in ALL_KINDS:
            assert evolved_concurrence(kind, 0.0, params) == pytest.approx(
                concurrence_x(rho12(params)), abs=1e-14
            )

    @pytest.mark.parametrize("kind", ALL_KINDS)
    @pytest.mark.parametrize("p", [0.01, 0.02, 0.05])
    def test_matches_wootters_of_evolved_assembly(self, kind, p):
        # At K = 0 the assembled evolved matrix is the exact evolved reduced
        # state, so the X-formula concurrence equals the eigenvalue recipe.
        params = ModelParams(N=20, n=4, theta=math.pi / 2)
        ev = evolved_rho12(kind, p, rho12(params), params)
        assert evolved_concurrence(kind, p, params) == pytest.approx(
            wootters_concurrence(assemble_x_matrix(ev)), abs=1e-10
        )

    @pytest.mark.parametrize("kind", ALL_KINDS)
    def test_matches_oracle_reduction(self, kind):
        params = ModelParams(N=6, n=2, theta=math.pi / 2)
        for p in (0.005, 0.02):
            rho = apply_kraus(reduce_spin_density(build_dark_state(params)), kind, p)
            r12 = reduce_two_site_density(rho, 6, 1, 2)
            assert evolved_concurrence(kind, p, params) == pytest.approx(
                wootters_concurrence(r12), abs=1e-10
            )

    def test_vanishes_at_full_damping(self):
        params = ModelParams(N=20, n=4, theta=math.pi / 2)
        for kind in ALL_KINDS:
            assert evolved_concurrence(kind, 1.0, params) == 0.0


class TestSuddenDeath:
    def test_adc_squeezing_death(self):
        # N=20, n=16 at theta = pi/2: the squeezing border 1 - xi3^2(p) has
        # its root at p = 4/19 (quadratic in p with the composition law).
        p_star = sudden_death("adc", ModelParams(N=20, n=16, theta=math.pi / 2), "squeezing")
        assert p_star == pytest.approx(4 / 19, abs=1e-7)

    def test_bisection_matches_fine_scan(self):
        params = ModelParams(N=20, n=16, theta=math.pi / 2)
        p_star = sudden_death("adc", params, "concurrence", tol=1e-10)

        def signed(p):
            ev = evolved_rho12("adc", p, rho12(params), params)
            root = math.sqrt(max(ev.v_plus, 0.0) * max(ev.v_minus, 0.0))
            return 2 * max(abs(ev.y) - root, abs(complex(ev.u)) - ev.w)

        # Independent bisection on the same sign function.
        lo, hi = 0.0, 1.0
        assert signed(lo) > 0 and signed(hi) <= 0
        for _ in range(60):
            mid = 0.5 * (lo + hi)
            if signed(mid) <= 0:
                hi = mid
            else:
                lo = mid
        assert p_star == pytest.approx(0.5 * (lo + hi), abs=1e-9)

    def test_death_point_brackets_sign_change(self):
        params = ModelParams(N=20, n=4, theta=math.pi / 2)
        p_star = sudden_death("dpc", params, "concurrence", tol=1e-9)
        assert p_star is not None
        assert evolved_concurrence("dpc", p_star - 1e-6, params) > 0
        assert evolved_concurrence("dpc", p_star + 1e-6, params) == 0.0

    def test_not_initially_positive(self):
        # w = 0 at theta = 0 so concurrence starts at zero.
        with pytest.raises(ValueError):
            sudden_death("adc", ModelParams(N=6, n=3, theta=0.0), "concurrence")
        # n = 0 has xi3^2 = 1 exactly: not squeezed at p = 0.
        with pytest.raises(ValueError):
            sudden_death("adc", ModelParams(N=6, n=0, theta=1.0), "squeezing")

    def test_unknown_quantity(self):
        with pytest.raises(ValueError):
            sudden_death("adc", ModelParams(N=6, n=2, theta=1.0), "magic")
