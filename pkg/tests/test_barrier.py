import cmath
import math

import numpy as np
import pytest

from specsing.barrier import (
    BarrierSpec,
    SpectralSingularityError,
    amplitudes,
    f_func,
    m22_residual,
    oracle_transfer_matrix,
    reduced_variables,
    transfer_matrix,
    wavefunction_profile,
)


class TestFFunc:
    def test_chi_zero(self):
        # (1+2)^2 - (1-2)^2 = 8
        assert f_func(2, 0) == pytest.approx(8)

    def test_w_one_kills_second_term(self):
        assert f_func(1, 0.7) == pytest.approx(4 * cmath.exp(-1.4j))

    def test_w_zero_vanishes_identically(self):
        for chi in (0.1, 1.0, 7.3):
            assert f_func(0, chi) == pytest.approx(0)


class TestTransferMatrix:
    def test_free_case_is_identity(self):
        m = transfer_matrix(BarrierSpec(alpha=1.3, z=0), 2.0)
        assert m.m11 == pytest.approx(1)
        assert m.m22 == pytest.approx(1)
        assert abs(m.m12) < 1e-15 and abs(m.m21) < 1e-15

    def test_removable_point_analytic_limit(self):
        # z = k^2 makes w = 0; entries must hit the analytic limits
        alpha, k = 0.8, 1.5
        chi = alpha * k
        m = transfer_matrix(BarrierSpec(alpha=alpha, z=k * k), k)
        assert m.m11 == pytest.approx(cmath.exp(-2j * chi) * (1 + 1j * chi),
                                      rel=1e-12)
        assert m.m22 == pytest.approx(cmath.exp(2j * chi) * (1 - 1j * chi),
                                      rel=1e-12)
        assert m.m12 == pytest.approx(-1j * chi, rel=1e-12)

    def test_near_removable_point_is_continuous(self):
        alpha, k = 0.8, 1.5
        m0 = transfer_matrix(BarrierSpec(alpha=alpha, z=k * k), k)
        m1 = transfer_matrix(BarrierSpec(alpha=alpha, z=k * k * (1 + 1e-9)), k)
        assert m1.m22 == pytest.approx(m0.m22, rel=1e-7)

    @pytest.mark.parametrize("z,alpha,k", [
        (0.5 + 0.3j, 1.0, 1.0),
        (-2.0 + 0.1j, 0.7, 2.5),
        (3.0 - 0.8j, 2.0, 1.3),
        (0.9, 5.0, 1.0),
    ])
    def test_unit_determinant(self, z, alpha, k):
        m = transfer_matrix(BarrierSpec(alpha=alpha, z=z), k)
        assert abs(m.det - 1) < 1e-12

    @pytest.mark.parametrize("z,alpha,k", [
        (0.5 + 0.3j, 1.0, 1.0),
        (-2.0 + 0.1j, 0.7, 2.5),
        (3.0 - 0.8j, 2.0, 1.3),
        (1.2 - 0.4j, 0.3, 0.9),
    ])
    def test_matches_plane_wave_oracle(self, z, alpha, k):
        spec = BarrierSpec(alpha=alpha, z=z)
        m = transfer_matrix(spec, k)
        o = oracle_transfer_matrix(spec, k)
        for name in ("m11", "m12", "m21", "m22"):
            a, b = getattr(m, name), getattr(o, name)
            assert abs(a - b) <= 1e-10 * max(1.0, abs(b))

    def test_real_z_unitarity(self):
        # real potential: |T|^2 + |R|^2 = 1
        for z in (0.4, -1.7, 2.9):
            amp = amplitudes(transfer_matrix(BarrierSpec(alpha=1.1, z=z), 1.3))
            assert abs(amp.t) ** 2 + abs(amp.r_left) ** 2 == pytest.approx(1, abs=1e-12)

    def test_rejects_nonpositive_k(self):
        with pytest.raises(ValueError):
            transfer_matrix(BarrierSpec(alpha=1, z=1j), 0.0)

    def test_rejects_nonpositive_alpha(self):
        with pytest.raises(ValueError):
            BarrierSpec(alpha=0, z=1j)


class TestAmplitudes:
    def test_transmission_is_inverse_m22(self):
        m = transfer_matrix(BarrierSpec(alpha=1.0, z=0.5 + 0.2j), 1.0)
        amp = amplitudes(m)
        assert amp.t == pytest.approx(1 / m.m22)
        assert amp.r_left == pytest.approx(-m.m21 / m.m22)
        assert amp.r_right == pytest.approx(m.m12 / m.m22)

    def test_singular_matrix_raises(self):
        from specsing.barrier import TransferMatrix
        with pytest.raises(SpectralSingularityError):
            amplitudes(TransferMatrix(m11=1, m12=0, m21=0, m22=0))


class TestResidual:
    def test_free_case_value(self):
        # w = 1: |f| = 4, denominator = |2|^2 + 0 = 4
        assert m22_residual(BarrierSpec(alpha=0.7, z=0), 2.0) == pytest.approx(1.0)

    def test_real_z_never_singular(self):
        # a real barrier has no spectral singularity: residual stays large
        rng = np.random.default_rng(7)
        vals = []
        for _ in range(200):
            z = rng.uniform(-5, 5)
            alpha = rng.uniform(0.1, 5)
            k = rng.uniform(0.5, 3)
            if abs(1 - z / k**2) < 1e-3:
                continue  # removable point, metric degenerates there
            vals.append(m22_residual(BarrierSpec(alpha=alpha, z=z), k))
        assert min(vals) > 1e-3


class TestReducedVariables:
    def test_frozen_q_r(self):
        # rho=0, y=0.75, alpha*k=2: q = sqrt(2), r = 3 sqrt(2)
        rv = reduced_variables(BarrierSpec(alpha=2.0, z=0.75j), 1.0)
        assert rv.rho == 0 and rv.sigma == pytest.approx(0.75)
        assert rv.q == pytest.approx(math.sqrt(2), rel=1e-14)
        assert rv.r == pytest.approx(3 * math.sqrt(2), rel=1e-14)

    def test_w_branch(self):
        rv = reduced_variables(BarrierSpec(alpha=1.0, z=2 + 0.5j), 1.0)
        assert rv.w.imag >= 0
        assert rv.w * rv.w == pytest.approx(1 - (2 + 0.5j))


class TestWavefunction:
    @pytest.mark.parametrize("which", ["left-incident", "right-incident"])
    def test_continuity_at_edges(self, which):
        spec = BarrierSpec(alpha=1.0, z=0.8 + 0.3j)
        k = 1.2
        h = 1e-9
        for edge in (-spec.alpha, spec.alpha):
            lo, hi = wavefunction_profile(spec, k, which,
                                          [edge - h, edge + h])
            assert abs(hi - lo) < 1e-6

    @pytest.mark.parametrize("which", ["left-incident", "right-incident"])
    def test_satisfies_schrodinger_equation(self, which):
        # finite-difference check of psi'' + (k^2 - v) psi = 0 in all regions
        spec = BarrierSpec(alpha=1.0, z=0.8 + 0.3j)
        k = 1.2
        h = 1e-4 / k
        for x0, v in ((-2.0, 0.0), (0.3, spec.z), (1.7, 0.0)):
            pm, p0, pp = wavefunction_profile(spec, k, which,
                                              [x0 - h, x0, x0 + h])
            lap = (pp - 2 * p0 + pm) / (h * h)
            res = abs(lap + (k * k - v) * p0) / (k * k * abs(p0))
            assert res < 1e-6

    def test_left_incident_transmitted_side(self):
        spec = BarrierSpec(alpha=1.0, z=0.8 + 0.3j)
        k = 1.2
        amp = amplitudes(transfer_matrix(spec, k))
        x = 3.0
        (psi,) = wavefunction_profile(spec, k, "left-incident", [x])
        assert psi == pytest.approx(amp.t * cmath.exp(1j * k * x))
