import math

import numpy as np
import pytest

from specsing import kernels
from specsing.barrier import BarrierSpec, m22_residual
from specsing.locus import (
    BranchLabel,
    F_of,
    G_of,
    Q_of,
    R_of,
    q_of,
    r_of,
    solve_sigma,
    trace_curve,
)

B1 = BranchLabel(n=1, eps=-1)
B2 = BranchLabel(n=2, eps=-1)
B3 = BranchLabel(n=3, eps=-1)


class TestBranchLabel:
    def test_n_zero_forces_plus(self):
        BranchLabel(n=0, eps=1)
        with pytest.raises(ValueError):
            BranchLabel(n=0, eps=-1)

    def test_bad_eps(self):
        with pytest.raises(ValueError):
            BranchLabel(n=1, eps=0)

    def test_negative_n(self):
        with pytest.raises(ValueError):
            BranchLabel(n=-1, eps=1)


class TestClosedForms:
    def test_q_frozen(self):
        # rho=0, y=0.75, alpha_k=2 -> exactly sqrt(2)
        assert q_of(0.0, 0.75, 2.0) == pytest.approx(math.sqrt(2), rel=1e-14)

    def test_q_odd_in_y(self):
        assert q_of(0.3, -1.2, 1.5) == -q_of(0.3, 1.2, 1.5)

    def test_r_frozen(self):
        assert r_of(0.0, 0.75, 2.0) == pytest.approx(3 * math.sqrt(2), rel=1e-14)

    def test_Q_log_value(self):
        # rho=-3, y=0: asinh(4/3) = ln 3
        assert Q_of(-3.0, 0.0) == pytest.approx(math.log(3), rel=1e-14)

    def test_Q_quartic_oracle(self):
        # sinh(Q) solves sinh^4 - (4(1-rho)/den) sinh^2 - 4(1-rho)^2 y^2/den^2 = 0
        rho, y = 0.5, 1.0
        q = Q_of(rho, y)
        assert q == pytest.approx(math.asinh(2.19737), rel=1e-6)
        den = (1 - rho) ** 2 * y * y + rho * rho
        s2 = math.sinh(q) ** 2
        quartic = s2 * s2 - 4 * (1 - rho) / den * s2 - 4 * (1 - rho) ** 2 * y * y / den**2
        assert abs(quartic) < 1e-12

    def test_R_frozen(self):
        # rho=0.5, y=0: arccos argument is exactly 1
        assert R_of(B1, 0.5, 0.0) == pytest.approx(math.pi, rel=1e-14)
        assert R_of(BranchLabel(n=0, eps=1), 0.5, 0.0) == 0.0

    def test_G_frozen(self):
        assert G_of(B1, 0.5, 0.0) == pytest.approx(math.pi / math.sqrt(2), rel=1e-14)

    def test_degenerate_origin_rejected(self):
        with pytest.raises(ValueError):
            Q_of(0.0, 0.0)

    def test_small_y_stability(self):
        # the naive sqrt(y^2+1)-1 forms lose ~8 digits here; the stable
        # rewrites must keep G smooth down to tiny y
        g1 = G_of(B1, 0.5, 1e-9)
        g2 = G_of(B1, 0.5, 2e-9)
        g0 = G_of(B1, 0.5, 0.0)
        assert g1 == pytest.approx(g0, rel=1e-12)
        assert g2 == pytest.approx(g0, rel=1e-12)


class TestLocusFunction:
    def test_bracketing_sign_change(self):
        # frozen signs on the n=2, rho=0.3 slice
        assert F_of(B2, 0.3, 0.5) == pytest.approx(5.758011, rel=1e-5)
        assert F_of(B2, 0.3, 1.0) == pytest.approx(-3.106192, rel=1e-5)

    def test_matches_backend_grid(self):
        ys = np.geomspace(1e-3, 1e3, 200)
        grid = kernels.f_grid(2, -1, 0.3, ys)
        scalars = np.array([F_of(B2, 0.3, y) for y in ys])
        np.testing.assert_allclose(grid, scalars, rtol=1e-13, atol=1e-300)


class TestSolveSigma:
    def test_rho_07_single_point(self):
        pts = solve_sigma(B1, 0.7)
        assert len(pts) == 1
        p = pts[0]
        assert p.sigma == pytest.approx(0.6168308757, rel=1e-8)
        assert p.alpha_k == pytest.approx(1.3631373392, rel=1e-8)
        assert p.residual < 1e-9

    def test_rho_06_below_asymptote_is_empty(self):
        assert solve_sigma(B1, 0.6) == []

    def test_n2_rho_03_frozen(self):
        pts = solve_sigma(B2, 0.3)
        assert len(pts) == 1
        assert pts[0].sigma == pytest.approx(0.5754487228, rel=1e-8)
        assert pts[0].alpha_k == pytest.approx(2.7101982625, rel=1e-8)

    def test_points_realize_singularity(self):
        for p in solve_sigma(B2, 0.3) + solve_sigma(B3, 0.3):
            spec = BarrierSpec(alpha=p.alpha_k, z=complex(p.rho, p.sigma))
            assert m22_residual(spec, 1.0) < 1e-9

    def test_sigma_decreases_with_n(self):
        s2 = solve_sigma(B2, 0.3)[0].sigma
        s3 = solve_sigma(B3, 0.3)[0].sigma
        s4 = solve_sigma(BranchLabel(n=4, eps=-1), 0.3)[0].sigma
        assert s2 > s3 > s4 > 0

    def test_plus_branch_yields_nothing(self):
        for rho in (0.3, 0.7, 0.9):
            assert solve_sigma(BranchLabel(n=1, eps=1), rho) == []
            assert solve_sigma(BranchLabel(n=0, eps=1), rho) == []

    def test_mirror_sigma_negative_fails_certification(self):
        # sigma < 0 (gain flipped to loss) must not certify
        p = solve_sigma(B1, 0.7)[0]
        spec = BarrierSpec(alpha=p.alpha_k, z=complex(p.rho, -p.sigma))
        assert m22_residual(spec, 1.0) > 1e-3

    def test_rho_at_least_one_rejected(self):
        with pytest.raises(ValueError):
            solve_sigma(B1, 1.0)


class TestTraceCurve:
    def test_ordering_and_residuals(self):
        pts = trace_curve(B1, 0.7, 0.95, 12)
        assert pts
        rhos = [p.rho for p in pts]
        assert rhos == sorted(rhos, reverse=True)
        assert all(p.residual < 1e-9 for p in pts)

    def test_empty_slices_skipped(self):
        # n=1 has no points below the asymptote near rho = 2/3
        pts = trace_curve(B1, 0.2, 0.5, 6)
        assert pts == []

    def test_bad_range(self):
        with pytest.raises(ValueError):
            trace_curve(B1, 0.9, 0.7, 5)
        with pytest.raises(ValueError):
            trace_curve(B1, 0.5, 1.0, 5)


class TestTrigConsistency:
    @pytest.mark.parametrize("branch,rho", [(B1, 0.7), (B2, 0.3), (B3, 0.5)])
    def test_cos_sin_products_at_solutions(self, branch, rho):
        # cos(r) cosh(q) = +-(1 - (|1-rho| s)^2)/den and
        # sin(r) sinh(q) = -+ 2(1-rho) y/den with one consistent sign
        p = solve_sigma(branch, rho)[0]
        s = math.sqrt(p.y**2 + 1)
        den = (1 - rho) ** 2 * p.y**2 + rho**2
        q = q_of(rho, p.y, p.alpha_k)
        r = r_of(rho, p.y, p.alpha_k)
        ar_s = abs(1 - rho) * s
        num_a = rho * s - p.y**2 / (s + 1)  # stable 1 - (1-rho) s form piece
        lhs1 = math.cos(r) * math.cosh(q)
        lhs2 = math.sin(r) * math.sinh(q)
        rhs1 = num_a * (1 + ar_s) / den
        rhs2 = 2 * (1 - rho) * p.y / den
        ok_plus = abs(lhs1 - rhs1) < 1e-9 and abs(lhs2 + rhs2) < 1e-9
        ok_minus = abs(lhs1 + rhs1) < 1e-9 and abs(lhs2 - rhs2) < 1e-9
        assert ok_plus or ok_minus


class TestBackends:
    def test_backend_reported(self):
        assert kernels.BACKEND in ("compiled", "python")

    def test_fallback_agrees_with_active_backend(self):
        from specsing import _kernels_py
        ys = np.geomspace(1e-4, 1e4, 500)
        for n in (1, 2, 5):
            a = kernels.f_grid(n, -1, 0.4, ys)
            b = _kernels_py.f_grid(n, -1, 0.4, ys)
            # atol floor: libm vs fused-op rounding differs in the F -> 0 tail
            np.testing.assert_allclose(a, b, rtol=1e-12, atol=1e-15)
            for y in (1e-3, 0.7, 12.0):
                assert kernels.f_scalar(n, -1, 0.4, y) == pytest.approx(
                    _kernels_py.f_scalar(n, -1, 0.4, y), rel=1e-13)
