import numpy as np
import pytest

from loopforms import caloron, connections as cn, formscalc as fc, sampling

RNG = np.random.default_rng(37)
N = 32


def _flat_connection(dim, n=2):
    zero = np.zeros((N, n, n), dtype=complex)
    return cn.LGConnectionData(
        fc.zero_form(dim, 1, zero), lambda p: zero, dim, N, n
    )


class TestAssembly:
    def test_maurer_cartan_flat(self):
        # A = 0, Phi = 0: the assembled field is Theta alone, curvature ~ 0
        c = _flat_connection(2)
        resid = caloron.g_curvature_transport_check(c, [np.zeros(2)])
        assert resid < 1e-6

    def test_theta_readout_is_higgs(self):
        c = sampling.random_lg_connection(RNG, 2, N, 2)
        field = caloron.to_g_connection(c)
        x = 0.3 * RNG.standard_normal(2)
        coeffs = field.coeffs(x, np.zeros(field.chart.group_dim))
        assert np.max(np.abs(coeffs[field.chart.theta_index] - c.phi(x))) < 1e-14

    def test_base_readout_is_connection(self):
        c = sampling.random_lg_connection(RNG, 2, N, 2)
        field = caloron.to_g_connection(c)
        x = 0.3 * RNG.standard_normal(2)
        coeffs = field.coeffs(x, np.zeros(field.chart.group_dim))
        for i in range(2):
            assert np.max(np.abs(coeffs[i] - c.A.coeff(x, (i,)))) < 1e-14

    def test_twisted_base_readout_couples_a(self):
        c = sampling.random_lgxs1_connection(RNG, 2, N, 2)
        field = caloron.to_g_connection_twisted(c)
        x = 0.3 * RNG.standard_normal(2)
        coeffs = field.coeffs(x, np.zeros(field.chart.group_dim))
        phi = c.phi(x)
        for i in range(2):
            want = c.A.coeff(x, (i,)) + float(c.a.coeff(x, (i,))) * phi
            assert np.max(np.abs(coeffs[i] - want)) < 1e-14

    def test_twisted_theta_readout(self):
        c = sampling.random_lgxs1_connection(RNG, 2, N, 2)
        field = caloron.to_g_connection_twisted(c)
        x = 0.3 * RNG.standard_normal(2)
        coeffs = field.coeffs(x, np.zeros(field.chart.group_dim))
        assert np.max(np.abs(coeffs[field.chart.theta_index] - c.phi(x))) < 1e-14

    def test_twisted_reduces_when_a_zero(self):
        base = sampling.random_lg_connection(RNG, 2, N, 2)
        ext = cn.LGxS1ConnectionData(
            base.A, fc.FormField(1, 2, lambda p, idx: 0.0), base.phi, 2, N, 2
        )
        f1 = caloron.to_g_connection(base)
        f2 = caloron.to_g_connection_twisted(ext)
        x = 0.3 * RNG.standard_normal(2)
        u = 0.2 * RNG.standard_normal(f1.chart.group_dim)
        assert np.max(np.abs(f1.coeffs(x, u) - f2.coeffs(x, u))) < 1e-13


class TestTransport:
    def test_random_data(self):
        c = sampling.random_lg_connection(RNG, 2, N, 2)
        pts = [0.3 * RNG.standard_normal(2) for _ in range(2)]
        assert caloron.g_curvature_transport_check(c, pts) < 1e-4

    def test_step_refinement_quadratic(self):
        # probed at steps where truncation dominates round-off; at the
        # default 1e-4 step the residual sits at ~1e-10 already
        c = sampling.random_lg_connection(RNG, 2, N, 2)
        pts = [0.3 * RNG.standard_normal(2)]
        chart1 = caloron.ExtendedChart(2, N, 2, fd_step=2e-2)
        chart2 = caloron.ExtendedChart(2, N, 2, fd_step=1e-2)
        r1 = caloron.g_curvature_transport_check(c, pts, chart=chart1)
        r2 = caloron.g_curvature_transport_check(c, pts, chart=chart2)
        assert r2 < 0.5 * r1
        assert r2 > 0.1 * r1  # genuinely second order, not super-convergent

    def test_moved_base_point(self):
        c = sampling.random_lg_connection(RNG, 2, N, 2)
        g0 = sampling.random_group(RNG, 2, 0.8)
        chart = caloron.ExtendedChart(2, N, 2, g0=g0)
        u = 0.2 * RNG.standard_normal(chart.group_dim)
        pts = [0.3 * RNG.standard_normal(2)]
        assert caloron.g_curvature_transport_check(c, pts, chart=chart, u=u) < 1e-4

    def test_twisted_random_data(self):
        c = sampling.random_lgxs1_connection(RNG, 2, N, 2)
        pts = [0.3 * RNG.standard_normal(2) for _ in range(2)]
        assert caloron.g_curvature_transport_check_twisted(c, pts) < 1e-4

    def test_twisted_reduces_to_untwisted(self):
        base = sampling.random_lg_connection(RNG, 2, N, 2)
        ext = cn.LGxS1ConnectionData(
            base.A, fc.FormField(1, 2, lambda p, idx: 0.0), base.phi, 2, N, 2
        )
        pts = [0.3 * RNG.standard_normal(2)]
        r1 = caloron.g_curvature_transport_check(base, pts)
        r2 = caloron.g_curvature_transport_check_twisted(ext, pts)
        assert abs(r1 - r2) < 1e-10

    def test_twisted_term_isolation(self):
        # A = 0 and constant Phi isolates the f Phi and dPhi terms
        dim = 2
        zero = np.zeros((N, 2, 2), dtype=complex)
        phi_const = sampling.random_algebra(RNG, 2, 0.7)
        a = sampling.random_real_one_form(RNG, dim)
        c = cn.LGxS1ConnectionData(
            fc.zero_form(dim, 1, zero),
            a,
            lambda p: np.broadcast_to(phi_const, (N, 2, 2)).copy(),
            dim, N, 2,
        )
        pts = [0.3 * RNG.standard_normal(dim)]
        assert caloron.g_curvature_transport_check_twisted(c, pts) < 1e-4


class TestRoundTrip:
    def test_roundtrip_is_identity(self):
        c = sampling.random_lg_connection(RNG, 2, N, 2)
        back = caloron.from_g_connection(caloron.to_g_connection(c))
        p = 0.3 * RNG.standard_normal(2)
        for i in range(2):
            assert np.max(np.abs(back.A.coeff(p, (i,)) - c.A.coeff(p, (i,)))) < 1e-10
        assert np.max(np.abs(back.phi(p) - c.phi(p))) < 1e-10

    def test_roundtrip_off_identity_base_point(self):
        c = sampling.random_lg_connection(RNG, 2, N, 2)
        g0 = sampling.random_group(RNG, 2, 0.5)
        chart = caloron.ExtendedChart(2, N, 2, g0=g0)
        back = caloron.from_g_connection(caloron.to_g_connection(c, chart))
        p = 0.3 * RNG.standard_normal(2)
        for i in range(2):
            assert np.max(np.abs(back.A.coeff(p, (i,)) - c.A.coeff(p, (i,)))) < 1e-8
        assert np.max(np.abs(back.phi(p) - c.phi(p))) < 1e-8

    def test_pure_maurer_cartan_reads_zero(self):
        c = _flat_connection(2)
        back = caloron.from_g_connection(caloron.to_g_connection(c))
        p = np.zeros(2)
        assert np.max(np.abs(back.A.coeff(p, (0,)))) < 1e-14
        assert np.max(np.abs(back.phi(p))) < 1e-14

    def test_pure_dtheta_term_reads_higgs(self):
        xi = sampling.bandlimited_algebra_loop(RNG, N, 2)
        chart = caloron.ExtendedChart(2, N, 2)

        def coeffs(x, u):
            out = np.zeros((chart.total_dim, N, 2, 2), dtype=complex)
            out[chart.theta_index] = xi
            return out

        back = caloron.from_g_connection(caloron.GConnectionField(chart, coeffs))
        assert np.max(np.abs(back.phi(np.zeros(2)) - xi)) < 1e-14


class TestPontrjagyn:
    def test_flat_is_zero(self):
        c = _flat_connection(3)
        form = caloron.pontrjagyn_fiber_integral(c)
        assert fc.max_coeff(form, [np.zeros(3)]) < 1e-15

    def test_matches_string_form(self):
        c = sampling.random_lg_connection(RNG, 3, N, 2)
        p1 = caloron.pontrjagyn_fiber_integral(c)
        s = cn.string_form_lg(c)
        diff = fc.form_sum([p1, s], [1.0, -1.0])
        assert fc.max_coeff(diff, [0.3 * RNG.standard_normal(3)]) < 1e-4

    def test_scaling_bilinearity(self):
        # doubling the pairing normalization doubles both routes identically
        c = sampling.random_lg_connection(RNG, 3, N, 2)
        p1 = caloron.pontrjagyn_fiber_integral(c)
        s = cn.string_form_lg(c)
        p = 0.3 * RNG.standard_normal(3)
        idx = (0, 1, 2)
        assert 2 * p1.coeff(p, idx) == pytest.approx(
            2 * s.coeff(p, idx), abs=2e-4
        )

    def test_twisted_matches_string_form(self):
        c = sampling.random_lgxs1_connection(RNG, 3, N, 2)
        p1 = caloron.pontrjagyn_fiber_integral_twisted(c)
        s = cn.string_form_lgxs1(c)
        diff = fc.form_sum([p1, s], [1.0, -1.0])
        assert fc.max_coeff(diff, [0.3 * RNG.standard_normal(3)]) < 1e-4

    def test_twisted_reduces_when_a_zero(self):
        base = sampling.random_lg_connection(RNG, 3, N, 2)
        ext = cn.LGxS1ConnectionData(
            base.A, fc.FormField(1, 3, lambda p, idx: 0.0), base.phi, 3, N, 2
        )
        f1 = caloron.pontrjagyn_fiber_integral(base)
        f2 = caloron.pontrjagyn_fiber_integral_twisted(ext)
        diff = fc.form_sum([f1, f2], [1.0, -1.0])
        assert fc.max_coeff(diff, [0.3 * RNG.standard_normal(3)]) < 1e-12

    def test_dimension_guard(self):
        c = sampling.random_lg_connection(RNG, 2, N, 2)
        with pytest.raises(ValueError):
            caloron.pontrjagyn_fiber_integral(c)


class TestLoopBundleSlice:
    def test_theta_independent_specialization(self):
        dim = 3
        consts = [sampling.random_algebra(RNG, 2, 0.6) for _ in range(dim)]
        polys = [sampling.random_poly(RNG, dim) for _ in range(dim)]

        def A_coeff(p, idx):
            (i,) = idx
            return np.broadcast_to(polys[i](p) * consts[i], (N, 2, 2)).copy()

        phi_const = sampling.random_algebra(RNG, 2, 0.5)
        c = cn.LGConnectionData(
            fc.FormField(1, dim, A_coeff),
            lambda p: np.broadcast_to(phi_const, (N, 2, 2)).copy(),
            dim, N, 2,
        )
        pts = [0.3 * RNG.standard_normal(dim)]
        assert caloron.g_curvature_transport_check(c, pts) < 1e-5
        p1 = caloron.pontrjagyn_fiber_integral(c)
        s = cn.string_form_lg(c)
        diff = fc.form_sum([p1, s], [1.0, -1.0])
        assert fc.max_coeff(diff, pts) < 1e-5
