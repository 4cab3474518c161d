import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from loopforms import formscalc as fc
from loopforms import sampling
from loopforms.liecore import exponential, su2_basis
from loopforms.loopspace import grid

RNG = np.random.default_rng(11)
X1, X2, X3 = su2_basis()


def dx(i, dim):
    return fc.FormField(1, dim, lambda p, idx: 1.0 if idx == (i,) else 0.0)


class TestEvaluate:
    def test_dx_on_basis_vector(self):
        form = dx(0, 3)
        e0 = np.array([1.0, 0.0, 0.0])
        assert fc.evaluate(form, np.zeros(3), [e0]) == 1.0

    def test_wedge_half_convention(self):
        # (dx1 ^ dx2)(e1, e2) = 1/2
        form = fc.single_term_form(3, (0, 1), 1.0)
        e0, e1 = np.eye(3)[0], np.eye(3)[1]
        assert fc.evaluate(form, np.zeros(3), [e0, e1]) == pytest.approx(0.5)

    def test_repeated_vector_vanishes(self):
        form = fc.single_term_form(3, (0, 2), 1.0)
        v = RNG.standard_normal(3)
        assert abs(fc.evaluate(form, np.zeros(3), [v, v])) < 1e-15

    @settings(max_examples=20, deadline=None)
    @given(st.lists(st.floats(-2, 2), min_size=6, max_size=6))
    def test_alternating(self, flat):
        form = fc.single_term_form(3, (0, 1), 2.3)
        v = np.array(flat[:3])
        w = np.array(flat[3:])
        a = fc.evaluate(form, np.zeros(3), [v, w])
        b = fc.evaluate(form, np.zeros(3), [w, v])
        assert abs(a + b) < 1e-12

    def test_multilinear(self):
        form = fc.single_term_form(4, (1, 3), 1.0)
        p = np.zeros(4)
        v, w, u = (RNG.standard_normal(4) for _ in range(3))
        lhs = fc.evaluate(form, p, [2.0 * v + 0.5 * u, w])
        rhs = 2.0 * fc.evaluate(form, p, [v, w]) + 0.5 * fc.evaluate(form, p, [u, w])
        assert lhs == pytest.approx(rhs, abs=1e-12)


class TestExteriorDerivative:
    def test_constant_coefficients(self):
        form = fc.single_term_form(3, (0,), 1.5)
        d = fc.exterior_derivative(form)
        pts = [RNG.standard_normal(3)]
        assert fc.max_coeff(d, pts) < 1e-12

    def test_coordinate_example(self):
        # d(x2 dx1) = dx2 ^ dx1 = -dx1 ^ dx2, so evaluation on (e1, e2) is -1/2
        form = fc.FormField(1, 2, lambda p, idx: p[1] if idx == (0,) else 0.0)
        d = fc.exterior_derivative(form, 1e-4)
        e0, e1 = np.eye(2)
        for p in (np.zeros(2), np.array([0.7, -0.3])):
            val = fc.evaluate(d, p, [e0, e1])
            assert val == pytest.approx(-0.5, abs=1e-10)

    def test_d_squared_zero(self):
        dim = 3
        polys = [sampling.random_poly(RNG, dim) for _ in range(dim)]
        form = fc.FormField(1, dim, lambda p, idx: polys[idx[0]](p))
        dd = fc.exterior_derivative(fc.exterior_derivative(form, 1e-3), 1e-3)
        assert fc.max_coeff(dd, [RNG.standard_normal(dim) * 0.5]) < 1e-6

    def test_d_squared_zero_polynomial_tight(self):
        # quadratic coefficients: central differences are exact, residual at round-off
        dim = 3
        c = RNG.standard_normal((dim, dim, dim))

        def coeff(p, idx):
            (i,) = idx
            return float(p @ c[i] @ p)

        form = fc.FormField(1, dim, coeff)
        dd = fc.exterior_derivative(fc.exterior_derivative(form, 1e-3), 1e-3)
        assert fc.max_coeff(dd, [RNG.standard_normal(dim) * 0.5]) < 1e-10

    def test_zero_form_gradient(self):
        # d of a 0-form is its gradient 1-form
        dim = 3
        poly = sampling.random_poly(RNG, dim)
        f0 = fc.FormField(0, dim, lambda p, idx: poly(p))
        df = fc.exterior_derivative(f0, 1e-5)
        p = 0.4 * RNG.standard_normal(dim)
        h = 1e-5
        for i in range(dim):
            e = np.zeros(dim)
            e[i] = h
            want = (poly(p + e) - poly(p - e)) / (2 * h)
            assert df.coeff(p, (i,)) == pytest.approx(want, abs=1e-9)
        # evaluate of a 0-form takes zero vectors
        assert fc.evaluate(f0, p, []) == poly(p)

    def test_richardson_improves(self):
        form = fc.FormField(1, 2, lambda p, idx: np.sin(3 * p[0]) * np.cos(2 * p[1]))
        plain = fc.exterior_derivative(form, 1e-3)
        better = fc.exterior_derivative(form, 1e-3, richardson=True)

        def exact(p):
            return (
                -2 * np.sin(3 * p[0]) * np.sin(2 * p[1])
                - 3 * np.cos(3 * p[0]) * np.cos(2 * p[1])
            ) if False else None

        # compare d(coefficients) against analytic mixed partials
        p = np.array([0.3, 0.4])
        # coefficient of dx0^dx1 from d: d_0 c_1 - d_1 c_0 with c_0 = c_1 = same
        truth = (
            3 * np.cos(3 * p[0]) * np.cos(2 * p[1])
            + 2 * np.sin(3 * p[0]) * np.sin(2 * p[1])
        )
        err_plain = abs(plain.coeff(p, (0, 1)) - truth)
        err_rich = abs(better.coeff(p, (0, 1)) - truth)
        assert err_rich < err_plain


class TestWedge:
    def test_bracket_square_collinear(self):
        # A = f(x) dx0 with a fixed direction: [A, A] = 0
        dim = 2
        poly = sampling.random_poly(RNG, dim)

        def coeff(p, idx):
            return poly(p) * X1 if idx == (0,) else np.zeros((2, 2), dtype=complex)

        A = fc.FormField(1, dim, coeff)
        sq = fc.wedge_bracket(A, A)
        assert fc.max_coeff(sq, [RNG.standard_normal(dim)]) < 1e-14

    def test_bracket_square_two_directions(self):
        # A = X1 dx0 + X2 dx1: [A, A](e0, e1) = [A(e0), A(e1)] = X3,
        # and (1/2)[A, A](e0, e1) = X3 / 2
        dim = 2
        vals = {(0,): X1, (1,): X2}
        A = fc.FormField(1, dim, lambda p, idx: vals[tuple(idx)])
        sq = fc.wedge_bracket(A, A)
        e0, e1 = np.eye(2)
        got = np.asarray(fc.evaluate(sq, np.zeros(2), [e0, e1]))
        assert np.max(np.abs(got - X3)) < 1e-14
        assert np.max(np.abs(0.5 * got - 0.5 * X3)) < 1e-14

    def test_bracket_evaluation_vs_bruteforce(self):
        dim = 3
        A = sampling.random_loop_one_form(RNG, dim, 8, 2, kmax=1)
        B = sampling.random_loop_one_form(RNG, dim, 8, 2, kmax=1)
        wed = fc.wedge_bracket(A, B)
        p = 0.3 * RNG.standard_normal(dim)
        v, w = RNG.standard_normal(dim), RNG.standard_normal(dim)
        got = fc.evaluate(wed, p, [v, w])

        def contract(form):
            def c(vecs):
                return fc.evaluate(form, p, vecs)

            return c

        # (1/2!)(sum over perms) of [A(v), B(w)]
        want = 0.5 * (
            _mb(fc.evaluate(A, p, [v]), fc.evaluate(B, p, [w]))
            - _mb(fc.evaluate(A, p, [w]), fc.evaluate(B, p, [v]))
        )
        assert np.max(np.abs(np.asarray(got) - want)) < 1e-12

    def test_pair_convention(self):
        # A = xi dx0, B = zeta dx1: <A ^ B>(e0, e1) = (1/2) <xi, zeta>
        dim = 2
        xi = sampling.random_algebra(RNG, 2)
        zeta = sampling.random_algebra(RNG, 2)
        A = fc.single_term_form(dim, (0,), xi)
        B = fc.single_term_form(dim, (1,), zeta)
        pairform = fc.wedge_pair(A, B)
        e0, e1 = np.eye(2)
        got = fc.evaluate(pairform, np.zeros(2), [e0, e1])
        from loopforms.liecore import killing

        assert got == pytest.approx(0.5 * killing(xi, zeta), abs=1e-13)

    def test_pair_zero(self):
        dim = 2
        A = sampling.random_loop_one_form(RNG, dim, 8, 2)
        Z = fc.zero_form(dim, 1, np.zeros((8, 2, 2), dtype=complex))
        pairform = fc.wedge_pair(A, Z)
        assert fc.max_coeff(pairform, [np.zeros(dim)]) == 0.0

    def test_pure_gauge_flatness(self):
        # master convention test: F = dA + (1/2)[A, A] = 0 for A = g^{-1} dg
        dim = 2
        seeds = [sampling.random_algebra(RNG, 2, 0.7) for _ in range(2)]
        polys = [sampling.random_poly(RNG, dim, 0.6) for _ in range(2)]

        def gmap(p):
            return exponential(sum(f(p) * x for f, x in zip(polys, seeds)))

        h = 1e-4

        def A_coeff(p, idx):
            (i,) = idx
            e = np.zeros(dim)
            e[i] = h
            return np.linalg.inv(gmap(p)) @ (gmap(p + e) - gmap(p - e)) / (2 * h)

        A = fc.FormField(1, dim, A_coeff)
        F = fc.form_sum(
            [fc.exterior_derivative(A, h), fc.scale_form(0.5, fc.wedge_bracket(A, A))]
        )
        pts = [0.4 * RNG.standard_normal(dim) for _ in range(4)]
        assert fc.max_coeff(F, pts) < 1e-6


class TestLeibniz:
    def test_pairing_leibniz(self):
        dim = 3
        A = sampling.random_loop_one_form(RNG, dim, 16, 2)
        B = sampling.random_loop_one_form(RNG, dim, 16, 2)
        h = 1e-4
        lhs = fc.exterior_derivative(fc.wedge_pair(A, B), h)
        rhs = fc.form_sum(
            [
                fc.wedge_pair(fc.exterior_derivative(A, h), B),
                fc.wedge_pair(A, fc.exterior_derivative(B, h)),
            ],
            [1.0, -1.0],
        )
        diff = fc.form_sum([lhs, rhs], [1.0, -1.0])
        assert fc.max_coeff(diff, [0.3 * RNG.standard_normal(dim)]) < 1e-6


class TestPullback:
    def test_identity(self):
        dim = 3
        polys = [sampling.random_poly(RNG, dim) for _ in range(dim)]
        form = fc.FormField(1, dim, lambda p, idx: polys[idx[0]](p))
        exact = fc.pullback(form, lambda u: u, dim, jacobian=lambda u: np.eye(dim))
        fd = fc.pullback(form, lambda u: u, dim)
        p = RNG.standard_normal(dim)
        for i in range(dim):
            want = form.coeff(p, (i,))
            assert exact.coeff(p, (i,)) == pytest.approx(want, abs=1e-14)
            assert fd.coeff(p, (i,)) == pytest.approx(want, abs=1e-8)

    def test_parabola(self):
        # pull dx0 back along u -> (u^2, u): get 2u du
        form = dx(0, 2)
        pulled = fc.pullback(form, lambda u: np.array([u[0] ** 2, u[0]]), 1)
        for u0 in (0.3, -0.8):
            got = pulled.coeff(np.array([u0]), (0,))
            assert got == pytest.approx(2 * u0, abs=1e-9)

    def test_commutes_with_d(self):
        target, source = 3, 2
        polys = [sampling.random_poly(RNG, target) for _ in range(target)]
        form = fc.FormField(1, target, lambda p, idx: polys[idx[0]](p))
        mat = RNG.standard_normal((target, source))

        def mapping(u):
            return mat @ u + 0.2 * np.concatenate([u ** 2, [u[0] * u[1]]])

        h = 1e-4
        lhs = fc.exterior_derivative(fc.pullback(form, mapping, source), h)
        rhs = fc.pullback(fc.exterior_derivative(form, h), mapping, source)
        diff = fc.form_sum([lhs, rhs], [1.0, -1.0])
        assert fc.max_coeff(diff, [0.4 * RNG.standard_normal(source)]) < 1e-6


class TestCylinder:
    def test_constant_dtheta_integral(self):
        # w = f(x) dtheta -> 2 pi f(x)
        dim = 2
        N = 16
        poly = sampling.random_poly(RNG, dim)
        beta = fc.zero_form(dim, 1, np.zeros(N))
        gamma = fc.FormField(0, dim, lambda p, idx: np.full(N, poly(p)))
        out = fc.fiber_integrate_s1(fc.CylinderForm(beta, gamma))
        p = RNG.standard_normal(dim)
        assert out.coeff(p, ()) == pytest.approx(2 * np.pi * poly(p), rel=1e-12)

    def test_pure_oscillation_integrates_to_zero(self):
        dim = 2
        N = 16
        beta = fc.zero_form(dim, 2, np.zeros(N))
        gamma = fc.FormField(
            1, dim, lambda p, idx: np.sin(grid(N)) if idx == (0,) else np.zeros(N)
        )
        out = fc.fiber_integrate_s1(fc.CylinderForm(beta, gamma))
        assert abs(out.coeff(np.zeros(dim), (0,))) < 1e-13

    def test_no_dtheta_component(self):
        dim = 2
        N = 16
        polys = {
            (0, 1): sampling.random_poly(RNG, dim),
        }
        beta = fc.FormField(2, dim, lambda p, idx: np.full(N, polys[tuple(idx)](p)))
        gamma = fc.zero_form(dim, 1, np.zeros(N))
        out = fc.fiber_integrate_s1(fc.CylinderForm(beta, gamma))
        assert fc.max_coeff(out, [RNG.standard_normal(dim)]) == 0.0


def _mb(a, b):
    a, b = np.asarray(a), np.asarray(b)
    return a @ b - b @ a
