import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from loopforms import sampling
from loopforms.liecore import su2_basis
from loopforms.loopspace import (
    SemiDirectAlgebraElement,
    SemiDirectGroupElement,
    circle_integral,
    exp_loop,
    grid,
    loop_derivative,
    loop_inverse,
    rotate,
    semidirect_adjoint,
    semidirect_adjoint_inverse,
    semidirect_bracket,
    semidirect_inverse,
    semidirect_multiply,
    z_map,
)

RNG = np.random.default_rng(7)
N = 64
X1, X2, X3 = su2_basis()


class TestDerivative:
    def test_constant_loop(self):
        const = np.broadcast_to(X1, (N, 2, 2)).copy()
        assert np.max(np.abs(loop_derivative(const))) < 1e-15

    def test_bandlimited_exact(self):
        theta = grid(N)
        xi = np.sin(theta)[:, None, None] * X1
        want = np.cos(theta)[:, None, None] * X1
        assert np.max(np.abs(loop_derivative(xi) - want)) < 1e-13

    def test_bandlimited_exact_small_grid(self):
        theta = grid(4)
        xi = np.sin(theta)
        assert np.max(np.abs(loop_derivative(xi) - np.cos(theta))) < 1e-14

    def test_integration_by_parts(self):
        xi = sampling.bandlimited_algebra_loop(RNG, N, 2)
        zeta = sampling.bandlimited_algebra_loop(RNG, N, 2)

        def pair(a, b):
            return circle_integral(np.real(-np.einsum("jab,jba->j", a, b)))

        total = pair(xi, loop_derivative(zeta)) + pair(loop_derivative(xi), zeta)
        assert abs(total) < 1e-12

    def test_rejects_tiny_grid(self):
        with pytest.raises(ValueError):
            loop_derivative(np.zeros(2))


class TestIntegral:
    def test_constant(self):
        assert circle_integral(np.full(N, 3.0)) == pytest.approx(6 * np.pi)
        assert circle_integral(3.0) == pytest.approx(6 * np.pi)

    def test_sine_cancels(self):
        assert abs(circle_integral(np.sin(grid(N)))) < 1e-14

    def test_sine_squared(self):
        assert circle_integral(np.sin(grid(N)) ** 2) == pytest.approx(
            np.pi, abs=1e-12
        )


class TestRotate:
    def test_zero(self):
        s = sampling.bandlimited_scalar_loop(RNG, N)
        assert np.array_equal(rotate(0.0, s), s)

    def test_grid_shift(self):
        s = sampling.bandlimited_scalar_loop(RNG, N)
        got = rotate(2 * np.pi / N, s)
        assert np.allclose(got, np.roll(s, 1))

    def test_exact_on_bandlimited(self):
        theta = grid(N)
        phi = 1.234
        s = np.sin(3 * theta) + 0.25 * np.cos(theta)
        want = np.sin(3 * (theta - phi)) + 0.25 * np.cos(theta - phi)
        assert np.max(np.abs(rotate(phi, s) - want)) < 1e-13

    @settings(max_examples=20, deadline=None)
    @given(st.floats(0, 2 * np.pi), st.floats(0, 2 * np.pi))
    def test_action_composition(self, p1, p2):
        s = np.sin(2 * grid(N)) + 0.3 * np.cos(5 * grid(N))
        lhs = rotate(p1, rotate(p2, s))
        rhs = rotate(p1 + p2, s)
        assert np.max(np.abs(lhs - rhs)) < 1e-10

    def test_integral_invariance(self):
        xi = sampling.bandlimited_algebra_loop(RNG, N, 2)
        zeta = sampling.bandlimited_algebra_loop(RNG, N, 2)
        phi = 0.987

        def energy(a, b):
            return circle_integral(
                np.real(-np.einsum("jab,jba->j", a, loop_derivative(b)))
            )

        assert energy(rotate(phi, xi), rotate(phi, zeta)) == pytest.approx(
            energy(xi, zeta), abs=1e-10
        )


class TestZMap:
    def test_constant_loop(self):
        g = np.broadcast_to(sampling.random_group(RNG, 2), (N, 2, 2)).copy()
        assert np.max(np.abs(z_map(g))) < 1e-13

    def test_integer_geodesic(self):
        # gamma(theta) = exp(theta m X) closed for X = diag(i, -i), any integer m
        m = 2
        X = np.diag([1j, -1j])
        theta = grid(N)
        gamma = exp_loop(np.einsum("j,ab->jab", m * theta, X))
        want = np.broadcast_to(m * X, (N, 2, 2))
        assert np.max(np.abs(z_map(gamma) - want)) < 1e-10

    def test_cocycle(self):
        g1 = sampling.bandlimited_group_loop(RNG, N, 2)
        g2 = sampling.bandlimited_group_loop(RNG, N, 2)
        lhs = z_map(g1 @ g2)
        rhs = z_map(g1) + g1 @ z_map(g2) @ loop_inverse(g1)
        assert np.max(np.abs(lhs - rhs)) < 1e-9


def _sd_alg(scale=0.5):
    return SemiDirectAlgebraElement(
        sampling.bandlimited_algebra_loop(RNG, N, 2, scale=scale),
        float(RNG.standard_normal()),
    )


def _sd_grp():
    return SemiDirectGroupElement(
        sampling.bandlimited_group_loop(RNG, N, 2), RNG.uniform(0, 2 * np.pi)
    )


class TestSemiDirect:
    def test_bracket_reduces_to_pointwise(self):
        a = SemiDirectAlgebraElement(sampling.bandlimited_algebra_loop(RNG, N, 2), 0.0)
        b = SemiDirectAlgebraElement(sampling.bandlimited_algebra_loop(RNG, N, 2), 0.0)
        got = semidirect_bracket(a, b)
        want = a.loop_part @ b.loop_part - b.loop_part @ a.loop_part
        assert np.max(np.abs(got.loop_part - want)) < 1e-14
        assert got.circle_part == 0.0

    def test_bracket_rotation_generator(self):
        # [(0, x), (zeta, 0)] = (-x dzeta, 0)
        zeta = sampling.bandlimited_algebra_loop(RNG, N, 2)
        a = SemiDirectAlgebraElement(np.zeros_like(zeta), 1.7)
        b = SemiDirectAlgebraElement(zeta, 0.0)
        got = semidirect_bracket(a, b)
        assert np.max(np.abs(got.loop_part + 1.7 * loop_derivative(zeta))) < 1e-12

    def test_bracket_antisymmetric(self):
        a = _sd_alg()
        got = semidirect_bracket(a, a)
        assert np.max(np.abs(got.loop_part)) < 1e-13
        assert got.circle_part == 0.0

    def test_jacobi(self):
        a, b, c = _sd_alg(), _sd_alg(), _sd_alg()
        acc = semidirect_bracket(a, semidirect_bracket(b, c)).loop_part
        acc = acc + semidirect_bracket(b, semidirect_bracket(c, a)).loop_part
        acc = acc + semidirect_bracket(c, semidirect_bracket(a, b)).loop_part
        assert np.max(np.abs(acc)) < 1e-10

    def test_adjoint_identity(self):
        a = _sd_alg()
        g = SemiDirectGroupElement(
            np.broadcast_to(np.eye(2, dtype=complex), (N, 2, 2)).copy(), 0.0
        )
        got = semidirect_adjoint(g, a)
        assert np.max(np.abs(got.loop_part - a.loop_part)) < 1e-14
        assert got.circle_part == a.circle_part

    def test_adjoint_reduces_to_loop_adjoint(self):
        xi = sampling.bandlimited_algebra_loop(RNG, N, 2)
        a = SemiDirectAlgebraElement(xi, 0.0)
        gam = sampling.bandlimited_group_loop(RNG, N, 2)
        g = SemiDirectGroupElement(gam, 0.0)
        got = semidirect_adjoint(g, a)
        want = gam @ xi @ loop_inverse(gam)
        assert np.max(np.abs(got.loop_part - want)) < 1e-13

    def test_adjoint_bracket_homomorphism(self):
        g = _sd_grp()
        a, b = _sd_alg(), _sd_alg()
        lhs = semidirect_adjoint(g, semidirect_bracket(a, b))
        rhs = semidirect_bracket(semidirect_adjoint(g, a), semidirect_adjoint(g, b))
        assert np.max(np.abs(lhs.loop_part - rhs.loop_part)) < 1e-9

    def test_adjoint_inverse_roundtrip(self):
        g = _sd_grp()
        a = _sd_alg()
        back = semidirect_adjoint(g, semidirect_adjoint_inverse(g, a))
        assert np.max(np.abs(back.loop_part - a.loop_part)) < 1e-10

    def test_group_inverse(self):
        g = _sd_grp()
        prod = semidirect_multiply(g, semidirect_inverse(g))
        assert np.max(np.abs(prod.loop_part - np.eye(2))) < 1e-12
        assert min(prod.angle, 2 * np.pi - prod.angle) < 1e-12
