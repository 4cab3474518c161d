"""Connection and Higgs data on trivialized charts, and the string forms.

Everything lives in a fixed trivialization over a chart M: the connection
is a loop-algebra-valued 1-form A (plus a real 1-form a in the rotated
case), the Higgs field a loop-algebra-valued 0-form.  Global statements
(descent, independence of choices) are realized as gauge-transformation
compatibility checks rather than transition-function atlases.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from math import pi
from typing import Callable

import numpy as np

from . import formscalc as fc
from . import loopspace as lp
from .liecore import InvariantPolynomial, eval_invariant_polynomial


@dataclass(frozen=True)
class LGConnectionData:
    """Chart data (A, Phi) of a loop-group bundle connection."""

    A: fc.FormField
    phi: Callable[[np.ndarray], np.ndarray]
    dim: int
    N: int
    n: int
    fd_step: float = 1e-4


@dataclass(frozen=True)
class LGxS1ConnectionData:
    """Chart data (A, a, Phi) of a rotation-extended loop-group connection."""

    A: fc.FormField
    a: fc.FormField
    phi: Callable[[np.ndarray], np.ndarray]
    dim: int
    N: int
    n: int
    fd_step: float = 1e-4


@dataclass(frozen=True)
class CurvaturePair:
    F: fc.FormField
    f: fc.FormField | None = None


def partial_theta(form: fc.FormField) -> fc.FormField:
    """Loop derivative applied to every coefficient."""
    return fc.FormField(
        form.degree, form.dim, lambda p, idx: lp.loop_derivative(form.coeff(p, idx))
    )


def _dphi_form(c) -> fc.FormField:
    """Chart differential of the Higgs field as a loop-valued 1-form."""
    h = c.fd_step

    def coeff(p, idx):
        (i,) = idx
        e = np.zeros(c.dim)
        e[i] = h
        return (c.phi(p + e) - c.phi(p - e)) / (2.0 * h)

    return fc.FormField(1, c.dim, coeff)


def _bracket_A_phi(c) -> fc.FormField:
    def coeff(p, idx):
        Ai = c.A.coeff(p, idx)
        ph = c.phi(p)
        return Ai @ ph - ph @ Ai

    return fc.FormField(1, c.dim, coeff)


def curvature_lg(c: LGConnectionData) -> CurvaturePair:
    """F = dA + (1/2)[A, A]."""
    dA = fc.exterior_derivative(c.A, c.fd_step)
    half_bracket = fc.scale_form(0.5, fc.wedge_bracket(c.A, c.A))
    return CurvaturePair(F=fc.form_sum([dA, half_bracket]))


def covariant_higgs_lg(c: LGConnectionData) -> fc.FormField:
    """nabla Phi = dPhi + [A, Phi] - dA/dtheta."""
    return fc.form_sum(
        [_dphi_form(c), _bracket_A_phi(c), partial_theta(c.A)], [1.0, 1.0, -1.0]
    )


def string_form_lg(c: LGConnectionData) -> fc.FormField:
    """-(1/4 pi^2) Int <F, nabla Phi> dtheta, a real 3-form on the chart."""
    F = curvature_lg(c).F
    integrand = fc.wedge_pair(F, covariant_higgs_lg(c))
    return fc.scale_form(-1.0 / (4.0 * pi ** 2), fc.integrate_loop_form(integrand))


def higher_string_form(
    f: InvariantPolynomial, k: int, c: LGConnectionData
) -> fc.FormField:
    """String form of degree 2k-1: k Int f(nabla Phi, F, ..., F) dtheta."""
    if f.degree != k:
        raise ValueError(f"polynomial degree {f.degree} != k = {k}")
    if c.dim < 2 * k - 1:
        raise ValueError(f"chart dimension {c.dim} < 2k-1 = {2 * k - 1}")
    F = curvature_lg(c).F
    slots = [covariant_higgs_lg(c)] + [F] * (k - 1)
    integrand = fc.poly_wedge(slots, lambda vals: eval_invariant_polynomial(f, vals))
    return fc.scale_form(float(k), fc.integrate_loop_form(integrand))


def curvature_lgxs1(c: LGxS1ConnectionData) -> CurvaturePair:
    """(F, f) = (dA + (1/2)[A, A] - a ^ dA/dtheta, da)."""
    dA = fc.exterior_derivative(c.A, c.fd_step)
    half_bracket = fc.scale_form(0.5, fc.wedge_bracket(c.A, c.A))
    twist = fc.wedge_scalar(c.a, partial_theta(c.A))
    F = fc.form_sum([dA, half_bracket, twist], [1.0, 1.0, -1.0])
    return CurvaturePair(F=F, f=fc.exterior_derivative(c.a, c.fd_step))


def covariant_higgs_lgxs1(c: LGxS1ConnectionData) -> fc.FormField:
    """nabla Phi = dPhi + [A, Phi] - dA/dtheta - a dPhi/dtheta."""

    def twist_coeff(p, idx):
        return fc._scalar_times(c.a.coeff(p, idx), lp.loop_derivative(c.phi(p)))

    twist = fc.FormField(1, c.dim, twist_coeff)
    return fc.form_sum(
        [_dphi_form(c), _bracket_A_phi(c), partial_theta(c.A), twist],
        [1.0, 1.0, -1.0, -1.0],
    )


def _f_phi_form(c: LGxS1ConnectionData, f2: fc.FormField) -> fc.FormField:
    """The 2-form f Phi (real 2-form times the Higgs 0-form)."""

    def coeff(p, idx):
        return fc._scalar_times(f2.coeff(p, idx), c.phi(p))

    return fc.FormField(2, c.dim, coeff)


def string_form_lgxs1(c: LGxS1ConnectionData) -> fc.FormField:
    """-(1/4 pi^2) Int <F + f Phi, nabla Phi> dtheta."""
    pair = curvature_lgxs1(c)
    lifted = fc.form_sum([pair.F, _f_phi_form(c, pair.f)])
    integrand = fc.wedge_pair(lifted, covariant_higgs_lgxs1(c))
    return fc.scale_form(-1.0 / (4.0 * pi ** 2), fc.integrate_loop_form(integrand))


def string_cylinder_lg(c: LGConnectionData) -> fc.CylinderForm:
    """Curvature on chart x S1: F + nabla Phi ^ dtheta."""
    return fc.CylinderForm(beta=curvature_lg(c).F, gamma=covariant_higgs_lg(c))


def string_cylinder_lgxs1(c: LGxS1ConnectionData) -> fc.CylinderForm:
    """Transported curvature (F + f Phi) + nabla Phi ^ (a + dtheta)."""
    pair = curvature_lgxs1(c)
    nabla = covariant_higgs_lgxs1(c)
    beta = fc.form_sum([pair.F, _f_phi_form(c, pair.f), fc.poly_wedge(
        [nabla, c.a], lambda v: fc._scalar_times(v[1], v[0])
    )])
    return fc.CylinderForm(beta=beta, gamma=nabla)


def independence_homotopy_form(
    f: InvariantPolynomial,
    k: int,
    c0: LGConnectionData,
    c1: LGConnectionData,
    t_steps: int = 16,
) -> fc.FormField:
    """Primitive psi with d psi = s(c1) - s(c0).

    Built on the circle-extended chart from the difference 1-form
    alpha + (Phi_1 - Phi_0) dtheta and the interpolated curvatures,
    integrated in t by Simpson's rule, then fiber-integrated back.
    """
    if t_steps < 8 or t_steps % 2 != 0:
        raise ValueError("t_steps must be an even integer >= 8")
    if (c0.dim, c0.N, c0.n) != (c1.dim, c1.N, c1.n):
        raise ValueError("connection data live on different discretizations")
    if f.degree != k:
        raise ValueError(f"polynomial degree {f.degree} != k = {k}")

    alpha = fc.form_sum([c1.A, c0.A], [1.0, -1.0])

    def varphi(p):
        return c1.phi(p) - c0.phi(p)

    diff_cyl = fc.CylinderForm(
        beta=alpha,
        gamma=fc.FormField(0, c0.dim, lambda p, idx: varphi(p)),
    )

    ts = np.linspace(0.0, 1.0, t_steps + 1)
    w = np.ones(t_steps + 1)
    w[1:-1:2], w[2:-1:2] = 4.0, 2.0
    w *= (1.0 / t_steps) / 3.0

    terms = []
    for t in ts:
        At = fc.form_sum([c0.A, alpha], [1.0, float(t)])

        def phit(p, t=t):
            return c0.phi(p) + t * varphi(p)

        ct = LGConnectionData(At, phit, c0.dim, c0.N, c0.n, c0.fd_step)
        cyl_t = string_cylinder_lg(ct)
        integrand = fc.cyl_poly_wedge(
            [diff_cyl] + [cyl_t] * (k - 1),
            lambda vals: eval_invariant_polynomial(f, vals),
        )
        terms.append(fc.fiber_integrate_s1(integrand))
    return fc.scale_form(float(k), fc.form_sum(terms, list(w)))


def _chart_derivative(sigma: Callable, p: np.ndarray, i: int, h: float):
    e = np.zeros(len(p))
    e[i] = h
    return (np.asarray(sigma(p + e)) - np.asarray(sigma(p - e))) / (2.0 * h)


def gauge_transform(c, sigma):
    """Change of trivialization by a smooth gauge function.

    For plain loop-group data sigma maps chart points to group loops; for
    rotation-extended data it returns SemiDirectGroupElement values.  The
    connection picks up the adjoint twist plus the Maurer-Cartan shift,
    the Higgs field its twisted equivariance shift.
    """
    h = c.fd_step
    if isinstance(c, LGConnectionData):

        def A_coeff(p, idx):
            (i,) = idx
            g = sigma(p)
            ginv = lp.loop_inverse(g)
            return ginv @ c.A.coeff(p, idx) @ g + ginv @ _chart_derivative(sigma, p, i, h)

        def phi(p):
            g = sigma(p)
            ginv = lp.loop_inverse(g)
            return ginv @ c.phi(p) @ g + ginv @ lp.loop_derivative(g)

        return replace(c, A=fc.FormField(1, c.dim, A_coeff), phi=phi)

    if isinstance(c, LGxS1ConnectionData):

        def loop_at(p):
            return sigma(p).loop_part

        def angle_at(p):
            return float(sigma(p).angle)

        def A_coeff(p, idx):
            (i,) = idx
            s = sigma(p)
            g, ang = s.loop_part, s.angle
            ginv = lp.loop_inverse(g)
            dg = _chart_derivative(loop_at, p, i, h)
            ai = c.a.coeff(p, idx)
            inner = (
                ginv @ c.A.coeff(p, idx) @ g
                - fc._scalar_times(ai, ginv @ lp.loop_derivative(g))
                + ginv @ dg
            )
            return lp.rotate(-ang, inner)

        def a_coeff(p, idx):
            (i,) = idx
            e = np.zeros(c.dim)
            e[i] = h
            # angles are stored mod 2 pi; recover the small difference
            dang = lp.angle_delta(angle_at(p + e), angle_at(p - e)) / (2.0 * h)
            return c.a.coeff(p, idx) + dang

        def phi(p):
            s = sigma(p)
            g, ang = s.loop_part, s.angle
            ginv = lp.loop_inverse(g)
            return lp.rotate(-ang, ginv @ c.phi(p) @ g + ginv @ lp.loop_derivative(g))

        return replace(
            c,
            A=fc.FormField(1, c.dim, A_coeff),
            a=fc.FormField(1, c.dim, a_coeff),
            phi=phi,
        )

    raise TypeError(f"unsupported connection data {type(c)!r}")


def reduce_to_lg(c: LGxS1ConnectionData) -> LGConnectionData:
    """Forget the circle direction (the a = 0 reduction target)."""
    return LGConnectionData(c.A, c.phi, c.dim, c.N, c.n, c.fd_step)
