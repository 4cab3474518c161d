"""Central-extension form data for loop groups and their rotation extension.

All i-prefixed quantities are exposed with the i stripped, so every value
here is real.  The single bridging constant between this normalization
and the string forms is 2 pi: d(curving) = 2 pi * (string form).

Group points are either plain group loops (N, n, n) or
SemiDirectGroupElement pairs; tangents are the matching algebra objects
in the left-translated convention (the tangent at gamma is gamma xi).
Derivatives on the group are taken along exponential curves by central
differences, matching how the identities are probed.
"""

from __future__ import annotations

from math import pi
from typing import Callable

import numpy as np

from . import formscalc as fc
from . import loopspace as lp
from .connections import (
    LGxS1ConnectionData,
    curvature_lg,
    curvature_lgxs1,
    gauge_transform,
    string_form_lg,
    string_form_lgxs1,
)

FD_STEP = 1e-4
BRIDGE_TO_STRING_FORM = 2.0 * pi


def _is_semidirect(x) -> bool:
    return isinstance(x, lp.SemiDirectGroupElement)


def _pair_integral(x, y) -> float:
    """(1/2 pi) Int <x, y> dtheta for algebra loops."""
    vals = np.real(-np.einsum("jab,jba->j", x, y))
    return float(lp.circle_integral(vals)) / (2.0 * pi)


def r_form(point, X, Y) -> float:
    """Left-invariant curvature 2-form of the central extension, i stripped.

    On left-translated probes (xi, zeta) this is
    (1/4 pi) Int <xi, dzeta> - <zeta, dxi> dtheta / 2, which collapses to
    (1/4 pi) Int <xi, dzeta> dtheta by parts; rotation-invariant, so the
    base point never enters.
    """
    xi = X.loop_part if isinstance(X, lp.SemiDirectAlgebraElement) else X
    zeta = Y.loop_part if isinstance(Y, lp.SemiDirectAlgebraElement) else Y
    if xi.shape != zeta.shape:
        raise ValueError("probe grids differ")
    sym = 0.5 * (
        np.real(-np.einsum("jab,jba->j", xi, lp.loop_derivative(zeta)))
        - np.real(-np.einsum("jab,jba->j", zeta, lp.loop_derivative(xi)))
    )
    return float(lp.circle_integral(sym)) / (4.0 * pi)


def alpha_form_lg(point, tangents) -> float:
    """alpha = (1/2 pi) Int <xi_1, Z(gamma_2)> dtheta (i stripped)."""
    gamma2 = point[1]
    xi1 = tangents[0]
    if xi1.shape != gamma2.shape:
        raise ValueError("probe grids differ")
    return _pair_integral(xi1, lp.z_map(gamma2))


def alpha_form_lgxs1(point, tangents) -> float:
    """alpha with the -(1/2) mu Z correction of the rotated extension."""
    g2 = point[1]
    t1 = tangents[0]
    z2 = lp.z_map(g2.loop_part)
    probe = t1.loop_part - 0.5 * t1.circle_part * z2
    return _pair_integral(probe, z2)


def alpha_form(point, tangents) -> float:
    if _is_semidirect(point[1]):
        return alpha_form_lgxs1(point, tangents)
    return alpha_form_lg(point, tangents)


# -- group curves and derivatives -------------------------------------------

def _flow(point, tangent, t: float):
    """Left-translated exponential curve through a group point."""
    if _is_semidirect(point):
        step = lp.SemiDirectGroupElement(
            lp.exp_loop(t * tangent.loop_part), t * tangent.circle_part
        )
        return lp.semidirect_multiply(point, step)
    return point @ lp.exp_loop(t * tangent)


def _left_translated_delta(p0, p1, p_1, h: float):
    """Left-translated tangent from a symmetric difference of group points."""
    if _is_semidirect(p0):
        # loop part of p0^{-1} p is rot_{-phi0}(gamma0^{-1} gamma), already
        # the left-translated algebra coordinate
        inv = lp.semidirect_inverse(p0)
        dloop = (
            lp.semidirect_multiply(inv, p1).loop_part
            - lp.semidirect_multiply(inv, p_1).loop_part
        ) / (2.0 * h)
        dang = lp.angle_delta(p1.angle, p_1.angle) / (2.0 * h)
        return lp.SemiDirectAlgebraElement(dloop, dang)
    inv = lp.loop_inverse(p0)
    return inv @ (p1 - p_1) / (2.0 * h)


def _push_tangents(face: Callable, points, tangents, h: float = FD_STEP):
    """Differential of a face map on a tuple of left-translated tangents."""
    base = face(points)
    out = []
    for tan in _tangent_basis(points, tangents):
        plus = face(_flow_tuple(points, tan, h))
        minus = face(_flow_tuple(points, tan, -h))
        out.append(_tuple_delta(base, plus, minus, h))
    # sum the per-slot contributions
    total = out[0]
    for other in out[1:]:
        total = _tuple_add(total, other)
    return base, total


def _tangent_basis(points, tangents):
    """Split a joint tangent into per-slot tangents (others zeroed)."""
    basis = []
    for i in range(len(points)):
        slot = []
        for j, t in enumerate(tangents):
            if j == i:
                slot.append(t)
            elif isinstance(t, lp.SemiDirectAlgebraElement):
                slot.append(lp.SemiDirectAlgebraElement(np.zeros_like(t.loop_part), 0.0))
            else:
                slot.append(np.zeros_like(t))
        basis.append(tuple(slot))
    return basis


def _flow_tuple(points, tangents, t):
    return tuple(_flow(p, tan, t) for p, tan in zip(points, tangents))


def _tuple_delta(base, plus, minus, h):
    return tuple(
        _left_translated_delta(b, p, m, h) for b, p, m in zip(base, plus, minus)
    )


def _tuple_add(a, b):
    out = []
    for x, y in zip(a, b):
        if isinstance(x, lp.SemiDirectAlgebraElement):
            out.append(
                lp.SemiDirectAlgebraElement(
                    x.loop_part + y.loop_part, x.circle_part + y.circle_part
                )
            )
        else:
            out.append(x + y)
    return tuple(out)


def nerve_faces(length: int):
    """The length+1 face maps G^length -> G^{length-1} of the group nerve:
    drop first, multiply adjacent pairs, drop last."""

    def face(i):
        def apply(points):
            points = tuple(points)
            if i == 0:
                return points[1:]
            if i == length:
                return points[:-1]
            merged = (
                lp.semidirect_multiply(points[i - 1], points[i])
                if _is_semidirect(points[0])
                else points[i - 1] @ points[i]
            )
            return points[: i - 1] + (merged,) + points[i + 1 :]

        return apply

    return [face(i) for i in range(length + 1)]


def simplicial_delta_eval(form: Callable, points, tangents, h: float = FD_STEP) -> float:
    """(delta form) at a point of G^{m+1} on left-translated tangents.

    ``form`` takes (points, tangents) on G^m.  Tangents are pushed through
    each nerve face map by central differences along exponential curves.
    """
    total = 0.0
    for i, face in enumerate(nerve_faces(len(points))):
        base, pushed = _push_tangents(face, points, tangents, h)
        total += (-1.0) ** i * form(base, pushed)
    return total


def delta_of(form: Callable, h: float = FD_STEP) -> Callable:
    """delta as an operator on multi-point form evaluators."""

    def ev(points, tangents):
        return simplicial_delta_eval(form, points, tangents, h)

    return ev


def delta_two_form(form2: Callable, points, tans_x, tans_y, h: float = FD_STEP) -> float:
    """delta of a 2-form evaluator, pushing both tangent sets through faces."""
    total = 0.0
    for i, face in enumerate(nerve_faces(len(points))):
        base, push_x = _push_tangents(face, points, tans_x, h)
        _, push_y = _push_tangents(face, points, tans_y, h)
        total += (-1.0) ** i * form2(base, push_x, push_y)
    return total


def _r_eval(points, tans_x, tans_y) -> float:
    return r_form(points[0], tans_x[0], tans_y[0])


def d_alpha(points, tans_x, tans_y, h: float = FD_STEP) -> float:
    """Exterior derivative of alpha on left-invariant extensions:
    d alpha(X, Y) = (1/2)(X(alpha(Y)) - Y(alpha(X)) - alpha([X, Y]))."""

    def alpha_at(pts, tans):
        return alpha_form(pts, tans)

    def directional(tans_flow, tans_eval):
        plus = alpha_at(_flow_tuple(points, tans_flow, h), tans_eval)
        minus = alpha_at(_flow_tuple(points, tans_flow, -h), tans_eval)
        return (plus - minus) / (2.0 * h)

    if _is_semidirect(points[0]):
        bracket = tuple(
            lp.semidirect_bracket(x, y) for x, y in zip(tans_x, tans_y)
        )
    else:
        bracket = tuple(x @ y - y @ x for x, y in zip(tans_x, tans_y))
    return 0.5 * (
        directional(tans_x, tans_y)
        - directional(tans_y, tans_x)
        - alpha_at(points, bracket)
    )


def d_alpha_vs_delta_r(points, tans_x, tans_y, h: float = FD_STEP) -> float:
    """|d alpha - delta R| at a pair point on a tangent pair."""
    lhs = d_alpha(points, tans_x, tans_y, h)
    rhs = delta_two_form(_r_eval, points, tans_x, tans_y, h)
    return abs(lhs - rhs)


def verify_delta_alpha_zero(points, tangents, h: float = FD_STEP) -> float:
    """|delta alpha| at a triple point; vanishes for both groups."""
    return abs(simplicial_delta_eval(alpha_form, points, tangents, h))


# -- the lifting-gerbe connection correction epsilon -------------------------

def epsilon_form(c, tau: Callable, point: np.ndarray, X: np.ndarray) -> float:
    """epsilon on the two-section chart model of the fibre product.

    tau maps chart points to group values (the gauge difference of the two
    sections); X is a single chart tangent, which moves both sections.
    """
    X = np.asarray(X, dtype=float)
    AX = _contract_one_form(c.A, point, X)
    if isinstance(c, LGxS1ConnectionData):
        s = tau(point)
        z = lp.z_map(s.loop_part)
        aX = _contract_one_form(c.a, point, X)
        return _pair_integral(AX - 0.5 * aX * z, z)
    z = lp.z_map(tau(point))
    return _pair_integral(AX, z)


def _contract_one_form(form: fc.FormField, p: np.ndarray, X: np.ndarray):
    total = None
    for i in range(form.dim):
        if X[i] == 0.0:
            continue
        term = X[i] * np.asarray(form.coeff(p, (i,)))
        total = term if total is None else total + term
    if total is None:
        total = 0.0 * np.asarray(form.coeff(p, (0,)))
    return total


def _tau_pushforward(tau: Callable, point, X, h: float = FD_STEP):
    """Left-translated derivative of a chart -> group map along X."""
    X = np.asarray(X, dtype=float)
    plus = tau(point + h * X)
    minus = tau(point - h * X)
    base = tau(point)
    if _is_semidirect(base):
        ginv = lp.loop_inverse(base.loop_part)
        dloop = ginv @ (plus.loop_part - minus.loop_part) / (2.0 * h)
        xi = lp.rotate(-base.angle, dloop)
        dang = lp.angle_delta(plus.angle, minus.angle) / (2.0 * h)
        return lp.SemiDirectAlgebraElement(xi, dang)
    return lp.loop_inverse(base) @ (plus - minus) / (2.0 * h)


def delta_epsilon_vs_tau_alpha(
    c, tau12: Callable, tau23: Callable, point: np.ndarray, X: np.ndarray,
    h: float = FD_STEP,
) -> float:
    """Residual of delta epsilon = tau^* alpha over a triple of sections.

    Sections s1, s2 = s1 tau12, s3 = s2 tau23; epsilon_{ij} is evaluated
    with the connection in trivialization i, obtained by gauge transform.
    """
    point = np.asarray(point, dtype=float)

    def tau13(p):
        if _is_semidirect(tau12(p)):
            return lp.semidirect_multiply(tau12(p), tau23(p))
        return tau12(p) @ tau23(p)

    c2 = gauge_transform(c, tau12)
    eps23 = epsilon_form(c2, tau23, point, X)
    eps13 = epsilon_form(c, tau13, point, X)
    eps12 = epsilon_form(c, tau12, point, X)
    lhs = eps23 - eps13 + eps12

    t12 = tau12(point)
    t23 = tau23(point)
    xi1 = _tau_pushforward(tau12, point, X, h)
    rhs = alpha_form((t12, t23), (xi1, _tau_pushforward(tau23, point, X, h)))
    return abs(lhs - rhs)


# -- curvings ----------------------------------------------------------------

def curving_direct(c) -> fc.FormField:
    """B = (1/2 pi) Int (1/2)<A, dA/dtheta> - <F, Phi> dtheta for plain loop
    data; with the rotation twist, (1/4 pi) Int <A, dA/dtheta>
    - 2 <F + (1/2) f Phi, Phi> dtheta.  Real 2-form, i stripped."""
    from .connections import partial_theta

    AdA = fc.wedge_pair(c.A, partial_theta(c.A))
    if isinstance(c, LGxS1ConnectionData):
        pair = curvature_lgxs1(c)

        def coeff(p, idx):
            phi = c.phi(p)
            lifted = pair.F.coeff(p, idx) + 0.5 * pair.f.coeff(p, idx) * phi
            inner = 0.5 * np.asarray(AdA.coeff(p, idx)) - np.real(
                -np.einsum("jab,jba->j", lifted, phi)
            )
            return float(lp.circle_integral(inner)) / (2.0 * pi)

        return fc.FormField(2, c.dim, coeff)

    F = curvature_lg(c).F

    def coeff(p, idx):
        phi = c.phi(p)
        inner = 0.5 * np.asarray(AdA.coeff(p, idx)) - np.real(
            -np.einsum("jab,jba->j", F.coeff(p, idx), phi)
        )
        return float(lp.circle_integral(inner)) / (2.0 * pi)

    return fc.FormField(2, c.dim, coeff)


def extension_cocycle(a: lp.SemiDirectAlgebraElement, b: lp.SemiDirectAlgebraElement) -> float:
    """omega((xi, x), (zeta, y)) = (1/2 pi) Int <xi, dzeta> dtheta."""
    return _pair_integral(a.loop_part, lp.loop_derivative(b.loop_part))


def reduced_splitting(phi_value: np.ndarray, a: lp.SemiDirectAlgebraElement) -> float:
    """ell(p, (xi, x)) = -(1/2 pi) Int <xi + (1/2) x Phi(p), Phi(p)> dtheta."""
    probe = a.loop_part + 0.5 * a.circle_part * phi_value
    return -_pair_integral(probe, phi_value)


def group_cocycle_sigma(g: lp.SemiDirectGroupElement, a: lp.SemiDirectAlgebraElement) -> float:
    """sigma((gamma, phi)^{-1}, (xi, x)) = alpha_{((1,1),(gamma,phi))}((xi, x), 0)."""
    z = lp.z_map(g.loop_part)
    return _pair_integral(a.loop_part - 0.5 * a.circle_part * z, z)


def reduced_splitting_transformation_residual(
    phi_value: np.ndarray, g: lp.SemiDirectGroupElement, a: lp.SemiDirectAlgebraElement
) -> float:
    """|ell(p, xi) - ell(pg, ad(g^{-1}) xi) - sigma(g^{-1}, xi)|."""
    lhs = reduced_splitting(phi_value, a)
    gamma, ang = g.loop_part, g.angle
    ginv = lp.loop_inverse(gamma)
    phi_moved = lp.rotate(-ang, ginv @ phi_value @ gamma + ginv @ lp.loop_derivative(gamma))
    a_moved = lp.semidirect_adjoint_inverse(g, a)
    rhs = reduced_splitting(phi_moved, a_moved) + group_cocycle_sigma(g, a)
    return abs(lhs - rhs)


def splitting_curving(c: LGxS1ConnectionData) -> fc.FormField:
    """B = (1/2) omega(A, A) + ell(p, F) from the reduced splitting."""
    pair = curvature_lgxs1(c)

    def coeff(p, idx):
        i, j = idx
        phi = c.phi(p)
        Ai = c.A.coeff(p, (i,))
        Aj = c.A.coeff(p, (j,))
        ai = float(c.a.coeff(p, (i,)))
        aj = float(c.a.coeff(p, (j,)))
        sd_i = lp.SemiDirectAlgebraElement(Ai, ai)
        sd_j = lp.SemiDirectAlgebraElement(Aj, aj)
        omega_AA = extension_cocycle(sd_i, sd_j) - extension_cocycle(sd_j, sd_i)
        F_ij = lp.SemiDirectAlgebraElement(
            pair.F.coeff(p, idx), float(pair.f.coeff(p, idx))
        )
        return 0.5 * omega_AA + reduced_splitting(phi, F_ij)

    return fc.FormField(2, c.dim, coeff)


def three_curvature_descent_check(
    c, points, sigma: Callable | None = None, d_step: float = 1e-4
) -> float:
    """Residual of d(curving) = 2 pi * (string form), plus gauge invariance
    of d(curving) when a gauge function is supplied."""
    B = curving_direct(c)
    dB = fc.exterior_derivative(B, d_step)
    s = string_form_lgxs1(c) if isinstance(c, LGxS1ConnectionData) else string_form_lg(c)
    diff = fc.form_sum([dB, s], [1.0, -BRIDGE_TO_STRING_FORM])
    worst = fc.max_coeff(diff, points)
    if sigma is not None:
        ct = gauge_transform(c, sigma)
        dBt = fc.exterior_derivative(curving_direct(ct), d_step)
        gauge_diff = fc.form_sum([dB, dBt], [1.0, -1.0])
        worst = max(worst, fc.max_coeff(gauge_diff, points))
    return worst
