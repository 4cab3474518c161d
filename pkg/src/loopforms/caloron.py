"""Connection-level transport between loop-group data over M and ordinary
G-connections over the circle-extended total space.

The extended chart models (base chart) x S1 x G, the group factor in an
exponential chart around a base point g0.  Coefficients of the assembled
G-connection are stored direction by direction, each as a full loop over
the theta grid, so theta derivatives are spectral while base and group
derivatives use central differences.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

import numpy as np
from scipy.linalg import expm as _expm, logm as _logm

from . import formscalc as fc
from . import loopspace as lp
from .connections import (
    LGConnectionData,
    LGxS1ConnectionData,
    covariant_higgs_lg,
    covariant_higgs_lgxs1,
    curvature_lg,
    curvature_lgxs1,
    string_cylinder_lg,
    string_cylinder_lgxs1,
)
from .liecore import pontrjagyn_polynomial, eval_invariant_polynomial, sun_basis


@dataclass(frozen=True)
class ExtendedChart:
    """Base chart + periodic theta + exponential group coordinates at g0."""

    base_dim: int
    N: int
    n: int
    g0: np.ndarray | None = None
    fd_step: float = 1e-4
    basis: list = field(default_factory=list)

    def __post_init__(self) -> None:
        if not self.basis:
            object.__setattr__(self, "basis", sun_basis(self.n))
        if self.g0 is None:
            object.__setattr__(self, "g0", np.eye(self.n, dtype=complex))

    @property
    def group_dim(self) -> int:
        return len(self.basis)

    @property
    def total_dim(self) -> int:
        # ordering: base directions, theta, group directions
        return self.base_dim + 1 + self.group_dim

    @property
    def theta_index(self) -> int:
        return self.base_dim

    def group_point(self, u: np.ndarray) -> np.ndarray:
        x = sum(ui * e for ui, e in zip(u, self.basis))
        return self.g0 @ _expm(x)

    def maurer_cartan(self, u: np.ndarray) -> np.ndarray:
        """Theta coefficients (m, n, n): g^{-1} dg/du_a by central differences."""
        g = self.group_point(u)
        ginv = np.linalg.inv(g)
        h = self.fd_step
        out = np.empty((self.group_dim, self.n, self.n), dtype=complex)
        for a in range(self.group_dim):
            e = np.zeros(self.group_dim)
            e[a] = h
            out[a] = ginv @ (self.group_point(u + e) - self.group_point(u - e)) / (2.0 * h)
        return out

    def identity_coordinates(self) -> np.ndarray:
        """Group coordinates u* with g(u*) = identity."""
        L = _logm(np.linalg.inv(self.g0))
        L = 0.5 * (L - L.conj().T)
        from .liecore import algebra_coordinates

        return algebra_coordinates(L, self.basis)


@dataclass(frozen=True)
class GConnectionField:
    """G-connection on an extended chart, one loop-valued coefficient per
    direction (order: base, theta, group)."""

    chart: ExtendedChart
    coeffs: Callable[[np.ndarray, np.ndarray], np.ndarray]
    # coeffs(x, u) -> array (total_dim, N, n, n)


def _ad_inv(g: np.ndarray, loops: np.ndarray) -> np.ndarray:
    ginv = np.linalg.inv(g)
    return ginv @ loops @ g


def to_g_connection(c: LGConnectionData, chart: ExtendedChart | None = None) -> GConnectionField:
    """Assemble Ad(g^{-1}) A + Theta + Ad(g^{-1}) Phi dtheta on the extended chart."""
    chart = chart or ExtendedChart(base_dim=c.dim, N=c.N, n=c.n)

    def coeffs(x, u):
        g = chart.group_point(u)
        out = np.zeros((chart.total_dim, c.N, c.n, c.n), dtype=complex)
        for i in range(c.dim):
            out[i] = _ad_inv(g, c.A.coeff(x, (i,)))
        out[chart.theta_index] = _ad_inv(g, c.phi(x))
        mc = chart.maurer_cartan(u)
        for a in range(chart.group_dim):
            out[chart.base_dim + 1 + a] = np.broadcast_to(
                mc[a], (c.N, c.n, c.n)
            )
        return out

    return GConnectionField(chart, coeffs)


def to_g_connection_twisted(
    c: LGxS1ConnectionData, chart: ExtendedChart | None = None
) -> GConnectionField:
    """Twisted assembly Ad(g^{-1}) A + Theta + Ad(g^{-1}) Phi (a + dtheta);
    the theta coordinate now models the fiber of the circle bundle."""
    chart = chart or ExtendedChart(base_dim=c.dim, N=c.N, n=c.n)

    def coeffs(x, u):
        g = chart.group_point(u)
        phi = c.phi(x)
        out = np.zeros((chart.total_dim, c.N, c.n, c.n), dtype=complex)
        for i in range(c.dim):
            ai = c.a.coeff(x, (i,))
            out[i] = _ad_inv(g, c.A.coeff(x, (i,)) + ai * phi)
        out[chart.theta_index] = _ad_inv(g, phi)
        mc = chart.maurer_cartan(u)
        for a in range(chart.group_dim):
            out[chart.base_dim + 1 + a] = np.broadcast_to(mc[a], (c.N, c.n, c.n))
        return out

    return GConnectionField(chart, coeffs)


def from_g_connection(field: GConnectionField, N: int | None = None) -> LGConnectionData:
    """Read (A, Phi) back off the canonical section (theta slot and base slots
    at the group point where g = identity)."""
    chart = field.chart
    u_star = chart.identity_coordinates()
    N = N or chart.N

    def A_coeff(x, idx):
        (i,) = idx
        return field.coeffs(x, u_star)[i]

    def phi(x):
        return field.coeffs(x, u_star)[chart.theta_index]

    return LGConnectionData(
        A=fc.FormField(1, chart.base_dim, A_coeff),
        phi=phi,
        dim=chart.base_dim,
        N=N,
        n=chart.n,
        fd_step=chart.fd_step,
    )


def g_curvature_components(field: GConnectionField, x: np.ndarray, u: np.ndarray,
                           step: float | None = None) -> dict:
    """F = dA + (1/2)[A, A] componentwise on the extended chart.

    Coefficient convention: F_IJ = d_I A_J - d_J A_I + [A_I, A_J] for
    I < J.  Base and group derivatives are central differences; the theta
    derivative is spectral on the loop axis.
    """
    chart = field.chart
    h = step if step is not None else chart.fd_step
    D = chart.total_dim
    ti = chart.theta_index

    center = field.coeffs(x, u)

    def shifted(direction, sgn):
        if direction < chart.base_dim:
            xs = x.copy()
            xs[direction] += sgn * h
            return field.coeffs(xs, u)
        if direction == ti:
            raise AssertionError("theta handled spectrally")
        us = u.copy()
        us[direction - chart.base_dim - 1] += sgn * h
        return field.coeffs(x, us)

    # d_I A_J for all I != theta: one pair of full evaluations per direction
    partials = {}
    for I in range(D):
        if I == ti:
            partials[I] = np.stack([lp.loop_derivative(center[J]) for J in range(D)])
        else:
            partials[I] = (shifted(I, +1) - shifted(I, -1)) / (2.0 * h)

    comps = {}
    for I in range(D):
        for J in range(I + 1, D):
            dA = partials[I][J] - partials[J][I]
            br = center[I] @ center[J] - center[J] @ center[I]
            comps[(I, J)] = dA + br
    return comps


def transport_target_lg(c: LGConnectionData, chart: ExtendedChart,
                        x: np.ndarray, u: np.ndarray) -> dict:
    """Ad(g^{-1})(F + nabla Phi ^ dtheta) componentwise; group slots vanish."""
    g = chart.group_point(u)
    F = curvature_lg(c).F
    nabla = covariant_higgs_lg(c)
    ti = chart.theta_index
    out = {}
    for i in range(c.dim):
        for j in range(i + 1, c.dim):
            out[(i, j)] = _ad_inv(g, F.coeff(x, (i, j)))
        out[(i, ti)] = _ad_inv(g, nabla.coeff(x, (i,)))
    return out


def transport_target_lgxs1(c: LGxS1ConnectionData, chart: ExtendedChart,
                           x: np.ndarray, u: np.ndarray) -> dict:
    """Ad(g^{-1})(F + f Phi + nabla Phi ^ (a + dtheta)) componentwise."""
    g = chart.group_point(u)
    pair = curvature_lgxs1(c)
    nabla = covariant_higgs_lgxs1(c)
    phi = c.phi(x)
    ti = chart.theta_index
    out = {}
    for i in range(c.dim):
        ai = c.a.coeff(x, (i,))
        for j in range(i + 1, c.dim):
            aj = c.a.coeff(x, (j,))
            val = (
                pair.F.coeff(x, (i, j))
                + pair.f.coeff(x, (i, j)) * phi
                + nabla.coeff(x, (i,)) * aj
                - nabla.coeff(x, (j,)) * ai
            )
            out[(i, j)] = _ad_inv(g, val)
        out[(i, ti)] = _ad_inv(g, nabla.coeff(x, (i,)))
    return out


def _transport_residual(field: GConnectionField, target: dict,
                        x: np.ndarray, u: np.ndarray, step: float | None) -> float:
    comps = g_curvature_components(field, x, u, step)
    worst = 0.0
    for key, val in comps.items():
        want = target.get(key)
        diff = val - want if want is not None else val
        worst = max(worst, float(np.max(np.abs(diff))))
    return worst


def g_curvature_transport_check(
    c: LGConnectionData,
    points,
    chart: ExtendedChart | None = None,
    u: np.ndarray | None = None,
    step: float | None = None,
) -> float:
    """Max residual between the finite-difference curvature of the assembled
    G-connection and the closed transport form, over the given base points."""
    chart = chart or ExtendedChart(base_dim=c.dim, N=c.N, n=c.n)
    field = to_g_connection(c, chart)
    u = u if u is not None else np.zeros(chart.group_dim)
    worst = 0.0
    for x in points:
        x = np.asarray(x, dtype=float)
        target = transport_target_lg(c, chart, x, u)
        worst = max(worst, _transport_residual(field, target, x, u, step))
    return worst


def g_curvature_transport_check_twisted(
    c: LGxS1ConnectionData,
    points,
    chart: ExtendedChart | None = None,
    u: np.ndarray | None = None,
    step: float | None = None,
) -> float:
    chart = chart or ExtendedChart(base_dim=c.dim, N=c.N, n=c.n)
    field = to_g_connection_twisted(c, chart)
    u = u if u is not None else np.zeros(chart.group_dim)
    worst = 0.0
    for x in points:
        x = np.asarray(x, dtype=float)
        target = transport_target_lgxs1(c, chart, x, u)
        worst = max(worst, _transport_residual(field, target, x, u, step))
    return worst


def pontrjagyn_fiber_integral(c: LGConnectionData) -> fc.FormField:
    """Int_{S1} of -(1/8 pi^2) <F~, F~> for the transported curvature."""
    if c.dim < 3:
        raise ValueError("need chart dimension >= 3")
    f = pontrjagyn_polynomial()
    cyl = string_cylinder_lg(c)
    p1 = fc.cyl_poly_wedge([cyl, cyl], lambda v: eval_invariant_polynomial(f, v))
    return fc.fiber_integrate_s1(p1)


def pontrjagyn_fiber_integral_twisted(c: LGxS1ConnectionData) -> fc.FormField:
    if c.dim < 3:
        raise ValueError("need chart dimension >= 3")
    f = pontrjagyn_polynomial()
    cyl = string_cylinder_lgxs1(c)
    p1 = fc.cyl_poly_wedge([cyl, cyl], lambda v: eval_invariant_polynomial(f, v))
    return fc.fiber_integrate_s1(p1)
