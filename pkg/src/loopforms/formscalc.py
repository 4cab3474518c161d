"""Alternating differential forms on finite-dimensional charts.

A form of degree q on a d-dimensional chart is stored through its
coefficient function ``coeff(point, idx)`` where ``idx`` is a strictly
increasing q-tuple of coordinate indices.  Coefficients may be scalars,
algebra values (n, n), or loop values (N, ...) -- everything downstream
broadcasts over the extra axes.

Conventions.  Coefficients compose by the standard wedge algebra (the
coefficient of dx^i ^ dx^j in A ^ B is A_i B_j - A_j B_i), and the 1/q!
alternation normalization lives entirely in :func:`evaluate`:

    w(X_1, ..., X_q) = (1/q!) sum_I c_I(p) det(X_j[I_k]).

Hence (dx1 ^ dx2)(e1, e2) = 1/2, a product of 1-forms evaluates as
(A ^ B)(X, Y) = (A(X) B(Y) - A(Y) B(X)) / 2, and the bracket-square of a
1-form satisfies (1/2)[A, A](X, Y) = [A(X), A(Y)] -- the combination in
which flatness of pure gauge F = dA + (1/2)[A, A] holds on the nose.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations
from math import factorial
from typing import Callable

import numpy as np

from .loopspace import circle_integral


class ChartMismatch(ValueError):
    """Forms live on charts of different dimension."""


class DegreeError(ValueError):
    """Operation incompatible with a form's degree."""


@dataclass(frozen=True)
class FormField:
    """Degree-q alternating form given by coefficients on increasing tuples."""

    degree: int
    dim: int
    coeff: Callable[[np.ndarray, tuple[int, ...]], object]

    def __post_init__(self) -> None:
        if self.degree < 0 or self.dim < 1:
            raise DegreeError(f"bad degree {self.degree} or dim {self.dim}")


def _require_same_chart(*forms: FormField) -> int:
    dims = {f.dim for f in forms}
    if len(dims) != 1:
        raise ChartMismatch(f"chart dimensions differ: {sorted(dims)}")
    return dims.pop()


@lru_cache(maxsize=None)
def _split_patterns(total: int, sizes: tuple[int, ...]) -> tuple:
    """Ordered splittings of range(total) into blocks of the given sizes.

    Returns tuples (sign, blocks) where blocks are position tuples and
    sign is the parity of the shuffle putting the blocks in sequence.
    """
    if sum(sizes) != total:
        raise DegreeError("block sizes do not fill the index tuple")
    if not sizes:
        return ((1, ()),)
    out = []
    head = sizes[0]
    for positions in combinations(range(total), head):
        sign = (-1) ** (sum(positions) - head * (head - 1) // 2)
        rest = [i for i in range(total) if i not in positions]
        for sub_sign, sub_blocks in _split_patterns(total - head, sizes[1:]):
            blocks = (positions,) + tuple(
                tuple(rest[p] for p in blk) for blk in sub_blocks
            )
            out.append((sign * sub_sign, blocks))
    return tuple(out)


def poly_wedge(forms: list[FormField], combine: Callable) -> FormField:
    """Wedge-combine k forms through a multilinear value map.

    ``combine`` receives one coefficient value per form and returns the
    combined value; the result's coefficient on K sums over ordered
    splittings of K into blocks matching each form's degree, with shuffle
    signs.
    """
    dim = _require_same_chart(*forms)
    degrees = tuple(f.degree for f in forms)
    total_degree = sum(degrees)

    def coeff(p, idx):
        idx = tuple(idx)
        cache: dict = {}

        def get(i, block):
            key = (i, block)
            if key not in cache:
                cache[key] = forms[i].coeff(p, block)
            return cache[key]

        total = None
        for sign, pos_blocks in _split_patterns(len(idx), degrees):
            vals = [
                get(i, tuple(idx[p] for p in blk))
                for i, blk in enumerate(pos_blocks)
            ]
            term = combine(vals)
            term = term if sign == 1 else -term
            total = term if total is None else total + term
        return total

    return FormField(total_degree, dim, coeff)


def _scalar_times(s, X):
    s = np.asarray(s)
    X = np.asarray(X)
    if s.ndim and X.ndim > s.ndim:
        s = s.reshape(s.shape + (1,) * (X.ndim - s.ndim))
    return s * X


def wedge_bracket(A: FormField, B: FormField) -> FormField:
    """Graded bracket [A, B]; for 1-forms [A, A]_{ij} = 2 [A_i, A_j]."""
    return poly_wedge([A, B], lambda v: v[0] @ v[1] - v[1] @ v[0])


def pairing(X, Y):
    """Pointwise invariant pairing -Re tr(XY), broadcasting over loops."""
    return np.real(-np.einsum("...ij,...ji->...", X, Y))


def wedge_pair(A: FormField, B: FormField) -> FormField:
    """Killing-paired wedge; loop-valued inputs give loop-real coefficients."""
    return poly_wedge([A, B], lambda v: pairing(v[0], v[1]))


def wedge_scalar(a: FormField, B: FormField) -> FormField:
    """Wedge of a real-valued form with a vector-valued one."""
    return poly_wedge([a, B], lambda v: _scalar_times(v[0], v[1]))


def form_sum(forms: list[FormField], weights=None) -> FormField:
    dim = _require_same_chart(*forms)
    degree = forms[0].degree
    if any(f.degree != degree for f in forms):
        raise DegreeError("cannot add forms of different degree")
    if weights is None:
        weights = [1.0] * len(forms)

    def coeff(p, idx):
        total = None
        for w, f in zip(weights, forms):
            term = w * np.asarray(f.coeff(p, idx))
            total = term if total is None else total + term
        return total

    return FormField(degree, dim, coeff)


def scale_form(c: float, form: FormField) -> FormField:
    return FormField(form.degree, form.dim, lambda p, idx: c * np.asarray(form.coeff(p, idx)))


def single_term_form(dim: int, block: tuple[int, ...], value) -> FormField:
    """Constant form value * dx^{block} (block strictly increasing)."""
    block = tuple(block)
    zero = np.zeros_like(np.asarray(value))

    def coeff(p, idx):
        return value if tuple(idx) == block else zero

    return FormField(len(block), dim, coeff)


def zero_form(dim: int, degree: int, like) -> FormField:
    zero = np.zeros_like(np.asarray(like))
    return FormField(degree, dim, lambda p, idx: zero)


def evaluate(form: FormField, point: np.ndarray, vectors) -> object:
    """Alternating evaluation with the 1/q! normalization."""
    q = form.degree
    if len(vectors) != q:
        raise DegreeError(f"degree-{q} form takes {q} vectors, got {len(vectors)}")
    if q == 0:
        return form.coeff(point, ())
    vecs = np.asarray(vectors, dtype=float)
    if vecs.shape[1] != form.dim:
        raise ChartMismatch("vector length does not match chart dimension")
    total = None
    for idx in combinations(range(form.dim), q):
        sub = vecs[:, idx]
        det = float(np.linalg.det(sub))
        if det == 0.0:
            continue
        term = det * np.asarray(form.coeff(point, idx))
        total = term if total is None else total + term
    if total is None:
        total = 0.0 * np.asarray(form.coeff(point, tuple(range(q))))
    return total / factorial(q)


def exterior_derivative(form: FormField, step: float = 1e-4, richardson: bool = False) -> FormField:
    """Exterior derivative by central differences of the coefficients.

    With ``richardson`` the h and h/2 stencils are combined to cancel the
    O(h^2) truncation term.
    """
    if step <= 0:
        raise ValueError("step must be positive")

    def diff(p, j, rest, h):
        e = np.zeros(form.dim)
        e[j] = h
        hi = np.asarray(form.coeff(p + e, rest))
        lo = np.asarray(form.coeff(p - e, rest))
        return (hi - lo) / (2.0 * h)

    def coeff(p, idx):
        total = None
        for m, j in enumerate(idx):
            rest = idx[:m] + idx[m + 1 :]
            d = diff(p, j, rest, step)
            if richardson:
                d = (4.0 * diff(p, j, rest, step / 2.0) - d) / 3.0
            term = d if m % 2 == 0 else -d
            total = term if total is None else total + term
        return total

    return FormField(form.degree + 1, form.dim, coeff)


def pullback(
    form: FormField,
    mapping: Callable[[np.ndarray], np.ndarray],
    source_dim: int,
    jacobian: Callable[[np.ndarray], np.ndarray] | None = None,
    step: float = 1e-5,
) -> FormField:
    """Pullback along a chart map, with supplied or finite-difference Jacobian."""

    def jac(u):
        if jacobian is not None:
            return np.asarray(jacobian(u), dtype=float)
        cols = []
        for j in range(source_dim):
            e = np.zeros(source_dim)
            e[j] = step
            cols.append((np.asarray(mapping(u + e)) - np.asarray(mapping(u - e))) / (2 * step))
        return np.stack(cols, axis=1)

    q = form.degree

    def coeff(u, idx):
        x = np.asarray(mapping(u), dtype=float)
        if x.shape[0] != form.dim:
            raise ChartMismatch("mapping target does not match form chart")
        J = jac(u)
        total = None
        for I in combinations(range(form.dim), q):
            minor = float(np.linalg.det(J[np.ix_(I, idx)])) if q else 1.0
            if minor == 0.0:
                continue
            term = minor * np.asarray(form.coeff(x, I))
            total = term if total is None else total + term
        if total is None:
            total = 0.0 * np.asarray(form.coeff(x, tuple(range(q))))
        return total

    return FormField(q, source_dim, coeff)


@dataclass(frozen=True)
class CylinderForm:
    """Form on chart x S1, split as beta + gamma ^ dtheta.

    Coefficients of both parts are loop-valued (the theta dependence
    rides on the loop axis); beta has the total degree, gamma one less.
    """

    beta: FormField
    gamma: FormField

    def __post_init__(self) -> None:
        if self.beta.dim != self.gamma.dim:
            raise ChartMismatch("beta and gamma live on different charts")
        if self.beta.degree != self.gamma.degree + 1:
            raise DegreeError("need deg beta = deg gamma + 1")


def cyl_poly_wedge(cyls: list[CylinderForm], combine: Callable) -> CylinderForm:
    """poly_wedge on chart x S1; terms with two dtheta factors vanish."""
    betas = [c.beta for c in cyls]
    beta_out = poly_wedge(betas, combine)
    terms = []
    weights = []
    for i, c in enumerate(cyls):
        sign = (-1) ** sum(betas[j].degree for j in range(i + 1, len(cyls)))
        slots = betas[:i] + [c.gamma] + betas[i + 1 :]
        terms.append(poly_wedge(slots, combine))
        weights.append(float(sign))
    return CylinderForm(beta_out, form_sum(terms, weights))


def fiber_integrate_s1(omega: CylinderForm) -> FormField:
    """Integrate over the circle fiber: beta is discarded, gamma integrated."""
    g = omega.gamma

    def coeff(p, idx):
        return circle_integral(np.asarray(g.coeff(p, idx)))

    return FormField(g.degree, g.dim, coeff)


def integrate_loop_form(form: FormField) -> FormField:
    """Apply the circle integral to every (loop-valued) coefficient."""

    def coeff(p, idx):
        return circle_integral(np.asarray(form.coeff(p, idx)))

    return FormField(form.degree, form.dim, coeff)


def max_coeff(form: FormField, points, tuples=None) -> float:
    """Max absolute coefficient over sample points (all tuples by default)."""
    idxs = list(tuples) if tuples is not None else list(
        combinations(range(form.dim), form.degree)
    )
    worst = 0.0
    for p in points:
        for idx in idxs:
            worst = max(worst, float(np.max(np.abs(np.asarray(form.coeff(p, idx))))))
    return worst
