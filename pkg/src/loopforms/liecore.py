"""Matrix model of su(n)/SU(n) and its invariant polynomials.

Algebra elements are anti-Hermitian traceless complex matrices, group
elements are special unitary matrices, both stored as plain ndarrays.
The invariant bilinear form is ``<X, Y> = -tr(XY)`` in the defining
representation; this is the unique normalization for which the su(2)
coroot ``diag(i, -i)`` has squared length 2.

Invariant polynomials are fully symmetrized traces with a scalar
normalization.  The degree-k symmetrized trace of anti-Hermitian
arguments is real after multiplication by i**k; that factor is folded in
here so every evaluation is a real number.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import permutations
from math import factorial, pi

import numpy as np
from scipy.linalg import expm as _expm


class DimensionMismatch(ValueError):
    """Operands belong to different su(n)."""


class ArityError(ValueError):
    """Wrong number of arguments for an invariant polynomial."""


def _require_same_shape(X: np.ndarray, Y: np.ndarray) -> None:
    if X.shape != Y.shape:
        raise DimensionMismatch(f"operand shapes differ: {X.shape} vs {Y.shape}")


def is_algebra_element(X: np.ndarray, tol: float = 1e-10) -> bool:
    return (
        float(np.max(np.abs(X + X.conj().T))) < tol
        and abs(complex(np.trace(X))) < tol
    )


def is_group_element(g: np.ndarray, tol: float = 1e-10) -> bool:
    n = g.shape[0]
    unitarity = float(np.max(np.abs(g @ g.conj().T - np.eye(n))))
    return unitarity < tol and abs(complex(np.linalg.det(g)) - 1.0) < tol


def bracket(X: np.ndarray, Y: np.ndarray) -> np.ndarray:
    """Commutator [X, Y] = XY - YX."""
    _require_same_shape(X, Y)
    return X @ Y - Y @ X


def killing(X: np.ndarray, Y: np.ndarray) -> float:
    """Normalized invariant form <X, Y> = -tr(XY)."""
    _require_same_shape(X, Y)
    return float(np.real(-np.einsum("ij,ji->", X, Y)))


def adjoint_group(g: np.ndarray, X: np.ndarray) -> np.ndarray:
    """Ad(g) X = g X g^{-1}; uses g^{-1} = g^dagger for unitary g."""
    _require_same_shape(g, X)
    return g @ X @ g.conj().T


def exponential(X: np.ndarray) -> np.ndarray:
    """Matrix exponential (scaling-and-squaring Pade)."""
    return _expm(X)


def su2_basis() -> list[np.ndarray]:
    """X_a = -(i/2) sigma_a with [X_1, X_2] = X_3 and cyclic."""
    s1 = np.array([[0, 1], [1, 0]], dtype=complex)
    s2 = np.array([[0, -1j], [1j, 0]], dtype=complex)
    s3 = np.array([[1, 0], [0, -1]], dtype=complex)
    return [-0.5j * s1, -0.5j * s2, -0.5j * s3]


def sun_basis(n: int) -> list[np.ndarray]:
    """A real basis of su(n): rotations, i-symmetric pairs, i-diagonals."""
    if n < 2:
        raise ValueError("n >= 2 required")
    basis: list[np.ndarray] = []
    for j in range(n):
        for k in range(j + 1, n):
            a = np.zeros((n, n), dtype=complex)
            a[j, k], a[k, j] = 1.0, -1.0
            basis.append(a / 2.0)
            b = np.zeros((n, n), dtype=complex)
            b[j, k] = b[k, j] = 1j
            basis.append(b / 2.0)
    for j in range(1, n):
        d = np.zeros((n, n), dtype=complex)
        d[:j, :j] = 1j * np.eye(j)
        d[j, j] = -1j * j
        basis.append(d / np.sqrt(2.0 * j * (j + 1)))
    return basis


def algebra_coordinates(X: np.ndarray, basis: list[np.ndarray]) -> np.ndarray:
    """Coordinates of X in a (not necessarily orthonormal) algebra basis."""
    m = len(basis)
    gram = np.empty((m, m))
    rhs = np.empty(m)
    for a in range(m):
        rhs[a] = killing(basis[a], X)
        for b in range(m):
            gram[a, b] = killing(basis[a], basis[b])
    return np.linalg.solve(gram, rhs)


@dataclass(frozen=True)
class InvariantPolynomial:
    """Symmetrized trace of fixed degree times a scalar normalization."""

    degree: int
    scale: float = 1.0

    def __post_init__(self) -> None:
        if self.degree < 1:
            raise ValueError("polynomial degree must be >= 1")


def killing_polynomial(scale: float = 1.0) -> InvariantPolynomial:
    """Degree-2 polynomial with f(X, Y) = scale * <X, Y>."""
    return InvariantPolynomial(2, scale)


def pontrjagyn_polynomial() -> InvariantPolynomial:
    """f(X, Y) = -(1/8 pi^2) <X, Y>, the degree-4 characteristic integrand."""
    return InvariantPolynomial(2, -1.0 / (8.0 * pi ** 2))


def eval_invariant_polynomial(f: InvariantPolynomial, args) -> float | np.ndarray:
    """Evaluate the symmetrized trace on k algebra values.

    Arguments may be single matrices (n, n) or stacks (..., n, n); the
    trace is taken over the trailing pair of axes, so loop-valued inputs
    evaluate pointwise along the loop.
    """
    k = f.degree
    if len(args) != k:
        raise ArityError(f"expected {k} arguments, got {len(args)}")
    acc = None
    for perm in permutations(range(k)):
        prod = args[perm[0]]
        for i in perm[1:]:
            prod = prod @ args[i]
        tr = np.einsum("...ii->...", prod)
        acc = tr if acc is None else acc + tr
    out = np.real((1j ** k) * acc) * (f.scale / factorial(k))
    if np.ndim(out) == 0:
        return float(out)
    return out


def check_ad_invariance_identity(
    f: InvariantPolynomial,
    phis,
    degrees,
    a_value: np.ndarray,
    a_degree: int,
) -> float:
    """Residual of the graded expansion of f([phi_1, A], phi_2, ..., phi_k).

    Each supplied value stands in for the coefficient of a single-term
    form of the stated degree.  The forms are materialized on a chart of
    disjoint index blocks so the (-1)^{p q} reordering signs in

        f([phi_1, A], phi_2, ...) = f(phi_1, [A, phi_2], ...)
                                    + (-1)^{p q_2} f(phi_1, phi_2, [A, phi_3], ...) + ...

    are exercised for real, not assumed.
    """
    from . import formscalc as fc

    k = len(phis)
    if k != f.degree:
        raise ArityError(f"expected {f.degree} form values, got {k}")
    degrees = list(degrees)
    if len(degrees) != k:
        raise ArityError("one degree per form value required")

    dim = sum(degrees) + a_degree
    blocks: list[tuple[int, ...]] = []
    cursor = 0
    for q in degrees:
        blocks.append(tuple(range(cursor, cursor + q)))
        cursor += q
    a_block = tuple(range(cursor, cursor + a_degree))

    phi_forms = [
        fc.single_term_form(dim, blocks[i], phis[i]) for i in range(k)
    ]
    a_form = fc.single_term_form(dim, a_block, a_value)

    def feval(values):
        return eval_invariant_polynomial(f, values)

    point = np.zeros(dim)
    full = tuple(range(dim))

    lhs_form = fc.poly_wedge([fc.wedge_bracket(phi_forms[0], a_form)] + phi_forms[1:], feval)
    lhs = lhs_form.coeff(point, full)

    rhs = 0.0
    p = a_degree
    for j in range(1, k):
        sign = (-1) ** (p * sum(degrees[1:j]))
        slots = list(phi_forms)
        slots[j] = fc.wedge_bracket(a_form, phi_forms[j])
        rhs = rhs + sign * fc.poly_wedge(slots, feval).coeff(point, full)
    return float(np.max(np.abs(lhs - rhs)))
