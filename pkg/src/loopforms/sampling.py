"""Seeded generation of band-limited test data.

Test loops are built from random Fourier coefficients up to a cutoff
frequency well below Nyquist, so the spectral calculus resolves them
exactly and residuals measure implementation error, not discretization.
Chart coefficient functions are low-degree polynomials, on which central
differences are accurate to O(h^2) with tiny constants.
"""

from __future__ import annotations

import zlib
from typing import Callable

import numpy as np

from . import formscalc as fc
from . import loopspace as lp


def rng_for(seed: int, name: str) -> np.random.Generator:
    """Per-check generator: child of (seed, crc32(name)). Draw order is
    fixed by each builder below, so identical (seed, name) replay exactly."""
    return np.random.default_rng([seed & 0xFFFFFFFFFFFFFFFF, zlib.crc32(name.encode())])


def random_algebra(rng: np.random.Generator, n: int, scale: float = 1.0) -> np.ndarray:
    z = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    x = 0.5 * (z - z.conj().T)
    x -= np.trace(x) / n * np.eye(n)
    return scale * x


def random_group(rng: np.random.Generator, n: int, scale: float = 1.0) -> np.ndarray:
    from .liecore import exponential

    return exponential(random_algebra(rng, n, scale))


def bandlimited_algebra_loop(
    rng: np.random.Generator, N: int, n: int, kmax: int = 3, scale: float = 0.5
) -> np.ndarray:
    theta = lp.grid(N)
    out = np.zeros((N, n, n), dtype=complex)
    for k in range(kmax + 1):
        xc = random_algebra(rng, n)
        out += np.cos(k * theta)[:, None, None] * xc
        if k > 0:
            xs = random_algebra(rng, n)
            out += np.sin(k * theta)[:, None, None] * xs
    return scale * out / (kmax + 1)


def bandlimited_group_loop(
    rng: np.random.Generator, N: int, n: int, kmax: int = 3, scale: float = 0.5
) -> np.ndarray:
    return lp.exp_loop(bandlimited_algebra_loop(rng, N, n, kmax, scale))


def bandlimited_scalar_loop(
    rng: np.random.Generator, N: int, kmax: int = 3, scale: float = 1.0
) -> np.ndarray:
    theta = lp.grid(N)
    out = np.zeros(N)
    for k in range(kmax + 1):
        out += rng.standard_normal() * np.cos(k * theta)
        if k > 0:
            out += rng.standard_normal() * np.sin(k * theta)
    return scale * out / (kmax + 1)


def random_poly(rng: np.random.Generator, dim: int, scale: float = 1.0) -> Callable:
    """Random cubic-ish polynomial chart function."""
    c0 = rng.standard_normal()
    c1 = rng.standard_normal(dim)
    c2 = rng.standard_normal((dim, dim)) / dim
    c3 = rng.standard_normal(dim) / (3.0 * dim)

    def f(x: np.ndarray) -> float:
        x = np.asarray(x, dtype=float)
        return scale * (c0 + c1 @ x + x @ c2 @ x + c3 @ (x ** 3))

    return f


def random_loop_one_form(
    rng: np.random.Generator,
    dim: int,
    N: int,
    n: int,
    kmax: int = 3,
    terms: int = 2,
    scale: float = 0.6,
) -> fc.FormField:
    """Loop-algebra-valued 1-form: each component a poly/loop mixture."""
    polys = [[random_poly(rng, dim) for _ in range(terms)] for _ in range(dim)]
    loops = [
        [bandlimited_algebra_loop(rng, N, n, kmax, 1.0) for _ in range(terms)]
        for _ in range(dim)
    ]

    def coeff(p, idx):
        (i,) = idx
        out = np.zeros((N, n, n), dtype=complex)
        for f, xi in zip(polys[i], loops[i]):
            out += f(p) * xi
        return scale * out / terms

    return fc.FormField(1, dim, coeff)


def random_real_one_form(
    rng: np.random.Generator, dim: int, scale: float = 0.4
) -> fc.FormField:
    polys = [random_poly(rng, dim) for _ in range(dim)]

    def coeff(p, idx):
        (i,) = idx
        return scale * polys[i](p)

    return fc.FormField(1, dim, coeff)


def random_higgs_field(
    rng: np.random.Generator, dim: int, N: int, n: int, kmax: int = 3,
    terms: int = 2, scale: float = 0.6,
) -> Callable:
    polys = [random_poly(rng, dim) for _ in range(terms)]
    loops = [bandlimited_algebra_loop(rng, N, n, kmax, 1.0) for _ in range(terms)]

    def phi(p):
        out = np.zeros((N, n, n), dtype=complex)
        for f, xi in zip(polys, loops):
            out += f(p) * xi
        return scale * out / terms

    return phi


def random_lg_connection(
    rng: np.random.Generator, dim: int, N: int, n: int, kmax: int = 3,
    fd_step: float = 1e-4,
):
    from .connections import LGConnectionData

    A = random_loop_one_form(rng, dim, N, n, kmax)
    phi = random_higgs_field(rng, dim, N, n, kmax)
    return LGConnectionData(A=A, phi=phi, dim=dim, N=N, n=n, fd_step=fd_step)


def random_lgxs1_connection(
    rng: np.random.Generator, dim: int, N: int, n: int, kmax: int = 3,
    fd_step: float = 1e-4,
):
    from .connections import LGxS1ConnectionData

    A = random_loop_one_form(rng, dim, N, n, kmax)
    a = random_real_one_form(rng, dim)
    phi = random_higgs_field(rng, dim, N, n, kmax)
    return LGxS1ConnectionData(A=A, a=a, phi=phi, dim=dim, N=N, n=n, fd_step=fd_step)


def random_gauge_loop(
    rng: np.random.Generator, dim: int, N: int, n: int, kmax: int = 2,
    scale: float = 0.5,
) -> Callable:
    """Smooth chart -> LG map x |-> exp(sum_j p_j(x) xi_j(theta))."""
    terms = 2
    polys = [random_poly(rng, dim, scale=scale) for _ in range(terms)]
    loops = [bandlimited_algebra_loop(rng, N, n, kmax, 1.0) for _ in range(terms)]

    def sigma(p):
        acc = np.zeros((N, n, n), dtype=complex)
        for f, xi in zip(polys, loops):
            acc += f(p) * xi
        return lp.exp_loop(acc / terms)

    return sigma


def random_semidirect_gauge(
    rng: np.random.Generator, dim: int, N: int, n: int, kmax: int = 2,
    scale: float = 0.5,
) -> Callable:
    loop_part = random_gauge_loop(rng, dim, N, n, kmax, scale)
    angle_poly = random_poly(rng, dim, scale=0.3)

    def sigma(p):
        return lp.SemiDirectGroupElement(loop_part(p), angle_poly(p))

    return sigma


def random_chart_points(
    rng: np.random.Generator, dim: int, count: int, scale: float = 0.4
) -> list[np.ndarray]:
    return [scale * rng.standard_normal(dim) for _ in range(count)]


def random_frame(rng: np.random.Generator, n: int, count: int) -> list[np.ndarray]:
    return [random_algebra(rng, n) for _ in range(count)]
