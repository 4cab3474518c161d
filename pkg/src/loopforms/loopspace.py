"""Discretized loops and their circle calculus.

A loop with values in V is an ndarray whose leading axis holds N uniform
samples at theta_j = 2 pi j / N: shape (N,) for scalars, (N, n, n) for
algebra or group values.  Derivatives and rotations go through the FFT,
so they are exact for band-limited data (all frequencies below N/2).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

_GRID_TOL = 1e-12


def grid(N: int) -> np.ndarray:
    return 2.0 * np.pi * np.arange(N) / N


def _check_samples(N: int) -> None:
    if N < 4 or N % 2 != 0:
        raise ValueError(f"need an even number of samples >= 4, got {N}")


def _freqs(N: int) -> np.ndarray:
    k = np.fft.fftfreq(N, d=1.0 / N)
    k[N // 2] = 0.0  # Nyquist mode has no well-defined derivative
    return k


def loop_derivative(s: np.ndarray) -> np.ndarray:
    """Spectral d/dtheta, entrywise."""
    N = s.shape[0]
    _check_samples(N)
    k = _freqs(N).reshape((N,) + (1,) * (s.ndim - 1))
    ds = np.fft.ifft(1j * k * np.fft.fft(s, axis=0), axis=0)
    return ds.real if np.isrealobj(s) else ds


def circle_integral(s):
    """Periodic rectangle rule (2 pi / N) sum; 2 pi c for a constant."""
    if np.ndim(s) == 0:
        return 2.0 * np.pi * s
    return (2.0 * np.pi / s.shape[0]) * s.sum(axis=0)


def rotate(phi: float, s: np.ndarray) -> np.ndarray:
    """Resample theta -> s(theta - phi).

    Grid multiples of 2 pi / N are exact cyclic shifts; anything else is
    trigonometric interpolation (the Nyquist bin rotates as its cosine
    interpolant, which is exact on the grid).
    """
    N = s.shape[0]
    _check_samples(N)
    step = 2.0 * np.pi / N
    m = phi / step
    if abs(m - round(m)) < _GRID_TOL:
        return np.roll(s, int(round(m)) % N, axis=0)
    k = np.fft.fftfreq(N, d=1.0 / N)
    phase = np.exp(-1j * k * phi)
    phase[N // 2] = np.cos(0.5 * N * phi)
    phase = phase.reshape((N,) + (1,) * (s.ndim - 1))
    out = np.fft.ifft(phase * np.fft.fft(s, axis=0), axis=0)
    return out.real if np.isrealobj(s) else out


def angle_delta(a2: float, a1: float) -> float:
    """Difference of circle angles mapped to (-pi, pi]."""
    return -((a1 - a2 + np.pi) % (2.0 * np.pi) - np.pi)


def loop_inverse(g: np.ndarray) -> np.ndarray:
    """Pointwise inverse of a unitary loop."""
    return g.conj().swapaxes(-1, -2)


def z_map(g: np.ndarray) -> np.ndarray:
    """gamma -> (d gamma)(theta) gamma(theta)^{-1}."""
    return loop_derivative(g) @ loop_inverse(g)


def exp_loop(xi: np.ndarray) -> np.ndarray:
    """Pointwise exponential of an anti-Hermitian loop.

    Diagonalizes i*xi (Hermitian); the result is exactly unitary.
    """
    w, u = np.linalg.eigh(-1j * xi)
    phases = np.exp(1j * w)
    return np.einsum("...ij,...j,...kj->...ik", u, phases, u.conj())


def project_unitary(g: np.ndarray) -> np.ndarray:
    """Polar projection onto the unitary group (via SVD)."""
    u, _, vh = np.linalg.svd(g)
    return u @ vh


@dataclass(frozen=True)
class SemiDirectAlgebraElement:
    """Pair (xi, x) in Lg x iR; the factor i of the circle part is implicit."""

    loop_part: np.ndarray
    circle_part: float


@dataclass(frozen=True)
class SemiDirectGroupElement:
    """Pair (gamma, phi) in LG x S1 with angle stored in [0, 2 pi)."""

    loop_part: np.ndarray
    angle: float

    def __post_init__(self) -> None:
        object.__setattr__(self, "angle", float(self.angle) % (2.0 * np.pi))


def semidirect_multiply(
    g1: SemiDirectGroupElement, g2: SemiDirectGroupElement
) -> SemiDirectGroupElement:
    """(gamma_1, phi_1)(gamma_2, phi_2) = (gamma_1 rot_{phi_1}(gamma_2), phi_1 + phi_2)."""
    return SemiDirectGroupElement(
        g1.loop_part @ rotate(g1.angle, g2.loop_part), g1.angle + g2.angle
    )


def semidirect_inverse(g: SemiDirectGroupElement) -> SemiDirectGroupElement:
    return SemiDirectGroupElement(
        rotate(-g.angle, loop_inverse(g.loop_part)), -g.angle
    )


def semidirect_bracket(
    a: SemiDirectAlgebraElement, b: SemiDirectAlgebraElement
) -> SemiDirectAlgebraElement:
    """[(xi, x), (zeta, y)] = ([xi, zeta] - x dzeta + y dxi, 0)."""
    xi, zeta = a.loop_part, b.loop_part
    if xi.shape != zeta.shape:
        raise ValueError(f"loop shapes differ: {xi.shape} vs {zeta.shape}")
    loop = (
        xi @ zeta
        - zeta @ xi
        - a.circle_part * loop_derivative(zeta)
        + b.circle_part * loop_derivative(xi)
    )
    return SemiDirectAlgebraElement(loop, 0.0)


def semidirect_adjoint(
    g: SemiDirectGroupElement, a: SemiDirectAlgebraElement
) -> SemiDirectAlgebraElement:
    """ad(gamma, phi)(xi, x) = (Ad(gamma) rot_phi(xi) + x dgamma gamma^{-1}, x)."""
    gamma = g.loop_part
    if gamma.shape != a.loop_part.shape:
        raise ValueError("loop shapes differ")
    rotated = rotate(g.angle, a.loop_part)
    loop = gamma @ rotated @ loop_inverse(gamma) + a.circle_part * z_map(gamma)
    return SemiDirectAlgebraElement(loop, a.circle_part)


def semidirect_adjoint_inverse(
    g: SemiDirectGroupElement, a: SemiDirectAlgebraElement
) -> SemiDirectAlgebraElement:
    """ad(gamma, phi)^{-1}(xi, x) = (rot_{-phi}(Ad(gamma^{-1}) xi - x gamma^{-1} dgamma), x)."""
    gamma = g.loop_part
    ginv = loop_inverse(gamma)
    inner = ginv @ a.loop_part @ gamma - a.circle_part * (ginv @ loop_derivative(gamma))
    return SemiDirectAlgebraElement(rotate(-g.angle, inner), a.circle_part)
