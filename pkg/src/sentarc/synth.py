"""Synthetic series with known Hurst exponent.

Fractional Gaussian noise is drawn by circulant embedding (Davies-Harte):
the target autocovariance

    gamma(k) = 0.5 * (|k+1|^{2H} - 2|k|^{2H} + |k-1|^{2H})

is embedded in a 2N circulant matrix whose FFT gives the eigenvalues, and
one FFT of suitably scaled complex Gaussians returns an exact sample.
H = 0.5 reduces to white noise. These series are the ground truth the
Hurst estimator is validated against.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import SentarcError

#: Tolerated eigenvalue undershoot from rounding in the embedding.
EIGENVALUE_TOLERANCE = -1e-10


@dataclass(frozen=True)
class SynthSpec:
    """Target exponent, length and seed for one synthetic draw.

    N must be a power of two of at least 64; the embedding length stays a
    power of two, which keeps the FFT plan exact and fast.
    """

    target_h: float
    n: int
    seed: int

    def __post_init__(self):
        if not 0.0 < self.target_h < 1.0:
            raise ValueError(f"target_h must be in (0, 1), got {self.target_h}")
        if self.n < 64 or self.n & (self.n - 1) != 0:
            raise ValueError(f"n must be a power of two >= 64, got {self.n}")


def fgn_autocovariance(h: float, lags) -> np.ndarray:
    """Autocovariance of unit-variance fractional Gaussian noise."""
    k = np.asarray(lags, dtype=float)
    two_h = 2.0 * h
    return 0.5 * (
        np.abs(k + 1.0) ** two_h - 2.0 * np.abs(k) ** two_h + np.abs(k - 1.0) ** two_h
    )


def fgn(spec: SynthSpec) -> np.ndarray:
    """Sample fractional Gaussian noise with exact target covariance.

    Deterministic per seed. Raises SentarcError if the circulant
    embedding produces a materially negative eigenvalue, which cannot
    happen for H in (0, 1) beyond rounding error.
    """
    n = spec.n
    gamma = fgn_autocovariance(spec.target_h, np.arange(n + 1))
    row = np.concatenate([gamma, gamma[-2:0:-1]])  # [g0..gN, g(N-1)..g1]
    eigenvalues = np.fft.fft(row).real
    if eigenvalues.min() < EIGENVALUE_TOLERANCE:
        raise SentarcError(
            f"circulant embedding failed: eigenvalue {eigenvalues.min():.3e} < 0 "
            f"for H={spec.target_h}, N={n}"
        )
    eigenvalues = np.clip(eigenvalues, 0.0, None)

    rng = np.random.default_rng(spec.seed)
    first = rng.standard_normal()
    middle = rng.standard_normal()
    real = rng.standard_normal(n - 1)
    imag = rng.standard_normal(n - 1)

    w = np.empty(2 * n, dtype=complex)
    w[0] = np.sqrt(eigenvalues[0] / (2 * n)) * first
    w[1:n] = np.sqrt(eigenvalues[1:n] / (4 * n)) * (real + 1j * imag)
    w[n] = np.sqrt(eigenvalues[n] / (2 * n)) * middle
    w[n + 1 :] = np.conj(w[n - 1 : 0 : -1])
    return np.fft.fft(w).real[:n]


def white_noise(n: int, seed: int) -> np.ndarray:
    """Independent standard normal draws, deterministic per seed."""
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    return np.random.default_rng(seed).standard_normal(n)
