"""Discrete Fourier coefficients of an extended grid.

Coefficients are stored in the symmetric order ``l = -n, ..., n-1``; the
FFT's natural ``0..2n-1`` order is remapped once here.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .exceptions import GridError


@dataclass(frozen=True)
class FourierCoefficients:
    n: int
    coeffs: np.ndarray = field(repr=False)

    @property
    def modes(self) -> np.ndarray:
        return np.arange(-self.n, self.n)

    def __getitem__(self, ell: int) -> complex:
        if not -self.n <= ell < self.n:
            raise IndexError(f"mode {ell} outside [-{self.n}, {self.n - 1}]")
        return self.coeffs[ell + self.n]


def discrete_coefficients(ext) -> FourierCoefficients:
    """``d_l = (1/2n) sum_j values[j] exp(-pi i l j / n)`` for ``l = -n..n-1``."""
    values = np.asarray(ext.values)
    n = ext.n
    if n < 2 or values.shape != (2 * n,):
        raise GridError(f"extended grid must hold 2n values with n >= 2, got {values.shape}")
    raw = np.fft.fft(values) / (2 * n)
    return FourierCoefficients(n, np.fft.fftshift(raw))


def direct_coefficients(values, n: int) -> np.ndarray:
    """O(n^2) evaluation of the same sum; used as a cross-check."""
    values = np.asarray(values)
    j = np.arange(2 * n)
    ell = np.arange(-n, n)
    kernel = np.exp(-1j * np.pi * np.outer(ell, j) / n)
    return kernel @ values / (2 * n)


def synthesize(coeffs: FourierCoefficients, a: float, b: float, x) -> np.ndarray:
    """Evaluate ``sum_l d_l exp(pi i l (x - a)/(b - a))`` at ``x``."""
    x = np.asarray(x, dtype=float)
    phase = np.pi * np.multiply.outer((x - a) / (b - a), coeffs.modes)
    return np.exp(1j * phase) @ coeffs.coeffs
