"""Equispaced periodic spectral grid on [-1, 1): FFT differentiation and norms.

The grid has an odd number of nodes M = 2N+1 at x_n = n/(N+1/2), so the mode
set {-N..N} is symmetric and odd derivative orders stay unambiguous.  Mode m
carries the Fourier multiplier (i*pi*m)^k because the period is 2.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

#: relative imaginary residue allowed when a real field comes back from FFT space
_IMAG_TOL = 1e-12


class GridMismatchError(ValueError):
    """Operands live on different grids."""


class SpatialGrid:
    """Periodic collocation grid with M = 2N+1 nodes."""

    def __init__(self, m: int):
        if m < 1 or m % 2 == 0:
            raise ValueError(f"node count must be odd and positive, got {m}")
        self.m = m
        self.n = (m - 1) // 2
        self.nodes = np.arange(-self.n, self.n + 1) / (self.n + 0.5)
        # integer mode numbers in FFT layout: 0..N, -N..-1
        self.modes = np.fft.fftfreq(m, d=1.0 / m)

    def __eq__(self, other):
        return isinstance(other, SpatialGrid) and other.m == self.m

    def __hash__(self):
        return hash(("SpatialGrid", self.m))

    def __repr__(self):
        return f"SpatialGrid(m={self.m})"

    def multiplier(self, order: int, cutoff: float | None = None) -> np.ndarray:
        """(i*pi*m)^order over the FFT-ordered modes, optionally band-limited."""
        mult = (1j * np.pi * self.modes) ** order
        if cutoff is not None:
            mult = mult * (np.abs(self.modes) <= cutoff * self.n)
        return mult


def _fft(values: np.ndarray) -> np.ndarray:
    return np.fft.fft(np.fft.ifftshift(values))


def _ifft(coeffs: np.ndarray) -> np.ndarray:
    return np.fft.fftshift(np.fft.ifft(coeffs))


@dataclass
class WaveFunction:
    grid: SpatialGrid
    values: np.ndarray

    def __post_init__(self):
        self.values = np.asarray(self.values, dtype=complex)
        if self.values.shape != (self.grid.m,):
            raise ValueError("value count does not match grid")

    def copy(self) -> "WaveFunction":
        return WaveFunction(self.grid, self.values.copy())


@dataclass
class GridField:
    grid: SpatialGrid
    values: np.ndarray

    def __post_init__(self):
        self.values = np.asarray(self.values, dtype=float)
        if self.values.shape != (self.grid.m,):
            raise ValueError("value count does not match grid")


def fourier_differentiate(v: WaveFunction | GridField, order: int):
    """Spectral d^k/dx^k; real fields stay real (residue checked)."""
    if order < 0:
        raise ValueError("derivative order must be >= 0")
    mult = v.grid.multiplier(order)
    out = _ifft(mult * _fft(v.values))
    if isinstance(v, GridField):
        # scale covers both the result and the worst-case amplification of
        # rounding noise in the input ((pi N)^order at the top mode)
        in_amp = float(np.max(np.abs(v.values))) * (np.pi * v.grid.n) ** order
        scale = max(1.0, float(np.max(np.abs(out))), 1e-3 * in_amp)
        resid = float(np.max(np.abs(out.imag)))
        if resid > _IMAG_TOL * scale:
            raise AssertionError(
                f"imaginary residue {resid:.3e} exceeds tolerance on a real field")
        return GridField(v.grid, out.real)
    return WaveFunction(v.grid, out)


def apply_jordan(k: int, f: GridField, v: WaveFunction,
                 cutoff: float | None = None) -> WaveFunction:
    """(f * d^k v + d^k (f v)) / 2, the symmetrised product <k|f> v.

    The caller supplies the i^(k+1) phase.  ``cutoff`` band-limits the
    differentiation (fraction of N), used by Krylov-applied corrections.
    """
    if f.grid != v.grid:
        raise GridMismatchError("field and wave function on different grids")
    if k == 0:
        return WaveFunction(v.grid, f.values * v.values)
    mult = v.grid.multiplier(k, cutoff)
    dv = _ifft(mult * _fft(v.values))
    dfv = _ifft(mult * _fft(f.values * v.values))
    return WaveFunction(v.grid, 0.5 * (f.values * dv + dfv))


def l2_norm(v: WaveFunction) -> float:
    """Continuum-normalised norm: sqrt(2/M) * euclidean."""
    return float(np.sqrt(2.0 / v.grid.m) * np.linalg.norm(v.values))


def linf_norm(v: WaveFunction) -> float:
    return float(np.max(np.abs(v.values)))


def resample(v: WaveFunction, m_new: int) -> WaveFunction:
    """Fourier zero-padding (up) or mode truncation (down) to m_new nodes."""
    if m_new < 1 or m_new % 2 == 0:
        raise ValueError(f"target node count must be odd, got {m_new}")
    m_old = v.grid.m
    if m_new == m_old:
        return v.copy()
    coeffs = _fft(v.values) / m_old
    n_keep = (min(m_old, m_new) - 1) // 2
    out = np.zeros(m_new, dtype=complex)
    out[: n_keep + 1] = coeffs[: n_keep + 1]
    if n_keep:
        out[-n_keep:] = coeffs[-n_keep:]
    return WaveFunction(SpatialGrid(m_new), _ifft(out * m_new))


def gaussian_wave_packet(grid: SpatialGrid, x0: float, k0: float,
                         delta: float) -> WaveFunction:
    """(delta*pi)^(-1/4) exp(i k0 (x-x0)/delta - (x-x0)^2/(2 delta))."""
    if delta <= 0:
        raise ValueError("packet width parameter must be positive")
    x = grid.nodes
    values = (delta * np.pi) ** -0.25 * np.exp(
        1j * k0 * (x - x0) / delta - (x - x0) ** 2 / (2 * delta))
    return WaveFunction(grid, values)
