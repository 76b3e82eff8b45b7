"""Brute-force reference solutions: fine-grid, fine-step Strang with frozen midpoint.

Deliberately independent of the splitting compiler: two exact exponentials per
step, potential evaluated directly at the interval midpoint.  The resolution
loop grows the grid until the spectral tail is empty and successive solutions
agree, so the returned state can serve as ground truth for error measurement.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .grid import SpatialGrid, WaveFunction, l2_norm, linf_norm, resample


@dataclass
class ReferenceConfig:
    h_ref: float
    m_ref: int
    refinement_factor: int = 2
    max_refinements: int = 3
    tol: float = 1e-9
    tail_fraction: float = 0.1
    tail_mass_limit: float = 1e-12


class ReferenceDivergedError(RuntimeError):
    """The refinement loop ran out of attempts before converging."""


def strang_step(u: WaveFunction, t: float, h_ref: float, model,
                eps: float) -> WaveFunction:
    """exp(h/2 i eps K^2) exp(-i h/eps V(t+h/2)) exp(h/2 i eps K^2) u."""
    grid = u.grid
    kin = np.exp(0.5j * h_ref * eps * grid.multiplier(2))
    vmid = model.evaluate(grid.nodes, t + h_ref / 2)
    phase = np.exp(-1j * h_ref / eps * vmid)
    v = np.fft.fftshift(np.fft.ifft(kin * np.fft.fft(np.fft.ifftshift(u.values))))
    v = phase * v
    v = np.fft.fftshift(np.fft.ifft(kin * np.fft.fft(np.fft.ifftshift(v))))
    return WaveFunction(grid, v)


def _run_strang(model, u0: WaveFunction, t0: float, t_end: float,
                h_ref: float, eps: float) -> WaveFunction:
    u = u0.copy()
    t = t0
    while t < t_end - 1e-14 * max(1.0, abs(t_end)):
        hh = min(h_ref, t_end - t)
        u = strang_step(u, t, hh, model, eps)
        t += hh
    return u


def spectral_tail_mass(u: WaveFunction, fraction: float = 0.1) -> float:
    """Fraction of the squared norm carried by the top ``fraction`` of modes."""
    coeffs = np.fft.fft(np.fft.ifftshift(u.values))
    m = np.abs(u.grid.modes)
    cut = (1.0 - fraction) * u.grid.n
    total = float(np.sum(np.abs(coeffs) ** 2))
    if total == 0:
        return 0.0
    return float(np.sum(np.abs(coeffs[m > cut]) ** 2) / total)


@dataclass
class ReferenceSolution:
    wave: WaveFunction
    m_final: int
    tail_mass: float
    last_delta: float
    refinements: int
    diagnostics: dict = field(default_factory=dict)


def solve_reference(model, u0_factory, t0: float, t_end: float, eps: float,
                    cfg: ReferenceConfig) -> ReferenceSolution:
    """Iteratively refine the grid until tail-clean and self-consistent.

    ``u0_factory(grid)`` builds the initial state on each trial grid, so no
    resolution is ever inherited from a coarse run.
    """
    m = cfg.m_ref | 1
    prev: WaveFunction | None = None
    last_delta = float("inf")
    for attempt in range(cfg.max_refinements + 1):
        grid = SpatialGrid(m)
        u = _run_strang(model, u0_factory(grid), t0, t_end, cfg.h_ref, eps)
        tail = spectral_tail_mass(u, cfg.tail_fraction)
        if prev is not None:
            down = resample(u, prev.grid.m)
            last_delta = l2_norm(WaveFunction(prev.grid, down.values - prev.values))
            if tail < cfg.tail_mass_limit and last_delta < cfg.tol:
                return ReferenceSolution(u, m, tail, last_delta, attempt)
        elif tail < cfg.tail_mass_limit and cfg.max_refinements == 0:
            return ReferenceSolution(u, m, tail, 0.0, 0)
        prev = u
        m = (m * cfg.refinement_factor) | 1
    if prev is not None and spectral_tail_mass(prev, cfg.tail_fraction) < cfg.tail_mass_limit:
        # tail is clean; report the last delta so callers can judge the floor
        return ReferenceSolution(prev, prev.grid.m, spectral_tail_mass(prev),
                                 last_delta, cfg.max_refinements,
                                 {"note": "agreement tolerance not reached"})
    raise ReferenceDivergedError(
        f"no convergence after {cfg.max_refinements} refinements "
        f"(last delta {last_delta:.3e})")


def error_against_reference(u: WaveFunction, u_ref: WaveFunction) -> dict:
    """l2 and linf errors after mode-truncating the reference down to u's grid."""
    if u_ref.grid.m < u.grid.m:
        raise ValueError("reference must live on the finer grid")
    down = resample(u_ref, u.grid.m) if u_ref.grid.m != u.grid.m else u_ref
    diff = WaveFunction(u.grid, u.values - down.values)
    return {"l2": l2_norm(diff), "linf": linf_norm(diff)}
