"""Compile splitting schemes into executable factors and advance wave functions.

Factor kinds:
  fourier  - exponent is c * d^k with constant field: exact multiplier in FFT space
  diagonal - all heights zero: exact pointwise phase
  lanczos  - general skew-Hermitian exponent, applied by a small Krylov expansion

Krylov-applied exponents use band-limited differentiation (2/3 rule by
default): the Lanczos polynomial is not modulus-one away from its Ritz values,
and unbounded symbols over the physically empty top band would otherwise pump
rounding noise exponentially from step to step.  The cut operators remain
exactly skew-Hermitian, so unitarity is untouched.
"""
from __future__ import annotations

import time
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from .grid import SpatialGrid, WaveFunction, l2_norm
from .potential import sample_quadrature
from .symlie import LieElement, omega5, zassenhaus_split
from .symlie.zassenhaus import SplittingScheme

SCHEME_KINDS = ("strang", "mid", "full")

#: Krylov subspace sizes: (W2 factor, central factor)
DEFAULT_LANCZOS = (3, 2)
#: band-limit fraction for Krylov-applied correction operators
DEFAULT_CUTOFF = 2.0 / 3.0


@lru_cache(maxsize=None)
def scheme_exponents(kind: str) -> SplittingScheme:
    """Symbolic exponents powering a scheme kind (derived once, cached)."""
    if kind not in SCHEME_KINDS:
        raise ValueError(f"unknown scheme kind {kind!r}")
    split = zassenhaus_split(omega5(), 2)
    w0, w1, w2 = split.outer
    if kind == "strang":
        return SplittingScheme((w0,), w1)
    if kind == "mid":
        return SplittingScheme((w0, w1), w2)
    return split


def _compile_element(elem: LieElement, sample, eps: float, h: float,
                     weight: float) -> dict[int, np.ndarray]:
    """Evaluate an exponent's fields on the grid: height -> complex array."""
    m = sample.grid.m
    heights: dict[int, np.ndarray] = {}
    for t in elem.terms:
        c = complex(t.coeff) * (1j if t.i_exp else 1.0)
        c *= h ** t.h_exp * eps ** t.eps_exp * weight
        vals = np.zeros(m)
        for atoms, q in t.field.terms:
            mono = np.full(m, float(q))
            for slot, order in atoms:
                mono = mono * sample.field(slot, order).values
            vals = vals + mono
        heights[t.height] = heights.get(t.height, np.zeros(m, complex)) + c * vals
    return heights


@dataclass
class Factor:
    kind: str                       # fourier | diagonal | lanczos
    payload: object                 # multiplier array, phase array, or op dict
    krylov: int = 0
    label: str = ""


@dataclass
class CompiledStep:
    """Ordered factor sequence for one step (palindromic by construction)."""

    grid: SpatialGrid
    factors: list[Factor]
    cutoff: float = DEFAULT_CUTOFF

    def apply(self, u: WaveFunction) -> WaveFunction:
        v = u.values
        for f in self.factors:
            if f.kind == "fourier":
                v = np.fft.fftshift(np.fft.ifft(f.payload * np.fft.fft(np.fft.ifftshift(v))))
            elif f.kind == "diagonal":
                v = f.payload * v
            else:
                v = _lanczos_core(
                    _operator_apply(f.payload, self.grid, self.cutoff), v, f.krylov)
        return WaveFunction(self.grid, v)


def _operator_apply(heights: dict[int, np.ndarray], grid: SpatialGrid,
                    cutoff: float = DEFAULT_CUTOFF):
    mults = {k: grid.multiplier(k, cutoff) for k in heights if k > 0}

    def apply(v: np.ndarray) -> np.ndarray:
        out = np.zeros_like(v)
        if 0 in heights:
            out = out + heights[0] * v
        for k, mult in mults.items():
            fk = heights[k]
            dv = np.fft.fftshift(np.fft.ifft(mult * np.fft.fft(np.fft.ifftshift(v))))
            dfv = np.fft.fftshift(np.fft.ifft(mult * np.fft.fft(np.fft.ifftshift(fk * v))))
            out = out + 0.5 * (fk * dv + dfv)
        return out

    return apply


def _lanczos_core(apply_op, v: np.ndarray, m: int) -> np.ndarray:
    beta0 = np.linalg.norm(v)
    if beta0 == 0 or m < 1:
        return v.copy()
    basis = [v / beta0]
    alphas: list[float] = []
    betas: list[float] = []
    for j in range(m):
        w = apply_op(basis[j]) / 1j          # Hermitian form
        alphas.append(float(np.real(np.vdot(basis[j], w))))
        w = w - alphas[j] * basis[j]
        if j > 0:
            w = w - betas[j - 1] * basis[j - 1]
        for q in basis:                       # full reorthogonalisation (m is tiny)
            w = w - np.vdot(q, w) * q
        if j == m - 1:
            break
        b = float(np.linalg.norm(w))
        if b <= 1e-14 * beta0:
            break                             # invariant subspace: exact there
        betas.append(b)
        basis.append(w / b)
    k = len(basis)
    tmat = np.diag(alphas[:k])
    if k > 1:
        tmat = tmat + np.diag(betas[: k - 1], 1) + np.diag(betas[: k - 1], -1)
    lam, q = np.linalg.eigh(tmat)
    y = q @ (np.exp(1j * lam) * q[0].conj()) * beta0
    out = np.zeros_like(v)
    for i in range(k):
        out = out + y[i] * basis[i]
    return out


def lanczos_exp_apply(apply_op, v: WaveFunction, m: int) -> WaveFunction:
    """exp(A) v for skew-Hermitian A given as a callable on value arrays."""
    if m < 1:
        raise ValueError("need at least one Krylov vector")
    return WaveFunction(v.grid, _lanczos_core(apply_op, v.values, m))


def _is_constant_field(elem: LieElement) -> bool:
    return (len(elem.terms) == 1 and elem.terms[0].field.terms
            and elem.terms[0].field.terms[0][0] == ())


def compile_step(kind: str, sample, eps: float, h: float, grid: SpatialGrid,
                 lanczos_m: tuple[int, int] = DEFAULT_LANCZOS,
                 cutoff: float = DEFAULT_CUTOFF) -> CompiledStep:
    """Build the palindromic factor list of one step from the symbolic scheme."""
    if eps <= 0:
        raise ValueError("eps must be positive")
    sym = scheme_exponents(kind)

    def make(elem: LieElement, weight: float, krylov: int, label: str) -> Factor:
        heights = _compile_element(elem, sample, eps, h, weight)
        heights = {k: v for k, v in heights.items() if np.any(v)}
        if set(heights) <= {0}:
            phase = heights.get(0, np.zeros(grid.m, complex))
            return Factor("diagonal", np.exp(phase), label=label)
        if _is_constant_field(elem) and len(heights) == 1:
            (k, coeffs), = heights.items()
            mult = np.exp(coeffs[0] * grid.multiplier(k))
            return Factor("fourier", mult, label=label)
        op = {k: v for k, v in heights.items()}
        return Factor("lanczos", op, krylov=krylov, label=label)

    m2, m3 = lanczos_m
    outer = sym.outer
    half: list[Factor] = []
    for idx, w in enumerate(outer):
        half.append(make(w, 0.5, m2, f"W{idx}/2"))
    central = [make(sym.central, 1.0, m3 if kind == "full" else m2, "central")]
    return CompiledStep(grid, half + central + half[::-1], cutoff)


def step_once(u: WaveFunction, t: float, h: float, kind: str, model,
              eps: float, lanczos_m: tuple[int, int] = DEFAULT_LANCZOS,
              cutoff: float = DEFAULT_CUTOFF) -> WaveFunction:
    """One splitting step over [t, t+h]; h may be negative (exact inverse)."""
    sample = sample_quadrature(model, t, h, u.grid)
    compiled = compile_step(kind, sample, eps, h, u.grid, lanczos_m, cutoff)
    return compiled.apply(u)


@dataclass
class EvolveReport:
    final: WaveFunction
    times: list[float] = field(default_factory=list)
    norm_drift: list[float] = field(default_factory=list)
    snapshots: list[tuple[float, WaveFunction]] = field(default_factory=list)
    seconds: float = 0.0
    steps: int = 0

    @property
    def max_norm_drift(self) -> float:
        return max(self.norm_drift, default=0.0)


def evolve(u0: WaveFunction, t0: float, t_end: float, h: float, kind: str,
           model, eps: float, snapshot_every: int = 0,
           lanczos_m: tuple[int, int] = DEFAULT_LANCZOS) -> EvolveReport:
    """March from t0 to t_end; the final step is shortened to land exactly."""
    if t_end < t0:
        raise ValueError("t_end must be >= t0")
    started = time.perf_counter()
    report = EvolveReport(final=u0.copy())
    u = u0.copy()
    norm0 = l2_norm(u)
    t = t0
    n = 0
    while t < t_end - 1e-14 * max(1.0, abs(t_end)):
        hh = min(h, t_end - t)
        u = step_once(u, t, hh, kind, model, eps, lanczos_m)
        t += hh
        n += 1
        report.times.append(t)
        report.norm_drift.append(abs(l2_norm(u) - norm0))
        if snapshot_every and n % snapshot_every == 0:
            report.snapshots.append((t, u.copy()))
    report.final = u
    report.steps = n
    report.seconds = time.perf_counter() - started
    return report


def transmitted_mass(u: WaveFunction) -> float:
    """Probability mass on x > 0 of an l2-normalised state."""
    right = u.grid.nodes > 0
    return float(2.0 / u.grid.m * np.sum(np.abs(u.values[right]) ** 2))
