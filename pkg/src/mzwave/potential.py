"""Time-dependent potential models and per-step quadrature sampling.

A model evaluates V(x, t) on a grid.  Each step samples V at the three
Gauss-Legendre times t + h*t_j and combines them into the slices
    V0 = V(t2),  V1 = sqrt(15)/(3h) (V(t3) - V(t1)),
    V2 = 10/(3h^2) (V(t3) - 2 V(t2) + V(t1)),
whose spatial derivatives (orders 4 / 3 / 2 respectively, all the splitting
needs) are taken spectrally.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .exprparse import eval_ast, parse_expr
from .grid import GridField, SpatialGrid, fourier_differentiate

#: Gauss-Legendre nodes on [0, 1]
T1 = 0.5 - math.sqrt(15) / 10
T2 = 0.5
T3 = 0.5 + math.sqrt(15) / 10

#: derivative orders of each slice consumed by the compiled splitting
DERIV_ORDERS = {0: 4, 1: 3, 2: 2}

_BUILTIN_EXPRS = {
    "zero": "0",
    "lattice": "bump(4*x)*sin(20*pi*x)",
    "pulse": "bump(3*t-1)*bump(sin(2*pi*(x-t)))",
    "lattice_with_pulse": "bump(4*x)*sin(20*pi*x) + bump(3*t-1)*bump(sin(2*pi*(x-t)))",
}


@dataclass(frozen=True)
class PotentialModel:
    """Named, parsed potential; evaluation is pure."""

    name: str
    ast: object

    def evaluate(self, x: np.ndarray, t: float) -> np.ndarray:
        out = eval_ast(self.ast, x, t)
        return np.broadcast_to(np.asarray(out, dtype=float), x.shape).copy()


class ReversedModel:
    """View of a model with time running backwards across a mirror point."""

    def __init__(self, base, t_mirror: float):
        self.base = base
        self.t_mirror = t_mirror
        self.name = f"reversed({getattr(base, 'name', '?')})"

    def evaluate(self, x: np.ndarray, t: float) -> np.ndarray:
        return self.base.evaluate(x, self.t_mirror - t)


def builtin(name: str, **params) -> PotentialModel:
    """Construct a builtin model: zero, constant, lattice, pulse,
    lattice_with_pulse, or separable (t^tpow * g(x))."""
    if name in _BUILTIN_EXPRS:
        return PotentialModel(name, parse_expr(_BUILTIN_EXPRS[name]))
    if name == "constant":
        c = float(params["c"])
        return PotentialModel(f"constant({c})", parse_expr(repr(c)))
    if name == "separable":
        g = params["g"]
        tpow = int(params.get("tpow", 1))
        src = f"(t^{tpow})*({g})" if tpow else g
        return PotentialModel(f"separable[{src}]", parse_expr(src))
    raise ValueError(f"unknown builtin potential {name!r}")


def from_expression(src: str) -> PotentialModel:
    return PotentialModel(f"expr[{src}]", parse_expr(src))


def evaluate_on_grid(model, t: float, grid: SpatialGrid) -> GridField:
    return GridField(grid, model.evaluate(grid.nodes, t))


@dataclass
class QuadratureSample:
    """Per-step slices and their spatial-derivative tables.

    ``deriv[j][m]`` is the m-th spectral derivative of slice j; entry 0 is the
    slice itself, bit for bit.
    """

    grid: SpatialGrid
    t: float
    h: float
    deriv: dict[int, dict[int, GridField]]

    def slice(self, j: int) -> GridField:
        return self.deriv[j][0]

    def field(self, j: int, order: int) -> GridField:
        return self.deriv[j][order]


def sample_quadrature(model, t: float, h: float, grid: SpatialGrid,
                      orders: dict[int, int] | None = None) -> QuadratureSample:
    """Sample V at the three quadrature times of [t, t+h] and differentiate.

    ``h`` may be negative (stepping backwards); the defining formulas then
    give the exact reversed-step slices.
    """
    if h == 0:
        raise ValueError("step size must be nonzero")
    orders = DERIV_ORDERS if orders is None else orders
    x = grid.nodes
    v1 = model.evaluate(x, t + h * T1)
    v2 = model.evaluate(x, t + h * T2)
    v3 = model.evaluate(x, t + h * T3)
    slices = {
        0: v2,
        1: math.sqrt(15) / (3 * h) * (v3 - v1),
        2: 10.0 / (3 * h * h) * (v3 - 2 * v2 + v1),
    }
    deriv: dict[int, dict[int, GridField]] = {}
    for j, base in slices.items():
        f0 = GridField(grid, base)
        deriv[j] = {0: f0}
        for m in range(1, orders[j] + 1):
            deriv[j][m] = fourier_differentiate(f0, m)
    return QuadratureSample(grid, t, h, deriv)
