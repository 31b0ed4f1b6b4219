"""Laplace-type representation of F_k.

R_k(x, y1, y2) is a one-dimensional cosh-kernel integral supported on
max(|y2|, |y1-x2|) <= t <= min(y1-x3, x1-y1); N_k is its density on the
convex hull of the Weyl orbit, and the transform integrates test functions
against N_k.  This is a validation route (documented tolerance 1e-4), not the
production evaluator.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import accel
from .errors import ParameterError
from .quadrature import EvalResult, gauss_jacobi_rule
from .root_lattice import ChamberPoint, VPoint, in_convex_hull

TIE_TOL = 1e-9


@dataclass(frozen=True)
class KernelSupport:
    """t-integration window with the endpoint-exponent ledger."""

    lower: float
    upper: float
    e_lo: float
    e_hi: float
    lo_mult: int  # vanishing order absorbed at the lower endpoint
    hi_mult: int


def support_bounds(k: float, x, y1: float, y2: float) -> KernelSupport | None:
    """Window and endpoint exponents, or None outside the support.

    Each cosh factor vanishing at an endpoint contributes k-1; ties merge
    (order 2), and at t = 0 the sinh^{-2(k-1)} factor cancels two orders.
    """
    x1, x2, x3 = x.coords if hasattr(x, "coords") else x
    a1, a2 = abs(y2), abs(y1 - x2)
    tlo = max(a1, a2)
    thi = min(y1 - x3, x1 - y1)
    if thi <= tlo + 1e-14:
        return None

    lo_mult = 0
    if a1 >= tlo - TIE_TOL:
        lo_mult += 2 if a1 < TIE_TOL else 1
    if a2 >= tlo - TIE_TOL:
        lo_mult += 2 if a2 < TIE_TOL else 1
    sinh_sub = 2 if tlo < TIE_TOL else 0
    e_lo = (k - 1.0) * (lo_mult - sinh_sub)

    b1, b2 = x1 - y1, y1 - x3
    hi_mult = int(b1 <= thi + TIE_TOL) + int(b2 <= thi + TIE_TOL)
    e_hi = (k - 1.0) * hi_mult

    if e_lo <= -1.0 or e_hi <= -1.0:
        raise ParameterError(
            f"merged endpoint exponent <= -1 (k = {k} with a tie) at y = ({y1}, {y2})")
    return KernelSupport(tlo, thi, e_lo, e_hi, lo_mult, hi_mult)


def _log_prefactor(k: float, x) -> float:
    x1, x2, x3 = x.coords if hasattr(x, "coords") else x
    s = 0.0
    for g in (x1 - x2, x1 - x3, x2 - x3):
        s += math.log(math.sinh(g / 2.0))
    return (
        math.lgamma(2 * k) + math.lgamma(3 * k)
        - (4 * k - 2) * math.log(2.0) - 5 * math.lgamma(k) - (2 * k - 1) * s
    )


def _r_value(k: float, x, y1: float, y2: float, sup: KernelSupport, order: int) -> float:
    x1, x2, x3 = x.coords if hasattr(x, "coords") else x
    rule = gauss_jacobi_rule(order, sup.e_hi, sup.e_lo)
    half = (sup.upper - sup.lower) / 2.0
    t = sup.lower + half * (rule.nodes + 1.0)
    h = accel.rk_smooth_vals(
        t, k, math.cosh(y2), math.cosh(x2 - y1), math.cosh(x1 - y1), math.cosh(x3 - y1),
        sup.lower, sup.upper, sup.e_lo, sup.e_hi,
    )
    integral = half ** (sup.e_lo + sup.e_hi + 1.0) * float(np.dot(rule.weights, h))
    return math.exp(_log_prefactor(k, x)) * integral


def r_kernel(k: float, x: ChamberPoint, y1: float, y2: float, order: int = 32) -> EvalResult:
    """The t-integral kernel; 0 outside the support window."""
    sup = support_bounds(k, x, y1, y2)
    if sup is None:
        return EvalResult(0.0, 0.0, 0, True)
    v0 = _r_value(k, x, y1, y2, sup, order)
    n1 = math.ceil(1.5 * order)
    v1 = _r_value(k, x, y1, y2, sup, n1)
    return EvalResult(v1, abs(v1 - v0), n1, True)


def n_kernel(k: float, x: ChamberPoint, z: VPoint, order: int = 32) -> float:
    """Density on the convex hull: N_k(x, z) = R_k(x, z1/sqrt6, z2/sqrt2)/sqrt12."""
    if not in_convex_hull(x, z):
        return 0.0
    z1, z2, z3 = z.coords
    y1 = (z1 + z2 - 2 * z3) / 6.0
    y2 = (z1 - z2) / 2.0
    return r_kernel(k, x, y1, y2, order).value / math.sqrt(12.0)


def _y1_cells(x) -> list[tuple[float, float]]:
    x1, x2, x3 = x.coords if hasattr(x, "coords") else x
    lo, hi = (x2 + x3) / 2.0, (x1 + x2) / 2.0
    cuts = sorted({lo, hi, *(c for c in (x2, (x1 + x3) / 2.0) if lo < c < hi)})
    return list(zip(cuts[:-1], cuts[1:]))


def _transform_value(k: float, func, x, ny: int, t_order: int) -> complex:
    x1, x2, x3 = x.coords if hasattr(x, "coords") else x
    leg = gauss_jacobi_rule(ny, 0.0, 0.0)
    total = 0.0 + 0.0j
    for a, b in _y1_cells(x):
        ha = (b - a) / 2.0
        for s1, w1 in zip(leg.nodes, leg.weights):
            y1 = a + ha * (s1 + 1.0)
            m = min(y1 - x3, x1 - y1)
            if m <= 1e-13:
                continue
            c = min(abs(y1 - x2), m)
            cuts = sorted({-m, m, *(v for v in (-c, 0.0, c) if -m < v < m)})
            for p, q in zip(cuts[:-1], cuts[1:]):
                if q - p < 1e-13:
                    continue
                hb = (q - p) / 2.0
                for s2, w2 in zip(leg.nodes, leg.weights):
                    y2 = p + hb * (s2 + 1.0)
                    sup = support_bounds(k, x, y1, y2)
                    if sup is None:
                        continue
                    r = _r_value(k, x, y1, y2, sup, t_order)
                    total += w1 * ha * w2 * hb * func(y1, y2) * r
    return total


def vk_transform(k: float, f, x: ChamberPoint, grid_order: int = 24,
                 t_order: int | None = None) -> EvalResult:
    """integral of f(z) N_k(x, z) dz over the hull; f takes an ambient 3-vector."""
    t_order = t_order or max(24, grid_order)

    def func(y1, y2):
        return f((y1 + y2, y1 - y2, -2.0 * y1))

    v0 = _transform_value(k, func, x, grid_order, t_order)
    n1 = math.ceil(1.5 * grid_order)
    v1 = _transform_value(k, func, x, n1, t_order)
    return EvalResult(v1, abs(v1 - v0), n1 * n1, True)


def kernel_transform(k: float, lam, x: ChamberPoint, grid_order: int = 24,
                     t_order: int | None = None) -> EvalResult:
    """F_k(lambda, x) through the Laplace representation."""
    l1, l2, l3 = lam.coords if hasattr(lam, "coords") else tuple(lam)

    def func(y1, y2):
        return np.exp(3.0 * (l1 + l2) * y1 + (l1 - l2) * y2)

    t_order = t_order or max(24, grid_order)
    v0 = _transform_value(k, func, x, grid_order, t_order)
    n1 = math.ceil(1.5 * grid_order)
    v1 = _transform_value(k, func, x, n1, t_order)
    return EvalResult(v1, abs(v1 - v0), n1 * n1, True)
