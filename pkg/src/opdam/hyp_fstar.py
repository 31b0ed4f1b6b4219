"""The antisymmetric function F*_k by two independent routes.

Shift route:    F*_k = d_k(lambda)/6 * V(x) * F_{k+1}(lambda, x)
Integral route: F*_k = gamma_k * V(x)^{-2k} * II L_k(lambda, nu) p(x, nu) W_k(nu, x) dnu

The integral route is the Prop-3.2 representation carried through its own
derivation; the differential identity behind it is
D(W_{k+1}) = 4 k^2 p W_k with D = 24k^2 + 2k coth((nu1-nu2)/2)(d1-d2)
- 10k(d1+d2) + 4 d1 d2, so the 4k^2 cancels against the printed prefactor.
Cross-route agreement is asserted by the verify suite.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import gauss_2f1
from .errors import ParameterError
from .hyp_f import HypFContext, _check_lambda, log_gamma_ratio
from .quadrature import EvalResult, integrate_rect_singular_2d, w_smooth_grid
from .root_lattice import (
    WALL_TOL,
    ChamberPoint,
    VPoint,
    chamber_reduce,
    log_abs_vandermonde_exp,
    vandermonde_exp,
    wall_distance,
)


@dataclass(frozen=True)
class ShiftConstants:
    """d_k(lambda) and its three linear factors."""

    value: complex
    factor_12: complex
    factor_23: complex
    factor_13: complex


def d_k(k: float, lam) -> complex:
    """(l1-l2+k)(l2-l3+k)(l1-l3+k) / ((2k+1)(3k+1)(3k+2))."""
    return shift_constants(k, lam).value


def shift_constants(k: float, lam) -> ShiftConstants:
    l1, l2, l3 = lam.coords if hasattr(lam, "coords") else tuple(lam)
    f12 = l1 - l2 + k
    f23 = l2 - l3 + k
    f13 = l1 - l3 + k
    return ShiftConstants(f12 * f23 * f13 / ((2 * k + 1) * (3 * k + 1) * (3 * k + 2)), f12, f23, f13)


def fstar_via_shift(ctx: HypFContext, lam, x: ChamberPoint) -> EvalResult:
    """F* from the shift identity; F_{k+1} is evaluated by the A2 integral."""
    from .hyp_f import f_a2

    coords = _check_lambda(lam)
    c = d_k(ctx.k, coords) / 6.0 * vandermonde_exp(x)
    res = f_a2(ctx.with_k(ctx.k + 1.0), coords, x)
    return EvalResult(c * res.value, abs(c) * res.err_estimate, res.nodes_used, res.converged)


def p_poly(x, nu1, nu2):
    """The degree-two exponential polynomial of the direct representation:
    -2b e^{2(n1+n2)} + (ab+3) e^{n1+n2}(e^{n1}+e^{n2}) - 2a(e^{2n1}+e^{2n2})
    - 2(b^2+a) e^{n1+n2} + 4b(e^{n1}+e^{n2}) - 6,
    with a = sum e^{x_i}, b = sum e^{-x_i}.  Symmetric in (nu1, nu2)."""
    xc = x.coords if hasattr(x, "coords") else tuple(x)
    a = sum(math.exp(v) for v in xc)
    b = sum(math.exp(-v) for v in xc)
    e1 = np.exp(np.asarray(nu1, dtype=float))
    e2 = np.exp(np.asarray(nu2, dtype=float))
    s = e1 + e2
    pr = e1 * e2
    return (
        -2 * b * pr * pr
        + (a * b + 3) * pr * s
        - 2 * a * (e1 * e1 + e2 * e2)
        - 2 * (b * b + a) * pr
        + 4 * b * s
        - 6.0
    )


def fstar_integral(ctx: HypFContext, lam, x: ChamberPoint) -> EvalResult:
    """Direct integral route; regular at l1 - l2 = k through the cancelled L_k."""
    coords = _check_lambda(lam)
    if x.n != 3:
        raise ParameterError("fstar_integral is the n = 3 evaluator")
    k = ctx.k
    l1, l2, l3 = coords
    eta = l1 - l2
    cexp = -1.5 * (l3 + k)

    def g(N1, N2):
        L = gauss_2f1.jacobi_phi_L_grid(k, eta, 0.5 * (N1 - N2)) * np.exp(cexp * (N1 + N2))
        return L * p_poly(x, N1, N2) * w_smooth_grid(x, N1, N2, k - 1.0)

    logv, _sgn = log_abs_vandermonde_exp(x)
    pref = math.exp(log_gamma_ratio(k, 3) - 2 * k * logv)
    res = integrate_rect_singular_2d(g, x, k - 1.0, ctx.quad_order,
                                     tol=ctx.tol / max(1.0, pref), max_refine=ctx.max_refine)
    return EvalResult(pref * res.value, pref * res.err_estimate, res.nodes_used, res.converged)


def fstar_total(ctx: HypFContext, lam, x: VPoint) -> EvalResult:
    """Antisymmetric extension off the chamber; exact 0 on walls."""
    xv = x if isinstance(x, VPoint) else VPoint(tuple(x))
    if wall_distance(xv) < WALL_TOL:
        return EvalResult(0.0 + 0.0j, 0.0, 0, True)
    c, w = chamber_reduce(xv)
    res = fstar_via_shift(ctx, lam, c)
    return EvalResult(w.sign * res.value, res.err_estimate, res.nodes_used, res.converged)


def fstar_total_value(ctx: HypFContext, lam, x_coords) -> complex:
    """Fast antisymmetric extension for stencil evaluations."""
    from .hyp_f import f_a2_value

    xs = tuple(sorted(x_coords, reverse=True))
    if xs[0] - xs[1] < WALL_TOL or xs[1] - xs[2] < WALL_TOL:
        return 0.0 + 0.0j
    sign = _parity_sign(x_coords, xs)
    c = d_k(ctx.k, lam) / 6.0 * vandermonde_exp(xs)
    return sign * c * f_a2_value(ctx.k + 1.0, tuple(lam), xs, ctx.quad_order)


def _parity_sign(orig, sorted_desc) -> int:
    perm = [sorted_desc.index(v) for v in orig]
    sign, seen = 1, [False] * len(perm)
    for i in range(len(perm)):
        if seen[i]:
            continue
        j, clen = i, 0
        while not seen[j]:
            seen[j] = True
            j = perm[j]
            clen += 1
        if clen % 2 == 0:
            sign = -sign
    return sign
