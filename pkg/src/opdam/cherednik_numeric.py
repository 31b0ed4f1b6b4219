"""Numerical Cherednik operators and the assembly of the nonsymmetric G_k.

Cherednik operators act on black-box functions through finite-difference
directional derivatives plus reflection-difference terms.  The main theorem
assembles G_k(lambda, x) from the symmetric F_k and antisymmetric F*_k:

    (tau(lambda) - k^2) G = D_k(F) + D*_k(F*)

with D_k, D*_k first-order in T_{pi(e1)}, T_{pi(e2)}.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import SingularSpectralParam, WallError
from .hyp_f import HypFContext, _check_lambda, f_total_value
from .hyp_fstar import fstar_total_value
from .quadrature import EvalResult
from .root_lattice import (
    VPoint,
    pi_basis,
    rho,
    s3_elements,
    wall_distance,
)

_DEN_TOL = 1e-8


@dataclass(frozen=True)
class DirectionalStencil:
    """Central-difference stencil along a direction; order 2 or 4, one
    Richardson level when ``richardson`` is set."""

    h: float
    order: int = 4
    richardson: bool = True


def default_stencil(x) -> DirectionalStencil:
    return DirectionalStencil(h=max(1e-4, 1e-3 * wall_distance(x)))


@dataclass(frozen=True)
class OperatorCoeffs:
    """Coefficients (c1, c2, c0) of c1 T_{pi(e1)} + c2 T_{pi(e2)} + c0."""

    c1: complex
    c2: complex
    c0: complex


def tau(lam) -> complex:
    l = lam.coords if hasattr(lam, "coords") else tuple(lam)
    return l[0] * l[0] + l[1] * l[1] + l[0] * l[1]


def dk_coeffs(k: float, lam) -> OperatorCoeffs:
    l1, l2, l3 = lam.coords if hasattr(lam, "coords") else tuple(lam)
    return OperatorCoeffs(l1 - l3 + 2 * k, l2 - l3 + k, tau((l1, l2, l3)) + k * (l1 - l3) + k * k)


def dkstar_coeffs(k: float, lam) -> OperatorCoeffs:
    l1, l2, l3 = lam.coords if hasattr(lam, "coords") else tuple(lam)
    return OperatorCoeffs(l1 - l3 - 2 * k, l2 - l3 - k, tau((l1, l2, l3)) - k * (l1 - l3) + k * k)


def _shift(pt, xi, s: float):
    return tuple(p + s * v for p, v in zip(pt, xi))


def _raw_deriv(f, pt, xi, h: float, order: int) -> complex:
    if order == 2:
        return (f(_shift(pt, xi, h)) - f(_shift(pt, xi, -h))) / (2 * h)
    return (
        -f(_shift(pt, xi, 2 * h))
        + 8 * f(_shift(pt, xi, h))
        - 8 * f(_shift(pt, xi, -h))
        + f(_shift(pt, xi, -2 * h))
    ) / (12 * h)


def directional_derivative(f, pt, xi, stencil: DirectionalStencil) -> tuple[complex, float]:
    """(d/ds) f(pt + s xi) at s = 0, with a step-halving error estimate."""
    d1 = _raw_deriv(f, pt, xi, stencil.h, stencil.order)
    d2 = _raw_deriv(f, pt, xi, stencil.h / 2, stencil.order)
    if stencil.richardson:
        val = (16 * d2 - d1) / 15 if stencil.order == 4 else (4 * d2 - d1) / 3
    else:
        val = d2
    return val, abs(val - d2)


def _pair_denominators(x):
    """1 - e^{x_j - x_i} for i < j; WallError when any is tiny."""
    n = len(x)
    dens = {}
    for i in range(n):
        for j in range(i + 1, n):
            d = 1.0 - math.exp(x[j] - x[i])
            if abs(d) < _DEN_TOL:
                raise WallError(f"reflection denominator ~0 for pair ({i},{j}) at {x}")
            dens[(i, j)] = d
    return dens


def cherednik_general(k: float, f, x: VPoint, xi: VPoint, stencil: DirectionalStencil | None = None) -> complex:
    """T_xi f(x) for a black-box f on V (any symmetry type)."""
    pt = x.coords
    xiv = xi.coords
    st = stencil or default_stencil(x)
    fn = lambda c: f(VPoint(c))
    deriv, _ = directional_derivative(fn, pt, xiv, st)
    dens = _pair_denominators(pt)
    fx = fn(pt)
    refl = 0.0 + 0.0j
    for (i, j), den in dens.items():
        sx = list(pt)
        sx[i], sx[j] = sx[j], sx[i]
        refl += (xiv[i] - xiv[j]) * (fx - fn(tuple(sx))) / den
    rk = rho(k, x.n)
    rpair = sum(a * b for a, b in zip(rk.coords, xiv))
    return deriv + k * refl - rpair * fx


def cherednik_sym(k: float, f, x: VPoint, xi: VPoint, stencil: DirectionalStencil | None = None) -> complex:
    """T_xi on a W-invariant function: the reflection differences vanish."""
    st = stencil or default_stencil(x)
    deriv, _ = directional_derivative(lambda c: f(VPoint(c)), x.coords, xi.coords, st)
    rk = rho(k, x.n)
    rpair = sum(a * b for a, b in zip(rk.coords, xi.coords))
    return deriv - rpair * f(x)


def cherednik_anti(k: float, f, x: VPoint, xi: VPoint, stencil: DirectionalStencil | None = None) -> complex:
    """T_xi on an antisymmetric function: (1 - s_{ij}) f = 2 f."""
    pt, xiv = x.coords, xi.coords
    st = stencil or default_stencil(x)
    deriv, _ = directional_derivative(lambda c: f(VPoint(c)), pt, xiv, st)
    dens = _pair_denominators(pt)
    coef = sum((xiv[i] - xiv[j]) / den for (i, j), den in dens.items())
    rk = rho(k, x.n)
    rpair = sum(a * b for a, b in zip(rk.coords, xiv))
    return deriv + (2 * k * coef - rpair) * f(x)


def _memoized(cache: dict, fn):
    def wrapped(pt):
        key = tuple(round(v, 14) for v in pt)
        if key not in cache:
            cache[key] = fn(pt)
        return cache[key]

    return wrapped


def _g_value(ctx: HypFContext, coords, pt, stencil, cache_f, cache_fs) -> tuple[complex, float]:
    k = ctx.k
    denom = tau(coords) - k * k
    F = _memoized(cache_f, lambda p: f_total_value(ctx, coords, p))
    Fs = _memoized(cache_fs, lambda p: fstar_total_value(ctx, coords, p))

    pi1, pi2 = (v.coords for v in pi_basis(3)[:2])
    rk = rho(k, 3).coords
    r1 = sum(a * b for a, b in zip(rk, pi1))
    r2 = sum(a * b for a, b in zip(rk, pi2))

    d1F, e1 = directional_derivative(F, pt, pi1, stencil)
    d2F, e2 = directional_derivative(F, pt, pi2, stencil)
    d1S, e3 = directional_derivative(Fs, pt, pi1, stencil)
    d2S, e4 = directional_derivative(Fs, pt, pi2, stencil)

    fx = F(pt)
    fsx = Fs(pt)
    dens = _pair_denominators(pt)
    anti1 = sum((pi1[i] - pi1[j]) / den for (i, j), den in dens.items())
    anti2 = sum((pi2[i] - pi2[j]) / den for (i, j), den in dens.items())

    t1f = d1F - r1 * fx
    t2f = d2F - r2 * fx
    t1s = d1S + (2 * k * anti1 - r1) * fsx
    t2s = d2S + (2 * k * anti2 - r2) * fsx

    a = dk_coeffs(k, coords)
    b = dkstar_coeffs(k, coords)
    num = a.c1 * t1f + a.c2 * t2f + a.c0 * fx + b.c1 * t1s + b.c2 * t2s + b.c0 * fsx
    err = (abs(a.c1) * e1 + abs(a.c2) * e2 + abs(b.c1) * e3 + abs(b.c2) * e4) / abs(denom)
    return num / denom, err


def g_a2(ctx: HypFContext, lam, x: VPoint, stencil: DirectionalStencil | None = None) -> EvalResult:
    """G_k(lambda, x) by the main-theorem assembly."""
    coords = _check_lambda(lam)
    k = ctx.k
    if abs(tau(coords) - k * k) < _DEN_TOL:
        raise SingularSpectralParam(f"tau(lambda) = k^2 within {_DEN_TOL}")
    xv = x if isinstance(x, VPoint) else VPoint(tuple(x))
    st = stencil or default_stencil(xv)
    val, err = _g_value(ctx, coords, xv.coords, st, {}, {})
    return EvalResult(val, err, 0, True)


def g_orbit(ctx: HypFContext, lam, x: VPoint, stencil: DirectionalStencil | None = None) -> dict[str, complex]:
    """G_k(lambda, w x) for the six Weyl elements, sharing F/F* evaluations."""
    coords = _check_lambda(lam)
    k = ctx.k
    if abs(tau(coords) - k * k) < _DEN_TOL:
        raise SingularSpectralParam(f"tau(lambda) = k^2 within {_DEN_TOL}")
    xv = x if isinstance(x, VPoint) else VPoint(tuple(x))
    cache_f: dict = {}
    cache_fs: dict = {}
    out = {}
    for name, w in s3_elements():
        pt = w.apply(xv.coords)
        st = stencil or default_stencil(VPoint(pt))
        out[name], _ = _g_value(ctx, coords, pt, st, cache_f, cache_fs)
    return out


def _orthonormal_basis(n: int) -> list[tuple[float, ...]]:
    vs = np.array([v.as_array() for v in pi_basis(n)[: n - 1]])
    q = np.linalg.qr(vs.T)[0].T
    return [tuple(row) for row in q]


def laplacian_L(k: float, f, x: VPoint, h: float | None = None, order: int = 4) -> complex:
    """L_k f = Delta f + k sum_{alpha>0} coth(<alpha,x>/2) d_alpha f + <rho_k, rho_k> f."""
    pt = x.coords
    n = x.n
    if h is None:
        h = max(1e-3, 2e-2 * wall_distance(x))
    cache: dict = {}
    fn = _memoized(cache, lambda c: f(VPoint(c)))
    basis = _orthonormal_basis(n)

    fx = fn(pt)
    lap = 0.0 + 0.0j
    grad = np.zeros(n, dtype=complex)
    for u in basis:
        fp1 = fn(_shift(pt, u, h))
        fm1 = fn(_shift(pt, u, -h))
        if order == 2:
            d2 = (fp1 - 2 * fx + fm1) / (h * h)
            d1 = (fp1 - fm1) / (2 * h)
        else:
            fp2 = fn(_shift(pt, u, 2 * h))
            fm2 = fn(_shift(pt, u, -2 * h))
            d2 = (-fp2 + 16 * fp1 - 30 * fx + 16 * fm1 - fm2) / (12 * h * h)
            d1 = (-fp2 + 8 * fp1 - 8 * fm1 + fm2) / (12 * h)
        lap += d2
        grad += d1 * np.asarray(u)

    root_term = 0.0 + 0.0j
    for i in range(n):
        for j in range(i + 1, n):
            gap = pt[i] - pt[j]
            if abs(gap) < _DEN_TOL:
                raise WallError(f"coth argument ~0 for pair ({i},{j})")
            root_term += (grad[i] - grad[j]) / math.tanh(gap / 2.0)

    rk = rho(k, n).coords
    rho_sq = sum(v * v for v in rk)
    return lap + k * root_term + rho_sq * fx
